"""
Tests for Herbrand interpretation enumeration and concept extensions
"""

import pytest

import config
import naive_oracle
from reasoner.errors import ContractViolation, SizeLimitError
from reasoner.herbrand import (
    all_interpretations,
    decode,
    encode,
    extension,
    from_extensions,
    from_literal,
    interpretation_count,
    satisfies,
    to_literal,
)
from reasoner.parser import parse_concept
from reasoner.syntax import DCI, Atomic, ConceptAssertion, GCI, Vocabulary

SMALL = Vocabulary(("A", "B"), ("r",), ("a", "b"))

CONCEPTS = [
    "A", "!A", "A & B", "A | !B", "{a}", "{a} | {b} & B", "top", "bot",
    "exists r.A", "forall r.A", "exists r.(A & !B)", "forall r.exists r.{b}", "!exists r.!B",
]


def test_counts():
    assert interpretation_count(Vocabulary(("A",), (), ("a", "b", "c"))) == 8
    assert interpretation_count(Vocabulary(("A", "B", "C"), (), ("a", "b"))) == 64
    assert interpretation_count(Vocabulary((), (), ("a",))) == 1
    assert interpretation_count(SMALL) == 2 ** (2 * 2 + 4)


def test_budget(monkeypatch):
    monkeypatch.setattr(config, "BIT_BUDGET", 5)
    with pytest.raises(SizeLimitError):
        all_interpretations(SMALL)
    monkeypatch.setattr(config, "BIT_BUDGET", 8)
    assert sum(1 for _ in all_interpretations(SMALL)) == 256


def test_enumeration_is_streamed():
    worlds = all_interpretations(SMALL)
    assert not isinstance(worlds, (list, tuple))
    assert next(worlds).index == 0
    assert next(worlds).index == 1
    assert decode(SMALL, 1) is not decode(SMALL, 1)


def test_decode_encode():
    for index in (0, 1, 37, 255):
        assert encode(decode(SMALL, index)) == index
    with pytest.raises(ContractViolation):
        decode(SMALL, 256)


def test_bit_layout():
    """concept bits first, individual-major within a concept, then role bits per subject"""
    interp = decode(SMALL, 0b10)
    assert interp.concept_ext == {"A": frozenset({"b"}), "B": frozenset()}
    interp = decode(SMALL, 1 << 4 | 1 << 7)
    assert interp.role_ext == {"r": frozenset({("a", "a"), ("b", "b")})}


def test_enumeration_is_exhaustive():
    seen = {
        (frozenset((c, frozenset(e)) for c, e in w.concept_ext.items()),
         frozenset((r, frozenset(e)) for r, e in w.role_ext.items()))
        for w in all_interpretations(SMALL)
    }
    expected = {
        (frozenset((c, frozenset(e)) for c, e in concepts.items()),
         frozenset((r, frozenset(e)) for r, e in roles.items()))
        for concepts, roles in naive_oracle.all_extension_maps(SMALL)
    }
    assert seen == expected


def test_extensions_match_oracle():
    concepts = [parse_concept(text, SMALL) for text in CONCEPTS]
    for interp in all_interpretations(SMALL):
        for concept in concepts:
            assert set(extension(interp, concept)) == naive_oracle.ext(interp, concept)


def test_quantifier_duality():
    for interp in all_interpretations(SMALL):
        left = extension(interp, parse_concept("!exists r.!A", SMALL))
        right = extension(interp, parse_concept("forall r.A", SMALL))
        assert left == right


def test_satisfies():
    interp = from_extensions(SMALL, {"A": {"a"}}, {"r": {("a", "b")}})
    assert satisfies(interp, ConceptAssertion("a", Atomic("A")))
    assert not satisfies(interp, GCI(parse_concept("exists r.top", SMALL), Atomic("B")))
    with pytest.raises(ContractViolation):
        satisfies(interp, DCI(Atomic("A"), Atomic("B")))


def test_literal_round_trip():
    interp = from_extensions(SMALL, {"B": {"b", "a"}}, {"r": {("b", "a")}})
    literal = to_literal(interp)
    assert literal.concepts == {"B": ["a", "b"]}
    assert literal.roles == {"r": [("b", "a")]}
    assert from_literal(SMALL, literal) == interp
