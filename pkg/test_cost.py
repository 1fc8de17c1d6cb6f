"""
Tests for cost-based semantics of weighted knowledge bases
"""

import pytest

import naive_oracle
from reasoner.cost import (
    EntailmentMode,
    abox_violations,
    classically_entails,
    cost,
    entails,
    gci_violations,
    is_extension,
    optimal_cost,
)
from reasoner.errors import ContractViolation, UsageError
from reasoner.herbrand import all_interpretations
from reasoner.parser import parse_document, parse_statement
from reasoner.syntax import INF

ROLES_KB = """vocab {
  concepts: A, B;
  roles: r;
  individuals: a, b;
}
tbox {
  A <= exists r.B [2];
  exists r.top <= B [1];
}
abox {
  a : A [inf];
  (a, b) : r [3];
}
"""


def test_penguin_costs(penguin_w, world):
    assert cost(penguin_w, world(penguin_w, L=True, S=True, E=True)) == 1
    assert cost(penguin_w, world(penguin_w, L=True, S=True)) == 2
    assert cost(penguin_w, world(penguin_w, L=True, E=True)) == 4
    assert cost(penguin_w, world(penguin_w, L=True)) == 3
    assert cost(penguin_w, world(penguin_w, S=True, E=True)) == INF


def test_penguin_optimal_cost(penguin_w):
    assert optimal_cost(penguin_w) == 1
    experiments = parse_statement("N : Experiments", penguin_w.vocab)
    no_experiments = parse_statement("N : !Experiments", penguin_w.vocab)
    assert entails(penguin_w, "optc", experiments)
    assert not entails(penguin_w, "optc", no_experiments)
    assert entails(penguin_w, "optp", experiments)
    assert entails(penguin_w, "kp", no_experiments, k=2)
    assert not entails(penguin_w, "kc", experiments, k=2)


def test_gci_violations(penguin_w, world):
    gci = penguin_w.tbox[2]
    assert gci_violations(world(penguin_w, L=True, E=True), gci) == frozenset({"N"})
    assert gci_violations(world(penguin_w, L=True), gci) == frozenset()


def test_abox_violations_and_infinite_optimum():
    wkb = parse_document("""vocab { concepts: A; roles: ; individuals: a; }
abox { a : A; a : !A [2]; }
""")
    assertions = wkb.abox
    for interp in all_interpretations(wkb.vocab):
        violated = abox_violations(interp, assertions)
        assert len(violated) == 1
        assert cost(wkb, interp) == sum(wkb.weights[a] for a in violated)
    assert optimal_cost(wkb) == 2
    strict = parse_document("""vocab { concepts: A; roles: ; individuals: a; }
abox { a : A; a : !A; }
""")
    assert optimal_cost(strict) == INF


def test_cost_matches_oracle():
    wkb = parse_document(ROLES_KB)
    for interp in all_interpretations(wkb.vocab):
        assert cost(wkb, interp) == naive_oracle.cost(wkb, interp)


def test_entailment_matches_oracle():
    wkb = parse_document(ROLES_KB)
    worlds = list(all_interpretations(wkb.vocab))
    queries = ["b : B", "a : exists r.B", "(a, b) : r", "A <= B", "b : !A"]
    for text in queries:
        query = parse_statement(text, wkb.vocab)
        for mode in ("optc", "optp"):
            assert entails(wkb, mode, query) == naive_oracle.entails(wkb, worlds, mode, query)
        for k in range(0, 6):
            for mode in ("kc", "kp"):
                assert entails(wkb, mode, query, k) == naive_oracle.entails(wkb, worlds, mode, query, k)


def test_k_bound_usage():
    wkb = parse_document(ROLES_KB)
    query = parse_statement("b : B", wkb.vocab)
    with pytest.raises(UsageError):
        entails(wkb, EntailmentMode.K_CERTAIN, query)
    with pytest.raises(UsageError):
        entails(wkb, EntailmentMode.OPT_CERTAIN, query, k=1)
    with pytest.raises(ContractViolation):
        entails(wkb, "optc", parse_statement("A ~< B", wkb.vocab))


def test_vacuous_modes(mono_prime):
    """no interpretation costs at most 0: certain holds, possible does not"""
    assert optimal_cost(mono_prime) == 1
    for text in ("a : A", "a : !A"):
        query = parse_statement(text, mono_prime.vocab)
        assert entails(mono_prime, "kc", query, k=0)
        assert not entails(mono_prime, "kp", query, k=0)


def test_possible_modes_are_not_monotone(mono, mono_prime):
    query = parse_statement("a : A", mono.vocab)
    assert is_extension(mono, mono_prime)
    assert entails(mono, "kp", query, k=1)
    assert not entails(mono_prime, "kp", query, k=1)
    assert entails(mono, "optp", query)
    assert not entails(mono_prime, "optp", query)


def test_k_certain_is_monotone(mono, mono_prime):
    query = parse_statement("a : A", mono.vocab)
    for k in range(4):
        if entails(mono, "kc", query, k):
            assert entails(mono_prime, "kc", query, k)
    assert entails(mono, "kc", query, k=0)


def test_classical_entailment(penguin_w, mono, mono_prime):
    assert classically_entails(penguin_w, parse_statement("N : Logician", penguin_w.vocab))
    assert classically_entails(mono, parse_statement("a : A", mono.vocab))
    assert not classically_entails(mono, parse_statement("a : !A", mono.vocab))
    # no classical model at all
    assert classically_entails(mono_prime, parse_statement("a : !A", mono.vocab))


def test_optimal_certain_is_not_monotone(mono, mono_prime):
    query = parse_statement("a : A", mono.vocab)
    assert entails(mono, "optc", query)
    assert not entails(mono_prime, "optc", query)
    assert entails(mono_prime, "optc", parse_statement("a : !A", mono.vocab))
