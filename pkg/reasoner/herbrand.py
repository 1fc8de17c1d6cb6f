"""Herbrand interpretations over a finite vocabulary.

Every interpretation has the individual names as its domain and is identified
with an integer index. Concept bits come first, in (concept, individual)
order, followed by role bits in (role, subject, object) order; the least
significant bit holds the first pair.
"""

import logging
from typing import Dict, FrozenSet, Iterator, Mapping, Optional, Set, Tuple

import config
from schemas import InterpretationLiteral

from .errors import ContractViolation, SizeLimitError
from .syntax import (
    DCI,
    GCI,
    QDCI,
    And,
    Atomic,
    Bot,
    Concept,
    ConceptAssertion,
    Exists,
    Forall,
    Nominal,
    Not,
    Or,
    RoleAssertion,
    Statement,
    Top,
    Vocabulary,
)

logger = logging.getLogger(__name__)


def bit_count(vocab: Vocabulary) -> int:
    n = len(vocab.individual_names)
    return len(vocab.concept_names) * n + len(vocab.role_names) * n * n


def interpretation_count(vocab: Vocabulary) -> int:
    """Size of the set of all Herbrand interpretations, guarded by ``config.BIT_BUDGET``."""
    bits = bit_count(vocab)
    if bits > config.BIT_BUDGET:
        raise SizeLimitError(
            f"vocabulary needs {bits} interpretation bits, budget is {config.BIT_BUDGET}"
        )
    return 1 << bits


class HerbrandInterpretation:
    """One interpretation, stored as bit masks over the individual positions.

    ``concept_masks[c]`` has bit ``j`` set iff individual ``j`` is in concept
    ``c``; ``role_masks[r][x]`` holds the successors of individual ``x``.
    """

    __slots__ = ("vocab", "index", "concept_masks", "role_masks")

    def __init__(self, vocab: Vocabulary, index: int,
                 concept_masks: Tuple[int, ...], role_masks: Tuple[Tuple[int, ...], ...]):
        self.vocab = vocab
        self.index = index
        self.concept_masks = concept_masks
        self.role_masks = role_masks

    @property
    def full_mask(self) -> int:
        return (1 << len(self.vocab.individual_names)) - 1

    def _names(self, mask: int) -> FrozenSet[str]:
        return frozenset(a for j, a in enumerate(self.vocab.individual_names) if mask >> j & 1)

    @property
    def concept_ext(self) -> Dict[str, FrozenSet[str]]:
        return {c: self._names(m) for c, m in zip(self.vocab.concept_names, self.concept_masks)}

    @property
    def role_ext(self) -> Dict[str, FrozenSet[Tuple[str, str]]]:
        names = self.vocab.individual_names
        return {
            r: frozenset((names[x], names[y])
                         for x, succ in enumerate(masks)
                         for y in range(len(names)) if succ >> y & 1)
            for r, masks in zip(self.vocab.role_names, self.role_masks)
        }

    def __eq__(self, other):
        return (isinstance(other, HerbrandInterpretation)
                and self.vocab == other.vocab and self.index == other.index)

    def __hash__(self):
        return hash(self.index)

    def __str__(self):
        parts = [f"{c}={{{','.join(sorted(ext))}}}" for c, ext in self.concept_ext.items()]
        parts += [
            f"{r}={{{','.join(f'({x},{y})' for x, y in sorted(ext))}}}"
            for r, ext in self.role_ext.items()
        ]
        return "[" + " ".join(parts) + "]"

    def __repr__(self):
        return f"HerbrandInterpretation(index={self.index}, {self})"


def decode(vocab: Vocabulary, index: int) -> HerbrandInterpretation:
    count = interpretation_count(vocab)
    if not 0 <= index < count:
        raise ContractViolation(f"interpretation index {index} outside [0, {count})")
    return _decode(vocab, index)


def _decode(vocab: Vocabulary, index: int) -> HerbrandInterpretation:
    n = len(vocab.individual_names)
    full = (1 << n) - 1
    concept_masks = tuple(
        (index >> (ci * n)) & full for ci in range(len(vocab.concept_names))
    )
    base = len(vocab.concept_names) * n
    role_masks = tuple(
        tuple((index >> (base + ri * n * n + x * n)) & full for x in range(n))
        for ri in range(len(vocab.role_names))
    )
    return HerbrandInterpretation(vocab, index, concept_masks, role_masks)


def encode(interp: HerbrandInterpretation) -> int:
    """Recompute the index from the extension masks."""
    vocab = interp.vocab
    n = len(vocab.individual_names)
    index = 0
    for ci, mask in enumerate(interp.concept_masks):
        index |= mask << (ci * n)
    base = len(vocab.concept_names) * n
    for ri, masks in enumerate(interp.role_masks):
        for x, succ in enumerate(masks):
            index |= succ << (base + ri * n * n + x * n)
    return index


def all_interpretations(vocab: Vocabulary) -> Iterator[HerbrandInterpretation]:
    """Every interpretation in ascending index order, decoded one at a time.

    The budget is checked on the call, before the first item.
    """
    count = interpretation_count(vocab)
    logger.debug("enumerating %d interpretations", count)
    return (_decode(vocab, index) for index in range(count))


def extension_mask(interp: HerbrandInterpretation, concept: Concept) -> int:
    vocab = interp.vocab
    full = interp.full_mask
    if isinstance(concept, Top):
        return full
    if isinstance(concept, Bot):
        return 0
    if isinstance(concept, Atomic):
        return interp.concept_masks[vocab.concept_index[concept.name]]
    if isinstance(concept, Nominal):
        return 1 << vocab.individual_index[concept.individual]
    if isinstance(concept, Not):
        return full & ~extension_mask(interp, concept.operand)
    if isinstance(concept, And):
        return extension_mask(interp, concept.left) & extension_mask(interp, concept.right)
    if isinstance(concept, Or):
        return extension_mask(interp, concept.left) | extension_mask(interp, concept.right)
    if isinstance(concept, (Exists, Forall)):
        successors = interp.role_masks[vocab.role_index[concept.role]]
        filler = extension_mask(interp, concept.filler)
        mask = 0
        for x, succ in enumerate(successors):
            if isinstance(concept, Exists):
                hit = succ & filler != 0
            else:
                hit = succ & ~filler & full == 0
            if hit:
                mask |= 1 << x
        return mask
    raise ContractViolation(f"not a concept: {concept!r}")


def extension(interp: HerbrandInterpretation, concept: Concept) -> FrozenSet[str]:
    return interp._names(extension_mask(interp, concept))


def count_members(interp: HerbrandInterpretation, concept: Concept) -> int:
    return bin(extension_mask(interp, concept)).count("1")


def has_member(interp: HerbrandInterpretation, individual: str, concept: Concept) -> bool:
    return extension_mask(interp, concept) >> interp.vocab.individual_index[individual] & 1 == 1


def has_edge(interp: HerbrandInterpretation, subject: str, obj: str, role: str) -> bool:
    vocab = interp.vocab
    succ = interp.role_masks[vocab.role_index[role]][vocab.individual_index[subject]]
    return succ >> vocab.individual_index[obj] & 1 == 1


def satisfies(interp: HerbrandInterpretation, statement: Statement) -> bool:
    if isinstance(statement, GCI):
        sub = extension_mask(interp, statement.sub)
        return sub & ~extension_mask(interp, statement.sup) == 0
    if isinstance(statement, ConceptAssertion):
        return has_member(interp, statement.individual, statement.concept)
    if isinstance(statement, RoleAssertion):
        return has_edge(interp, statement.subject, statement.object, statement.role)
    if isinstance(statement, (DCI, QDCI)):
        raise ContractViolation(f"'{statement}' is not evaluated on a single interpretation")
    raise ContractViolation(f"not a statement: {statement!r}")


# Conversion to and from the JSON literal

def from_extensions(vocab: Vocabulary,
                    concepts: Optional[Mapping[str, Set[str]]] = None,
                    roles: Optional[Mapping[str, Set[Tuple[str, str]]]] = None) -> HerbrandInterpretation:
    """Build the interpretation with the given extensions; unlisted names are empty."""
    concepts = concepts or {}
    roles = roles or {}
    n = len(vocab.individual_names)
    concept_masks = [0] * len(vocab.concept_names)
    for name, members in concepts.items():
        vocab.require_concept(name)
        for a in members:
            vocab.require_individual(a)
            concept_masks[vocab.concept_index[name]] |= 1 << vocab.individual_index[a]
    role_masks = [[0] * n for _ in vocab.role_names]
    for name, pairs in roles.items():
        vocab.require_role(name)
        for x, y in pairs:
            vocab.require_individual(x)
            vocab.require_individual(y)
            role_masks[vocab.role_index[name]][vocab.individual_index[x]] |= 1 << vocab.individual_index[y]
    interp = HerbrandInterpretation(vocab, 0, tuple(concept_masks), tuple(tuple(m) for m in role_masks))
    interp.index = encode(interp)
    return interp


def from_literal(vocab: Vocabulary, literal: InterpretationLiteral) -> HerbrandInterpretation:
    interpretation_count(vocab)
    return from_extensions(
        vocab,
        {c: set(members) for c, members in literal.concepts.items()},
        {r: {tuple(p) for p in pairs} for r, pairs in literal.roles.items()},
    )


def to_literal(interp: HerbrandInterpretation) -> InterpretationLiteral:
    """Only non-empty extensions are listed, in vocabulary order."""
    names = interp.vocab.individual_names
    concepts = {
        c: [a for a in names if a in ext]
        for c, ext in interp.concept_ext.items() if ext
    }
    roles = {
        r: sorted(ext, key=lambda p: (names.index(p[0]), names.index(p[1])))
        for r, ext in interp.role_ext.items() if ext
    }
    return InterpretationLiteral(concepts=concepts, roles=roles)
