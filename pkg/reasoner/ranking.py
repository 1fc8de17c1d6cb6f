"""Ranking functions over Herbrand interpretations and their satisfaction relation.

A ranking function maps every interpretation to a natural number or ``inf``
with at least one interpretation at rank 0. Ranks lift to assertions,
concepts and (defeasible) inclusions by taking minima.
"""

import enum
import logging
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from schemas import RankEntry

from .errors import ContractViolation, UsageError
from .herbrand import (
    HerbrandInterpretation,
    all_interpretations,
    extension_mask,
    from_literal,
    has_edge,
    has_member,
    interpretation_count,
    satisfies,
    to_literal,
)
from .syntax import (
    DCI,
    GCI,
    INF,
    QDCI,
    And,
    Concept,
    ConceptAssertion,
    DefeasibleKB,
    ExtendedNat,
    Nominal,
    Not,
    RoleAssertion,
    Statement,
    Vocabulary,
    ext_min,
    format_weight,
    is_classical,
    require_classical,
)

logger = logging.getLogger(__name__)


class SatisfactionMode(str, enum.Enum):
    STRICT = "strict"
    FULL = "full"


class RankingFunction:
    """A total rank table over all interpretations of ``vocab``."""

    def __init__(self, vocab: Vocabulary, table: Sequence[ExtendedNat]):
        count = interpretation_count(vocab)
        table = tuple(table)
        if len(table) != count:
            raise ContractViolation(f"rank table has {len(table)} entries, expected {count}")
        for rank in table:
            if rank != INF and (not isinstance(rank, int) or rank < 0):
                raise ContractViolation(f"rank {rank!r} is not a natural number or inf")
        if 0 not in table:
            raise ContractViolation("ranking function has no interpretation at rank 0")
        self.vocab = vocab
        self.table = table

    def __call__(self, interp: HerbrandInterpretation) -> ExtendedNat:
        return self.table[interp.index]

    def __eq__(self, other):
        return isinstance(other, RankingFunction) and self.vocab == other.vocab and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def items(self) -> Iterable[Tuple[HerbrandInterpretation, ExtendedNat]]:
        return zip(all_interpretations(self.vocab), self.table)

    def zero_worlds(self) -> List[HerbrandInterpretation]:
        return [w for w, r in self.items() if r == 0]

    def to_entries(self, finite_only: bool = False) -> List[RankEntry]:
        return [
            RankEntry(interpretation=to_literal(w), rank=r if r != INF else "inf")
            for w, r in self.items()
            if not (finite_only and r == INF)
        ]

    @classmethod
    def from_entries(cls, vocab: Vocabulary, entries: Iterable[RankEntry]) -> "RankingFunction":
        """Read a rank table; unlisted interpretations get rank ``inf``."""
        table: List[ExtendedNat] = [INF] * interpretation_count(vocab)
        seen = set()
        for entry in entries:
            index = from_literal(vocab, entry.interpretation).index
            if index in seen:
                raise UsageError(f"interpretation {entry.interpretation.model_dump()} ranked twice")
            seen.add(index)
            rank = INF if entry.rank == "inf" else entry.rank
            if rank != INF and rank < 0:
                raise UsageError(f"negative rank {rank}")
            table[index] = rank
        if 0 not in table:
            raise UsageError("rank table has no interpretation at rank 0")
        return cls(vocab, table)

    def __repr__(self):
        return f"RankingFunction({[format_weight(r) for r in self.table]})"


def _min_rank(kappa: RankingFunction, accept: Callable[[HerbrandInterpretation], bool]) -> ExtendedNat:
    return ext_min(r for w, r in kappa.items() if r != INF and accept(w))


def rank_of_assertion(kappa: RankingFunction, individual: str, concept: Concept) -> ExtendedNat:
    """Least finite rank of an interpretation with ``individual`` in ``concept``."""
    return _min_rank(kappa, lambda w: has_member(w, individual, concept))


def rank_of_role_assertion(kappa: RankingFunction, subject: str, obj: str, role: str) -> ExtendedNat:
    """Least finite rank of an interpretation containing the edge."""
    return _min_rank(kappa, lambda w: has_edge(w, subject, obj, role))


def rank_of_gci(kappa: RankingFunction, gci: GCI) -> ExtendedNat:
    """Least finite rank of an interpretation satisfying the inclusion."""
    return _min_rank(kappa, lambda w: satisfies(w, gci))


def rank_of_concept(kappa: RankingFunction, concept: Concept) -> ExtendedNat:
    """Least rank of an interpretation where ``concept`` has some instance."""
    return _min_rank(kappa, lambda w: extension_mask(w, concept) != 0)


def rank_of_dci(kappa: RankingFunction, dci: DCI) -> ExtendedNat:
    """Minimum over individuals of rank(a: C & D) - rank(a: C).

    An individual whose antecedent has infinite rank contributes ``inf``.
    """
    best = INF
    for a in kappa.vocab.individual_names:
        antecedent = rank_of_assertion(kappa, a, dci.sub)
        if antecedent == INF:
            continue
        verified = rank_of_assertion(kappa, a, And(dci.sub, dci.sup))
        if verified != INF:
            best = min(best, verified - antecedent)
    return best


def rank_of_statement(kappa: RankingFunction, statement: Statement) -> ExtendedNat:
    """Rank of any statement kind except quantified inclusions."""
    if isinstance(statement, ConceptAssertion):
        return rank_of_assertion(kappa, statement.individual, statement.concept)
    if isinstance(statement, RoleAssertion):
        return rank_of_role_assertion(kappa, statement.subject, statement.object, statement.role)
    if isinstance(statement, GCI):
        return rank_of_gci(kappa, statement)
    if isinstance(statement, DCI):
        return rank_of_dci(kappa, statement)
    raise UsageError(f"no rank is defined for the quantified inclusion '{statement}'")


def satisfies_classical(kappa: RankingFunction, statement: Statement) -> bool:
    """The statement holds in every rank-0 interpretation."""
    require_classical(statement)
    return all(satisfies(w, statement) for w in kappa.zero_worlds())


def satisfies_qdci(kappa: RankingFunction, qdci: QDCI) -> bool:
    """Every individual verifies the inclusion more plausibly than it falsifies it."""
    verified, falsified = And(qdci.sub, qdci.sup), And(qdci.sub, Not(qdci.sup))
    return all(
        rank_of_assertion(kappa, a, verified) < rank_of_assertion(kappa, a, falsified)
        for a in kappa.vocab.individual_names
    )


def weak_representatives(kappa: RankingFunction, dci: DCI) -> Tuple[str, ...]:
    """Individuals that are maximally typical instances of C & D and verify the inclusion.

    Only individuals with a finite rank for C & D qualify.
    """
    verified, falsified = And(dci.sub, dci.sup), And(dci.sub, Not(dci.sup))
    overall = rank_of_concept(kappa, verified)
    result = []
    for a in kappa.vocab.individual_names:
        own = rank_of_assertion(kappa, a, verified)
        if own != INF and own == overall and own < rank_of_assertion(kappa, a, falsified):
            result.append(a)
    return tuple(result)


def strong_representatives(kappa: RankingFunction, dci: DCI) -> Tuple[str, ...]:
    """Weak representatives whose falsifying rank is least among them."""
    weak = weak_representatives(kappa, dci)
    if not weak:
        return ()
    falsified = And(dci.sub, Not(dci.sup))
    ranks = {a: rank_of_assertion(kappa, a, falsified) for a in weak}
    least = min(ranks.values())
    return tuple(a for a in weak if ranks[a] == least)


def satisfies_dci(kappa: RankingFunction, dci: DCI, mode=SatisfactionMode.STRICT) -> bool:
    """Acceptance of a defeasible inclusion.

    Both modes need a strong representative. Strict mode then requires
    rank(C & D) < rank(C & !D); full mode also accepts equal ranks when the
    representatives of C ~< !D are absent or all less typical violators.
    """
    mode = SatisfactionMode(mode)
    reps = strong_representatives(kappa, dci)
    if not reps:
        return False
    verified, falsified = And(dci.sub, dci.sup), And(dci.sub, Not(dci.sup))
    verified_rank = rank_of_concept(kappa, verified)
    falsified_rank = rank_of_concept(kappa, falsified)
    if verified_rank < falsified_rank:
        return True
    if mode is SatisfactionMode.STRICT or verified_rank != falsified_rank:
        return False
    rivals = strong_representatives(kappa, DCI(dci.sub, Not(dci.sup)))
    return all(
        rank_of_assertion(kappa, a, falsified) < rank_of_assertion(kappa, b, verified)
        for a in reps
        for b in rivals
    )


def nominal_expansion(qdci: QDCI, vocab: Vocabulary) -> Tuple[DCI, ...]:
    """The per-individual inclusions {a} & C ~< D equivalent to a quantified one."""
    return tuple(DCI(And(Nominal(a), qdci.sub), qdci.sup) for a in vocab.individual_names)


def satisfies_defeasible(kappa: RankingFunction, statement, mode=SatisfactionMode.STRICT) -> bool:
    """Acceptance of a DCI, or of a QDCI through its nominal expansion."""
    if isinstance(statement, QDCI):
        return all(satisfies_dci(kappa, d, mode) for d in nominal_expansion(statement, kappa.vocab))
    return satisfies_dci(kappa, statement, mode)


def first_unsatisfied(kappa: RankingFunction, kb: DefeasibleKB,
                      mode=SatisfactionMode.STRICT) -> Optional[str]:
    """Describe the first reason ``kappa`` is not a model of ``kb``, or None."""
    if kappa.vocab != kb.vocab:
        raise ContractViolation("ranking function and KB use different vocabularies")
    strict = list(kb.strict_axioms())
    for w, r in kappa.items():
        if r != INF and not all(satisfies(w, a) for a in strict):
            return f"finite rank {r} on {w}, which violates the strict part"
    for statement in kb.dbox:
        if not satisfies_defeasible(kappa, statement, mode):
            return str(statement)
    return None


def is_model(kappa: RankingFunction, kb: DefeasibleKB, mode=SatisfactionMode.STRICT) -> bool:
    return first_unsatisfied(kappa, kb, mode) is None


def kappa_accepts(kappa: RankingFunction, statement: Statement, mode=SatisfactionMode.STRICT) -> bool:
    """Acceptance of any statement kind."""
    if is_classical(statement):
        return satisfies_classical(kappa, statement)
    if isinstance(statement, QDCI):
        return satisfies_qdci(kappa, statement)
    return satisfies_dci(kappa, statement, mode)
