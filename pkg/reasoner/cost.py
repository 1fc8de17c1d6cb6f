"""Cost-based semantics for weighted knowledge bases."""

import enum
import logging
from typing import FrozenSet, Iterator, List, Optional, Sequence, Tuple

from .errors import UsageError
from .herbrand import (
    HerbrandInterpretation,
    all_interpretations,
    count_members,
    extension,
    satisfies,
)
from .syntax import (
    GCI,
    INF,
    And,
    Assertion,
    ExtendedNat,
    Not,
    Statement,
    WeightedKB,
    ext_min,
    require_classical,
)

logger = logging.getLogger(__name__)


class EntailmentMode(str, enum.Enum):
    K_CERTAIN = "kc"
    K_POSSIBLE = "kp"
    OPT_CERTAIN = "optc"
    OPT_POSSIBLE = "optp"

    @property
    def bounded(self) -> bool:
        return self in (EntailmentMode.K_CERTAIN, EntailmentMode.K_POSSIBLE)

    @property
    def certain(self) -> bool:
        return self in (EntailmentMode.K_CERTAIN, EntailmentMode.OPT_CERTAIN)


def violation_concept(gci: GCI):
    """C & !D, the concept whose instances violate C <= D."""
    return And(gci.sub, Not(gci.sup))


def gci_violations(interp: HerbrandInterpretation, gci: GCI) -> FrozenSet[str]:
    """Individuals that are in C but not in D."""
    return extension(interp, violation_concept(gci))


def abox_violations(interp: HerbrandInterpretation, abox: Sequence[Assertion]) -> Tuple[Assertion, ...]:
    """Assertions of ``abox`` that ``interp`` does not satisfy, in ABox order."""
    return tuple(a for a in abox if not satisfies(interp, a))


def cost(wkb: WeightedKB, interp: HerbrandInterpretation) -> ExtendedNat:
    """Weighted sum of violations; infinite as soon as an infinite-weight axiom is violated."""
    total = 0
    for gci in wkb.tbox:
        violated = count_members(interp, violation_concept(gci))
        if violated:
            weight = wkb.weights[gci]
            if weight == INF:
                return INF
            total += weight * violated
    for assertion in wkb.abox:
        if not satisfies(interp, assertion):
            weight = wkb.weights[assertion]
            if weight == INF:
                return INF
            total += weight
    return total


def cost_table(wkb: WeightedKB) -> List[ExtendedNat]:
    """Cost of every interpretation, indexed by interpretation index."""
    return [cost(wkb, interp) for interp in all_interpretations(wkb.vocab)]


def optimal_cost(wkb: WeightedKB, table: Optional[Sequence[ExtendedNat]] = None) -> ExtendedNat:
    """Least cost over all interpretations; ``inf`` when every one violates an infinite weight."""
    if table is None:
        table = cost_table(wkb)
    return ext_min(table)


def _qualifying(wkb: WeightedKB, mode: EntailmentMode, k: Optional[int],
                table: Sequence[ExtendedNat]) -> Iterator[HerbrandInterpretation]:
    worlds = all_interpretations(wkb.vocab)
    if mode.bounded:
        return (w for w, c in zip(worlds, table) if c != INF and c <= k)
    optc = optimal_cost(wkb, table)
    return (w for w, c in zip(worlds, table) if c == optc)


def entails(wkb: WeightedKB, mode, query: Statement, k: Optional[int] = None,
            table: Optional[Sequence[ExtendedNat]] = None) -> bool:
    """Decide one of the four cost-based entailment relations.

    Bounded modes look at the interpretations with cost at most ``k``; the
    optimal modes at those whose cost equals the optimal cost. Certain modes
    are vacuously true over no interpretations, possible modes false.
    """
    mode = EntailmentMode(mode)
    require_classical(query)
    if mode.bounded:
        if k is None:
            raise UsageError(f"mode {mode.value} needs a cost bound k")
        if k < 0:
            raise UsageError(f"cost bound must be non-negative, got {k}")
    elif k is not None:
        raise UsageError(f"mode {mode.value} takes no cost bound")
    if table is None:
        table = cost_table(wkb)
    worlds = _qualifying(wkb, mode, k, table)
    logger.debug("%s entailment of '%s' with k = %s", mode.value, query, k)
    if mode.certain:
        return all(satisfies(w, query) for w in worlds)
    return any(satisfies(w, query) for w in worlds)


def classically_entails(wkb: WeightedKB, query: Statement) -> bool:
    """``query`` holds in every Herbrand model of the KB, weights ignored."""
    require_classical(query)
    axioms = list(wkb.axioms())
    return all(
        satisfies(interp, query)
        for interp in all_interpretations(wkb.vocab)
        if all(satisfies(interp, a) for a in axioms)
    )


def is_extension(small: WeightedKB, large: WeightedKB) -> bool:
    """Every axiom of ``small`` occurs in ``large`` with the same weight."""
    if small.vocab != large.vocab:
        return False
    return all(a in large.weights and large.weights[a] == small.weights[a] for a in small.axioms())
