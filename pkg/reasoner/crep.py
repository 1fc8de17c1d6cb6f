"""c-representations of defeasible knowledge bases.

The rank of a model of the strict part is ``kappa0`` plus the sum of
``eta[i] * f_i``, where ``f_i`` counts the individuals violating the i-th
DBox inclusion; every other interpretation has rank ``inf``.
"""

import enum
import itertools
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import config

from .errors import (
    ContractViolation,
    ImpactFactorError,
    NormalizationMismatchError,
    UnsatisfiableStrictPartError,
    UsageError,
)
from .herbrand import HerbrandInterpretation, all_interpretations, count_members, satisfies
from .ranking import RankingFunction, SatisfactionMode, first_unsatisfied, kappa_accepts
from .syntax import INF, And, DefeasibleKB, Not, Statement

logger = logging.getLogger(__name__)

Eta = Tuple[int, ...]


@dataclass(frozen=True)
class CRepresentation:
    kb: DefeasibleKB
    eta: Eta
    kappa0: int
    ranking: RankingFunction
    mode: SatisfactionMode = SatisfactionMode.STRICT

    def rank(self, interp: HerbrandInterpretation):
        return self.ranking(interp)

    def unsatisfied(self) -> Optional[str]:
        return first_unsatisfied(self.ranking, self.kb, self.mode)

    @property
    def is_model(self) -> bool:
        return self.unsatisfied() is None


@dataclass(frozen=True)
class SearchBudget:
    eta_max: int = field(default_factory=lambda: config.ETA_MAX)
    mode: SatisfactionMode = SatisfactionMode.STRICT

    def __post_init__(self):
        if self.eta_max < 1:
            raise UsageError(f"eta_max must be at least 1, got {self.eta_max}")


def _check_eta(kb: DefeasibleKB, eta: Sequence[int], allow_zero: bool) -> Eta:
    eta = tuple(eta)
    if len(eta) != len(kb.dbox):
        raise ImpactFactorError(f"{len(eta)} impact factors given for {len(kb.dbox)} DBox inclusions")
    least = 0 if allow_zero else 1
    for value in eta:
        if not isinstance(value, int) or value < least:
            raise ImpactFactorError(f"impact factor {value!r} must be an integer >= {least}")
    return eta


def is_strict_model(kb: DefeasibleKB, interp: HerbrandInterpretation) -> bool:
    return all(satisfies(interp, axiom) for axiom in kb.strict_axioms())


def violation_counts(kb: DefeasibleKB, interp: HerbrandInterpretation) -> Tuple[int, ...]:
    """f_i for every DBox inclusion; quantified inclusions count like open ones."""
    return tuple(count_members(interp, And(d.sub, Not(d.sup))) for d in kb.dbox)


def _penalties(kb: DefeasibleKB) -> List[Optional[Tuple[int, ...]]]:
    """Violation counts per interpretation index, None off the models of the strict part.

    Equal count vectors share one tuple.
    """
    shared = {}
    result = []
    for w in all_interpretations(kb.vocab):
        if is_strict_model(kb, w):
            counts = violation_counts(kb, w)
            result.append(shared.setdefault(counts, counts))
        else:
            result.append(None)
    return result


def _weigh(counts: Tuple[int, ...], eta: Eta) -> int:
    return sum(f * e for f, e in zip(counts, eta))


def raw_penalty(kb: DefeasibleKB, eta: Sequence[int], interp: HerbrandInterpretation) -> int:
    if not is_strict_model(kb, interp):
        raise ContractViolation(f"{interp} violates the strict part; it has no raw penalty")
    return _weigh(violation_counts(kb, interp), tuple(eta))


def _normalization(penalties, eta: Eta) -> int:
    raw = [_weigh(f, eta) for f in penalties if f is not None]
    if not raw:
        raise UnsatisfiableStrictPartError("the strict TBox and ABox have no Herbrand model")
    return -min(raw)


def normalization_constant(kb: DefeasibleKB, eta: Sequence[int]) -> int:
    return _normalization(_penalties(kb), tuple(eta))


def _assemble(kb, eta, kappa0, penalties, mode) -> CRepresentation:
    forced = _normalization(penalties, eta)
    if kappa0 is not None and kappa0 != forced:
        raise NormalizationMismatchError(f"kappa0 = {kappa0} given, but the ranking needs kappa0 = {forced}")
    table = [INF if f is None else forced + _weigh(f, eta) for f in penalties]
    return CRepresentation(kb, eta, forced, RankingFunction(kb.vocab, table), SatisfactionMode(mode))


def build(kb: DefeasibleKB, eta: Sequence[int], kappa0: Optional[int] = None,
          allow_zero: Optional[bool] = None, mode=SatisfactionMode.STRICT) -> CRepresentation:
    """Materialize the c-representation for ``eta``.

    ``kappa0`` is forced by the requirement that some interpretation has rank
    0; a supplied value is only checked against it.
    """
    if allow_zero is None:
        allow_zero = config.ALLOW_ZERO_IMPACT
    eta = _check_eta(kb, eta, allow_zero)
    return _assemble(kb, eta, kappa0, _penalties(kb), mode)


def is_c_representation(kb: DefeasibleKB, eta: Sequence[int], kappa0: Optional[int] = None,
                        mode=SatisfactionMode.STRICT) -> bool:
    return build(kb, eta, kappa0, mode=mode).is_model


def kappa_entails(crep: CRepresentation, query: Statement) -> bool:
    return kappa_accepts(crep.ranking, query, crep.mode)


def iter_c_representations(kb: DefeasibleKB, budget: SearchBudget):
    """Yield every c-representation with impact factors in [1, eta_max], lexicographically."""
    penalties = _penalties(kb)
    candidates = itertools.product(range(1, budget.eta_max + 1), repeat=len(kb.dbox))
    for eta in candidates:
        crep = _assemble(kb, eta, None, penalties, budget.mode)
        if crep.is_model:
            yield crep


def find_c_representations(kb: DefeasibleKB, budget: Optional[SearchBudget] = None) -> List[Tuple[Eta, int]]:
    budget = budget or SearchBudget()
    found = [(c.eta, c.kappa0) for c in iter_c_representations(kb, budget)]
    logger.info("found %d c-representations with eta_max = %d", len(found), budget.eta_max)
    return found


class Quantifier(str, enum.Enum):
    SKEPTICAL = "skeptical"
    CREDULOUS = "credulous"


class Verdict(str, enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    HOLDS_WITHIN_BOUND = "holds-within-bound"
    FAILS_WITHIN_BOUND = "fails-within-bound"
    NO_C_REPRESENTATION = "no-c-representation-within-bound"

    @property
    def positive(self) -> bool:
        return self in (Verdict.HOLDS, Verdict.HOLDS_WITHIN_BOUND)


@dataclass(frozen=True)
class InferenceOutcome:
    verdict: Verdict
    witness: Optional[CRepresentation] = None
    representations: int = 0


def c_inference(kb: DefeasibleKB, query: Statement, quantifier, budget: Optional[SearchBudget] = None) -> InferenceOutcome:
    """Skeptical or credulous c-inference over the bounded family.

    Unqualified verdicts come with a witness c-representation; the qualified
    ones only speak for impact factors up to ``eta_max``.
    """
    quantifier = Quantifier(quantifier)
    budget = budget or SearchBudget()
    seen = 0
    for crep in iter_c_representations(kb, budget):
        seen += 1
        accepted = kappa_entails(crep, query)
        if quantifier is Quantifier.CREDULOUS and accepted:
            return InferenceOutcome(Verdict.HOLDS, crep, seen)
        if quantifier is Quantifier.SKEPTICAL and not accepted:
            return InferenceOutcome(Verdict.FAILS, crep, seen)
    if not seen:
        return InferenceOutcome(Verdict.NO_C_REPRESENTATION)
    if quantifier is Quantifier.CREDULOUS:
        return InferenceOutcome(Verdict.FAILS_WITHIN_BOUND, representations=seen)
    return InferenceOutcome(Verdict.HOLDS_WITHIN_BOUND, representations=seen)
