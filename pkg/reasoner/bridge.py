"""Translations between c-representations and weighted knowledge bases.

Besides the four translations this module decides (strong) c-compatibility
of weighted KBs and runs the instance-level verification that every bridge
between the two semantics holds on a concrete KB.
"""

import enum
import logging
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

from schemas import CheckResult, VerificationReport

from .cost import EntailmentMode, cost, cost_table, entails, optimal_cost
from .crep import (
    CRepresentation,
    SearchBudget,
    build,
    iter_c_representations,
    kappa_entails,
)
from .errors import (
    InvariantViolation,
    ReasonerError,
    SizeLimitError,
    TranslationError,
    UnsatisfiableStrictPartError,
)
from .herbrand import all_interpretations, extension_mask
from .ranking import (
    RankingFunction,
    SatisfactionMode,
    first_unsatisfied,
    satisfies_classical,
)
from .syntax import (
    DCI,
    GCI,
    INF,
    And,
    Atomic,
    ConceptAssertion,
    DefeasibleKB,
    KnowledgeBase,
    Nominal,
    Not,
    RoleAssertion,
    Statement,
    WeightedKB,
    format_weight,
)

logger = logging.getLogger(__name__)


class TranslationKind(str, enum.Enum):
    TO_WKB = "to-wkb"
    QUANTIFIED = "quantified"
    OPEN = "open"
    STRICT_ABOX = "strict-abox"


# Translations

def to_wkb(crep: CRepresentation) -> WeightedKB:
    """Weighted KB whose strict part is the KB's and whose weak GCIs carry the impact factors."""
    kb = crep.kb
    weights = {axiom: INF for axiom in kb.strict_axioms()}
    tbox = list(kb.tbox)
    for dci, eta in zip(kb.dbox, crep.eta):
        gci = GCI(dci.sub, dci.sup)
        if gci in weights:
            raise TranslationError(f"'{dci}' translates to '{gci}', which is already in the KB")
        weights[gci] = eta
        tbox.append(gci)
    return WeightedKB(kb.vocab, tuple(tbox), kb.abox, weights)


def strict_abox_translation(wkb: WeightedKB) -> WeightedKB:
    """Move finite-weight concept assertions a : C into the TBox as {a} <= C."""
    tbox = list(wkb.tbox)
    abox = []
    weights = {g: wkb.weights[g] for g in wkb.tbox}
    for assertion in wkb.abox:
        weight = wkb.weights[assertion]
        if weight == INF:
            abox.append(assertion)
            weights[assertion] = weight
            continue
        if isinstance(assertion, RoleAssertion):
            raise TranslationError(
                f"finite-weight role assertion '{assertion}' [{weight}] has no strict-ABox translation"
            )
        gci = GCI(Nominal(assertion.individual), assertion.concept)
        if gci in weights:
            raise TranslationError(f"'{assertion}' translates to '{gci}', which is already in the TBox")
        tbox.append(gci)
        weights[gci] = weight
    return WeightedKB(wkb.vocab, tuple(tbox), tuple(abox), weights)


def _require_strict_abox(wkb: WeightedKB) -> None:
    if not wkb.has_strict_abox:
        weak = next(a for a in wkb.abox if wkb.weights[a] != INF)
        raise TranslationError(
            f"the ABox is not strict ('{weak}' has weight {format_weight(wkb.weights[weak])}); "
            "apply the strict-ABox translation first"
        )


def _translate(wkb: WeightedKB, dbox: Sequence[DCI], impacts: Sequence[int]) -> CRepresentation:
    _require_strict_abox(wkb)
    optc = optimal_cost(wkb)
    if optc == INF:
        raise UnsatisfiableStrictPartError("every interpretation violates an infinite-weight axiom")
    kb = DefeasibleKB(wkb.vocab, wkb.strict_tbox, tuple(dbox), wkb.abox, tuple(impacts))
    return build(kb, impacts, kappa0=-optc, allow_zero=True)


def open_translation(wkb: WeightedKB) -> CRepresentation:
    """One DCI per finite-weight GCI, with the weight as impact factor."""
    weak = wkb.weak_tbox
    return _translate(wkb, [DCI(g.sub, g.sup) for g in weak], [wkb.weights[g] for g in weak])


def quantified_translation(wkb: WeightedKB) -> CRepresentation:
    """One nominal-guarded DCI {a} & C ~< D per finite-weight GCI and individual."""
    dbox, impacts = [], []
    for g in wkb.weak_tbox:
        for a in wkb.vocab.individual_names:
            dbox.append(DCI(And(Nominal(a), g.sub), g.sup))
            impacts.append(wkb.weights[g])
    return _translate(wkb, dbox, impacts)


def translate(kb: KnowledgeBase, kind, eta: Optional[Sequence[int]] = None):
    """Dispatch for the CLI; returns a WeightedKB or a CRepresentation."""
    kind = TranslationKind(kind)
    if kind is TranslationKind.TO_WKB:
        if not isinstance(kb, DefeasibleKB):
            raise TranslationError("to-wkb translates a defeasible KB")
        eta = eta if eta is not None else kb.hinted_eta
        if eta is None:
            raise TranslationError("to-wkb needs impact factors: pass --eta or annotate every DCI")
        return to_wkb(build(kb, eta))
    if not isinstance(kb, WeightedKB):
        raise TranslationError(f"{kind.value} translates a weighted KB")
    if kind is TranslationKind.STRICT_ABOX:
        return strict_abox_translation(kb)
    if kind is TranslationKind.OPEN:
        return open_translation(kb)
    return quantified_translation(kb)


# Compatibility

def _least_cost(table, vocab, accept: Callable) -> float:
    return min((c for w, c in zip(all_interpretations(vocab), table) if c != INF and accept(w)), default=INF)


def compatibility_witness(wkb: WeightedKB, strong: bool = False) -> Optional[str]:
    """The first weak GCI (and individual, when ``strong``) breaking c-compatibility."""
    _require_strict_abox(wkb)
    table = cost_table(wkb)
    vocab = wkb.vocab
    for g in wkb.weak_tbox:
        verified, falsified = And(g.sub, g.sup), And(g.sub, Not(g.sup))
        if strong:
            for j, a in enumerate(wkb.vocab.individual_names):
                left = _least_cost(table, vocab, lambda w: extension_mask(w, verified) >> j & 1)
                right = _least_cost(table, vocab, lambda w: extension_mask(w, falsified) >> j & 1)
                if not left < right:
                    return (f"{g} at {a}: least cost with {a} : {verified} is {format_weight(left)}, "
                            f"with {a} : {falsified} it is {format_weight(right)}")
        else:
            left = _least_cost(table, vocab, lambda w: extension_mask(w, verified) != 0)
            right = _least_cost(table, vocab, lambda w: extension_mask(w, falsified) != 0)
            if not left < right:
                return (f"{g}: least cost with an instance of {verified} is {format_weight(left)}, "
                        f"with an instance of {falsified} it is {format_weight(right)}")
    return None


def is_c_compatible(wkb: WeightedKB) -> bool:
    return compatibility_witness(wkb) is None


def is_strongly_c_compatible(wkb: WeightedKB) -> bool:
    return compatibility_witness(wkb, strong=True) is None


def relative_cost_witness(wkb: WeightedKB, kappa: RankingFunction) -> Optional[str]:
    """Two interpretations ordered differently by cost and by rank, or None."""
    table = cost_table(wkb)
    worlds = all_interpretations(wkb.vocab)
    by_cost = {}
    for w, c, r in zip(worlds, table, kappa.table):
        first = by_cost.setdefault(c, (w, r))
        if first[1] != r:
            return f"{first[0]} and {w} both cost {format_weight(c)} but rank {format_weight(first[1])} and {format_weight(r)}"
    levels = sorted(by_cost.items(), key=lambda item: item[0])
    for (c1, (w1, r1)), (c2, (w2, r2)) in zip(levels, levels[1:]):
        if not r1 < r2:
            return f"{w1} costs less than {w2} ({format_weight(c1)} < {format_weight(c2)}) but ranks {format_weight(r1)}, {format_weight(r2)}"
    return None


def equivalent_relative_cost(wkb: WeightedKB, kappa: RankingFunction) -> bool:
    """kappa(I) < kappa(J) iff cost(I) < cost(J), for all interpretations I, J."""
    return relative_cost_witness(wkb, kappa) is None


# Verification

def literals(vocab) -> List:
    result = []
    for name in vocab.concept_names:
        result.extend([Atomic(name), Not(Atomic(name))])
    return result


def query_set(kb: KnowledgeBase) -> Tuple[List[Statement], List[DCI]]:
    """Classical and defeasible queries: literal assertions, literal inclusions, and the KB's own statements."""
    vocab = kb.vocab
    lits = literals(vocab)
    classical: List[Statement] = [ConceptAssertion(a, lit) for a in vocab.individual_names for lit in lits]
    classical += [
        RoleAssertion(a, b, r)
        for r in vocab.role_names for a in vocab.individual_names for b in vocab.individual_names
    ]
    classical += [GCI(x, y) for x in lits for y in lits if x != y]
    defeasible = [DCI(x, y) for x in lits for y in lits if x != y]
    own = list(kb.tbox) + list(kb.abox)
    if isinstance(kb, DefeasibleKB):
        defeasible += [d for d in kb.dbox if isinstance(d, DCI)]
    else:
        own += [DCI(g.sub, g.sup) for g in kb.weak_tbox]
    for statement in own:
        target = defeasible if isinstance(statement, DCI) else classical
        if statement not in target:
            target.append(statement)
    return classical, defeasible


@dataclass
class _Instance:
    """Everything the checks look at, derived once from the input KB."""

    source: KnowledgeBase
    creps: List[CRepresentation]
    wkbs: List[WeightedKB]
    family: List[CRepresentation]
    family_kb: Optional[DefeasibleKB]


def _pass(name: str, details: str = "") -> CheckResult:
    return CheckResult(name=name, status="pass", details=details)


def _fail(name: str, details: str, witness) -> CheckResult:
    return CheckResult(name=name, status="fail", details=details, witness=str(witness))


def _na(name: str, details: str) -> CheckResult:
    return CheckResult(name=name, status="n/a", details=details)


def _eta_text(crep: CRepresentation) -> str:
    return f"eta = ({', '.join(map(str, crep.eta))}), kappa0 = {crep.kappa0}"


def _check_modelhood(name, inst: _Instance, budget: SearchBudget) -> CheckResult:
    """Supplied rankings may fail; a searched one that is not a model is a bug."""
    hinted = inst.source.hinted_eta if isinstance(inst.source, DefeasibleKB) else None
    supplied = [c for c in inst.creps if c.eta == hinted]
    searched = [c for c in inst.family if all(c.eta != s.eta for s in supplied)]
    if not supplied and not searched:
        return _na(name, f"no c-representation with eta <= {budget.eta_max}")
    for crep in supplied:
        reason = first_unsatisfied(crep.ranking, crep.kb, budget.mode)
        if reason is not None:
            return _fail(name, f"{_eta_text(crep)} is not a model of the KB", reason)
    for crep in searched:
        reason = first_unsatisfied(crep.ranking, crep.kb, budget.mode)
        if reason is not None:
            raise InvariantViolation(f"search returned {_eta_text(crep)}, which does not satisfy '{reason}'")
    return _pass(name, f"{len(supplied) + len(searched)} ranking(s) are models")


def _check_cost_is_rank_minus_offset(name, inst: _Instance, budget) -> CheckResult:
    if not inst.creps:
        return _na(name, "no c-representation to check")
    for crep in inst.creps:
        wkb = to_wkb(crep)
        for w, r in crep.ranking.items():
            expected = INF if r == INF else r - crep.kappa0
            if cost(wkb, w) != expected:
                return _fail(name, f"{_eta_text(crep)}: cost {format_weight(cost(wkb, w))}, "
                             f"rank minus kappa0 {format_weight(expected)}", w)
    return _pass(name)


def _each_wkb(name, inst: _Instance, check: Callable[[WeightedKB], Optional[Tuple[str, object]]]) -> CheckResult:
    if not inst.wkbs:
        return _na(name, "no weighted KB with a strict ABox")
    for wkb in inst.wkbs:
        try:
            outcome = check(wkb)
        except UnsatisfiableStrictPartError as exc:
            return _na(name, exc.detail)
        if outcome is not None:
            return _fail(name, outcome[0], outcome[1])
    return _pass(name)


def _check_quantified_equals_open(name, inst, budget) -> CheckResult:
    def check(wkb):
        quantified, opened = quantified_translation(wkb), open_translation(wkb)
        for w, r in opened.ranking.items():
            if quantified.ranking(w) != r:
                return f"quantified rank {format_weight(quantified.ranking(w))}, open rank {format_weight(r)}", w
        return None
    return _each_wkb(name, inst, check)


def _check_rank_is_cost_plus_offset(name, inst, budget) -> CheckResult:
    def check(wkb):
        opened = open_translation(wkb)
        for w, r in opened.ranking.items():
            c = cost(wkb, w)
            expected = INF if c == INF else c + opened.kappa0
            if r != expected:
                return f"rank {format_weight(r)}, cost plus kappa0 {format_weight(expected)}", w
        return None
    return _each_wkb(name, inst, check)


def _check_strong_implies_compatible(name, inst, budget) -> CheckResult:
    def check(wkb):
        if is_strongly_c_compatible(wkb) and not is_c_compatible(wkb):
            return "strongly c-compatible but not c-compatible", compatibility_witness(wkb)
        return None
    return _each_wkb(name, inst, check)


def _check_compatibility_iff_model(name, inst, budget) -> CheckResult:
    def check(wkb):
        pairs = (
            ("strongly c-compatible", compatibility_witness(wkb, strong=True), quantified_translation(wkb)),
            ("c-compatible", compatibility_witness(wkb), open_translation(wkb)),
        )
        for label, witness, crep in pairs:
            unsatisfied = first_unsatisfied(crep.ranking, crep.kb, SatisfactionMode.STRICT)
            if (witness is None) != (unsatisfied is None):
                return (f"{label} is {witness is None} but the translation is "
                        f"{'' if unsatisfied is None else 'not '}a model", witness or unsatisfied)
        return None
    return _each_wkb(name, inst, check)


def _check_round_trip(name, inst: _Instance, budget) -> CheckResult:
    def check(wkb):
        back = to_wkb(open_translation(wkb))
        if not back.equivalent_to(wkb):
            return ("translating to a c-representation and back changes the weighted KB",
                    "; ".join(map(str, back.tbox)))
        return None
    result = _each_wkb(name, inst, check)
    if result.status == "fail":
        return result
    for crep in inst.creps:
        again = open_translation(to_wkb(crep))
        if again.ranking != crep.ranking:
            w = next(w for w, r in crep.ranking.items() if again.ranking(w) != r)
            return _fail(name, f"{_eta_text(crep)}: ranking changes after translating to a weighted KB and back", w)
    if result.status == "n/a" and not inst.creps:
        return result
    return _pass(name)


def _check_strict_abox_preserves_cost(name, inst: _Instance, budget) -> CheckResult:
    source = inst.source if isinstance(inst.source, WeightedKB) else None
    candidates = ([source] if source is not None else []) + inst.wkbs
    if not candidates:
        return _na(name, "no weighted KB")
    for wkb in candidates:
        translated = strict_abox_translation(wkb)
        for w in all_interpretations(wkb.vocab):
            if cost(wkb, w) != cost(translated, w):
                return _fail(name, f"cost {format_weight(cost(wkb, w))} becomes "
                             f"{format_weight(cost(translated, w))}", w)
    return _pass(name)


def _check_equivalent_relative_cost(name, inst, budget) -> CheckResult:
    def check(wkb):
        witness = relative_cost_witness(wkb, open_translation(wkb).ranking)
        return None if witness is None else ("cost and rank order interpretations differently", witness)
    return _each_wkb(name, inst, check)


def _check_optimal_certain(name, inst, budget) -> CheckResult:
    def check(wkb):
        kappa = open_translation(wkb).ranking
        table = cost_table(wkb)
        for q in query_set(wkb)[0]:
            if entails(wkb, EntailmentMode.OPT_CERTAIN, q, table=table) != satisfies_classical(kappa, q):
                return "opt-certain entailment and kappa-entailment disagree", q
        return None
    return _each_wkb(name, inst, check)


def _check_optimal_possible(name, inst, budget) -> CheckResult:
    def check(wkb):
        kappa = open_translation(wkb).ranking
        table = cost_table(wkb)
        individuals = wkb.vocab.individual_names
        for q in query_set(wkb)[0]:
            possible = None
            if isinstance(q, ConceptAssertion):
                possible = not satisfies_classical(kappa, ConceptAssertion(q.individual, Not(q.concept)))
            elif isinstance(q, GCI):
                possible = all(
                    not satisfies_classical(kappa, ConceptAssertion(a, And(q.sub, Not(q.sup))))
                    for a in individuals
                )
            if possible is not None and entails(wkb, EntailmentMode.OPT_POSSIBLE, q, table=table) != possible:
                return "opt-possible entailment and the negated kappa-entailment disagree", q
        return None
    return _each_wkb(name, inst, check)


def _k_possible_witness(wkb: WeightedKB, dci: DCI, table) -> Optional[int]:
    """Least k with a : C & D k-possible for some a and b : C & !D k-possible for no b."""
    finite = [c for c in table if c != INF]
    verified, falsified = And(dci.sub, dci.sup), And(dci.sub, Not(dci.sup))
    individuals = wkb.vocab.individual_names
    for k in range(max(finite, default=0) + 1):
        some = any(entails(wkb, EntailmentMode.K_POSSIBLE, ConceptAssertion(a, verified), k, table)
                   for a in individuals)
        none = not any(entails(wkb, EntailmentMode.K_POSSIBLE, ConceptAssertion(b, falsified), k, table)
                       for b in individuals)
        if some and none:
            return k
    return None


def _check_dci_iff_k_possible(name, inst: _Instance, budget) -> CheckResult:
    models = [c for c in inst.creps if c.is_model]
    if not models:
        return _na(name, "no c-representation that is a model")
    for crep in models:
        wkb = to_wkb(crep)
        table = cost_table(wkb)
        strict = CRepresentation(crep.kb, crep.eta, crep.kappa0, crep.ranking, SatisfactionMode.STRICT)
        for q in query_set(crep.kb)[1]:
            k = _k_possible_witness(wkb, q, table)
            if kappa_entails(strict, q) != (k is not None):
                return _fail(name, f"{_eta_text(crep)}: kappa-entailment is {kappa_entails(strict, q)}, "
                             f"a witnessing k {'exists' if k is not None else 'does not exist'}", q)
    return _pass(name)


def _check_c_inference_bridge(name, inst: _Instance, budget) -> CheckResult:
    if not inst.family:
        return _na(name, f"no c-representation with eta <= {budget.eta_max}")
    translated = [(c, to_wkb(c)) for c in inst.family]
    tables = [cost_table(w) for _, w in translated]
    # only a c-compatible weighted KB contributes its own ranking to the family
    source = None
    if isinstance(inst.source, WeightedKB) and inst.creps[0].is_model:
        source = inst.wkbs[0]
    for q in query_set(inst.family_kb)[0]:
        accepted = [kappa_entails(c, q) for c, _ in translated]
        optimal = [entails(w, EntailmentMode.OPT_CERTAIN, q, table=t) for (_, w), t in zip(translated, tables)]
        if all(accepted) != all(optimal):
            return _fail(name, "skeptical c-inference and opt-certain entailment over all translations disagree", q)
        if any(accepted) != any(optimal):
            return _fail(name, "credulous c-inference and opt-certain entailment over some translation disagree", q)
        if source is not None and all(accepted) and not entails(source, EntailmentMode.OPT_CERTAIN, q):
            return _fail(name, "skeptically c-inferred but not opt-certainly entailed by the weighted KB", q)
    return CheckResult(
        name=name, status="within-bound",
        details=f"agrees on {len(inst.family)} c-representation(s) with eta <= {budget.eta_max}",
    )


CHECKS = (
    ("modelhood", _check_modelhood),
    ("cost-equals-rank-minus-offset", _check_cost_is_rank_minus_offset),
    ("quantified-equals-open", _check_quantified_equals_open),
    ("rank-equals-cost-plus-offset", _check_rank_is_cost_plus_offset),
    ("strong-implies-compatible", _check_strong_implies_compatible),
    ("compatibility-iff-model", _check_compatibility_iff_model),
    ("round-trip", _check_round_trip),
    ("strict-abox-preserves-cost", _check_strict_abox_preserves_cost),
    ("equivalent-relative-cost", _check_equivalent_relative_cost),
    ("optimal-certain-iff-kappa", _check_optimal_certain),
    ("optimal-possible-iff-not-kappa", _check_optimal_possible),
    ("dci-iff-k-possible", _check_dci_iff_k_possible),
    ("skeptical-credulous-within-bound", _check_c_inference_bridge),
)


def _instance(kb: KnowledgeBase, budget: SearchBudget) -> _Instance:
    if isinstance(kb, DefeasibleKB):
        creps: List[CRepresentation] = []
        if kb.hinted_eta is not None:
            creps.append(build(kb, kb.hinted_eta, allow_zero=True, mode=budget.mode))
        family = list(iter_c_representations(kb, budget))
        if family and all(family[0].eta != c.eta for c in creps):
            creps.append(family[0])
        wkbs = []
        for crep in creps:
            try:
                wkbs.append(to_wkb(crep))
            except TranslationError as exc:
                logger.info("skipping weighted-KB checks for %s: %s", _eta_text(crep), exc.detail)
        return _Instance(kb, creps, wkbs, family, kb)

    wkb = strict_abox_translation(kb)
    opened = open_translation(wkb)
    opened = CRepresentation(opened.kb, opened.eta, opened.kappa0, opened.ranking, budget.mode)
    family = list(iter_c_representations(opened.kb, budget))
    if opened.is_model and all(c.eta != opened.eta for c in family):
        family.append(opened)
    return _Instance(kb, [opened], [wkb], family, opened.kb)


def verify_instance(kb: KnowledgeBase, budget: Optional[SearchBudget] = None) -> VerificationReport:
    """Run every bridge check on ``kb`` in a fixed order.

    A check that does not apply (no c-representation, unsatisfiable strict
    part, untranslatable ABox) reports ``n/a``; failures carry a witness.
    """
    budget = budget or SearchBudget()
    try:
        inst = _instance(kb, budget)
    except (TranslationError, UnsatisfiableStrictPartError) as exc:
        logger.info("instance not translatable: %s", exc.detail)
        return VerificationReport(checks=[_na(name, exc.detail) for name, _ in CHECKS])

    checks = []
    for name, check in CHECKS:
        try:
            result = check(name, inst, budget)
        except (SizeLimitError, InvariantViolation):
            raise
        except (TranslationError, UnsatisfiableStrictPartError) as exc:
            result = _na(name, exc.detail)
        except ReasonerError as exc:
            logger.error("check %s raised: %s", name, exc.detail)
            result = CheckResult(name=name, status="fail", details=f"error: {exc.detail}")
        logger.debug("check %s: %s", name, result.status)
        checks.append(result)
    return VerificationReport(checks=checks)
