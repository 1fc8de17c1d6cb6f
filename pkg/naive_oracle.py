"""
Set-comprehension re-implementation of the semantics, used as a test oracle.

Works on the name views of an interpretation (concept_ext / role_ext) and
never touches the bit masks of the engine.
"""

import itertools
import math

from reasoner.syntax import (
    GCI,
    And,
    Atomic,
    Bot,
    ConceptAssertion,
    Exists,
    Forall,
    Nominal,
    Not,
    Or,
    RoleAssertion,
    Top,
)

INF = math.inf


def ext(interp, concept):
    U = set(interp.vocab.individual_names)
    C = interp.concept_ext
    R = interp.role_ext
    if isinstance(concept, Top):
        return U
    if isinstance(concept, Bot):
        return set()
    if isinstance(concept, Atomic):
        return set(C[concept.name])
    if isinstance(concept, Nominal):
        return {concept.individual}
    if isinstance(concept, Not):
        return U - ext(interp, concept.operand)
    if isinstance(concept, And):
        return ext(interp, concept.left) & ext(interp, concept.right)
    if isinstance(concept, Or):
        return ext(interp, concept.left) | ext(interp, concept.right)
    filler = ext(interp, concept.filler)
    succ = {x: {y for (s, y) in R[concept.role] if s == x} for x in U}
    if isinstance(concept, Exists):
        return {x for x in U if succ[x] & filler}
    if isinstance(concept, Forall):
        return {x for x in U if succ[x] <= filler}
    raise TypeError(concept)


def holds(interp, statement):
    if isinstance(statement, GCI):
        return ext(interp, statement.sub) <= ext(interp, statement.sup)
    if isinstance(statement, ConceptAssertion):
        return statement.individual in ext(interp, statement.concept)
    if isinstance(statement, RoleAssertion):
        return (statement.subject, statement.object) in interp.role_ext[statement.role]
    raise TypeError(statement)


def cost(wkb, interp):
    total = 0
    for g in wkb.tbox:
        n = len(ext(interp, g.sub) - ext(interp, g.sup))
        if n:
            total += wkb.weights[g] * n
    for a in wkb.abox:
        if not holds(interp, a):
            total += wkb.weights[a]
    return total


def entails(wkb, worlds, mode, query, k=None):
    costs = [cost(wkb, w) for w in worlds]
    return decide(costs, [holds(w, query) for w in worlds], mode, k)


def decide(costs, answers, mode, k=None):
    """Entailment from per-interpretation costs and query truth values."""
    if mode in ("kc", "kp"):
        chosen = [h for h, c in zip(answers, costs) if c <= k]
    else:
        best = min(costs)
        chosen = [h for h, c in zip(answers, costs) if c == best]
    return all(chosen) if mode in ("kc", "optc") else any(chosen)


def rank_of_assertion(ranked, individual, concept):
    return min((r for w, r in ranked if individual in ext(w, concept)), default=INF)


def rank_of_concept(ranked, concept):
    return min((r for w, r in ranked if ext(w, concept)), default=INF)


def strict_rank_dci(ranked, individuals, sub, sup):
    """Acceptance of sub ~< sup with representatives and the strict inequality."""
    ver, fal = And(sub, sup), And(sub, Not(sup))
    best = rank_of_concept(ranked, ver)
    weak = [
        a for a in individuals
        if rank_of_assertion(ranked, a, ver) < INF
        and rank_of_assertion(ranked, a, ver) == best
        and rank_of_assertion(ranked, a, ver) < rank_of_assertion(ranked, a, fal)
    ]
    return bool(weak) and best < rank_of_concept(ranked, fal)


def all_extension_maps(vocab):
    """Every (concept map, role map) pair, in no particular order."""
    U = vocab.individual_names
    pairs = list(itertools.product(U, U))
    for cbits in itertools.product([False, True], repeat=len(vocab.concept_names) * len(U)):
        concepts = {
            c: {a for j, a in enumerate(U) if cbits[i * len(U) + j]}
            for i, c in enumerate(vocab.concept_names)
        }
        for rbits in itertools.product([False, True], repeat=len(vocab.role_names) * len(pairs)):
            roles = {
                r: {p for j, p in enumerate(pairs) if rbits[i * len(pairs) + j]}
                for i, r in enumerate(vocab.role_names)
            }
            yield concepts, roles
