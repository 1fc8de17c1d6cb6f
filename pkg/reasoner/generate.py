"""Seeded generation of small random knowledge bases.

Instances stay within |U| <= 2, three concept names, one role, three DBox
inclusions and weights or impact factors up to 3, so that every verification
check runs exhaustively.
"""

import logging
import random
from typing import Iterator, List, Optional, Tuple

from .syntax import (
    DCI,
    GCI,
    INF,
    QDCI,
    And,
    Atomic,
    Bot,
    Concept,
    ConceptAssertion,
    DefeasibleKB,
    Exists,
    Forall,
    KnowledgeBase,
    Nominal,
    Not,
    Or,
    RoleAssertion,
    Top,
    Vocabulary,
    WeightedKB,
)

logger = logging.getLogger(__name__)

CONCEPT_NAMES = ("A", "B", "C")
ROLE_NAMES = ("r",)
INDIVIDUAL_NAMES = ("a", "b")
MAX_WEIGHT = 3


def random_vocabulary(rng: random.Random, max_individuals: int = 2, max_concepts: int = 3,
                      max_roles: int = 1) -> Vocabulary:
    return Vocabulary(
        CONCEPT_NAMES[:rng.randint(1, max_concepts)],
        ROLE_NAMES[:rng.randint(0, max_roles)],
        INDIVIDUAL_NAMES[:rng.randint(1, max_individuals)],
    )


def random_concept(rng: random.Random, vocab: Vocabulary, depth: int = 2) -> Concept:
    """Mostly literals, occasionally a connective, a restriction, a nominal or a constant."""
    roll = rng.random()
    if depth <= 0 or roll < 0.45:
        name = Atomic(rng.choice(vocab.concept_names))
        return Not(name) if rng.random() < 0.3 else name
    if roll < 0.5:
        return rng.choice((Top(), Bot()))
    if roll < 0.55:
        return Nominal(rng.choice(vocab.individual_names))
    if roll < 0.7 and vocab.role_names:
        role = rng.choice(vocab.role_names)
        filler = random_concept(rng, vocab, depth - 1)
        return Exists(role, filler) if rng.random() < 0.5 else Forall(role, filler)
    if roll < 0.75:
        return Not(random_concept(rng, vocab, depth - 1))
    left, right = random_concept(rng, vocab, depth - 1), random_concept(rng, vocab, depth - 1)
    return And(left, right) if rng.random() < 0.6 else Or(left, right)


def _distinct(make, count: int, forbidden=()) -> List:
    result: List = []
    for _ in range(count * 4):
        if len(result) == count:
            break
        item = make()
        if item not in result and item not in forbidden:
            result.append(item)
    return result


def _random_assertions(rng: random.Random, vocab: Vocabulary, count: int):
    def make():
        if vocab.role_names and rng.random() < 0.25:
            return RoleAssertion(rng.choice(vocab.individual_names), rng.choice(vocab.individual_names),
                                 rng.choice(vocab.role_names))
        return ConceptAssertion(rng.choice(vocab.individual_names), random_concept(rng, vocab, 1))
    return _distinct(make, count)


def _weight(rng: random.Random, infinite_share: float):
    return INF if rng.random() < infinite_share else rng.randint(1, MAX_WEIGHT)


def random_weighted_kb(rng: random.Random, vocab: Optional[Vocabulary] = None) -> WeightedKB:
    """A weighted KB whose ABox is strict most of the time."""
    vocab = vocab or random_vocabulary(rng)
    tbox = _distinct(lambda: GCI(random_concept(rng, vocab), random_concept(rng, vocab)), rng.randint(1, 3))
    abox = _random_assertions(rng, vocab, rng.randint(0, 2))
    weights = {g: _weight(rng, 0.2) for g in tbox}
    for a in abox:
        if isinstance(a, RoleAssertion) or rng.random() < 0.8:
            weights[a] = INF
        else:
            weights[a] = rng.randint(0, MAX_WEIGHT)
    return WeightedKB(vocab, tuple(tbox), tuple(abox), weights)


def random_defeasible_kb(rng: random.Random, vocab: Optional[Vocabulary] = None,
                         quantified: bool = False) -> DefeasibleKB:
    """A defeasible KB with an impact hint on every DBox inclusion."""
    vocab = vocab or random_vocabulary(rng)
    tbox = _distinct(lambda: GCI(random_concept(rng, vocab, 1), random_concept(rng, vocab, 1)), rng.randint(0, 1))

    def make_dci():
        sub, sup = random_concept(rng, vocab), random_concept(rng, vocab)
        return QDCI(sub, sup) if quantified and rng.random() < 0.3 else DCI(sub, sup)

    dbox = _distinct(make_dci, rng.randint(1, 3))
    # keep the classical counterparts of DBox inclusions out of the TBox
    counterparts = {GCI(d.sub, d.sup) for d in dbox}
    tbox = [g for g in tbox if g not in counterparts]
    if quantified:
        dbox = [d for i, d in enumerate(dbox)
                if GCI(d.sub, d.sup) not in {GCI(e.sub, e.sup) for e in dbox[:i]}]
    abox = _random_assertions(rng, vocab, rng.randint(0, 2))
    impacts = tuple(rng.randint(1, MAX_WEIGHT) for _ in dbox)
    return DefeasibleKB(vocab, tuple(tbox), tuple(dbox), tuple(abox), impacts)


def random_instances(seed: int, count: int) -> Iterator[Tuple[str, KnowledgeBase]]:
    """Alternate weighted and defeasible KBs; labels name the seed and position."""
    rng = random.Random(seed)
    for i in range(count):
        if i % 2 == 0:
            kb: KnowledgeBase = random_weighted_kb(rng)
            label = f"seed {seed} #{i} weighted"
        else:
            kb = random_defeasible_kb(rng)
            label = f"seed {seed} #{i} defeasible"
        logger.debug("generated %s", label)
        yield label, kb
