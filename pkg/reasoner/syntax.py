"""ALCO concept language, statements and knowledge-base value types.

All values here are immutable; structural equality is dataclass equality.
Weights and ranks live in the extended naturals, represented as a plain
``int`` or the float ``INF``.
"""

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, Iterator, Optional, Tuple, Union

from .errors import (
    ContractViolation,
    DuplicateDeclarationError,
    NegativeWeightError,
    UndeclaredNameError,
    UsageError,
)

# Extended naturals: N ∪ {∞}
INF = math.inf
ExtendedNat = Union[int, float]


def is_finite(value: ExtendedNat) -> bool:
    return value != INF


def format_weight(value: ExtendedNat) -> str:
    """Render a weight or rank; infinity renders as ``inf``."""
    return "inf" if value == INF else str(int(value))


def parse_weight(text: str) -> ExtendedNat:
    if text == "inf":
        return INF
    value = int(text)
    if value < 0:
        raise NegativeWeightError(f"negative weight {value}")
    return value


def ext_min(values: Iterable[ExtendedNat]) -> ExtendedNat:
    """Minimum in the extended naturals; the minimum of nothing is infinity."""
    return min(values, default=INF)


# Vocabulary

@dataclass(frozen=True)
class Vocabulary:
    concept_names: Tuple[str, ...] = ()
    role_names: Tuple[str, ...] = ()
    individual_names: Tuple[str, ...] = ()

    def __post_init__(self):
        seen = set()
        for name in self.concept_names + self.role_names + self.individual_names:
            if name in seen:
                raise DuplicateDeclarationError(f"name '{name}' declared more than once")
            seen.add(name)
        if not self.individual_names:
            raise UndeclaredNameError("the vocabulary must declare at least one individual")

    @cached_property
    def concept_index(self) -> Dict[str, int]:
        return {name: i for i, name in enumerate(self.concept_names)}

    @cached_property
    def role_index(self) -> Dict[str, int]:
        return {name: i for i, name in enumerate(self.role_names)}

    @cached_property
    def individual_index(self) -> Dict[str, int]:
        return {name: i for i, name in enumerate(self.individual_names)}

    @property
    def universe(self) -> Tuple[str, ...]:
        return self.individual_names

    def require_concept(self, name: str) -> None:
        if name not in self.concept_index:
            raise UndeclaredNameError(f"'{name}' is not a declared concept name")

    def require_role(self, name: str) -> None:
        if name not in self.role_index:
            raise UndeclaredNameError(f"'{name}' is not a declared role name")

    def require_individual(self, name: str) -> None:
        if name not in self.individual_index:
            raise UndeclaredNameError(f"'{name}' is not a declared individual name")


# Concepts

@dataclass(frozen=True)
class Bot:
    def __str__(self):
        return "bot"


@dataclass(frozen=True)
class Top:
    def __str__(self):
        return "top"


@dataclass(frozen=True)
class Atomic:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Nominal:
    individual: str

    def __str__(self):
        return "{" + self.individual + "}"


@dataclass(frozen=True)
class Not:
    operand: "Concept"

    def __str__(self):
        return render_concept(self)


@dataclass(frozen=True)
class And:
    left: "Concept"
    right: "Concept"

    def __str__(self):
        return render_concept(self)


@dataclass(frozen=True)
class Or:
    left: "Concept"
    right: "Concept"

    def __str__(self):
        return render_concept(self)


@dataclass(frozen=True)
class Exists:
    role: str
    filler: "Concept"

    def __str__(self):
        return render_concept(self)


@dataclass(frozen=True)
class Forall:
    role: str
    filler: "Concept"

    def __str__(self):
        return render_concept(self)


Concept = Union[Bot, Top, Atomic, Nominal, Not, And, Or, Exists, Forall]

_OR, _AND, _UNARY = 1, 2, 3


def render_concept(concept: Concept, context: int = _OR) -> str:
    """Surface syntax that re-parses to the same tree.

    Binary connectives associate to the left, so a right operand of the same
    connective is parenthesized.
    """
    if isinstance(concept, Or):
        text = f"{render_concept(concept.left, _OR)} | {render_concept(concept.right, _AND)}"
        level = _OR
    elif isinstance(concept, And):
        text = f"{render_concept(concept.left, _AND)} & {render_concept(concept.right, _UNARY)}"
        level = _AND
    elif isinstance(concept, Not):
        return "!" + render_concept(concept.operand, _UNARY)
    elif isinstance(concept, Exists):
        return f"exists {concept.role}.{render_concept(concept.filler, _UNARY)}"
    elif isinstance(concept, Forall):
        return f"forall {concept.role}.{render_concept(concept.filler, _UNARY)}"
    else:
        return str(concept)
    return f"({text})" if level < context else text


def conjunction(*concepts: Concept) -> Concept:
    """Left-nested conjunction; the empty conjunction is top."""
    if not concepts:
        return Top()
    result = concepts[0]
    for concept in concepts[1:]:
        result = And(result, concept)
    return result


def check_concept(vocab: Vocabulary, concept: Concept) -> None:
    """Raise UndeclaredNameError for any name the vocabulary does not declare."""
    if isinstance(concept, Atomic):
        vocab.require_concept(concept.name)
    elif isinstance(concept, Nominal):
        vocab.require_individual(concept.individual)
    elif isinstance(concept, Not):
        check_concept(vocab, concept.operand)
    elif isinstance(concept, (And, Or)):
        check_concept(vocab, concept.left)
        check_concept(vocab, concept.right)
    elif isinstance(concept, (Exists, Forall)):
        vocab.require_role(concept.role)
        check_concept(vocab, concept.filler)


# Statements

@dataclass(frozen=True)
class GCI:
    sub: Concept
    sup: Concept

    def __str__(self):
        return f"{render_concept(self.sub)} <= {render_concept(self.sup)}"


@dataclass(frozen=True)
class DCI:
    sub: Concept
    sup: Concept

    def __str__(self):
        return f"{render_concept(self.sub)} ~< {render_concept(self.sup)}"


@dataclass(frozen=True)
class QDCI:
    sub: Concept
    sup: Concept

    def __str__(self):
        return f"{render_concept(self.sub)} ~<all {render_concept(self.sup)}"


@dataclass(frozen=True)
class ConceptAssertion:
    individual: str
    concept: Concept

    def __str__(self):
        return f"{self.individual} : {render_concept(self.concept)}"


@dataclass(frozen=True)
class RoleAssertion:
    subject: str
    object: str
    role: str

    def __str__(self):
        return f"({self.subject}, {self.object}) : {self.role}"


Assertion = Union[ConceptAssertion, RoleAssertion]
Classical = Union[GCI, ConceptAssertion, RoleAssertion]
Defeasible = Union[DCI, QDCI]
Statement = Union[GCI, DCI, QDCI, ConceptAssertion, RoleAssertion]


def is_classical(statement: Statement) -> bool:
    return isinstance(statement, (GCI, ConceptAssertion, RoleAssertion))


def require_classical(statement: Statement) -> None:
    if not is_classical(statement):
        raise ContractViolation(f"'{statement}' is defeasible; expected a GCI or an assertion")


def check_statement(vocab: Vocabulary, statement: Statement) -> None:
    if isinstance(statement, (GCI, DCI, QDCI)):
        check_concept(vocab, statement.sub)
        check_concept(vocab, statement.sup)
    elif isinstance(statement, ConceptAssertion):
        vocab.require_individual(statement.individual)
        check_concept(vocab, statement.concept)
    elif isinstance(statement, RoleAssertion):
        vocab.require_individual(statement.subject)
        vocab.require_individual(statement.object)
        vocab.require_role(statement.role)
    else:
        raise ContractViolation(f"not a statement: {statement!r}")


def _require_unique(items: Iterable[Statement], what: str) -> None:
    seen = set()
    for item in items:
        if item in seen:
            raise DuplicateDeclarationError(f"duplicate {what} '{item}'")
        seen.add(item)


# Knowledge bases

@dataclass(frozen=True)
class WeightedKB:
    vocab: Vocabulary
    tbox: Tuple[GCI, ...] = ()
    abox: Tuple[Assertion, ...] = ()
    weights: Dict[Statement, ExtendedNat] = field(default_factory=dict)

    def __post_init__(self):
        _require_unique(self.tbox, "TBox axiom")
        _require_unique(self.abox, "ABox assertion")
        for axiom in self.tbox:
            if not isinstance(axiom, GCI):
                raise ContractViolation(f"TBox entries must be GCIs, got '{axiom}'")
        for axiom in self.abox:
            if not isinstance(axiom, (ConceptAssertion, RoleAssertion)):
                raise ContractViolation(f"ABox entries must be assertions, got '{axiom}'")
        for axiom in self.axioms():
            check_statement(self.vocab, axiom)
            if axiom not in self.weights:
                raise ContractViolation(f"axiom '{axiom}' has no weight")
            weight = self.weights[axiom]
            if weight != INF and weight < 0:
                raise NegativeWeightError(f"negative weight {weight} on '{axiom}'")
        extra = set(self.weights) - set(self.axioms())
        if extra:
            raise ContractViolation(f"weights given for statements outside the KB: {sorted(map(str, extra))}")

    def axioms(self) -> Iterator[Classical]:
        yield from self.tbox
        yield from self.abox

    def weight(self, axiom: Statement) -> ExtendedNat:
        return self.weights[axiom]

    @property
    def has_strict_abox(self) -> bool:
        return all(self.weights[a] == INF for a in self.abox)

    @property
    def weak_tbox(self) -> Tuple[GCI, ...]:
        """GCIs with a finite weight, in TBox order."""
        return tuple(g for g in self.tbox if self.weights[g] != INF)

    @property
    def strict_tbox(self) -> Tuple[GCI, ...]:
        return tuple(g for g in self.tbox if self.weights[g] == INF)

    def equivalent_to(self, other: "WeightedKB") -> bool:
        """Same vocabulary, axioms and weights, ignoring axiom order."""
        return (
            self.vocab == other.vocab
            and set(self.tbox) == set(other.tbox)
            and set(self.abox) == set(other.abox)
            and self.weights == other.weights
        )


@dataclass(frozen=True)
class DefeasibleKB:
    vocab: Vocabulary
    tbox: Tuple[GCI, ...] = ()
    dbox: Tuple[Defeasible, ...] = ()
    abox: Tuple[Assertion, ...] = ()
    impacts: Tuple[Optional[int], ...] = ()

    def __post_init__(self):
        if not self.impacts and self.dbox:
            object.__setattr__(self, "impacts", (None,) * len(self.dbox))
        if len(self.impacts) != len(self.dbox):
            raise ContractViolation("impact hints must align with the DBox")
        _require_unique(self.dbox, "DBox inclusion")
        for dci in self.dbox:
            if not isinstance(dci, (DCI, QDCI)):
                raise ContractViolation(f"DBox entries must be defeasible inclusions, got '{dci}'")
        for axiom in self.tbox:
            if not isinstance(axiom, GCI):
                raise ContractViolation(f"TBox entries must be GCIs, got '{axiom}'")
        for axiom in self.abox:
            if not isinstance(axiom, (ConceptAssertion, RoleAssertion)):
                raise ContractViolation(f"ABox entries must be assertions, got '{axiom}'")
        for statement in self.tbox + self.dbox + self.abox:
            check_statement(self.vocab, statement)
        for hint in self.impacts:
            if hint is not None and hint < 0:
                raise NegativeWeightError(f"negative impact factor {hint}")

    def strict_axioms(self) -> Iterator[Classical]:
        yield from self.tbox
        yield from self.abox

    @property
    def hinted_eta(self) -> Optional[Tuple[int, ...]]:
        """The impact hints as a vector, or None unless every DCI has one."""
        if any(h is None for h in self.impacts):
            return None
        return tuple(self.impacts)


KnowledgeBase = Union[WeightedKB, DefeasibleKB]


def as_weighted(kb: KnowledgeBase) -> WeightedKB:
    """Use a defeasible KB without DCIs as an all-infinite weighted KB."""
    if isinstance(kb, WeightedKB):
        return kb
    if kb.dbox:
        raise UsageError("a defeasible KB with DCIs has no weights; translate it with an impact vector")
    weights = {axiom: INF for axiom in kb.strict_axioms()}
    return WeightedKB(kb.vocab, kb.tbox, kb.abox, weights)


def as_defeasible(kb: KnowledgeBase) -> DefeasibleKB:
    """Use an all-infinite weighted KB as a defeasible KB with an empty DBox."""
    if isinstance(kb, DefeasibleKB):
        return kb
    finite = [a for a in kb.axioms() if kb.weights[a] != INF]
    if finite:
        raise UsageError(f"weighted KB has finite weights (e.g. '{finite[0]}'); it is not a defeasible KB")
    return DefeasibleKB(kb.vocab, kb.tbox, (), kb.abox)
