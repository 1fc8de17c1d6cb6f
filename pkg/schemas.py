from pydantic import BaseModel, Field
from typing import Dict, List, Literal, Optional, Tuple, Union

Rank = Union[int, Literal["inf"]]
Status = Literal["pass", "fail", "n/a", "within-bound"]


# Interpretations and rank tables
class InterpretationLiteral(BaseModel):
    """Missing names mean an empty extension."""

    concepts: Dict[str, List[str]] = Field(default_factory=dict)
    roles: Dict[str, List[Tuple[str, str]]] = Field(default_factory=dict)


class RankEntry(BaseModel):
    interpretation: InterpretationLiteral
    rank: Rank


# Verification
class CheckResult(BaseModel):
    name: str
    status: Status
    details: str = ""
    witness: Optional[str] = None


class VerificationReport(BaseModel):
    checks: List[CheckResult] = Field(default_factory=list)

    @property
    def failed(self) -> List[CheckResult]:
        return [c for c in self.checks if c.status == "fail"]

    @property
    def passed(self) -> bool:
        return not self.failed


class InstanceReport(BaseModel):
    instance: str
    report: VerificationReport


class VerificationSummary(BaseModel):
    seed: Optional[int] = None
    instances: List[InstanceReport]


# Command results
class ParseResult(BaseModel):
    kind: Literal["weighted", "defeasible"]
    concepts: List[str]
    roles: List[str]
    individuals: List[str]
    tbox: int
    dbox: int
    abox: int
    interpretations: int
    document: str


class ModelsResult(BaseModel):
    count: int
    models: List[InterpretationLiteral]


class CostResult(BaseModel):
    cost: Optional[Rank] = None
    optimal_cost: Rank
    interpretation: Optional[InterpretationLiteral] = None
    table: List[RankEntry] = Field(default_factory=list)


class EntailmentResult(BaseModel):
    mode: str
    query: str
    k: Optional[int] = None
    holds: bool
    optimal_cost: Rank


class RankResult(BaseModel):
    query: Optional[str] = None
    rank: Optional[Rank] = None
    holds: bool
    unsatisfied: Optional[str] = None


class CRepResult(BaseModel):
    eta: List[int]
    kappa0: int
    is_model: bool
    unsatisfied: Optional[str] = None
    table: List[RankEntry]
    query: Optional[str] = None
    holds: Optional[bool] = None


class InferenceResult(BaseModel):
    quantifier: Literal["skeptical", "credulous"]
    query: str
    verdict: str
    eta_max: int
    witness_eta: Optional[List[int]] = None
    witness_kappa0: Optional[int] = None
    representations: int


class TranslationResult(BaseModel):
    kind: str
    document: str
    kappa0: Optional[int] = None


class CheckPropertyResult(BaseModel):
    property: str
    holds: bool
    witness: Optional[str] = None
