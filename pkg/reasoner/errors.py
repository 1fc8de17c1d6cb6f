"""Exception hierarchy shared by every reasoner module.

Each error carries a human-readable ``detail`` and the ``exit_code`` the CLI
returns for it, much like an HTTP error carries its status code.
"""

from typing import Optional


class ReasonerError(Exception):
    """Base class for all expected failures."""

    exit_code = 2

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class ParseError(ReasonerError):
    """Lexical or grammar error at a known position."""

    def __init__(self, detail: str, line: Optional[int] = None, column: Optional[int] = None):
        super().__init__(detail)
        self.line = line
        self.column = column

    def __str__(self) -> str:
        if self.line is None:
            return self.detail
        return f"line {self.line}, column {self.column}: {self.detail}"


class UndeclaredNameError(ReasonerError):
    pass


class DuplicateDeclarationError(ReasonerError):
    pass


class NegativeWeightError(ReasonerError):
    pass


class UsageError(ReasonerError):
    pass


class SizeLimitError(ReasonerError):
    exit_code = 3


class UnsatisfiableStrictPartError(ReasonerError):
    pass


class NormalizationMismatchError(ReasonerError):
    pass


class ImpactFactorError(ReasonerError):
    pass


class TranslationError(ReasonerError):
    pass


class ContractViolation(ReasonerError):
    exit_code = 4


class InvariantViolation(ReasonerError):
    exit_code = 4
