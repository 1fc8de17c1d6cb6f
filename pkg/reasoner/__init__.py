"""Cost-based and c-representation reasoning over finite ALCO knowledge bases."""

from .errors import ReasonerError
from .parser import parse_concept, parse_document, parse_statement, render

__all__ = ["ReasonerError", "parse_concept", "parse_document", "parse_statement", "render"]
