"""Reader and writer for the textual knowledge-base format.

A document is a ``vocab`` block followed by optional ``tbox``, ``dbox`` and
``abox`` blocks. Documents with a ``dbox`` block are defeasible KBs, all
others are weighted KBs. ``#`` starts a comment.
"""

import logging
import sys
from contextlib import contextmanager
from typing import List, NamedTuple, Optional, Union

from pyparsing import (
    Forward,
    Group,
    Keyword,
    Literal,
    MatchFirst,
    Optional as Opt,
    ParseBaseException,
    ParserElement,
    Regex,
    StringEnd,
    Suppress,
    ZeroOrMore,
    col,
    lineno,
    pythonStyleComment,
)

from .errors import DuplicateDeclarationError, NegativeWeightError, ParseError, ReasonerError
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
    Statement,
    Top,
    Vocabulary,
    WeightedKB,
    check_concept,
    check_statement,
    format_weight,
)

logger = logging.getLogger(__name__)

ParserElement.enable_packrat()

KEYWORDS = (
    "top", "bot", "exists", "forall", "inf",
    "vocab", "tbox", "dbox", "abox", "concepts", "roles", "individuals",
)


class _Weight(NamedTuple):
    text: str
    loc: int


class _Item(NamedTuple):
    statement: Statement
    weight: Optional[_Weight]
    loc: int


def _fold(cls):
    def action(tokens):
        result = tokens[0]
        for operand in tokens[1:]:
            result = cls(result, operand)
        return result
    return action


def _item(build):
    def action(text, loc, tokens):
        weight = None
        parts = list(tokens)
        if parts and isinstance(parts[-1], _Weight):
            weight = parts.pop()
        return _Item(build(parts), weight, loc)
    return action


def _dbox_statement(parts):
    sub, arrow, sup = parts
    return QDCI(sub, sup) if arrow.startswith("~<all") else DCI(sub, sup)


def _make_grammar():
    LBRACE, RBRACE, LPAR, RPAR = map(Suppress, "{}()")
    SEMI, COLON, COMMA, DOT = map(Suppress, ";:,.")

    reserved = MatchFirst([Keyword(k) for k in KEYWORDS])
    ident = (~reserved + Regex(r"[A-Za-z_][A-Za-z0-9_]*")).set_name("name")

    concept = Forward().set_name("concept")
    unary = Forward()
    atom = (
        Keyword("top").set_parse_action(lambda: Top())
        | Keyword("bot").set_parse_action(lambda: Bot())
        | (LBRACE + ident + RBRACE).set_parse_action(lambda t: Nominal(t[0]))
        | (LPAR + concept + RPAR)
        | ident.copy().set_parse_action(lambda t: Atomic(t[0]))
    )
    unary <<= (
        (Suppress("!") + unary).set_parse_action(lambda t: Not(t[0]))
        | (Suppress(Keyword("exists")) + ident + DOT + unary).set_parse_action(lambda t: Exists(t[0], t[1]))
        | (Suppress(Keyword("forall")) + ident + DOT + unary).set_parse_action(lambda t: Forall(t[0], t[1]))
        | atom
    )
    conj = (unary + ZeroOrMore(Suppress("&") + unary)).set_parse_action(_fold(And))
    concept <<= (conj + ZeroOrMore(Suppress("|") + conj)).set_parse_action(_fold(Or))

    weight = Suppress("[") + (Keyword("inf") | Regex(r"-?[0-9]+")) + Suppress("]")
    weight.set_parse_action(lambda s, loc, t: _Weight(t[0], loc))

    gci = concept + Suppress("<=") + concept
    gci_stmt = (gci + Opt(weight) + SEMI).set_parse_action(_item(lambda p: GCI(p[0], p[1])))

    arrow = Regex(r"~<all\b") | Literal("~<")
    dci = concept + arrow + concept
    dci_stmt = (dci + Opt(weight) + SEMI).set_parse_action(_item(_dbox_statement))

    role_assertion = (LPAR + ident + COMMA + ident + RPAR + COLON + ident).set_parse_action(
        lambda t: RoleAssertion(t[0], t[1], t[2])
    )
    concept_assertion = (ident + COLON + concept).set_parse_action(lambda t: ConceptAssertion(t[0], t[1]))
    assertion = role_assertion | concept_assertion
    abox_stmt = (assertion + Opt(weight) + SEMI).set_parse_action(_item(lambda p: p[0]))

    names = Group(Opt(ident + ZeroOrMore(COMMA + ident)))
    vocab_block = (
        Suppress(Keyword("vocab")) + LBRACE
        + Suppress(Keyword("concepts")) + COLON + names("concepts") + SEMI
        + Suppress(Keyword("roles")) + COLON + names("roles") + SEMI
        + Suppress(Keyword("individuals")) + COLON + names("individuals") + SEMI
        + RBRACE
    )
    tbox_block = Suppress(Keyword("tbox")) + LBRACE + Group(ZeroOrMore(gci_stmt))("tbox") + RBRACE
    dbox_block = Suppress(Keyword("dbox")) + LBRACE + Group(ZeroOrMore(dci_stmt))("dbox") + RBRACE
    abox_block = Suppress(Keyword("abox")) + LBRACE + Group(ZeroOrMore(abox_stmt))("abox") + RBRACE

    document = vocab_block + Opt(tbox_block) + Opt(dbox_block) + Opt(abox_block) + StringEnd()
    statement_dci = dci.copy().set_parse_action(lambda t: _dbox_statement(list(t)))
    statement = (
        role_assertion
        | concept_assertion
        | statement_dci
        | gci.copy().set_parse_action(lambda t: GCI(t[0], t[1]))
    ) + StringEnd()

    for expr in (document, statement, concept):
        expr.ignore(pythonStyleComment)
    return document, statement, concept + StringEnd()


_DOCUMENT, _STATEMENT, _CONCEPT = _make_grammar()


# packrat parsing spends roughly twenty frames per nesting level
PARSE_RECURSION_LIMIT = 6000


@contextmanager
def _recursion_limit(limit: int):
    previous = sys.getrecursionlimit()
    sys.setrecursionlimit(max(previous, limit))
    try:
        yield
    finally:
        sys.setrecursionlimit(previous)


def _run(grammar, text: str):
    try:
        with _recursion_limit(PARSE_RECURSION_LIMIT):
            return grammar.parse_string(text, parse_all=True)
    except ParseBaseException as exc:
        raise ParseError(exc.msg, exc.lineno, exc.col) from None
    except RecursionError:
        raise ParseError("expression nested too deeply") from None


def _located(text: str, loc: int, error: ReasonerError) -> ReasonerError:
    error.detail = f"line {lineno(loc, text)}, column {col(loc, text)}: {error.detail}"
    error.args = (error.detail,)
    return error


def _checked(text: str, vocab: Vocabulary, item: _Item) -> Statement:
    try:
        check_statement(vocab, item.statement)
    except ReasonerError as exc:
        raise _located(text, item.loc, exc) from None
    return item.statement


def _weight_of(text: str, item: _Item, default):
    if item.weight is None:
        return default
    if item.weight.text == "inf":
        return INF
    value = int(item.weight.text)
    if value < 0:
        raise _located(text, item.weight.loc, NegativeWeightError(f"negative weight {value}"))
    return value


def _unique(text: str, items: List[_Item], what: str) -> None:
    seen = set()
    for item in items:
        if item.statement in seen:
            raise _located(text, item.loc, DuplicateDeclarationError(f"duplicate {what} '{item.statement}'"))
        seen.add(item.statement)


def parse_document(text: str) -> KnowledgeBase:
    """Parse and validate a KB document.

    Omitted TBox/ABox weights default to ``inf``; omitted DBox impact factors
    stay unassigned.
    """
    result = _run(_DOCUMENT, text)
    vocab = Vocabulary(
        tuple(result["concepts"]), tuple(result["roles"]), tuple(result["individuals"])
    )
    tbox_items = list(result["tbox"]) if "tbox" in result else []
    abox_items = list(result["abox"]) if "abox" in result else []
    for items, what in ((tbox_items, "TBox axiom"), (abox_items, "ABox assertion")):
        _unique(text, items, what)

    if "dbox" in result:
        dbox_items = list(result["dbox"])
        _unique(text, dbox_items, "DBox inclusion")
        for item in tbox_items + abox_items:
            if _weight_of(text, item, INF) != INF:
                raise _located(
                    text, item.loc,
                    ParseError("strict axioms of a defeasible KB take no finite weight"),
                )
        kb = DefeasibleKB(
            vocab,
            tuple(_checked(text, vocab, i) for i in tbox_items),
            tuple(_checked(text, vocab, i) for i in dbox_items),
            tuple(_checked(text, vocab, i) for i in abox_items),
            tuple(_weight_of(text, i, None) for i in dbox_items),
        )
        for item, hint in zip(dbox_items, kb.impacts):
            if hint == INF:
                raise _located(text, item.loc, ParseError("impact factors must be finite"))
        logger.debug("parsed defeasible KB: %d GCIs, %d DCIs, %d assertions",
                     len(kb.tbox), len(kb.dbox), len(kb.abox))
        return kb

    weights = {}
    for item in tbox_items + abox_items:
        weights[_checked(text, vocab, item)] = _weight_of(text, item, INF)
    kb = WeightedKB(
        vocab,
        tuple(i.statement for i in tbox_items),
        tuple(i.statement for i in abox_items),
        weights,
    )
    logger.debug("parsed weighted KB: %d GCIs, %d assertions", len(kb.tbox), len(kb.abox))
    return kb


def parse_concept(text: str, vocab: Vocabulary) -> Concept:
    concept = _run(_CONCEPT, text)[0]
    check_concept(vocab, concept)
    return concept


def parse_statement(text: str, vocab: Vocabulary) -> Statement:
    """Parse a query: an assertion, a GCI (``<=``), a DCI (``~<``) or a QDCI (``~<all``)."""
    statement = _run(_STATEMENT, text)[0]
    check_statement(vocab, statement)
    return statement


def _names(names) -> str:
    return ", ".join(names)


def render(kb: Union[WeightedKB, DefeasibleKB]) -> str:
    """Serialize a KB so that :func:`parse_document` returns an equal KB."""
    vocab = kb.vocab
    lines = [
        "vocab {",
        f"  concepts: {_names(vocab.concept_names)};",
        f"  roles: {_names(vocab.role_names)};",
        f"  individuals: {_names(vocab.individual_names)};",
        "}",
    ]
    if isinstance(kb, WeightedKB):
        lines.append("tbox {")
        lines.extend(f"  {g} [{format_weight(kb.weights[g])}];" for g in kb.tbox)
        lines.append("}")
        lines.append("abox {")
        lines.extend(f"  {a} [{format_weight(kb.weights[a])}];" for a in kb.abox)
        lines.append("}")
    else:
        lines.append("tbox {")
        lines.extend(f"  {g};" for g in kb.tbox)
        lines.append("}")
        lines.append("dbox {")
        for dci, hint in zip(kb.dbox, kb.impacts):
            suffix = "" if hint is None else f" [{hint}]"
            lines.append(f"  {dci}{suffix};")
        lines.append("}")
        lines.append("abox {")
        lines.extend(f"  {a};" for a in kb.abox)
        lines.append("}")
    return "\n".join(lines) + "\n"


__all__ = ["parse_document", "parse_concept", "parse_statement", "render"]
