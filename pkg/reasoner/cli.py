"""Command-line front end.

Exit codes: 0 the query holds or the check passes, 1 it does not, 2 usage or
parse error, 3 size limit, 4 internal error.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from pydantic import TypeAdapter, ValidationError

import config
from schemas import (
    CheckPropertyResult,
    CostResult,
    CRepResult,
    EntailmentResult,
    InferenceResult,
    InstanceReport,
    InterpretationLiteral,
    ModelsResult,
    ParseResult,
    RankEntry,
    RankResult,
    TranslationResult,
    VerificationReport,
    VerificationSummary,
)

from . import bridge
from .cost import EntailmentMode, cost, cost_table, entails, optimal_cost
from .crep import Quantifier, SearchBudget, build, c_inference, kappa_entails
from .errors import ReasonerError, UsageError
from .generate import random_instances
from .herbrand import all_interpretations, from_literal, interpretation_count, satisfies, to_literal
from .parser import parse_document, parse_statement, render
from .ranking import (
    RankingFunction,
    SatisfactionMode,
    first_unsatisfied,
    kappa_accepts,
    rank_of_statement,
)
from .syntax import INF, DefeasibleKB, KnowledgeBase, WeightedKB, as_defeasible, as_weighted, format_weight

logger = logging.getLogger(__name__)

HOLDS, FAILS = 0, 1


def _rank(value) -> object:
    return "inf" if value == INF else value


def _eta(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got '{text}'")


def _load(path: str) -> KnowledgeBase:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}")
    return parse_document(text)


def _mode(args) -> SatisfactionMode:
    return SatisfactionMode.FULL if args.mode_b else SatisfactionMode.STRICT


def _emit(args, result, lines: Sequence[str]) -> None:
    if args.json:
        print(result.model_dump_json(indent=2))
    else:
        for line in lines:
            print(line)


def _verdict(holds: bool) -> str:
    return "holds" if holds else "does not hold"


# Subcommands

def cmd_parse(args) -> int:
    kb = _load(args.file)
    vocab = kb.vocab
    result = ParseResult(
        kind="defeasible" if isinstance(kb, DefeasibleKB) else "weighted",
        concepts=list(vocab.concept_names),
        roles=list(vocab.role_names),
        individuals=list(vocab.individual_names),
        tbox=len(kb.tbox),
        dbox=len(kb.dbox) if isinstance(kb, DefeasibleKB) else 0,
        abox=len(kb.abox),
        interpretations=interpretation_count(vocab),
        document=render(kb),
    )
    _emit(args, result, [
        result.document.rstrip("\n"),
        f"# {result.kind} KB, {result.interpretations} interpretations",
    ])
    return HOLDS


def cmd_models(args) -> int:
    kb = _load(args.file)
    if isinstance(kb, DefeasibleKB):
        strict = list(kb.strict_axioms())
    else:
        strict = [a for a in kb.axioms() if kb.weights[a] == INF]
    models = [w for w in all_interpretations(kb.vocab) if all(satisfies(w, a) for a in strict)]
    shown = models if args.limit is None else models[:args.limit]
    result = ModelsResult(count=len(models), models=[to_literal(w) for w in shown])
    _emit(args, result, [f"{len(models)} models of the strict part"] + [str(w) for w in shown])
    return HOLDS if models else FAILS


def cmd_cost(args) -> int:
    wkb = as_weighted(_load(args.file))
    table = cost_table(wkb)
    optc = optimal_cost(wkb, table)
    result = CostResult(optimal_cost=_rank(optc))
    lines = [f"optimal cost: {format_weight(optc)}"]
    if args.interpretation is not None:
        try:
            literal = InterpretationLiteral.model_validate_json(args.interpretation)
        except ValidationError as exc:
            raise UsageError(f"malformed interpretation: {exc.errors()[0]['msg']}")
        interp = from_literal(wkb.vocab, literal)
        value = cost(wkb, interp)
        result.cost = _rank(value)
        result.interpretation = to_literal(interp)
        lines.insert(0, f"cost of {interp}: {format_weight(value)}")
    if args.table:
        for w, c in zip(all_interpretations(wkb.vocab), table):
            result.table.append(RankEntry(interpretation=to_literal(w), rank=_rank(c)))
            lines.append(f"{format_weight(c):>4}  {w}")
    _emit(args, result, lines)
    return HOLDS


def _load_ranking(path: str, kb: KnowledgeBase) -> RankingFunction:
    try:
        entries = TypeAdapter(List[RankEntry]).validate_json(Path(path).read_bytes())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}")
    except ValidationError as exc:
        raise UsageError(f"malformed rank table {path}: {exc.errors()[0]['msg']}")
    return RankingFunction.from_entries(kb.vocab, entries)


def cmd_rank(args) -> int:
    kb = _load(args.file)
    kappa = _load_ranking(args.ranking, kb)
    mode = _mode(args)
    if args.query is None:
        reason = first_unsatisfied(kappa, as_defeasible(kb), mode)
        result = RankResult(holds=reason is None, unsatisfied=reason)
        lines = ["the ranking is a model of the KB" if reason is None else f"not a model: {reason}"]
    else:
        query = parse_statement(args.query, kb.vocab)
        try:
            value = _rank(rank_of_statement(kappa, query))
        except UsageError:
            value = None
        holds = kappa_accepts(kappa, query, mode)
        result = RankResult(query=str(query), rank=value, holds=holds)
        lines = [f"rank({query}) = {value if value is not None else 'undefined'}",
                 f"accepted: {_verdict(holds)}"]
    _emit(args, result, lines)
    return HOLDS if result.holds else FAILS


def cmd_entail(args) -> int:
    wkb = as_weighted(_load(args.file))
    query = parse_statement(args.query, wkb.vocab)
    table = cost_table(wkb)
    holds = entails(wkb, args.mode, query, args.k, table)
    result = EntailmentResult(
        mode=args.mode, query=str(query), k=args.k, holds=holds,
        optimal_cost=_rank(optimal_cost(wkb, table)),
    )
    bound = f" (k = {args.k})" if args.k is not None else ""
    _emit(args, result, [f"{args.mode}{bound}: {query} {_verdict(holds)}"])
    return HOLDS if holds else FAILS


def cmd_crep(args) -> int:
    kb = as_defeasible(_load(args.file))
    eta = args.eta if args.eta is not None else kb.hinted_eta
    if eta is None:
        raise UsageError("no impact factors: pass --eta or annotate every DBox inclusion")
    crep = build(kb, eta, args.kappa0, mode=_mode(args))
    reason = crep.unsatisfied()
    result = CRepResult(
        eta=list(crep.eta), kappa0=crep.kappa0, is_model=reason is None, unsatisfied=reason,
        table=crep.ranking.to_entries(),
    )
    lines = [f"eta = {list(crep.eta)}, kappa0 = {crep.kappa0}"]
    lines += [f"{format_weight(r):>4}  {w}" for w, r in crep.ranking.items()]
    lines.append("model of the KB" if reason is None else f"not a model: {reason}")
    outcome = reason is None
    if args.entail is not None:
        query = parse_statement(args.entail, kb.vocab)
        outcome = kappa_entails(crep, query)
        result.query, result.holds = str(query), outcome
        lines.append(f"kappa-entailment: {query} {_verdict(outcome)}")
    _emit(args, result, lines)
    return HOLDS if outcome else FAILS


def cmd_infer(args) -> int:
    kb = as_defeasible(_load(args.file))
    query = parse_statement(args.query, kb.vocab)
    budget = SearchBudget(args.eta_max, _mode(args))
    outcome = c_inference(kb, query, args.quantifier, budget)
    witness = outcome.witness
    result = InferenceResult(
        quantifier=args.quantifier, query=str(query), verdict=outcome.verdict.value,
        eta_max=budget.eta_max, representations=outcome.representations,
        witness_eta=list(witness.eta) if witness else None,
        witness_kappa0=witness.kappa0 if witness else None,
    )
    lines = [f"{args.quantifier} c-inference of {query}: {outcome.verdict.value}"]
    if witness:
        lines.append(f"witness: eta = {list(witness.eta)}, kappa0 = {witness.kappa0}")
    _emit(args, result, lines)
    return HOLDS if outcome.verdict.positive else FAILS


def cmd_translate(args) -> int:
    kb = _load(args.file)
    kind = bridge.TranslationKind(args.kind)
    if kind is bridge.TranslationKind.TO_WKB:
        kb = as_defeasible(kb)
    elif isinstance(kb, DefeasibleKB):
        kb = as_weighted(kb)
    translated = bridge.translate(kb, kind, args.eta)
    kappa0 = None
    if not isinstance(translated, WeightedKB):
        kappa0 = translated.kappa0
        translated = translated.kb
    document = render(translated)
    if args.output:
        Path(args.output).write_text(document, encoding="utf-8")
        logger.info("wrote %s", args.output)
    result = TranslationResult(kind=kind.value, document=document, kappa0=kappa0)
    lines = [] if args.output else [document.rstrip("\n")]
    if kappa0 is not None:
        lines.append(f"# kappa0 = {kappa0}")
    _emit(args, result, lines)
    return HOLDS


def cmd_check(args) -> int:
    wkb = as_weighted(_load(args.file))
    if args.property == "strict-abox":
        weak = [str(a) for a in wkb.abox if wkb.weights[a] != INF]
        holds, witness = not weak, (weak[0] if weak else None)
    else:
        witness = bridge.compatibility_witness(wkb, strong=args.property == "strongly-c-compatible")
        holds = witness is None
    result = CheckPropertyResult(property=args.property, holds=holds, witness=witness)
    lines = [f"{args.property}: {_verdict(holds)}"] + ([f"witness: {witness}"] if witness else [])
    _emit(args, result, lines)
    return HOLDS if holds else FAILS


def _report_lines(report: VerificationReport) -> List[str]:
    lines = []
    for check in report.checks:
        line = f"{check.status:>12}  {check.name}"
        if check.details:
            line += f": {check.details}"
        if check.witness:
            line += f" [witness: {check.witness}]"
        lines.append(line)
    return lines


def cmd_verify(args) -> int:
    budget = SearchBudget(args.eta_max, _mode(args))
    if args.file is not None:
        report = bridge.verify_instance(_load(args.file), budget)
        _emit(args, report, _report_lines(report))
        return HOLDS if report.passed else FAILS

    instances = []
    lines = []
    for label, kb in random_instances(args.seed, args.random):
        report = bridge.verify_instance(kb, budget)
        instances.append(InstanceReport(instance=label, report=report))
        lines.append(f"{label}: {'ok' if report.passed else 'FAILED'}")
        if not report.passed:
            lines += ["  " + line for line in _report_lines(report)]
    summary = VerificationSummary(seed=args.seed, instances=instances)
    _emit(args, summary, lines)
    return HOLDS if all(i.report.passed for i in instances) else FAILS


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the result as JSON")
    common.add_argument("--bit-budget", type=int, default=None,
                        help=f"max interpretation bits (default {config.BIT_BUDGET})")
    common.add_argument("--mode-b", action="store_true",
                        help="also accept defeasible inclusions by the equal-rank condition")
    common.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="reason", description="Cost-based and ranking-based reasoning over finite ALCO KBs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", parents=[common], help="validate and pretty-print a KB")
    p.add_argument("file")
    p.set_defaults(handler=cmd_parse)

    p = sub.add_parser("models", parents=[common], help="list the models of the strict part")
    p.add_argument("file")
    p.add_argument("--limit", type=int, default=None)
    p.set_defaults(handler=cmd_models)

    p = sub.add_parser("cost", parents=[common], help="cost of an interpretation and optimal cost")
    p.add_argument("file")
    p.add_argument("--interpretation", help='JSON literal, e.g. {"concepts":{"L":["N"]}}')
    p.add_argument("--table", action="store_true", help="print the cost of every interpretation")
    p.set_defaults(handler=cmd_cost)

    p = sub.add_parser("rank", parents=[common], help="evaluate a ranking function given as JSON")
    p.add_argument("file")
    p.add_argument("--ranking", required=True)
    p.add_argument("--query")
    p.set_defaults(handler=cmd_rank)

    p = sub.add_parser("entail", parents=[common], help="cost-based entailment")
    p.add_argument("file")
    p.add_argument("--mode", required=True, choices=[m.value for m in EntailmentMode])
    p.add_argument("--k", type=int)
    p.add_argument("--query", required=True)
    p.set_defaults(handler=cmd_entail)

    p = sub.add_parser("crep", parents=[common], help="build a c-representation")
    p.add_argument("file")
    p.add_argument("--eta", type=_eta)
    p.add_argument("--kappa0", type=int)
    p.add_argument("--entail", metavar="QUERY", help="kappa-entailment of QUERY instead of the modelhood check")
    p.set_defaults(handler=cmd_crep)

    p = sub.add_parser("infer", parents=[common], help="skeptical or credulous c-inference")
    p.add_argument("file")
    p.add_argument("--quantifier", required=True, choices=[q.value for q in Quantifier])
    p.add_argument("--eta-max", type=int, default=config.ETA_MAX)
    p.add_argument("--query", required=True)
    p.set_defaults(handler=cmd_infer)

    p = sub.add_parser("translate", parents=[common], help="translate between KB kinds")
    p.add_argument("file")
    p.add_argument("--kind", required=True, choices=[k.value for k in bridge.TranslationKind])
    p.add_argument("--eta", type=_eta)
    p.add_argument("-o", "--output")
    p.set_defaults(handler=cmd_translate)

    p = sub.add_parser("check", parents=[common], help="check a property of a weighted KB")
    p.add_argument("file")
    p.add_argument("--property", required=True,
                   choices=["c-compatible", "strongly-c-compatible", "strict-abox"])
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("verify", parents=[common], help="run every bridge check")
    p.add_argument("file", nargs="?")
    p.add_argument("--eta-max", type=int, default=config.ETA_MAX)
    p.add_argument("--random", type=int, default=config.RANDOM_INSTANCES,
                   help="instances to generate when no FILE is given")
    p.set_defaults(handler=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2

    logging.basicConfig(level=logging.DEBUG if args.verbose else config.LOG_LEVEL, stream=sys.stderr)
    budget = config.BIT_BUDGET
    if args.bit_budget is not None:
        config.BIT_BUDGET = args.bit_budget

    try:
        return args.handler(args)
    except ReasonerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except Exception as exc:
        logger.exception("internal error")
        print(f"error: internal: {exc}", file=sys.stderr)
        return 4
    finally:
        config.BIT_BUDGET = budget
