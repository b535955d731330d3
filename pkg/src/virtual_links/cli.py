"""Command-line interface: ``virtual-links <subcommand> ...``.

Exit codes: ``compare`` returns 0 (equivalent), 1 (distinct) or 2 (unknown); usage
errors return 64, invalid code text or data 65, internal consistency failures 70 and
I/O errors 74.
"""

import argparse
import json
import sys
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import Any, NoReturn, TextIO

import structlog
from pydantic import BaseModel

from virtual_links.config import Settings, get_settings
from virtual_links.core.logging import configure_logging
from virtual_links.schemas.code import GenusResponse, MinimumResponse, ParseResponse
from virtual_links.schemas.decompose import DecomposeResponse
from virtual_links.schemas.invariants import InvariantReport
from virtual_links.schemas.verdict import VerdictResponse
from virtual_links.services import (
    DeciderService,
    DecomposeConfig,
    DecomposeService,
    Verdict,
    VerdictKind,
    decider_config,
    resolve_budget,
)
from virtual_links.topology.codes import GaussCode, GaussCodeError, parse_gauss, serialize_gauss
from virtual_links.topology.complement import (
    ComplementValidationError,
    build_complement,
    export_complex,
)
from virtual_links.topology.invariants import InvariantError, check_bracket, fingerprint
from virtual_links.topology.search import Budget
from virtual_links.topology.surface_embed import carter_embed, supporting_genus

logger = structlog.get_logger(__name__)

EX_OK = 0
EX_USAGE = 64
EX_DATAERR = 65
EX_SOFTWARE = 70
EX_IOERR = 74

VERDICT_EXIT = {
    VerdictKind.EQUIVALENT: 0,
    VerdictKind.DISTINCT: 1,
    VerdictKind.UNKNOWN: 2,
}

_TABLE_MARK = {
    VerdictKind.EQUIVALENT: "=",
    VerdictKind.DISTINCT: "x",
    VerdictKind.UNKNOWN: "?",
}


class CliError(Exception):
    """Raised by a subcommand with the exit code to return."""

    def __init__(self, message: str, exit_code: int) -> None:
        super().__init__(message)
        self.exit_code = exit_code


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


class Context:
    """Resolved options shared by every subcommand."""

    def __init__(self, args: argparse.Namespace, settings: Settings, out: TextIO) -> None:
        self.args = args
        self.settings = settings
        self.out = out
        self.json: bool = args.json

    def budget(self, *codes: GaussCode) -> Budget:
        return resolve_budget(
            self.settings,
            *codes,
            max_crossings=self.args.max_crossings,
            max_expansions=self.args.max_expansions,
        )

    def decider(self) -> DeciderService:
        return DeciderService(decider_config(self.settings))

    def emit(self, text: str) -> None:
        print(text, file=self.out)

    def emit_model(self, model: BaseModel) -> None:
        self.emit(model.model_dump_json(indent=2))

    def emit_json(self, data: Any) -> None:
        self.emit(json.dumps(data, indent=2))


def _parse(text: str) -> GaussCode:
    try:
        return parse_gauss(text)
    except GaussCodeError as e:
        raise CliError(f"invalid code {text!r}: {e}", EX_DATAERR) from e


# --- subcommands -------------------------------------------------------------


def cmd_parse(ctx: Context) -> int:
    code = _parse(ctx.args.code)
    if ctx.json:
        ctx.emit_model(ParseResponse.from_code(code))
    else:
        ctx.emit(serialize_gauss(code))
    return EX_OK


def cmd_genus(ctx: Context) -> int:
    code = _parse(ctx.args.code)
    d = carter_embed(code)
    if ctx.json:
        ctx.emit_model(GenusResponse.from_diagram(d))
    else:
        ctx.emit(" ".join(str(g) for g in supporting_genus(d)))
    return EX_OK


def cmd_invariants(ctx: Context) -> int:
    code = _parse(ctx.args.code)
    checked = False
    if ctx.args.check:
        if code.crossing_count > ctx.settings.skein_crosscheck_limit:
            logger.warning(
                "bracket_check_skipped",
                crossings=code.crossing_count,
                limit=ctx.settings.skein_crosscheck_limit,
            )
        else:
            try:
                check_bracket(code)
            except InvariantError as e:
                raise CliError(str(e), EX_SOFTWARE) from e
            checked = True
    fp = fingerprint(code, ctx.settings.coloring_exhaustive_limit)
    report = InvariantReport(**fp.to_json(), bracket_checked=checked)
    if ctx.json:
        ctx.emit_model(report)
        return EX_OK
    ctx.emit(f"components: {report.components}")
    ctx.emit(f"f_poly: {fp.f_poly}")
    if report.odd_writhe is not None:
        ctx.emit(f"odd_writhe: {report.odd_writhe}")
    ctx.emit(f"linking: {json.dumps(report.linking)}")
    for p, count in report.colorings.items():
        ctx.emit(f"coloring_count({p}): {count}")
    if checked:
        ctx.emit("bracket: state sum and skein recursion agree")
    return EX_OK


def cmd_canon(ctx: Context) -> int:
    code = _parse(ctx.args.code)
    result = ctx.decider().canonical_minimum(code, ctx.budget(code))
    if ctx.json:
        ctx.emit_model(MinimumResponse.from_result(result))
    else:
        bound = "minimum" if result.complete else "upper bound"
        ctx.emit(serialize_gauss(result.code))
        ctx.emit(f"genus {result.genus} ({bound}), {len(result.trace)} moves")
    return EX_OK


def cmd_decompose(ctx: Context) -> int:
    code = _parse(ctx.args.code)
    service = DecomposeService(
        DecomposeConfig(
            workers=ctx.settings.search_workers,
            coloring_exhaustive_limit=ctx.settings.coloring_exhaustive_limit,
        )
    )
    decomposition = service.decompose(code, ctx.budget(code))
    if ctx.json:
        ctx.emit_model(DecomposeResponse.from_decomposition(code, decomposition))
        return EX_OK
    for part in decomposition.parts:
        result = part.result.to_dict() if part.result else {"classification": "unclassified"}
        ctx.emit(
            f"{list(part.components)} {serialize_gauss(part.code)}: "
            f"{result['classification']} {json.dumps(result.get('witness', {}))}"
        )
    return EX_OK


def _summary(verdict: Verdict) -> str:
    certificate = verdict.certificate
    if verdict.kind is VerdictKind.EQUIVALENT:
        return f"equivalent (meeting at {certificate['meeting']})"
    if verdict.kind is VerdictKind.DISTINCT:
        return (
            f"distinct ({certificate['invariant']}: "
            f"{json.dumps(certificate['value_a'])} vs {json.dumps(certificate['value_b'])})"
        )
    return "unknown (" + certificate["note"] + ")"


def cmd_compare(ctx: Context) -> int:
    a, b = _parse(ctx.args.a), _parse(ctx.args.b)
    verdict = ctx.decider().decide(a, b, ctx.budget(a, b))
    if ctx.json:
        ctx.emit_model(VerdictResponse.from_verdict(verdict))
    else:
        ctx.emit(_summary(verdict))
        ctx.emit_json(verdict.certificate)
    return VERDICT_EXIT[verdict.kind]


def cmd_complement(ctx: Context) -> int:
    code = _parse(ctx.args.code)
    c, p = build_complement(carter_embed(code))
    try:
        document = export_complex(c, p)
    except ComplementValidationError as e:
        raise CliError(f"complement failed validation: {e}", EX_SOFTWARE) from e
    text = json.dumps(document, indent=2)
    if ctx.args.output is None:
        ctx.emit(text)
        return EX_OK
    try:
        ctx.args.output.write_text(text + "\n", encoding="utf-8")
    except OSError as e:
        raise CliError(f"cannot write {ctx.args.output}: {e}", EX_IOERR) from e
    census = document["census"]
    if ctx.json:
        ctx.emit_json({"output": str(ctx.args.output), "census": census, **c.census()})
    else:
        ctx.emit(
            f"wrote {ctx.args.output}: {len(c.blocks)} blocks, "
            f"chi={census['euler_characteristic']}, {len(p.curves)} meridians"
        )
    return EX_OK


def _read_table(path: str) -> list[str]:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise CliError(f"cannot read {path}: {e}", EX_IOERR) from e
    lines = (line.strip() for line in text.splitlines())
    return [line for line in lines if line and not line.startswith("#")]


def cmd_table(ctx: Context) -> int:
    texts = _read_table(ctx.args.file)
    codes = [_parse(text) for text in texts]
    decider = ctx.decider()
    n = len(codes)
    matrix: list[list[VerdictKind | None]] = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            verdict = decider.decide(codes[i], codes[j], ctx.budget(codes[i], codes[j]))
            matrix[i][j] = matrix[j][i] = verdict.kind
    if ctx.json:
        ctx.emit_json(
            {
                "codes": [serialize_gauss(code) for code in codes],
                "verdicts": [[kind.value if kind else None for kind in row] for row in matrix],
            }
        )
        return EX_OK
    for i, text in enumerate(texts):
        marks = " ".join(_TABLE_MARK[kind] if kind else " " for kind in matrix[i])
        ctx.emit(f"{i:>3}  {marks}  {text}")
    return EX_OK


# --- parser ------------------------------------------------------------------


def _add_common(parser: argparse.ArgumentParser, suppress: bool) -> None:
    def default(value: Any) -> Any:
        return argparse.SUPPRESS if suppress else value

    parser.add_argument("--json", action="store_true", default=default(False), help="JSON output")
    parser.add_argument(
        "--max-crossings",
        type=_non_negative,
        default=default(None),
        metavar="N",
        help="largest crossing number explored (default: input size + extra_crossings)",
    )
    parser.add_argument(
        "--max-expansions",
        type=_non_negative,
        default=default(None),
        metavar="N",
        help="expansion cap for searches (default: VL_MAX_EXPANSIONS or 200000)",
    )


def _non_negative(text: str) -> int:
    try:
        value = int(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from e
    if value < 0:
        raise argparse.ArgumentTypeError(f"{value} is negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    """Argument parser for every subcommand."""
    parser = _ArgumentParser(
        prog="virtual-links",
        description="Equivalence decisions, invariants and complements for virtual links.",
    )
    _add_common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    def command(name: str, handler: Callable[[Context], int], help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text, description=help_text)
        _add_common(p, suppress=True)
        p.set_defaults(handler=handler)
        return p

    command("parse", cmd_parse, "validate code text and print its spelling").add_argument("code")
    command("genus", cmd_genus, "genus of each Carter surface component").add_argument("code")
    invariants = command("invariants", cmd_invariants, "fingerprint invariants of a code")
    invariants.add_argument("code")
    invariants.add_argument(
        "--check", action="store_true", help="cross-check the bracket by skein recursion"
    )
    command("canon", cmd_canon, "least-genus least-crossing representative found").add_argument(
        "code"
    )
    command("decompose", cmd_decompose, "split a link and classify each part").add_argument(
        "code"
    )
    compare = command("compare", cmd_compare, "decide whether two codes are equivalent")
    compare.add_argument("a")
    compare.add_argument("b")
    complement = command("complement", cmd_complement, "export the link complement complex")
    complement.add_argument("code")
    complement.add_argument("-o", "--output", type=Path, help="write the document to FILE")
    command("table", cmd_table, "pairwise verdicts for one code per line").add_argument(
        "file", help="file of codes, '-' for stdin"
    )
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """Run the CLI and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EX_USAGE

    settings = get_settings()
    configure_logging(settings)
    handler: Callable[[Context], int] = args.handler
    try:
        return handler(Context(args, settings, sys.stdout))
    except CliError as e:
        print(f"virtual-links: {e}", file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
