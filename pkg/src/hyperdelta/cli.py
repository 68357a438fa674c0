"""Command-line front end.

Four subcommands over one density expression: ``parse`` dumps the tree,
``normalize`` prints the canonical form, ``eval`` prints the value at a
point in ring notation, ``integrate`` prints the real integral.

Exit codes: 0 success, 2 lexer or parser rejection, 3 a density whose
point-mass part cannot be integrated, 4 quadrature failed to converge,
1 anything else (usage mistakes included).  Diagnostics go to standard
error, one line, naming the input span or the failing term.  With
``--format json`` standard output carries a fixed envelope instead of the
bare result; see :data:`JSON_SCHEMA`.

Identical invocations produce byte-identical output: no timestamps, no
environment-dependent formatting, keys sorted.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from contextlib import redirect_stderr, redirect_stdout
from decimal import Decimal, InvalidOperation
from fractions import Fraction

from . import __version__
from .densitynd import density_to_json, eval_nd, integrate_nd_result
from .errors import (
    HyperdeltaError,
    LexError,
    NonConvergent,
    NormalizeError,
    NotIntegrable,
    ParseError,
)
from .normalize import normalize
from .parser import ast_to_json, parse, pretty_ast
from .quadrature import DEFAULT_CONFIG, QuadratureConfig
from .ring import (
    CoeffMode,
    coefficient_mode,
    format_expanded,
    format_number,
    num_to_json,
)

JSON_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "hyperdelta CLI envelope",
    "type": "object",
    "required": ["ok", "command"],
    "additionalProperties": False,
    "properties": {
        "ok": {"type": "boolean"},
        "command": {"enum": ["parse", "normalize", "eval", "integrate"]},
        "result": {
            "type": "object",
            "additionalProperties": False,
            "minProperties": 1,
            "maxProperties": 1,
            "properties": {
                "value": {"type": ["number", "string"]},
                "density": {"type": "object"},
                "ast": {"type": "object"},
            },
        },
        "error": {
            "type": "object",
            "required": ["code", "message"],
            "additionalProperties": False,
            "properties": {
                "code": {"type": "string"},
                "message": {"type": "string"},
                "span": {
                    "type": "array",
                    "items": {"type": "integer", "minimum": 0},
                    "minItems": 2,
                    "maxItems": 2,
                },
            },
        },
        "quadrature": {
            "type": "object",
            "required": ["abs_error_estimate"],
            "additionalProperties": False,
            "properties": {"abs_error_estimate": {"type": "number"}},
        },
    },
}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # keep exit code 2 for density syntax only
        raise _UsageError(message)


def _build_parser() -> _Parser:
    top = _Parser(prog="hyperdelta", description=__doc__.splitlines()[0])
    top.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subs = top.add_subparsers(dest="command", required=True, metavar="command")
    for name, blurb in (
        ("parse", "tokenize and parse; print the expression tree"),
        ("normalize", "print the canonical density"),
        ("eval", "evaluate at --point; print an expanded real"),
        ("integrate", "integrate over all space; print a real number"),
    ):
        sub = subs.add_parser(name, help=blurb)
        sub.add_argument("expression", nargs="?", help="density text ('-' reads stdin)")
        sub.add_argument("--file", help="read the density text from this file")
        sub.add_argument("--dims", type=int, help="declare at least this many variables")
        sub.add_argument(
            "--format", choices=("text", "json"), default="text", dest="output_format"
        )
        sub.add_argument("--mode", choices=("exact", "float"), default="float")
        sub.add_argument("--tol", type=float, help="quadrature tolerance (default 1e-8)")
        if name == "eval":
            sub.add_argument("--point", help="comma-separated coordinates, e.g. 0,1.5,-2")
    return top


def _read_input(ns) -> str:
    if ns.expression is not None and ns.expression != "-" and ns.file:
        raise _UsageError("give the density either inline or via --file, not both")
    if ns.file:
        with open(ns.file, "r", encoding="utf-8") as fh:
            return fh.read()
    if ns.expression is None or ns.expression == "-":
        return sys.stdin.read()
    return ns.expression


def _parse_point(text: str, mode: CoeffMode) -> tuple:
    parts = [p.strip() for p in text.split(",")]
    coords = []
    for part in parts:
        try:
            value = Fraction(part) if "/" in part else Fraction(Decimal(part))
        except (ValueError, ZeroDivisionError, InvalidOperation):
            raise _UsageError(f"bad --point coordinate {part!r}") from None
        coords.append(float(value) if mode is CoeffMode.FLOAT else value)
    return tuple(coords)


def _quad_config(ns) -> QuadratureConfig:
    if ns.tol is None:
        return DEFAULT_CONFIG
    if not ns.tol > 0:
        raise _UsageError("--tol must be positive")
    return QuadratureConfig(abs_tolerance=ns.tol, rel_tolerance=ns.tol)


_ERROR_CODES = (
    (LexError, "lex-error", 2),
    (ParseError, "parse-error", 2),
    (NotIntegrable, "non-integrable", 3),
    (NonConvergent, "non-convergent", 4),
)


def _classify(exc: Exception):
    for etype, code, status in _ERROR_CODES:
        if isinstance(exc, etype):
            span = getattr(exc, "span", None)
            return code, status, span
    span = exc.span if isinstance(exc, NormalizeError) else None
    return "error", 1, span


def _diagnostic(code: str, message: str, span) -> str:
    if span is not None:
        return f"{code} at {span[0]}..{span[1]}: {message}"
    return f"{code}: {message}"


def _run(ns, out, err) -> int:
    mode = CoeffMode.EXACT if ns.mode == "exact" else CoeffMode.FLOAT
    envelope: dict = {"ok": True, "command": ns.command}
    try:
        text = _read_input(ns)
        with coefficient_mode(mode):
            if ns.command == "parse":
                ast = parse(text)
                envelope["result"] = {"ast": ast_to_json(ast)}
                line = pretty_ast(ast)
            else:
                ast = parse(text)
                point = None
                if ns.command == "eval":
                    if not getattr(ns, "point", None):
                        raise _UsageError("eval requires --point")
                    point = _parse_point(ns.point, mode)
                dims = ns.dims
                if point is not None:
                    dims = max(dims or 0, len(point))
                density = normalize(ast, dims)
                if ns.command == "normalize":
                    record = density_to_json(density)
                    envelope["result"] = {"density": record}
                    line = json.dumps(record, sort_keys=True)
                elif ns.command == "eval":
                    value = eval_nd(density, point)
                    formatted = format_expanded(value)
                    envelope["result"] = {"value": formatted}
                    line = formatted
                else:
                    value, estimate = integrate_nd_result(density, _quad_config(ns))
                    envelope["result"] = {"value": num_to_json(value)}
                    if estimate is not None:
                        envelope["quadrature"] = {"abs_error_estimate": estimate}
                        if ns.output_format != "json":
                            print(f"abs error estimate: {estimate!r}", file=err)
                    line = format_number(value)
    except _UsageError as exc:
        print(f"error: {exc}", file=err)
        return 1
    except Exception as exc:  # noqa: BLE001 - every failure maps to an exit code
        if not isinstance(exc, (HyperdeltaError, ValueError, OSError, OverflowError)):
            raise
        code, status, span = _classify(exc)
        print(_diagnostic(code, str(exc), span), file=err)
        if ns.output_format == "json":
            envelope["ok"] = False
            envelope["error"] = {"code": code, "message": str(exc)}
            if span is not None:
                envelope["error"]["span"] = [span[0], span[1]]
            print(json.dumps(envelope, sort_keys=True), file=out)
        return status
    if ns.output_format == "json":
        print(json.dumps(envelope, sort_keys=True), file=out)
    else:
        print(line, file=out)
    return 0


def run_command(argv) -> tuple:
    """Run one invocation; returns (exit_code, stdout_text, stderr_text)."""
    out, err = io.StringIO(), io.StringIO()
    try:
        with redirect_stdout(out), redirect_stderr(err):
            ns = _build_parser().parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=err)
        return 1, out.getvalue(), err.getvalue()
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0), out.getvalue(), err.getvalue()
    status = _run(ns, out, err)
    return status, out.getvalue(), err.getvalue()


def main(argv=None) -> int:
    status, out, err = run_command(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return status


if __name__ == "__main__":
    sys.exit(main())
