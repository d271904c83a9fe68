"""Command line interface: ``tiedtrace eval | compare | validate``.

Exit codes: 0 success, 1 usage error, 2 computation error or failed
validation, 3 the compared links have equal P but different Theta.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import __version__
from .braid import BraidWord, parse_braid
from .cache import ResultCache, cache_key
from .catalog import lookup
from .invariants import EngineDisagreement, compare, homflypt, theta
from .scalar import ScalarValue
from . import validation

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE, EXIT_DISTINGUISHED = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tiedtrace", description="Exact Theta / Theta_d / Homflypt of closed braids.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    ev = sub.add_parser("eval", help="evaluate an invariant")
    src = ev.add_mutually_exclusive_group(required=True)
    src.add_argument("--braid", help='braid word such as "{1,-2,1}"')
    src.add_argument("--link", help="catalog name such as L11n418{0,0} or L11n418.00")
    ev.add_argument("--strands", type=int, help="strand count (may exceed the letters' needs)")
    ev.add_argument("--invariant", default="theta", help="theta | homflypt | theta-d:<d>")
    ev.add_argument("--engine", default="auto", choices=("auto", "trace", "skein", "closed", "all"))
    ev.add_argument("--format", default="text", choices=("text", "json"))
    ev.add_argument("--cache-dir")

    cmp_ = sub.add_parser("compare", help="compare two links")
    cmp_.add_argument("first", help="catalog name or braid word")
    cmp_.add_argument("second", help="catalog name or braid word")
    cmp_.add_argument("--engine", default="auto", choices=("auto", "trace", "skein", "closed", "all"))
    cmp_.add_argument("--format", default="text", choices=("text", "json"))

    val = sub.add_parser("validate", help="run a check suite")
    val.add_argument("--suite", required=True, choices=("paper", "properties", "esystem"))
    val.add_argument("--seed", type=int, default=42)
    val.add_argument("--max-strands", type=int, default=4)
    val.add_argument("--max-length", type=int, default=10)
    val.add_argument("--count", type=int, default=50)
    val.add_argument("--tolerance", type=float, default=1e-9)
    return parser


def _resolve(text: str, strands: int | None = None) -> tuple[str, BraidWord]:
    stripped = text.strip()
    if stripped.startswith("{") or stripped.lstrip("+-").split(",")[0].strip().isdigit():
        try:
            w = parse_braid(stripped, strands)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        return w.to_text(), w
    try:
        entry = lookup(stripped)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from exc
    w = entry.word()
    if strands is not None:
        if strands < w.strands:
            raise UsageError(f"{entry.name} needs at least {w.strands} strands")
        w = BraidWord(strands, w.letters)
    return entry.name, w


def _parse_invariant(text: str) -> tuple[str, int | None]:
    if text in ("theta", "homflypt"):
        return text, None
    if text.startswith("theta-d:"):
        try:
            d = int(text.split(":", 1)[1])
        except ValueError as exc:
            raise UsageError(f"bad invariant {text!r}") from exc
        if d < 1:
            raise UsageError("d must be a positive integer")
        return "theta-d", d
    raise UsageError(f"unknown invariant {text!r}")


def _engine(name: str) -> str | None:
    return None if name == "auto" else name


def evaluate(w: BraidWord, invariant: str, d: int | None, engine: str | None) -> ScalarValue:
    if invariant == "homflypt":
        if engine in (None, "trace"):
            return homflypt(w)
        return theta(w, engine).specialize_E(1)
    value = theta(w, engine)
    if invariant == "theta-d":
        value = value.specialize_E(Fraction(1, d))
    return value


def _cmd_eval(args) -> int:
    invariant, d = _parse_invariant(args.invariant)
    _, w = _resolve(args.link or args.braid, args.strands)
    engine = _engine(args.engine)
    inv_id = args.invariant
    value = None
    cache = ResultCache(args.cache_dir) if args.cache_dir else None
    key = cache_key(w, inv_id, args.engine) if cache else None
    if cache:
        value = cache.get(key)
    if value is None:
        value = evaluate(w, invariant, d, engine)
        if cache:
            cache.put(key, value)
    if args.format == "json":
        print(value.to_json())
    else:
        print(value.to_text())
        if engine == "all":
            print("# engines agree: trace, skein, closed")
    return EXIT_OK


def _cmd_compare(args) -> int:
    name1, w1 = _resolve(args.first)
    name2, w2 = _resolve(args.second)
    report = compare(w1, w2, _engine(args.engine), name1, name2)
    if args.format == "json":
        print(json.dumps(report.to_json_obj(), separators=(",", ":")))
    else:
        print(f"link1: {report.link1}")
        print(f"link2: {report.link2}")
        print(f"P-equal: {'yes' if report.p_equal else 'no'}")
        print(f"Theta difference: {report.theta_difference}")
        for label, value in report.specializations.items():
            print(f"Theta difference at E={label}: {value}")
        print(f"Theta-distinguished: {'yes' if report.theta_distinguished else 'no'}")
    if report.p_equal and report.theta_distinguished:
        return EXIT_DISTINGUISHED
    return EXIT_OK


def _cmd_validate(args) -> int:
    if args.suite == "paper":
        checks = validation.paper_suite()
    elif args.suite == "properties":
        if args.max_strands < 1 or args.max_length < 0 or args.count < 1:
            raise UsageError("strand, length and count bounds must be positive")
        checks = validation.properties_suite(args.seed, args.max_strands, args.max_length, args.count)
    else:
        if args.tolerance <= 0:
            raise UsageError("tolerance must be positive")
        checks = validation.esystem_suite(args.tolerance)
    for check in checks:
        print(check.line())
    failed = sum(not c.ok for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_COMPUTE


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {"eval": _cmd_eval, "compare": _cmd_compare, "validate": _cmd_validate}
    try:
        return handlers[args.command](args)
    except UsageError as exc:
        print(f"tiedtrace: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (EngineDisagreement, ArithmeticError, ValueError) as exc:
        print(f"tiedtrace: computation failed: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
