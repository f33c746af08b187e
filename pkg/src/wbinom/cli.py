"""Command-line front end.

Exit codes: 0 success, 1 a verification residual exceeded its tolerance,
2 invalid input.  Results go to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import checks
from .binomial import binom_for, closed_form
from .coeffs import SymPoly
from .errors import WbinomError
from .ncalgebra import binomial_power, normalize, parse_word
from .paths import enumerate_paths, generating_function, path_weight
from .weights import Family, WeightSpec, shift_spec, spec_from_json

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    def __init__(self, flag: str, message: str):
        super().__init__(f"{flag}: {message}")
        self.flag = flag


# -- argument types --------------------------------------------------------

def complex_arg(text: str) -> complex:
    """``re,im`` or a bare real number."""
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected re,im but got {text!r}")


def pair_arg(text: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two integers a,b but got {text!r}") from None
    return a, b


def table_arg(text: str) -> tuple[complex, ...]:
    """Semicolon-separated complex values a_0;a_1;..."""
    return tuple(complex_arg(x) for x in text.split(";"))


# -- weight specs from flags -----------------------------------------------

REQUIRED = {
    Family.Elliptic: "abqp",
    Family.BalancedVWP: "abq",
    Family.Balanced: "bq",
    Family.VWP: "aq",
}
ACCEPTED = {
    Family.Q: "q",
    Family.QStirlingSecond: "q",
    Family.QStirlingFirst: "q",
} | REQUIRED


def spec_from_args(args) -> WeightSpec:
    if args.weights_json is not None:
        try:
            with open(args.weights_json) as fh:
                spec = spec_from_json(json.load(fh))
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise UsageError("--weights-json", str(exc)) from None
        return shift_spec(spec, *args.shift) if args.shift else spec
    try:
        family = Family(args.weights)
    except ValueError:
        raise UsageError("--weights", f"unknown family {args.weights!r}") from None
    given = {k: getattr(args, k) for k in "abqp" if getattr(args, k) is not None}
    accepted = ACCEPTED.get(family, "")
    for k in given:
        if k not in accepted:
            raise UsageError(f"--{k}", f"not a parameter of --weights {family.value}")
    for k in REQUIRED.get(family, ""):
        if k not in given:
            raise UsageError(f"--{k}", f"required by --weights {family.value}")
    if args.a_table is not None and family not in (Family.CompleteSym, Family.ElementarySym):
        raise UsageError("--a-table", f"not a parameter of --weights {family.value}")
    if family == Family.CustomTable:
        raise UsageError("--weights", "custom tables are read with --weights-json FILE")
    params = dict(given)
    if args.a_table is not None:
        params["a"] = args.a_table
    try:
        spec = WeightSpec(family, tuple(sorted(params.items())))
        return shift_spec(spec, *args.shift) if args.shift else spec
    except ValueError as exc:
        raise UsageError("--weights", str(exc)) from None


def _add_weight_flags(p: argparse.ArgumentParser):
    g = p.add_argument_group("weights")
    g.add_argument("--weights", default="generic", help="weight family (default: generic)")
    g.add_argument("--weights-json", metavar="FILE", help="read a WeightSpec JSON file instead")
    for name in "abqp":
        g.add_argument(f"--{name}", type=complex_arg, metavar="RE,IM")
    g.add_argument("--a-table", type=table_arg, metavar="A0;A1;...",
                   help="numeric a_0, a_1, ... for the complete/elementary families")
    g.add_argument("--shift", type=pair_arg, metavar="DS,DT")


# -- output helpers --------------------------------------------------------

def value_json(c):
    if isinstance(c, SymPoly):
        return c.to_json()
    c = complex(c)
    return [c.real, c.imag]


def value_text(c) -> str:
    if isinstance(c, SymPoly):
        return str(c)
    return f"{complex(c):.15g}"


def _emit(obj):
    print(json.dumps(obj, indent=2))


# -- commands --------------------------------------------------------------

def cmd_expand(args) -> int:
    if args.n < 0:
        raise UsageError("--n", "must be >= 0")
    element = binomial_power(args.n, spec_from_args(args))
    if args.format == "json":
        _emit(element.to_json())
    else:
        print(element)
    return EXIT_OK


def cmd_coeff(args) -> int:
    if args.n < 0:
        raise UsageError("--n", "must be >= 0")
    if not 0 <= args.k <= args.n:
        raise UsageError("--k", "must satisfy 0 <= k <= n")
    spec = spec_from_args(args)
    if args.closed_form:
        try:
            value = closed_form(spec, args.n, args.k)
        except ValueError as exc:
            raise UsageError("--closed-form", str(exc)) from None
    else:
        value = binom_for(spec, args.n, args.k)
    if args.format == "json":
        _emit({"n": args.n, "k": args.k, "value": value_json(value)})
    else:
        print(value_text(value))
    return EXIT_OK


def cmd_paths(args) -> int:
    spec = spec_from_args(args)
    start, end = args.start, args.to
    if min(start) < 0 or end[0] < start[0] or end[1] < start[1]:
        raise UsageError("--to", f"no first-quadrant paths from {start} to {end}")
    paths = enumerate_paths(start, end) if args.list else []
    gf = generating_function(tuple(start), tuple(end), spec)
    if args.format == "json":
        out = {"from": list(start), "to": list(end), "generating_function": value_json(gf)}
        if args.list:
            out["paths"] = [{"steps": p.steps, "weight": value_json(path_weight(p, spec))} for p in paths]
        _emit(out)
    else:
        for p in paths:
            print(f"{p}\t{value_text(path_weight(p, spec))}")
        print(f"GF\t{value_text(gf)}")
    return EXIT_OK


def cmd_normalize(args) -> int:
    try:
        word = parse_word(args.word)
    except ValueError as exc:
        raise UsageError("--word", str(exc)) from None
    spec = None if args.weights == "generic" and args.weights_json is None else spec_from_args(args)
    element = normalize(word, spec)
    if args.format == "json":
        _emit(element.to_json())
    else:
        print(element)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.list:
        for name in checks.identity_names():
            ident = checks.REGISTRY[name]
            print(f"{name}\tAC{ident.criterion}\t{ident.summary}")
        return EXIT_OK
    if args.identity is None:
        raise UsageError("--identity", "required unless --list is given")
    if args.identity not in checks.REGISTRY:
        raise UsageError("--identity", f"unknown identity {args.identity!r} (see verify --list)")
    if args.trials is not None and args.trials < 1:
        raise UsageError("--trials", "must be >= 1")
    if args.tol is not None and not args.tol >= 0:
        raise UsageError("--tol", "must be >= 0")
    for flag in ("n", "m", "k", "l"):
        if getattr(args, flag) is not None and getattr(args, flag) < 0:
            raise UsageError(f"--{flag}", "must be >= 0")
    sizes = checks.Sizes(args.n, args.m, args.k, args.l)
    try:
        result = checks.run_identity(args.identity, sizes, args.trials, args.tol, args.seed, args.timings)
    except ValueError as exc:
        raise UsageError("--n/--m/--k/--l", str(exc)) from None
    _emit(result.to_json())
    return EXIT_OK if result.passed else EXIT_FAIL


def cmd_report(args) -> int:
    if args.jobs < 1:
        raise UsageError("--jobs", "must be >= 1")
    results = checks.run_report(args.seed, args.jobs, args.timings)
    _emit([r.to_json() for r in results])
    failed = [r.identity for r in results if not r.passed]
    if failed:
        print(f"failed: {', '.join(failed)}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


# -- parser ----------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wbinom", description="Weight-dependent binomial coefficients and identity checks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def fmt(p, default):
        p.add_argument("--format", choices=("text", "json"), default=default)

    p = sub.add_parser("expand", help="canonical form of (x+y)^n")
    p.add_argument("--n", type=int, required=True)
    _add_weight_flags(p)
    fmt(p, "text")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("coeff", help="one binomial coefficient")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--closed-form", action="store_true", help="use the product formula instead of the recursion")
    _add_weight_flags(p)
    fmt(p, "json")
    p.set_defaults(func=cmd_coeff)

    p = sub.add_parser("paths", help="weighted lattice paths and their generating function")
    p.add_argument("--to", type=pair_arg, required=True, metavar="K,M")
    p.add_argument("--from", dest="start", type=pair_arg, default=(0, 0), metavar="S,T")
    p.add_argument("--list", action="store_true", help="print every path with its weight")
    _add_weight_flags(p)
    fmt(p, "text")
    p.set_defaults(func=cmd_paths)

    p = sub.add_parser("normalize", help="canonical form of a word")
    p.add_argument("--word", required=True, help="e.g. 'x x y w(1,2) x'")
    _add_weight_flags(p)
    fmt(p, "text")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("verify", help="check one named identity")
    p.add_argument("--identity")
    p.add_argument("--list", action="store_true", help="list identity names")
    for flag in ("n", "m", "k", "l"):
        p.add_argument(f"--{flag}", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--tol", type=float)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--timings", action="store_true", help="record wall-clock millis")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("report", help="check every registered identity")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--timings", action="store_true", help="record wall-clock millis")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"wbinom: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (WbinomError, ValueError) as exc:
        print(f"wbinom: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
