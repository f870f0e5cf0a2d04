"""Command-line front end.

Subcommands: ``map``, ``analyze``, ``reconstruct``, ``spectrum``,
``figures`` and ``selftest``.  Every rational on the command line is read
exactly ("1/3"); decimals such as "0.25" are refused unless
``--decimal-input`` is given, in which case they are read as exact base-10
fractions.

Exit codes
----------
0  success
1  bad arguments (unparseable numbers, unknown bijection, out-of-range options)
2  ``map`` produced at least one row outside the bijection's domain
3  missing or corrupt coefficient file
4  quadrature did not converge
5  ``selftest`` found a failing suite
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import Iterable, List, Sequence

from . import __version__
from .arithmetic import ArithmeticContext, QuaternaryCantor, TernaryLine, parse_context
from .errors import DomainError, NotInCantorSet, QuadratureNonConvergent, UnsupportedContext
from .exact_digits import Branch
from .fourier import SCHEMA_VERSION, FourierSeries, decimal_string, spectrum
from .quadrature import QuadratureSpec
from .sawtooth import FIGURES, FigurePoint, SawtoothSpec, figure_data, sawtooth_series
from .selftest import run_selftest

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NOT_IN_SET = 2
EXIT_COEFFICIENTS = 3
EXIT_QUADRATURE = 4
EXIT_SELFTEST = 5

_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")
_DECIMAL = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")


class UsageError(Exception):
    """Raised for invalid arguments; maps to exit code 1."""


class CoefficientFileError(Exception):
    """Raised for a missing or unreadable coefficient file; maps to exit code 3."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_rational(text: str, allow_decimal: bool = False) -> Fraction:
    """Exact rational from ``"p"``, ``"p/q"`` or (if allowed) a base-10 decimal."""
    text = text.strip()
    if _RATIONAL.match(text):
        try:
            return Fraction(text)
        except ZeroDivisionError:
            raise UsageError(f"zero denominator in {text!r}") from None
    if _DECIMAL.match(text):
        if not allow_decimal:
            raise UsageError(f"{text!r} is a decimal; write it as p/q or pass --decimal-input")
        return Fraction(text)
    raise UsageError(f"not a rational number: {text!r}")


def _common(parser: argparse.ArgumentParser):
    parser.add_argument("--bijection", default="ternary-line:minus",
                        help="identity | benioff:p=P | fechner:a=A,b=B | ternary-line:minus|plus | "
                             "quaternary:plus|minus | middle-third[:plus|minus] (default: %(default)s)")
    parser.add_argument("--precision-bits", type=int, default=128,
                        help="bits kept for transcendental values (default: %(default)s)")
    parser.add_argument("--f-T", dest="f_T", default="1", help="lowercase period f(T) (default: %(default)s)")
    parser.add_argument("--quadrature", default="4x32", help="initial PANELSxNODES (default: %(default)s)")
    parser.add_argument("--quad-tol", type=float, default=1e-12,
                        help="relative tolerance of panel refinement (default: %(default)s)")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--output", default="-", help="output file, or - for stdout (default)")
    parser.add_argument("--decimal-input", action="store_true",
                        help="accept decimals such as 0.25, read as exact base-10 fractions")
    parser.add_argument("--display-digits", type=int, default=20,
                        help="significant digits of decimal renderings (default: %(default)s)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="ndfourier",
        description="Non-Diophantine arithmetic, calculus and Fourier analysis on Cantor sets.",
        epilog="exit codes: 0 ok, 1 bad arguments, 2 value outside the Cantor set, "
               "3 missing/corrupt coefficient file, 4 quadrature failure, 5 selftest failure",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("map", help="apply f or f^-1 to exact rationals")
    _common(p)
    direction = p.add_mutually_exclusive_group(required=True)
    direction.add_argument("--forward", nargs="+", metavar="X", help="uppercase values; prints f(X)")
    direction.add_argument("--inverse", nargs="+", metavar="x", help="lowercase values; prints f^-1(x)")

    p = sub.add_parser("analyze", help="Fourier coefficients of a signal, written as JSON")
    _common(p)
    p.add_argument("--signal", choices=("sawtooth",), default="sawtooth")
    p.add_argument("--terms", type=int, required=True, help="highest harmonic n_max")
    # JSON by default: it is the coefficient file that 'reconstruct' reads back
    p.set_defaults(format="json")

    p = sub.add_parser("reconstruct", help="sample a partial sum from a coefficient file")
    _common(p)
    p.add_argument("--coefficients", required=True, help="JSON written by 'analyze'")
    p.add_argument("--terms", type=int, required=True)
    p.add_argument("--samples", type=int, default=201)
    p.add_argument("--x-min", default="-1", help="lowercase start of the sampling range")
    p.add_argument("--x-max", default="1", help="lowercase end of the sampling range")
    p.add_argument("--values", choices=("exact", "decimal"), default="exact",
                   help="emit x and y as p/q (default) or as decimals")

    p = sub.add_parser("spectrum", help="frequency labels n' = f^-1(n)")
    _common(p)
    p.add_argument("--terms", type=int, required=True)

    p = sub.add_parser("figures", help="datasets behind the figures")
    _common(p)
    p.add_argument("--which", default="all",
                   help=f"one of {', '.join(FIGURES[:-1])}, fig3-K (K terms) or all (default: %(default)s)")
    p.add_argument("--samples", type=int, default=201)
    p.add_argument("--x-min", default="-1")
    p.add_argument("--x-max", default="1")
    p.add_argument("--values", choices=("exact", "decimal"), default="exact")

    p = sub.add_parser("selftest", help="run the property suites")
    _common(p)
    p.add_argument("--seed", type=int, default=0)
    return parser


class Config:
    """Validated settings shared by every subcommand."""

    def __init__(self, args):
        self.args = args
        if args.precision_bits < 8:
            raise UsageError("--precision-bits must be at least 8")
        if args.display_digits < 1:
            raise UsageError("--display-digits must be positive")
        try:
            self.context: ArithmeticContext = parse_context(args.bijection, args.precision_bits)
        except (ValueError, DomainError) as exc:
            raise UsageError(str(exc)) from None
        self.f_T = self.rational(args.f_T)
        if self.f_T <= 0:
            raise UsageError("--f-T must be positive")
        try:
            self.quadrature = QuadratureSpec.parse(args.quadrature, args.quad_tol)
        except ValueError as exc:
            raise UsageError(str(exc)) from None

    def rational(self, text: str) -> Fraction:
        return parse_rational(text, self.args.decimal_input)

    def decimal(self, q) -> str:
        return decimal_string(q, self.args.display_digits)


def _emit(args, text: str):
    if args.output == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(args.output, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _json(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def cmd_map(cfg: Config) -> int:
    args = cfg.args
    forward = args.forward is not None
    values = [cfg.rational(v) for v in (args.forward if forward else args.inverse)]
    fn = cfg.context.forward if forward else cfg.context.inverse
    digits_col = f"decimal_{args.display_digits}"
    rows, flagged = [], False
    for v in values:
        try:
            out = fn(v)
            rows.append((str(v), str(out), cfg.decimal(out), "ok"))
        except NotInCantorSet:
            rows.append((str(v), "", "", "not-in-cantor-set"))
            flagged = True
        except DomainError:
            rows.append((str(v), "", "", "outside-domain"))
            flagged = True
    if args.format == "json":
        _emit(args, _json({
            "schema_version": SCHEMA_VERSION,
            "context": cfg.context.spec,
            "direction": "forward" if forward else "inverse",
            "display_digits": args.display_digits,
            "rows": [dict(zip(("input", "output", "decimal", "status"), r)) for r in rows],
        }))
    else:
        _emit(args, _csv(("input", "output", digits_col, "status"), rows))
    return EXIT_NOT_IN_SET if flagged else EXIT_OK


def _series_csv(series: FourierSeries, cfg: Config) -> str:
    rows = [("cos", n, str(c.lower), cfg.decimal(c.upper)) for n, c in enumerate(series.cos_coeffs)]
    rows += [("sin", n, str(c.lower), cfg.decimal(c.upper)) for n, c in enumerate(series.sin_coeffs, start=1)]
    return _csv(("kind", "n", "lower", f"upper_decimal_{cfg.args.display_digits}"), rows)


def cmd_analyze(cfg: Config) -> int:
    args = cfg.args
    if args.terms < 0:
        raise UsageError("--terms must be non-negative")
    series = sawtooth_series(cfg.context, args.terms, _sawtooth_spec(cfg), cfg.quadrature)
    if args.format == "csv":
        _emit(args, _series_csv(series, cfg))
    else:
        _emit(args, _json(series.to_json(args.display_digits)))
    return EXIT_OK


def _sawtooth_spec(cfg):
    return SawtoothSpec(cfg.f_T)


def load_series(path: str) -> FourierSeries:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CoefficientFileError(f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        return FourierSeries.from_json(json.loads(text))
    except (ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        raise CoefficientFileError(f"{path} is not a valid coefficient file: {exc}") from None


def _points_table(cfg: Config, points: List[FigurePoint], values: str, name: str) -> str:
    render = str if values == "exact" else cfg.decimal
    if cfg.args.format == "json":
        return _json({
            "schema_version": SCHEMA_VERSION,
            "dataset": name,
            "values": values,
            "display_digits": cfg.args.display_digits if values == "decimal" else None,
            "points": [{"x": render(p.x), "y": render(p.y), "coordinate_system": p.coordinate_system} for p in points],
        })
    return _csv(("x", "y", "coordinate_system"), ((render(p.x), render(p.y), p.coordinate_system) for p in points))


def _range(cfg: Config):
    lo, hi = cfg.rational(cfg.args.x_min), cfg.rational(cfg.args.x_max)
    if not lo < hi:
        raise UsageError("--x-min must be below --x-max")
    if cfg.args.samples < 2:
        raise UsageError("--samples must be at least 2")
    return lo, hi


def cmd_reconstruct(cfg: Config) -> int:
    args = cfg.args
    series = load_series(args.coefficients)
    if not 0 <= args.terms <= series.n_max:
        raise UsageError(f"--terms must be in [0, {series.n_max}] for this coefficient file")
    points = figure_data("fig3", args.samples, series=series, terms=args.terms, lower_range=_range(cfg))
    _emit(args, _points_table(cfg, points, args.values, f"reconstruction-{args.terms}"))
    return EXIT_OK


def cmd_spectrum(cfg: Config) -> int:
    args = cfg.args
    if args.terms < 1:
        raise UsageError("--terms must be positive")
    try:
        rows = spectrum(cfg.context, args.terms)
    except UnsupportedContext as exc:
        raise UsageError(str(exc)) from None
    if args.format == "json":
        _emit(args, _json({
            "schema_version": SCHEMA_VERSION,
            "context": cfg.context.spec,
            "rows": [{"n": n, "n_prime": str(p)} for n, p in rows],
        }))
    else:
        _emit(args, _csv(("n", "n_prime"), ((n, str(p)) for n, p in rows)))
    return EXIT_OK


def _figure_names(which: str) -> List[str]:
    if which == "all":
        return [*FIGURES[:-1], "fig3-5", "fig3-30"]
    if which in FIGURES[:-1]:
        return [which]
    m = re.fullmatch(r"fig3-(\d+)", which)
    if m:
        return [which]
    raise UsageError(f"unknown figure {which!r}")


def _figure_points(cfg: Config, name: str, series_cache: dict) -> List[FigurePoint]:
    args = cfg.args
    rng = _range(cfg)
    bits = cfg.context.precision_bits
    if name == "fig1-upper":
        return figure_data(name, args.samples, ctx=TernaryLine(Branch.MINUS, precision_bits=bits), lower_range=rng)
    if name == "fig1-lower":
        return figure_data(name, args.samples, ctx=QuaternaryCantor(Branch.PLUS, precision_bits=bits), lower_range=rng)
    if name.startswith("fig2"):
        return figure_data(name, args.samples, ctx=cfg.context, lower_range=rng, period_lower=cfg.f_T)
    terms = int(name.split("-")[1])
    if "series" not in series_cache or series_cache["series"].n_max < terms:
        series_cache["series"] = sawtooth_series(cfg.context, terms, _sawtooth_spec(cfg), cfg.quadrature)
    return figure_data("fig3", args.samples, ctx=cfg.context, series=series_cache["series"], terms=terms, lower_range=rng)


def cmd_figures(cfg: Config) -> int:
    args = cfg.args
    names = _figure_names(args.which)
    cache: dict = {}
    if len(names) == 1:
        _emit(args, _points_table(cfg, _figure_points(cfg, names[0], cache), args.values, names[0]))
        return EXIT_OK
    if args.output == "-":
        raise UsageError("--which all writes one file per dataset; give --output DIRECTORY")
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    suffix = args.format
    # the largest term count first, so one series serves every fig3 dataset
    for name in sorted(names, key=lambda n: -int(n.split("-")[1]) if n.startswith("fig3-") else 0):
        text = _points_table(cfg, _figure_points(cfg, name, cache), args.values, name)
        with open(out / f"{name}.{suffix}", "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return EXIT_OK


def cmd_selftest(cfg: Config) -> int:
    args = cfg.args
    as_json = args.format == "json"
    lines = []

    def progress(result):
        if not as_json and args.output == "-":
            print(result.line(), flush=True)
        lines.append(result.line())

    results = run_selftest(cfg.context, cfg.quadrature, args.seed, progress)
    ok = all(r.passed for r in results)
    summary = f"{'PASS' if ok else 'FAIL'} selftest: {sum(r.passed for r in results)}/{len(results)} suites " \
              f"({cfg.context.spec}, precision_bits={cfg.context.precision_bits})"
    if as_json:
        _emit(args, _json({
            "schema_version": SCHEMA_VERSION,
            "context": cfg.context.spec,
            "precision_bits": cfg.context.precision_bits,
            "passed": ok,
            "suites": [
                {"name": r.name, "passed": r.passed, "max_deviation": r.max_deviation, "tolerance": r.tolerance}
                for r in results
            ],
        }))
    elif args.output == "-":
        print(summary)
    else:
        _emit(args, "\n".join([*lines, summary]) + "\n")
    return EXIT_OK if ok else EXIT_SELFTEST


COMMANDS = {
    "map": cmd_map,
    "analyze": cmd_analyze,
    "reconstruct": cmd_reconstruct,
    "spectrum": cmd_spectrum,
    "figures": cmd_figures,
    "selftest": cmd_selftest,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = Config(args)
        return COMMANDS[args.command](cfg)
    except UsageError as exc:
        print(f"ndfourier: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CoefficientFileError as exc:
        print(f"ndfourier: error: {exc}", file=sys.stderr)
        return EXIT_COEFFICIENTS
    except QuadratureNonConvergent as exc:
        print(f"ndfourier: quadrature failed: {exc}", file=sys.stderr)
        return EXIT_QUADRATURE


if __name__ == "__main__":
    sys.exit(main())
