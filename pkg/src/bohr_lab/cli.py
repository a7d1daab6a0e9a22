"""Command-line front end.

Usage::

    bohr-lab radius --kind rogosinski --n 2 --alpha 0.9
    bohr-lab table --id T2 --format markdown
    bohr-lab curve --kind rogosinski --n 3 --alpha-from 0.1 --alpha-to 0.9 --step 0.1
    bohr-lab lhs --kind area-linear --r 0.3 --profile my_profile.txt
    bohr-lab check --all

Exit codes: 0 success, 1 verification failure, 2 invalid input,
3 solver failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import os
import sys
from typing import Optional, Sequence

from . import checks
from .errors import BohrLabError, DomainError, ProfileError, SolverError, UnknownTableError
from .formatting import format_number
from .functionals import FunctionalKind, Kind, Variant, lhs_closed, lhs_series, radius_equation
from .model import AlphaParam, extremal_profile, load_profile
from .solver import DEFAULT_ROOT_TOL, DEFAULT_SCAN_STEP, smallest_root
from .tables import report_to_csv, report_to_markdown, report_to_plain, reproduce

__all__ = ["main", "build_parser", "format_number"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_SOLVER = 0, 1, 2, 3
PRECISION_ENV = "BOHR_LAB_PRECISION"


class UsageError(Exception):
    pass


def _precision(args) -> int:
    value = args.precision
    if value is None:
        raw = os.environ.get(PRECISION_ENV)
        if raw is None:
            return 4
        try:
            value = int(raw)
        except ValueError:
            raise UsageError(f"{PRECISION_ENV}={raw!r} is not an integer") from None
    if not 1 <= value <= 15:
        raise UsageError(f"precision must lie in [1, 15], got {value}")
    return value


def _kind(args) -> FunctionalKind:
    params = {k: getattr(args, k.lower() if k != "N" else "n") for k in ("N", "m", "p")}
    params = {k: v for k, v in params.items() if v is not None}
    variant = Variant(args.variant) if args.variant else Variant.PROOF
    return FunctionalKind(Kind(args.kind), variant=variant, **params)


def _header(kind: FunctionalKind, **extra) -> str:
    args = ",".join(f"{k}={v}" for k, v in kind.params.items())
    bits = [f"kind={kind.tag.value}({args})", f"variant={kind.variant.value}"]
    bits += [f"{k}={v}" for k, v in extra.items()]
    return "# " + " ".join(bits)


def _solver_opts(args) -> dict:
    return {"scan_step": args.scan_step, "root_tol": args.root_tol}


def cmd_radius(args, out) -> int:
    precision = _precision(args)
    kind = _kind(args)
    alpha = AlphaParam(args.alpha)
    result = smallest_root(radius_equation(kind, alpha).as_function(), **_solver_opts(args))
    out.write(_header(kind, alpha=f"{alpha.alpha:g}") + "\n")
    out.write(format_number(result.root, precision) + "\n")
    if args.verbose:
        lo, hi = result.bracket
        out.write(f"bracket: [{lo!r}, {hi!r}]\n")
        out.write(f"residual: {result.residual_at_root:.3e}\n")
        out.write(f"iterations: {result.iterations}\n")
        out.write(f"converged: {str(result.converged).lower()}\n")
    return EXIT_OK


def cmd_table(args, out) -> int:
    precision = _precision(args)
    variant = Variant(args.variant) if args.variant else None
    report = reproduce(args.id, variant=variant, **_solver_opts(args))
    writer = {"csv": report_to_csv, "markdown": report_to_markdown, "plain": report_to_plain}[args.format]
    out.write(writer(report, precision))
    return EXIT_OK if report.ok else EXIT_FAIL


def _alpha_range(start: float, stop: float, step: float) -> list[float]:
    if not step > 0:
        raise UsageError(f"--step must be positive, got {step}")
    if stop < start:
        raise UsageError(f"empty alpha range [{start}, {stop}]")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + k * step, 12) for k in range(count)]


def cmd_curve(args, out) -> int:
    precision = _precision(args)
    kind = _kind(args)
    alphas = [AlphaParam(a) for a in _alpha_range(args.alpha_from, args.alpha_to, args.step)]
    rows = []
    for a in alphas:
        root = smallest_root(radius_equation(kind, a).as_function(), **_solver_opts(args)).root
        rows.append((f"{a.alpha:.12g}", format_number(root, precision)))
    out.write(_header(kind) + "\n")
    if args.format == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["alpha", "root"])
        writer.writerows(rows)
    elif args.format == "markdown":
        out.write("| alpha | root |\n|---|---|\n")
        for a, r in rows:
            out.write(f"| {a} | {r} |\n")
    else:
        for a, r in rows:
            out.write(f"{a} {r}\n")
    return EXIT_OK


def cmd_lhs(args, out) -> int:
    precision = _precision(args)
    kind = _kind(args)
    if args.profile:
        profile = load_profile(args.profile)
    elif args.alpha is not None:
        profile = extremal_profile(args.alpha)
    else:
        raise UsageError("give --alpha (extremal profile) or --profile FILE")
    closed = lhs_closed(kind, profile, args.r)
    out.write(_header(kind, alpha=f"{profile.alpha.alpha:g}", r=f"{args.r:g}") + "\n")
    out.write(f"closed: {format_number(closed, precision)}\n")
    if not kind.diverges and args.r <= 0.97:
        series = lhs_series(kind, profile, args.r)
        out.write(f"series: {format_number(series.value, precision)} (terms {series.terms_used}, tail <= {series.tail_bound:.1e})\n")
    return EXIT_OK


def cmd_check(args, out) -> int:
    names = args.suite or list(checks.SUITES)
    unknown = [n for n in names if n not in checks.SUITES]
    if unknown:
        raise UsageError(f"unknown suite(s): {', '.join(unknown)}; choose from {', '.join(checks.SUITES)}")
    ok = True
    for name in names:
        result = checks.run_suite(name, coarse=args.grid == "coarse")
        out.write(result.summary() + "\n")
        for msg in result.failures[: args.max_failures]:
            out.write(f"  - {msg}\n")
        if len(result.failures) > args.max_failures:
            out.write(f"  ... {len(result.failures) - args.max_failures} more\n")
        if name == "discrepancies":
            for f in checks.discrepancy_findings():
                out.write(f"  * {f.name}: {'detected' if f.detected else 'NOT detected'}; {f.detail}\n")
        ok = ok and result.ok
    out.write(("all suites passed" if ok else "verification FAILED") + "\n")
    return EXIT_OK if ok else EXIT_FAIL


def _add_kind_options(p: argparse.ArgumentParser, *, variants=True):
    p.add_argument("--kind", required=True, choices=[k.value for k in Kind])
    p.add_argument("--n", type=int, help="N (tail start, polynomial degree or refinement power)")
    p.add_argument("--m", type=int, help="m (argument power or refinement order)")
    p.add_argument("--p", type=int, help="p (power in the analytic-power functional)")
    if variants:
        p.add_argument("--variant", choices=[v.value for v in Variant])


def _add_common(p: argparse.ArgumentParser, *, solver=True):
    p.add_argument("--precision", type=int, help=f"decimals to print (default 4, or ${PRECISION_ENV})")
    if solver:
        p.add_argument("--scan-step", type=float, default=DEFAULT_SCAN_STEP)
        p.add_argument("--root-tol", type=float, default=DEFAULT_ROOT_TOL)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bohr-lab", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("radius", help="sharp radius for one functional and alpha")
    _add_kind_options(p)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--verbose", "-v", action="store_true")
    _add_common(p)
    p.set_defaults(func=cmd_radius)

    p = sub.add_parser("table", help="recompute a published table and diff it")
    p.add_argument("--id", required=True)
    p.add_argument("--format", choices=["csv", "markdown", "plain"], default="plain")
    p.add_argument("--variant", choices=[v.value for v in Variant], help="override the table's binding")
    _add_common(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("curve", help="radius as a function of alpha, as CSV")
    _add_kind_options(p)
    p.add_argument("--alpha-from", type=float, required=True)
    p.add_argument("--alpha-to", type=float, required=True)
    p.add_argument("--step", type=float, required=True)
    p.add_argument("--format", choices=["csv", "markdown", "plain"], default="csv")
    _add_common(p)
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("lhs", help="evaluate a functional's left-hand side")
    _add_kind_options(p)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--alpha", type=float)
    p.add_argument("--profile", help="profile file: 'alpha=<a>' line, then 'n, c_n, a_n_bound' rows")
    _add_common(p, solver=False)
    p.set_defaults(func=cmd_lhs)

    p = sub.add_parser("check", help="run the verification suites")
    p.add_argument("--all", action="store_true", help="run every suite (the default)")
    p.add_argument("--suite", action="append", help=f"one of: {', '.join(checks.SUITES)}")
    p.add_argument("--grid", choices=["coarse", "full"], default="full")
    p.add_argument("--max-failures", type=int, default=20)
    p.set_defaults(func=cmd_check)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    # Buffer so that a failing command prints nothing partial.
    buf = io.StringIO()
    try:
        code = args.func(args, buf)
    except (UsageError, DomainError, ProfileError, UnknownTableError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"bohr-lab: error: {msg}", file=sys.stderr)
        return EXIT_USAGE
    except SolverError as exc:
        print(f"bohr-lab: solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except (BohrLabError, OSError) as exc:
        print(f"bohr-lab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out.write(buf.getvalue())
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
