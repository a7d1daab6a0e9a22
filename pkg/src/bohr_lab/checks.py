"""Verification suites run by ``bohr-lab check``.

Each suite returns a :class:`SuiteResult` with a count of individual
checks and a list of the ones that failed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from .errors import NonNegativeStartError
from .functionals import FunctionalKind, Kind, Variant, lhs_closed, lhs_series, radius_equation
from .kernel import TruncationBudget, alt_log_tail, dilog, log_tail, truncated_sum
from .model import distance_bound, extremal_profile, minorant
from .solver import smallest_root
from .tables import TOLERANCE, audit_variants, registry, reproduce

__all__ = [
    "SuiteResult",
    "SUITES",
    "standard_kinds",
    "oracle_kinds",
    "alpha_grid",
    "radius_grid",
    "run_suite",
    "discrepancy_findings",
]

SHARPNESS_TOL = 1e-8
ORACLE_SLACK = 1e-10


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: list[str] = field(default_factory=list)
    flagged: int = 0
    worst: float = 0.0  # largest deviation seen, where meaningful

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, passed: bool, message: str):
        self.checks += 1
        if not passed:
            self.failures.append(message)

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        line = f"{self.name:<14} {status}  {self.checks - len(self.failures)}/{self.checks} checks"
        if self.flagged:
            line += f", {self.flagged} flagged"
        if self.worst:
            line += f", worst deviation {self.worst:.2e}"
        return line


def standard_kinds() -> list[FunctionalKind]:
    """Representative parameter choices for every kind (proof variant)."""
    K = FunctionalKind
    return [
        *(K(Kind.ROGOSINSKI, N=n) for n in (2, 3, 6, 10)),
        *(K(Kind.ROGOSINSKI_SQUARED, N=n) for n in (2, 3, 8)),
        *(K(Kind.POWERED_ARGUMENT, m=m, N=n) for m, n in ((1, 2), (2, 2), (7, 2), (5, 3), (15, 5))),
        *(K(Kind.ANALYTIC_POWER, p=p) for p in (1, 7, 35)),
        *(K(Kind.AREA_POLYNOMIAL, N=n) for n in (1, 2, 5)),
        K(Kind.AREA_LINEAR),
        K(Kind.SQUARED_COEFFICIENTS),
        *(K(Kind.REFINED_WEIGHTED, N=n) for n in (2, 25)),
        *(K(Kind.REFINED_Q, m=m) for m in (1, 2, 3)),
        K(Kind.REFINED_R),
        *(K(Kind.JACOBIAN, N=n) for n in (2, 3, 5)),
    ]


def oracle_kinds() -> list[FunctionalKind]:
    """A wider sweep of parameters for the closed-form versus series check."""
    K = FunctionalKind
    return [
        *(K(Kind.ROGOSINSKI, N=n) for n in range(2, 11)),
        *(K(Kind.ROGOSINSKI_SQUARED, N=n) for n in range(2, 11)),
        *(K(Kind.POWERED_ARGUMENT, m=m, N=n) for m in range(1, 7) for n in range(2, 5)),
        *(K(Kind.ANALYTIC_POWER, p=p) for p in range(1, 13)),
        *(K(Kind.AREA_POLYNOMIAL, N=n) for n in range(1, 11)),
        K(Kind.AREA_LINEAR),
        K(Kind.SQUARED_COEFFICIENTS),
        *(K(Kind.REFINED_WEIGHTED, N=n) for n in range(2, 11)),
        *(K(Kind.REFINED_Q, m=m) for m in range(1, 9)),
        K(Kind.REFINED_R),
        *(K(Kind.JACOBIAN, N=n) for n in range(2, 11)),
    ]


def alpha_grid(start: int = 0) -> list[float]:
    return [k / 10 for k in range(start, 10)]


def radius_grid(coarse: bool = False) -> list[float]:
    if coarse:
        return [float(x) for x in np.round(np.linspace(0.05, 0.90, 10), 12)]
    return [k / 100 for k in range(5, 91, 5)]


def _identities() -> SuiteResult:
    res = SuiteResult("identities")
    res.record(abs(distance_bound(0.5) - math.log(2)) <= 1e-12, "distance_bound(0.5) != ln 2")
    for a in alpha_grid():
        res.record(abs(minorant(1.0, a) - distance_bound(a)) <= 1e-12, f"minorant(1, {a}) != d({a})")
    for k in range(1, 10):
        r = k / 10
        lhs = dilog(r) + dilog(1 - r)
        rhs = math.pi**2 / 6 - math.log(r) * math.log(1 - r)
        res.record(abs(lhs - rhs) <= 1e-10, f"dilog reflection at r={r}")
    budget = TruncationBudget(1e-12)
    for N in range(1, 11):
        for k in range(1, 20):
            r = k / 20
            oracle = truncated_sum(lambda n: r ** n.astype(float) / n, budget, scale=1.0 / N, ratio=r, start=N)
            res.record(abs(log_tail(N, r) - oracle.value) <= 1e-10, f"log_tail({N}, {r}) vs series")
            res.record(abs(alt_log_tail(r) + r - math.log1p(r)) <= 1e-12, f"alt_log_tail({r})")
    return res


def _oracle(coarse: bool) -> SuiteResult:
    res = SuiteResult("oracle")
    budget = TruncationBudget(1e-12)
    for kind in oracle_kinds():
        for a in alpha_grid():
            profile = extremal_profile(a)
            for r in radius_grid(coarse):
                closed = lhs_closed(kind, profile, r)
                series = lhs_series(kind, profile, r, budget)
                dev = abs(closed - series.value)
                res.worst = max(res.worst, dev)
                res.record(
                    dev <= series.tail_bound + ORACLE_SLACK,
                    f"{kind.label} alpha={a} r={r}: closed {closed!r} vs series {series.value!r}",
                )
    return res


def _sharpness() -> SuiteResult:
    res = SuiteResult("sharpness")
    for kind in standard_kinds():
        for a in alpha_grid():
            root = smallest_root(radius_equation(kind, a).as_function()).root
            dev = abs(lhs_closed(kind, extremal_profile(a), root) - distance_bound(a))
            res.worst = max(res.worst, dev)
            res.record(dev <= SHARPNESS_TOL, f"{kind.label} alpha={a}: |LHS(r*) - d| = {dev:.3e}")
    return res


def _monotonicity() -> SuiteResult:
    res = SuiteResult("monotonicity")
    rs = [k / 200 for k in range(1, 200)]
    for kind in standard_kinds():
        roots = [smallest_root(radius_equation(kind, a).as_function()).root for a in alpha_grid(1)]
        res.record(
            all(x < y for x, y in zip(roots, roots[1:])),
            f"{kind.label}: roots not increasing in alpha {roots}",
        )
        for a in alpha_grid():
            profile = extremal_profile(a)
            values = [lhs_closed(kind, profile, r) for r in rs]
            res.record(
                all(x < y for x, y in zip(values, values[1:])),
                f"{kind.label} alpha={a}: LHS not increasing in r",
            )
    return res


def _tables() -> SuiteResult:
    res = SuiteResult("tables")
    for table in registry():
        report = reproduce(table.id)
        res.flagged += report.flagged
        for c in report.cells:
            if c.status == "flag":
                continue
            res.worst = max(res.worst, abs(c.diff))
            res.record(
                c.status == "pass",
                f"{table.id} ({c.row}, {c.col}): printed {c.printed:.4f}, recomputed {c.recomputed:.6f}",
            )
    return res


def _root(kind: FunctionalKind, alpha: float) -> float:
    return smallest_root(radius_equation(kind, alpha).as_function()).root


@dataclass(frozen=True)
class Finding:
    name: str
    detected: bool
    detail: str


def discrepancy_findings() -> list[Finding]:
    """Internal inconsistencies of the source, each checked numerically."""
    K = FunctionalKind
    out = []

    def pair(name, kind, alpha, threshold):
        a = _root(kind.with_variant(Variant.STATEMENT), alpha)
        b = _root(kind.with_variant(Variant.PROOF), alpha)
        out.append(
            Finding(
                name,
                abs(a - b) > threshold,
                f"statement root {a:.6f}, proof root {b:.6f}, |diff| {abs(a - b):.3e} (> {threshold:g} required)",
            )
        )

    pair("rogosinski-squared N=3 alpha=0.1", K(Kind.ROGOSINSKI_SQUARED, N=3), 0.1, 1e-3)
    pair("squared-coefficients alpha=0.5", K(Kind.SQUARED_COEFFICIENTS), 0.5, 1e-3)

    lin = _root(K(Kind.AREA_LINEAR), 0.1)
    deg1 = _root(K(Kind.AREA_POLYNOMIAL, N=1), 0.1)
    out.append(
        Finding(
            "area-linear vs area-polynomial P(w)=w, alpha=0.1",
            abs(lin - deg1) > 5e-3,
            f"area-linear root {lin:.6f}, N=1 specialisation {deg1:.6f}, |diff| {abs(lin - deg1):.3e} (> 5e-3 required)",
        )
    )

    t4 = audit_variants("T4", [Variant.PROOF, Variant.DROP_LINEAR])
    t5 = audit_variants("T5", [Variant.PROOF, Variant.DROP_LINEAR])
    out.append(
        Finding(
            "powered-argument tables need different readings",
            Variant.PROOF not in t4.matching
            and Variant.DROP_LINEAR in t4.matching
            and t5.failures[Variant.DROP_LINEAR] > t5.failures[Variant.PROOF],
            f"T4 failing cells: proof {t4.failures[Variant.PROOF]}, drop-linear {t4.failures[Variant.DROP_LINEAR]}; "
            f"T5 failing cells: proof {t5.failures[Variant.PROOF]}, drop-linear {t5.failures[Variant.DROP_LINEAR]}",
        )
    )

    try:
        _root(K(Kind.REFINED_R, variant=Variant.STATEMENT), 0.5)
        degenerate, detail = False, "statement reading unexpectedly has a root"
    except NonNegativeStartError as exc:
        degenerate, detail = True, f"statement reading starts non-negative: {exc}"
    out.append(Finding("refined-r printed equation is positive at r=0+", degenerate, detail))

    p_stmt = _root(K(Kind.AREA_POLYNOMIAL, N=2, variant=Variant.STATEMENT), 0.1)
    out.append(
        Finding(
            "area-polynomial degree N-1 reading misses Table T7",
            abs(p_stmt - 0.2734) > TOLERANCE,
            f"degree N-1 root {p_stmt:.6f} vs printed 0.2734",
        )
    )
    return out


def _discrepancies() -> SuiteResult:
    res = SuiteResult("discrepancies")
    for f in discrepancy_findings():
        res.record(f.detected, f"not detected: {f.name} ({f.detail})")
    return res


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "identities": _identities,
    "oracle": _oracle,
    "sharpness": _sharpness,
    "monotonicity": _monotonicity,
    "tables": _tables,
    "discrepancies": _discrepancies,
}


def run_suite(name: str, *, coarse: bool = False) -> SuiteResult:
    if name == "oracle":
        return _oracle(coarse)
    return SUITES[name]()


def run_all(names: Iterable[str] = SUITES, *, coarse: bool = False) -> list[SuiteResult]:
    return [run_suite(n, coarse=coarse) for n in names]
