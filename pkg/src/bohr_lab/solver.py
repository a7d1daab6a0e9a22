"""Smallest root of a radius-equation residual on (0, 1).

The residual is scanned upward on a uniform grid until it first becomes
non-negative, and the bracket found is refined by bisection.  Bisection
is used because every residual has a logarithmic singularity at r = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import DomainError, NonNegativeStartError, NoSignChangeError, SolverError

__all__ = [
    "DEFAULT_SCAN_STEP",
    "DEFAULT_ROOT_TOL",
    "DEFAULT_RESIDUAL_TOL",
    "SCAN_UPPER",
    "RootResult",
    "smallest_root",
    "max_iterations",
]

DEFAULT_SCAN_STEP = 1e-3
DEFAULT_ROOT_TOL = 1e-12
DEFAULT_RESIDUAL_TOL = 1e-10
SCAN_UPPER = 1.0 - 1e-9


@dataclass(frozen=True)
class RootResult:
    root: float
    bracket: tuple[float, float]
    residual_at_root: float
    iterations: int
    converged: bool


def max_iterations(scan_step: float, root_tol: float) -> int:
    """Upper bound on bisection steps for one scan bracket."""
    return math.ceil(math.log2(scan_step / root_tol)) + 2


def _eval(G, r):
    value = G(r)
    if math.isnan(value):
        raise SolverError(f"residual is NaN at r={r!r}")
    return value


def smallest_root(
    G: Callable[[float], float],
    scan_step: float = DEFAULT_SCAN_STEP,
    root_tol: float = DEFAULT_ROOT_TOL,
    *,
    upper: float = SCAN_UPPER,
) -> RootResult:
    """Root of ``G`` inside the first sign-change bracket above ``scan_step``.

    ``G(scan_step)`` must be negative.  Grid points are ``k * scan_step``
    for ``k = 1, 2, ...``, with ``upper`` as the last point.
    """
    if not (0.0 < scan_step < upper):
        raise DomainError(f"scan_step must lie in (0, {upper}), got {scan_step!r}")
    if not root_tol > 0.0:
        raise DomainError(f"root_tol must be positive, got {root_tol!r}")

    lo = scan_step
    g_lo = _eval(G, lo)
    if g_lo >= 0.0:
        raise NonNegativeStartError(
            f"residual is already {g_lo:.6g} >= 0 at r={scan_step:g}; no root above the scan start"
        )

    k = 1
    while True:
        k += 1
        hi = k * scan_step
        if hi >= upper:
            hi = upper
        g_hi = _eval(G, hi)
        if g_hi >= 0.0:
            break
        if hi == upper:
            raise NoSignChangeError(f"residual stays negative up to r={upper!r} ({g_hi:.6g})")
        lo = hi

    iterations = 0
    while hi - lo > root_tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        iterations += 1
        if _eval(G, mid) < 0.0:
            lo = mid
        else:
            hi = mid

    root = 0.5 * (lo + hi)
    if not lo < root < hi:
        root = hi
    return RootResult(
        root=root,
        bracket=(lo, hi),
        residual_at_root=_eval(G, root),
        iterations=iterations,
        converged=hi - lo <= root_tol,
    )
