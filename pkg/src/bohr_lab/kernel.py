"""Special functions and series machinery shared by the functionals.

Closed forms for the logarithmic tails and the dilogarithm, plus a
truncated summation engine that carries a certified bound on the part of
the series it leaves out.  The engine is the independent oracle that the
closed forms are checked against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import BudgetExceededError, DomainError

__all__ = [
    "SERIES_CUTOFF",
    "TruncationBudget",
    "SeriesResult",
    "log_tail",
    "alt_log_tail",
    "dilog",
    "truncated_sum",
]

PI2_6 = math.pi**2 / 6.0
# Series are never summed beyond this argument; the closed forms take over.
SERIES_CUTOFF = 1.0 - 1e-9

# The closed form for log_tail loses about this many bits to cancellation
# before the direct sum is preferred.
_CANCELLATION_LIMIT = 2.0**-30
_DIRECT_SUM_MAX_RATIO = 0.99


@dataclass(frozen=True)
class TruncationBudget:
    tolerance: float = 1e-12
    max_terms: int = 200_000

    def __post_init__(self):
        if not (self.tolerance > 0 and math.isfinite(self.tolerance)):
            raise DomainError(f"tolerance must be positive, got {self.tolerance!r}")
        if int(self.max_terms) != self.max_terms or self.max_terms < 2:
            raise DomainError(f"max_terms must be an integer >= 2, got {self.max_terms!r}")


@dataclass(frozen=True)
class SeriesResult:
    """Partial sum of a non-negative series with a bound on the omitted tail."""

    value: float
    terms_used: int
    tail_bound: float

    def __add__(self, other: "SeriesResult") -> "SeriesResult":
        return SeriesResult(
            self.value + other.value,
            self.terms_used + other.terms_used,
            self.tail_bound + other.tail_bound,
        )

    def scaled(self, factor: float) -> "SeriesResult":
        factor = abs(factor)
        return SeriesResult(self.value * factor, self.terms_used, self.tail_bound * factor)

    def shifted(self, offset: float) -> "SeriesResult":
        return SeriesResult(self.value + offset, self.terms_used, self.tail_bound)


def _check_unit(r, name="r", closed=False):
    upper_ok = r <= 1.0 if closed else r < 1.0
    if not (0.0 <= r and upper_ok):
        interval = "[0, 1]" if closed else "[0, 1)"
        raise DomainError(f"{name} must lie in {interval}, got {r!r}")


def _direct_log_tail(N: int, r: float) -> float:
    # Terms shrink at least by the factor r; stop once they drop below the
    # last bit of the running total.
    count = int(math.ceil(-60.0 / math.log2(r))) + 2
    n = np.arange(N, N + count, dtype=float)
    terms = np.exp(n * math.log(r)) / n
    return math.fsum(terms.tolist())


def log_tail(N: int, r: float) -> float:
    """Tail ``sum_{n >= N} r**n / n`` of the logarithm series.

    Evaluated as ``-ln(1 - r) - sum_{n < N} r**n / n``.  When that
    difference would cancel most of its bits and the series converges
    quickly, the tail is summed directly instead.
    """
    if int(N) != N or N < 1:
        raise DomainError(f"N must be an integer >= 1, got {N!r}")
    _check_unit(r)
    N = int(N)
    if r == 0.0:
        return 0.0
    lead = math.exp(N * math.log(r)) / N
    if lead < _CANCELLATION_LIMIT and r <= _DIRECT_SUM_MAX_RATIO:
        return _direct_log_tail(N, r)
    parts = [-math.log1p(-r)]
    power = 1.0
    for n in range(1, N):
        power *= r
        parts.append(-power / n)
    return max(math.fsum(parts), 0.0)


def alt_log_tail(r: float) -> float:
    """``sum_{n >= 2} (-1)**(n-1) r**n / n``, that is ``ln(1 + r) - r``."""
    _check_unit(r, closed=True)
    return math.log1p(r) - r


def _dilog_series(r: float) -> float:
    if r == 0.0:
        return 0.0
    # r <= 1/2 here, so 60 terms leave a tail below 2**-60.
    n = np.arange(1, 61, dtype=float)
    return math.fsum((np.exp(n * math.log(r)) / (n * n)).tolist())


def dilog(r: float) -> float:
    """Real dilogarithm Li2(r) on [0, 1].

    Direct series up to 1/2; above that the reflection
    ``Li2(r) = pi^2/6 - ln(r) ln(1-r) - Li2(1-r)`` maps the argument back
    below 1/2.
    """
    _check_unit(r, closed=True)
    if r == 1.0:
        return PI2_6
    if r <= 0.5:
        return _dilog_series(r)
    s = 1.0 - r
    return PI2_6 - math.log(r) * math.log(s) - _dilog_series(s)


def truncated_sum(
    term: Callable[[np.ndarray], np.ndarray],
    budget: TruncationBudget,
    *,
    scale: float,
    ratio: float,
    start: int = 1,
) -> SeriesResult:
    """Sum ``term(n)`` for ``n >= start`` with a certified tail.

    The caller certifies ``0 <= term(n) <= scale * ratio**n`` for every
    ``n >= start``, so stopping before index ``K`` omits at most
    ``scale * ratio**K / (1 - ratio)``.  The number of terms is chosen
    up front as the smallest ``K`` that brings this bound under
    ``budget.tolerance``.  Summed terms are checked against the envelope
    and a violation is reported as a ``DomainError``.
    """
    if scale < 0 or not math.isfinite(scale):
        raise DomainError(f"scale must be finite and non-negative, got {scale!r}")
    if not (0.0 <= ratio <= SERIES_CUTOFF):
        raise DomainError(f"ratio must lie in [0, {SERIES_CUTOFF}], got {ratio!r}")
    start = int(start)

    if scale == 0.0:
        stop = start
    elif ratio == 0.0:
        stop = max(start, 1)
    else:
        # scale * ratio**K / (1 - ratio) <= tol
        k = math.log(budget.tolerance * (1.0 - ratio) / scale) / math.log(ratio)
        stop = max(start, int(math.ceil(k)))
    count = stop - start
    if count > budget.max_terms:
        raise BudgetExceededError(
            f"{count} terms needed for tolerance {budget.tolerance:g} at ratio {ratio:g}, "
            f"budget allows {budget.max_terms}"
        )

    if scale == 0.0:
        tail = 0.0
    elif ratio == 0.0:
        tail = 0.0
    else:
        tail = scale * math.exp(stop * math.log(ratio)) / (1.0 - ratio)

    if count == 0:
        return SeriesResult(0.0, 0, tail)

    n = np.arange(start, stop, dtype=np.int64)
    values = np.asarray(term(n), dtype=float)
    if values.shape != n.shape:
        raise DomainError("term rule must return one value per index")
    if np.any(values < 0) or not np.all(np.isfinite(values)):
        raise DomainError("term rule produced a negative or non-finite term")
    if ratio > 0.0:
        envelope = scale * np.exp(n * math.log(ratio))
        if np.any(values > envelope * (1 + 1e-9) + 1e-300):
            bad = int(n[np.argmax(values > envelope * (1 + 1e-9) + 1e-300)])
            raise DomainError(f"term at n={bad} exceeds the certified envelope scale*ratio**n")
    elif np.any(values[n >= 1] > 0):
        raise DomainError("term rule is non-zero where the envelope vanishes")
    return SeriesResult(math.fsum(values.tolist()), count, tail)
