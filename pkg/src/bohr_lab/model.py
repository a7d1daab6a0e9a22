"""The close-to-convex harmonic class with parameter alpha.

Members are modelled only through bounds on their Taylor coefficients:
``c_n >= |a_n| + |b_n|``, a separate bound on ``|a_n|`` and the second
coefficient ``|a_2| + |b_2|``.  The extremal map

    f(z) = z + sum_{n >= 2} 2 (1 - alpha) z**n / n

saturates all of them, and its boundary distance is the right-hand side
of every Bohr inequality handled here.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, Optional

import numpy as np

from .errors import DomainError, ProfileError
from .kernel import alt_log_tail, log_tail

__all__ = [
    "AlphaParam",
    "CoefficientProfile",
    "as_alpha",
    "coeff_bound",
    "distance_bound",
    "majorant",
    "minorant",
    "extremal_profile",
    "jacobian_sqrt_bound",
    "load_profile",
    "parse_profile",
]

LN2 = math.log(2.0)
# Slack for comparing user-supplied bounds with 2(1 - alpha)/n.
_BOUND_SLACK = 1e-12


@dataclass(frozen=True, order=True)
class AlphaParam:
    """Order alpha of the class, validated into [0, 1)."""

    alpha: float

    def __post_init__(self):
        a = self.alpha
        if isinstance(a, bool) or not isinstance(a, (int, float)):
            raise DomainError(f"alpha must be a real number, got {a!r}")
        if not (0.0 <= a < 1.0):
            raise DomainError(f"alpha must lie in [0, 1), got {a!r}")
        object.__setattr__(self, "alpha", float(a))

    @property
    def width(self) -> float:
        """``1 - alpha``; every coefficient bound is proportional to it."""
        return 1.0 - self.alpha

    def __float__(self):
        return self.alpha


def as_alpha(alpha) -> AlphaParam:
    return alpha if isinstance(alpha, AlphaParam) else AlphaParam(alpha)


def _check_radius(r, *, closed=False):
    ok = 0.0 <= r <= 1.0 if closed else 0.0 <= r < 1.0
    if not ok:
        raise DomainError(f"r must lie in {'[0, 1]' if closed else '[0, 1)'}, got {r!r}")


def coeff_bound(n: int, alpha) -> float:
    """Sharp bound ``2(1 - alpha)/n`` on ``|a_n| + |b_n|`` (and on ``|a_n|``)."""
    if int(n) != n or n < 2:
        raise DomainError(f"n must be an integer >= 2, got {n!r}")
    return 2.0 * as_alpha(alpha).width / int(n)


def distance_bound(alpha) -> float:
    """Distance from f(0) to the boundary of f(D): ``1 + 2(1 - alpha)(ln 2 - 1)``."""
    return 1.0 + 2.0 * as_alpha(alpha).width * (LN2 - 1.0)


def majorant(r: float, alpha) -> float:
    """Upper growth bound ``r - 2(1 - alpha)(r + ln(1 - r))``.

    This is the majorant series ``r + sum 2(1 - alpha) r**n / n`` and equals
    the extremal map on the positive axis.
    """
    _check_radius(r)
    return r + 2.0 * as_alpha(alpha).width * log_tail(2, r)


def minorant(r: float, alpha) -> float:
    """Lower growth bound ``r + 2(1 - alpha)(ln(1 + r) - r)``; at r = 1 it is the distance bound."""
    _check_radius(r, closed=True)
    return r + 2.0 * as_alpha(alpha).width * alt_log_tail(r)


def jacobian_sqrt_bound(r: float, alpha) -> float:
    """Bound ``alpha + (1 - alpha)(1 + r)/(1 - r)`` on ``|h'(z)|`` for ``|z| = r``.

    Since ``|J_f| <= |h'|**2`` this also bounds ``sqrt(|J_f|)``.
    """
    _check_radius(r)
    a = as_alpha(alpha)
    return a.alpha + a.width * (1.0 + r) / (1.0 - r)


def _frozen_map(values: Optional[Mapping[int, float]]) -> Mapping[int, float]:
    return MappingProxyType(dict(values or {}))


@dataclass(frozen=True)
class CoefficientProfile:
    """Worst-case coefficient bounds of a class member.

    ``sum_overrides`` and ``a_overrides`` replace the class bound
    ``2(1 - alpha)/n`` for the listed indices; every other index uses the
    bound itself.  ``second_coeff`` is ``|a_2| + |b_2|`` and, when given,
    must equal ``c_2``.  Profiles are validated on construction.
    """

    alpha: AlphaParam
    sum_overrides: Mapping[int, float] = field(default_factory=dict)
    a_overrides: Mapping[int, float] = field(default_factory=dict)
    second_coeff: Optional[float] = None
    is_extremal: bool = False

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_alpha(self.alpha))
        object.__setattr__(self, "sum_overrides", _frozen_map(self.sum_overrides))
        object.__setattr__(self, "a_overrides", _frozen_map(self.a_overrides))
        self._validate()

    def _validate(self):
        width = self.alpha.width
        for label, table in (("c_n", self.sum_overrides), ("|a_n| bound", self.a_overrides)):
            for n, value in table.items():
                if int(n) != n or n < 2:
                    raise ProfileError(f"{label}: index must be an integer >= 2, got {n!r}")
                limit = 2.0 * width / n
                if not (value >= 0.0 and math.isfinite(value)):
                    raise ProfileError(f"{label} at n={n} must be finite and non-negative, got {value!r}")
                if value > limit * (1.0 + _BOUND_SLACK):
                    raise ProfileError(
                        f"{label} at n={n} is {value!r}, above the class bound 2(1-alpha)/n = {limit!r}"
                    )
        if self.second_coeff is not None:
            b2 = self.second_coeff
            if not (0.0 <= b2 <= width * (1.0 + _BOUND_SLACK)):
                raise ProfileError(f"second_coeff must lie in [0, 1 - alpha], got {b2!r}")
            if not math.isclose(b2, self.sum_bound(2), rel_tol=1e-12, abs_tol=1e-15):
                raise ProfileError(f"second_coeff {b2!r} differs from c_2 = {self.sum_bound(2)!r}")
        if self.is_extremal and (self.sum_overrides or self.a_overrides):
            raise ProfileError("an extremal profile cannot carry overrides")

    # Scalar accessors
    def sum_bound(self, n: int) -> float:
        return self.sum_overrides.get(n, coeff_bound(n, self.alpha))

    def a_bound(self, n: int) -> float:
        return self.a_overrides.get(n, coeff_bound(n, self.alpha))

    # Vectorised accessors used by the series oracle
    def sum_bounds(self, n: np.ndarray) -> np.ndarray:
        return self._vector(n, self.sum_overrides)

    def a_bounds(self, n: np.ndarray) -> np.ndarray:
        return self._vector(n, self.a_overrides)

    def _vector(self, n, overrides):
        n = np.asarray(n)
        out = 2.0 * self.alpha.width / n.astype(float)
        for k, v in overrides.items():
            out[n == k] = v
        return out


def extremal_profile(alpha) -> CoefficientProfile:
    a = as_alpha(alpha)
    return CoefficientProfile(a, second_coeff=a.width, is_extremal=True)


def parse_profile(text: str) -> CoefficientProfile:
    """Read a profile from its plain-text form.

    ::

        alpha=0.3
        n, c_n, a_n_bound
        2, 1.2, 0.7
        5, 0.1, 0.1

    Indices that are not listed fall back to the class bound.
    """
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ProfileError("empty profile")
    key, sep, value = lines[0].partition("=")
    if not sep or key.strip() != "alpha":
        raise ProfileError(f"first line must be 'alpha=<value>', got {lines[0]!r}")
    try:
        alpha = AlphaParam(float(value))
    except ValueError as exc:
        raise ProfileError(f"bad alpha value {value.strip()!r}") from exc

    rows = list(csv.reader(io.StringIO("\n".join(lines[1:])), skipinitialspace=True))
    if not rows or [h.strip() for h in rows[0]] != ["n", "c_n", "a_n_bound"]:
        raise ProfileError("expected header row 'n, c_n, a_n_bound'")
    sums: dict[int, float] = {}
    abounds: dict[int, float] = {}
    for lineno, row in enumerate(rows[1:], start=3):
        if len(row) != 3:
            raise ProfileError(f"line {lineno}: expected 3 fields, got {len(row)}")
        try:
            n = int(row[0])
            c, a = float(row[1]), float(row[2])
        except ValueError as exc:
            raise ProfileError(f"line {lineno}: {exc}") from exc
        if n in sums:
            raise ProfileError(f"line {lineno}: duplicate index n={n}")
        sums[n] = c
        abounds[n] = a
    c2 = sums.get(2, 2.0 * alpha.width / 2)
    return CoefficientProfile(alpha, sums, abounds, second_coeff=c2)


def load_profile(path) -> CoefficientProfile:
    with open(path, encoding="utf-8") as fh:
        return parse_profile(fh.read())
