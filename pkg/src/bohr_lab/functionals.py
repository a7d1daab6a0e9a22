"""Bohr-type functionals of the class and their radius equations.

Each functional has

* a closed-form left-hand side built from the class coefficient bounds,
* a term-by-term series left-hand side (the oracle), and
* a radius equation ``G(r) = LHS_extremal(r) - d(alpha)``.

Several functionals come with a stated radius equation that disagrees
with the one derived for them.  Both readings are available
through :class:`Variant`; ``PROOF`` is the default.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional

import numpy as np

from .errors import DomainError, UnsupportedCombinationError
from .kernel import SeriesResult, TruncationBudget, dilog, log_tail, truncated_sum
from .model import (
    AlphaParam,
    CoefficientProfile,
    as_alpha,
    distance_bound,
    extremal_profile,
    jacobian_sqrt_bound,
    majorant,
)

__all__ = [
    "Kind",
    "Variant",
    "FunctionalKind",
    "RadiusEquation",
    "ORACLE_MAX_R",
    "lhs_closed",
    "lhs_series",
    "radius_equation",
    "area_bound",
    "polynomial_degree",
]

ORACLE_MAX_R = 0.97


class Kind(str, Enum):
    ROGOSINSKI = "rogosinski"
    ROGOSINSKI_SQUARED = "rogosinski-squared"
    POWERED_ARGUMENT = "powered-argument"
    ANALYTIC_POWER = "analytic-power"
    AREA_POLYNOMIAL = "area-polynomial"
    AREA_LINEAR = "area-linear"
    SQUARED_COEFFICIENTS = "squared-coefficients"
    REFINED_WEIGHTED = "refined-weighted"
    REFINED_Q = "refined-q"
    REFINED_R = "refined-r"
    JACOBIAN = "jacobian"


class Variant(str, Enum):
    """Which reading of a radius equation to use.

    ``STATEMENT`` follows the radius equation as stated, ``PROOF`` the
    function derived for it.  ``DROP_LINEAR`` exists only for
    the powered-argument functional: the partial sum in its equation
    starts at ``n = 2`` instead of ``n = 1``.
    """

    STATEMENT = "statement"
    PROOF = "proof"
    DROP_LINEAR = "drop-linear"


# (parameter name, minimum) per kind
_PARAMS: dict[Kind, tuple[tuple[str, int], ...]] = {
    Kind.ROGOSINSKI: (("N", 2),),
    Kind.ROGOSINSKI_SQUARED: (("N", 2),),
    Kind.POWERED_ARGUMENT: (("m", 1), ("N", 2)),
    Kind.ANALYTIC_POWER: (("p", 1),),
    Kind.AREA_POLYNOMIAL: (("N", 1),),
    Kind.AREA_LINEAR: (),
    Kind.SQUARED_COEFFICIENTS: (),
    Kind.REFINED_WEIGHTED: (("N", 2),),
    Kind.REFINED_Q: (("m", 1),),
    Kind.REFINED_R: (),
    Kind.JACOBIAN: (("N", 2),),
}

# Kinds whose statement reading differs from the proof reading.
_STATEMENT_DIFFERS = frozenset(
    {
        Kind.ROGOSINSKI_SQUARED,
        Kind.ANALYTIC_POWER,
        Kind.AREA_POLYNOMIAL,
        Kind.SQUARED_COEFFICIENTS,
        Kind.REFINED_R,
    }
)


@dataclass(frozen=True)
class FunctionalKind:
    tag: Kind
    N: Optional[int] = None
    m: Optional[int] = None
    p: Optional[int] = None
    variant: Variant = Variant.PROOF

    def __post_init__(self):
        object.__setattr__(self, "tag", Kind(self.tag))
        object.__setattr__(self, "variant", Variant(self.variant))
        wanted = dict(_PARAMS[self.tag])
        for name in ("N", "m", "p"):
            value = getattr(self, name)
            if name not in wanted:
                if value is not None:
                    raise DomainError(f"{self.tag.value} takes no parameter {name}")
                continue
            if value is None:
                raise DomainError(f"{self.tag.value} requires parameter {name}")
            if isinstance(value, bool) or int(value) != value or value < wanted[name]:
                raise DomainError(
                    f"{self.tag.value}: {name} must be an integer >= {wanted[name]}, got {value!r}"
                )
            object.__setattr__(self, name, int(value))
        if self.variant is Variant.DROP_LINEAR and self.tag is not Kind.POWERED_ARGUMENT:
            raise DomainError("the drop-linear variant exists only for powered-argument")

    def with_variant(self, variant) -> "FunctionalKind":
        return FunctionalKind(self.tag, self.N, self.m, self.p, Variant(variant))

    @property
    def diverges(self) -> bool:
        """True when this variant's closed form differs from the proof reading."""
        if self.variant is Variant.PROOF:
            return False
        if self.variant is Variant.DROP_LINEAR:
            return True
        return self.tag in _STATEMENT_DIFFERS

    @property
    def params(self) -> dict[str, int]:
        return {name: getattr(self, name) for name, _ in _PARAMS[self.tag]}

    @property
    def label(self) -> str:
        args = ",".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.tag.value}({args})[{self.variant.value}]"

    def __str__(self):
        return self.label


def polynomial_degree(kind: FunctionalKind) -> int:
    """Degree of P in the area-polynomial functional.

    The statement defines ``P(w) = w**N + ... + w`` but also calls it a
    polynomial of degree ``N - 1``; the statement variant takes the latter
    at its word.
    """
    if kind.tag is not Kind.AREA_POLYNOMIAL:
        raise UnsupportedCombinationError(f"{kind.label} has no area polynomial")
    return kind.N - 1 if kind.variant is Variant.STATEMENT else kind.N


def _poly(w: float, degree: int) -> float:
    # w + w**2 + ... + w**degree
    total, power = 0.0, 1.0
    for _ in range(degree):
        power *= w
        total += power
    return total


def _check_r(r: float):
    if not (0.0 <= r < 1.0):
        raise DomainError(f"r must lie in [0, 1), got {r!r}")


def area_bound(r: float, alpha) -> float:
    """Upper bound ``r^2 - 4(1 - alpha)^2 (r^2 + ln(1 - r^2))`` on ``S_r / pi``."""
    _check_r(r)
    t = as_alpha(alpha).width
    return r * r + 4.0 * t * t * log_tail(2, r * r)


def _second_coeff(kind: FunctionalKind, profile: CoefficientProfile) -> float:
    if profile.second_coeff is None:
        raise UnsupportedCombinationError(f"{kind.label} needs second_coeff (|a_2|+|b_2|) in the profile")
    return profile.second_coeff


def _refined_r_term(r: float, b2: float) -> float:
    # [1 - (1 + b2 - b2^2)] r / (1 - b2 r)
    return (b2 * b2 - b2) * r / (1.0 - b2 * r)


def lhs_closed(kind: FunctionalKind, profile: CoefficientProfile, r: float) -> float:
    """Left-hand side of the functional at radius ``r``, in closed form.

    The coefficient sums use the class bounds at ``profile.alpha``, so the
    value is exact for the extremal profile and an upper bound for any
    other valid profile.  The refined functionals read ``|a_2| + |b_2|``
    from the profile.
    """
    _check_r(r)
    t = profile.alpha.width
    alpha = profile.alpha
    tag, variant = kind.tag, kind.variant

    if tag is Kind.ROGOSINSKI:
        return majorant(r, alpha) + 2.0 * t * log_tail(kind.N, r)

    if tag is Kind.ROGOSINSKI_SQUARED:
        tail = log_tail(kind.N, r)
        if variant is Variant.STATEMENT:
            # printed partial sum starts at n = 2, leaving the n = 1 term in
            tail += r
        return majorant(r, alpha) ** 2 + 2.0 * t * tail

    if tag is Kind.POWERED_ARGUMENT:
        rm = r**kind.m
        tail = log_tail(kind.N, r)
        if variant is Variant.DROP_LINEAR:
            tail += r
        return majorant(rm, alpha) + 2.0 * t * tail

    if tag is Kind.ANALYTIC_POWER:
        mr = majorant(r, alpha)
        if variant is Variant.STATEMENT:
            return mr**kind.p + mr
        return r**kind.p + mr

    if tag is Kind.AREA_POLYNOMIAL:
        return majorant(r, alpha) + _poly(area_bound(r, alpha), polynomial_degree(kind))

    if tag is Kind.AREA_LINEAR:
        return r + r * r + 2.0 * t * (1.0 + 2.0 * t) * log_tail(2, r)

    if tag is Kind.SQUARED_COEFFICIENTS:
        weight = 4.0 * t * (2.0 - t) if variant is Variant.STATEMENT else 4.0 * t * t
        return majorant(r, alpha) + weight * (dilog(r) - r)

    if tag is Kind.REFINED_WEIGHTED:
        return majorant(r, alpha) + 4.0 * t * t * log_tail(2, r * r) / (1.0 - r**kind.N)

    if tag is Kind.REFINED_Q:
        b2 = _second_coeff(kind, profile)
        rm = r**kind.m
        q = 1.0 / (1.0 + b2) + rm / (1.0 - rm)
        return majorant(r, alpha) + (2.0 * t) ** kind.m * q * log_tail(3, rm)

    if tag is Kind.REFINED_R:
        b2 = _second_coeff(kind, profile)
        value = r + _refined_r_term(r, b2) + 2.0 * t * log_tail(3, r)
        if variant is Variant.STATEMENT:
            value += (1.0 - r) / (1.0 - b2 * r)
        return value

    if tag is Kind.JACOBIAN:
        return (
            majorant(r, alpha)
            + 2.0 * t * log_tail(kind.N, r)
            + jacobian_sqrt_bound(r, alpha) * r
        )

    raise UnsupportedCombinationError(f"no closed form for {kind.label}")  # pragma: no cover


# Series oracle.  Each helper sums one defining series of a functional with
# the profile's own coefficient channels; envelopes come from the class
# bound c_n <= 2(1 - alpha)/n, which every validated profile satisfies.


def _majorant_series(rho: float, coeffs, t: float, budget) -> SeriesResult:
    body = truncated_sum(lambda n: coeffs(n) * rho**n.astype(float), budget, scale=t, ratio=rho, start=2)
    return body.shifted(rho)


def _tail_series(N: int, rho: float, coeffs, t: float, budget) -> SeriesResult:
    return truncated_sum(
        lambda n: coeffs(n) * rho**n.astype(float), budget, scale=2.0 * t / N, ratio=rho, start=N
    )


def _area_sum(r: float, coeffs, t: float, budget) -> SeriesResult:
    # sum_{n>=2} n c_n^2 r^(2n)
    r2 = r * r
    return truncated_sum(
        lambda n: n * coeffs(n) ** 2 * r2 ** n.astype(float), budget, scale=2.0 * t * t, ratio=r2, start=2
    )


def _square(s: SeriesResult) -> SeriesResult:
    return SeriesResult(s.value**2, s.terms_used, 2.0 * s.value * s.tail_bound + s.tail_bound**2)


def lhs_series(
    kind: FunctionalKind,
    profile: CoefficientProfile,
    r: float,
    budget: TruncationBudget = TruncationBudget(),
) -> SeriesResult:
    """Sum the defining series of the functional term by term.

    Only readings that correspond to an actual series are supported, that
    is the proof variant and variants that coincide with it.
    """
    if kind.diverges:
        raise UnsupportedCombinationError(f"no series reading for {kind.label}")
    if not (0.0 <= r <= ORACLE_MAX_R):
        raise DomainError(f"series oracle needs r in [0, {ORACLE_MAX_R}], got {r!r}")
    t = profile.alpha.width
    c, a = profile.sum_bounds, profile.a_bounds
    tag = kind.tag

    if tag is Kind.ROGOSINSKI:
        return _majorant_series(r, c, t, budget) + _tail_series(kind.N, r, c, t, budget)

    if tag is Kind.ROGOSINSKI_SQUARED:
        return _square(_majorant_series(r, c, t, budget)) + _tail_series(kind.N, r, a, t, budget)

    if tag is Kind.POWERED_ARGUMENT:
        return _majorant_series(r**kind.m, c, t, budget) + _tail_series(kind.N, r, a, t, budget)

    if tag is Kind.ANALYTIC_POWER:
        return _majorant_series(r, c, t, budget).shifted(r**kind.p)

    if tag is Kind.AREA_POLYNOMIAL:
        area = _area_sum(r, c, t, budget).shifted(r * r)
        degree = polynomial_degree(kind)
        low = _poly(area.value, degree)
        high = _poly(area.value + area.tail_bound, degree)
        return _majorant_series(r, c, t, budget) + SeriesResult(low, area.terms_used, high - low)

    if tag is Kind.AREA_LINEAR:
        body = truncated_sum(
            lambda n: (c(n) + n * c(n) ** 2) * r ** n.astype(float),
            budget,
            scale=t + 2.0 * t * t,
            ratio=r,
            start=2,
        )
        return body.shifted(r + r * r)

    if tag is Kind.SQUARED_COEFFICIENTS:
        body = truncated_sum(
            lambda n: (c(n) + c(n) ** 2) * r ** n.astype(float), budget, scale=t + t * t, ratio=r, start=2
        )
        return body.shifted(r)

    if tag is Kind.REFINED_WEIGHTED:
        weight = 1.0 / (1.0 - r**kind.N)
        return _majorant_series(r, c, t, budget) + _area_sum(r, c, t, budget).scaled(weight)

    if tag is Kind.REFINED_Q:
        m = kind.m
        b2 = _second_coeff(kind, profile)
        rm = r**m
        q = 1.0 / (1.0 + b2) + rm / (1.0 - rm)
        # n^(m-1) c_n^m = (n c_n)^m / n  <=  (2t)^m / 3  for n >= 3
        inner = truncated_sum(
            lambda n: (n * c(n)) ** m / n * rm ** n.astype(float),
            budget,
            scale=(2.0 * t) ** m / 3.0,
            ratio=rm,
            start=3,
        )
        return _majorant_series(r, c, t, budget) + inner.scaled(q)

    if tag is Kind.REFINED_R:
        b2 = _second_coeff(kind, profile)
        return _tail_series(3, r, c, t, budget).shifted(r + _refined_r_term(r, b2))

    if tag is Kind.JACOBIAN:
        # r * |h'(r)| <= r * (1 + sum n |a_n| r^(n-1)) = r + sum n |a_n| r^n
        jac = truncated_sum(
            lambda n: n * a(n) * r ** n.astype(float), budget, scale=2.0 * t, ratio=r, start=2
        ).shifted(r)
        return _majorant_series(r, c, t, budget) + jac + _tail_series(kind.N, r, c, t, budget)

    raise UnsupportedCombinationError(f"no series for {kind.label}")  # pragma: no cover


@dataclass(frozen=True)
class RadiusEquation:
    """``G(r) = LHS(r) - d(alpha)`` for the extremal map.

    The smallest zero of ``G`` on (0, 1) is the sharp radius.
    """

    kind: FunctionalKind
    alpha: AlphaParam

    @property
    def profile(self) -> CoefficientProfile:
        return extremal_profile(self.alpha)

    def residual(self, r: float) -> float:
        return lhs_closed(self.kind, self.profile, r) - distance_bound(self.alpha)

    def __call__(self, r: float) -> float:
        return self.residual(r)

    def as_function(self) -> Callable[[float], float]:
        """Residual with the profile and distance precomputed, for tight solver loops."""
        kind, profile, d = self.kind, self.profile, distance_bound(self.alpha)
        return lambda r: lhs_closed(kind, profile, r) - d


def radius_equation(kind: FunctionalKind, alpha) -> RadiusEquation:
    return RadiusEquation(kind, as_alpha(alpha))
