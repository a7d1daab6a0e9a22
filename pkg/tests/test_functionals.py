import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import transcribed as tx
from bohr_lab.errors import DomainError, UnsupportedCombinationError
from bohr_lab.functionals import (
    FunctionalKind as K,
    Kind,
    Variant,
    area_bound,
    lhs_closed,
    lhs_series,
    polynomial_degree,
    radius_equation,
)
from bohr_lab.kernel import dilog
from bohr_lab.model import CoefficientProfile, distance_bound, extremal_profile, majorant
from bohr_lab.checks import standard_kinds

GRID_A = [0.0, 0.1, 0.35, 0.6, 0.9]
GRID_R = [0.05, 0.2, 0.45, 0.7, 0.9]


def _reference(kind, r, a):
    t = 1 - a
    tag = kind.tag
    if tag is Kind.ROGOSINSKI:
        return tx.rogosinski(r, a, kind.N)
    if tag is Kind.ROGOSINSKI_SQUARED:
        return tx.rogosinski_squared(r, a, kind.N)
    if tag is Kind.POWERED_ARGUMENT:
        return tx.powered_argument(r, a, kind.m, kind.N)
    if tag is Kind.ANALYTIC_POWER:
        return tx.analytic_power(r, a, kind.p)
    if tag is Kind.AREA_POLYNOMIAL:
        return tx.area_polynomial(r, a, kind.N)
    if tag is Kind.AREA_LINEAR:
        return tx.area_linear(r, a)
    if tag is Kind.SQUARED_COEFFICIENTS:
        return tx.squared_coefficients(r, a)
    if tag is Kind.REFINED_WEIGHTED:
        return tx.refined_weighted(r, a, kind.N)
    if tag is Kind.REFINED_Q:
        return tx.refined_q(r, a, kind.m, t)
    if tag is Kind.REFINED_R:
        return tx.refined_r(r, a, t)
    return tx.jacobian(r, a, kind.N)


@pytest.mark.parametrize("kind", standard_kinds(), ids=str)
def test_residual_matches_hand_transcription(kind):
    for a in GRID_A:
        eq = radius_equation(kind, a)
        for r in GRID_R:
            assert eq.residual(r) == pytest.approx(_reference(kind, r, a), abs=1e-11), (a, r)


@pytest.mark.parametrize("kind", standard_kinds(), ids=str)
def test_closed_form_matches_series(kind):
    for a in GRID_A:
        profile = extremal_profile(a)
        for r in GRID_R:
            s = lhs_series(kind, profile, r)
            assert abs(lhs_closed(kind, profile, r) - s.value) <= s.tail_bound + 1e-10


@pytest.mark.parametrize("kind", standard_kinds(), ids=str)
def test_closed_form_bounds_any_member(kind):
    # the closed form uses the class bounds, so it dominates any admissible member
    profile = CoefficientProfile(0.4, {3: 0.1, 4: 0.0, 7: 0.05}, {3: 0.02, 5: 0.0}, second_coeff=0.6)
    for r in GRID_R:
        s = lhs_series(kind, profile, r)
        assert s.value <= lhs_closed(kind, profile, r) + 1e-12


class TestExamples:
    def test_rogosinski_meets_distance_at_printed_root(self):
        lhs = lhs_closed(K(Kind.ROGOSINSKI, N=2), extremal_profile(0.1), 0.2771)
        assert lhs == pytest.approx(distance_bound(0.1), abs=1e-4)
        # 1 + 1.8 (ln 2 - 1)
        assert distance_bound(0.1) == pytest.approx(0.4476649, abs=5e-8)

    @pytest.mark.xfail(strict=True, reason="quoted d(0.1) = 0.4483775 is an arithmetic slip; see ledger")
    def test_quoted_distance_at_point_one(self):
        assert distance_bound(0.1) == pytest.approx(0.4483775, abs=5e-8)

    def test_degenerate_class_is_identity(self):
        p = extremal_profile(1 - 1e-15)
        assert lhs_closed(K(Kind.ROGOSINSKI, N=2), p, 0.4) == pytest.approx(0.4, abs=1e-12)

    def test_squared_coefficients(self):
        v = lhs_closed(K(Kind.SQUARED_COEFFICIENTS), extremal_profile(0.5), 0.5)
        assert v == pytest.approx(0.7753877, abs=5e-8)
        assert v == pytest.approx(majorant(0.5, 0.5) + (dilog(0.5) - 0.5), abs=1e-15)

    def test_area_polynomial_root_rounds_to_printed(self):
        from bohr_lab import sharp_radius

        root = sharp_radius(K(Kind.AREA_POLYNOMIAL, N=2), 0.1)
        assert abs(root - 0.2734) <= 1e-4
        assert round(root, 4) == 0.2734

    @pytest.mark.xfail(strict=True, reason="slope ~2.5 turns 5e-5 of rounding in r into 1.2e-4 in the LHS")
    def test_area_polynomial_lhs_at_printed_root(self):
        lhs = lhs_closed(K(Kind.AREA_POLYNOMIAL, N=2), extremal_profile(0.1), 0.2734)
        assert lhs == pytest.approx(distance_bound(0.1), abs=1e-4)

    def test_series_at_point(self):
        kind, p = K(Kind.ROGOSINSKI, N=2), extremal_profile(0.5)
        assert lhs_series(kind, p, 0.3).value == pytest.approx(lhs_closed(kind, p, 0.3), abs=1e-10)

    @pytest.mark.parametrize(
        "kind",
        [K(Kind.ROGOSINSKI, N=2), K(Kind.POWERED_ARGUMENT, m=3, N=2), K(Kind.AREA_LINEAR), K(Kind.REFINED_Q, m=2)],
        ids=str,
    )
    def test_zero_radius(self, kind):
        assert lhs_closed(kind, extremal_profile(0.3), 0.0) == 0.0

    def test_area_bound(self):
        assert area_bound(0.0, 0.2) == 0.0
        assert area_bound(0.5, 1 - 1e-15) == pytest.approx(0.25, abs=1e-12)
        # 30-digit evaluation of r^2 - 4(0.9)^2 (r^2 + ln(1 - r^2)) gives 0.08427676
        assert area_bound(0.2734, 0.1) == pytest.approx(0.0842768, abs=5e-8)

    @pytest.mark.xfail(strict=True, reason="quoted 0.0842823 disagrees with a 30-digit evaluation; see ledger")
    def test_quoted_area_bound(self):
        assert area_bound(0.2734, 0.1) == pytest.approx(0.0842823, abs=5e-8)


class TestVariants:
    def test_statement_readings(self):
        p, r = extremal_profile(0.3), 0.4
        t = 0.7
        rs = K(Kind.ROGOSINSKI_SQUARED, N=3)
        assert lhs_closed(rs.with_variant("statement"), p, r) - lhs_closed(rs, p, r) == pytest.approx(2 * t * r)
        ap = K(Kind.ANALYTIC_POWER, p=3)
        m = majorant(r, 0.3)
        assert lhs_closed(ap.with_variant("statement"), p, r) == pytest.approx(m**3 + m)
        sc = K(Kind.SQUARED_COEFFICIENTS)
        gap = lhs_closed(sc.with_variant("statement"), p, r) - lhs_closed(sc, p, r)
        assert gap == pytest.approx((4 * t * (2 - t) - 4 * t * t) * (dilog(r) - r))

    def test_drop_linear(self):
        kind = K(Kind.POWERED_ARGUMENT, m=2, N=2)
        p, r = extremal_profile(0.2), 0.3
        diff = lhs_closed(kind.with_variant(Variant.DROP_LINEAR), p, r) - lhs_closed(kind, p, r)
        assert diff == pytest.approx(2 * 0.8 * r)

    def test_area_polynomial_degrees(self):
        assert polynomial_degree(K(Kind.AREA_POLYNOMIAL, N=3)) == 3
        assert polynomial_degree(K(Kind.AREA_POLYNOMIAL, N=3, variant="statement")) == 2

    def test_identical_readings_do_not_diverge(self):
        k = K(Kind.ROGOSINSKI, N=2, variant="statement")
        assert not k.diverges
        p = extremal_profile(0.5)
        assert lhs_series(k, p, 0.3).value == pytest.approx(lhs_closed(k, p, 0.3), abs=1e-10)

    def test_series_refuses_diverging_readings(self):
        with pytest.raises(UnsupportedCombinationError):
            lhs_series(K(Kind.SQUARED_COEFFICIENTS, variant="statement"), extremal_profile(0.5), 0.3)


class TestValidation:
    @pytest.mark.parametrize(
        "args",
        [
            dict(tag=Kind.ROGOSINSKI),
            dict(tag=Kind.ROGOSINSKI, N=1),
            dict(tag=Kind.ROGOSINSKI, N=2.5),
            dict(tag=Kind.ROGOSINSKI, N=2, m=3),
            dict(tag=Kind.POWERED_ARGUMENT, N=2),
            dict(tag=Kind.AREA_POLYNOMIAL, N=0),
            dict(tag=Kind.ROGOSINSKI, N=2, variant="drop-linear"),
            dict(tag=Kind.ANALYTIC_POWER, p=True),
        ],
    )
    def test_bad_parameters(self, args):
        with pytest.raises(DomainError):
            K(**args)

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            K("bohr")

    def test_radius_domain(self):
        with pytest.raises(DomainError):
            lhs_closed(K(Kind.AREA_LINEAR), extremal_profile(0.5), 1.0)
        with pytest.raises(DomainError):
            lhs_series(K(Kind.AREA_LINEAR), extremal_profile(0.5), 0.98)

    def test_refined_needs_second_coefficient(self):
        p = CoefficientProfile(0.5)
        with pytest.raises(UnsupportedCombinationError):
            lhs_closed(K(Kind.REFINED_Q, m=1), p, 0.3)
        assert lhs_closed(K(Kind.ROGOSINSKI, N=2), p, 0.3) > 0

    def test_label(self):
        assert K(Kind.POWERED_ARGUMENT, m=5, N=3).label == "powered-argument(m=5,N=3)[proof]"


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(standard_kinds()), st.floats(0.0, 0.95), st.floats(0.01, 0.9))
def test_lhs_increasing_in_r_decreasing_in_alpha(kind, a, r):
    p = extremal_profile(a)
    assert lhs_closed(kind, p, r) < lhs_closed(kind, p, min(r + 0.01, 0.999))
    if kind.tag not in (Kind.REFINED_Q, Kind.REFINED_R):
        # refined forms carry 1/(1 + |a_2| + |b_2|), which grows with alpha
        assert lhs_closed(kind, extremal_profile(min(a + 0.04, 0.99)), r) <= lhs_closed(kind, p, r) + 1e-12
    assert radius_equation(kind, a)(0.0) == pytest.approx(-distance_bound(a))
