import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bohr_lab.errors import DomainError, NoSignChangeError, NonNegativeStartError, SolverError
from bohr_lab.functionals import FunctionalKind, Kind, radius_equation
from bohr_lab.solver import DEFAULT_ROOT_TOL, max_iterations, smallest_root


def test_linear():
    res = smallest_root(lambda r: r - 0.5)
    assert res.root == pytest.approx(0.5, abs=1e-12)
    assert res.converged
    lo, hi = res.bracket
    assert lo <= 0.5 <= hi and hi - lo <= DEFAULT_ROOT_TOL


def test_picks_smallest_root():
    # (r - 0.2)(r - 0.7) is positive at the scan start, which the contract
    # reports as an error; its negation has the required shape
    with pytest.raises(NonNegativeStartError):
        smallest_root(lambda r: (r - 0.2) * (r - 0.7))
    res = smallest_root(lambda r: -(r - 0.2) * (r - 0.7))
    assert res.root == pytest.approx(0.2, abs=1e-12)


def test_first_bracket_wins_over_later_ones():
    G = lambda r: math.sin(40 * r) - 0.5  # noqa: E731
    assert smallest_root(G).root == pytest.approx(math.asin(0.5) / 40, abs=1e-12)


def test_rogosinski_radius():
    G = radius_equation(FunctionalKind(Kind.ROGOSINSKI, N=2), 0.1).residual
    assert smallest_root(G).root == pytest.approx(0.2771, abs=1e-4)


def test_iteration_bound():
    res = smallest_root(lambda r: r - 0.123456789)
    assert res.iterations <= max_iterations(1e-3, 1e-12)
    assert max_iterations(1e-3, 1e-12) == 32


def test_non_negative_start():
    with pytest.raises(NonNegativeStartError):
        smallest_root(lambda r: r + 0.1)


def test_no_sign_change():
    with pytest.raises(NoSignChangeError):
        smallest_root(lambda r: -1.0)


def test_nan_residual():
    with pytest.raises(SolverError):
        smallest_root(lambda r: float("nan") if r > 0.3 else -1.0)


@pytest.mark.parametrize("kw", [dict(scan_step=0.0), dict(scan_step=1.0), dict(root_tol=0.0)])
def test_bad_options(kw):
    with pytest.raises(DomainError):
        smallest_root(lambda r: r - 0.5, **kw)


def test_step_that_skips_a_pair_of_roots():
    # coarse steps can jump over two close roots; a fine step catches them
    G = lambda r: -((r - 0.3005) * (r - 0.3008))  # noqa: E731
    assert smallest_root(G, scan_step=1e-5).root == pytest.approx(0.3005, abs=1e-12)
    with pytest.raises(NoSignChangeError):
        smallest_root(G, scan_step=1e-3)


def test_deterministic():
    G = radius_equation(FunctionalKind(Kind.AREA_LINEAR), 0.4).as_function()
    assert smallest_root(G) == smallest_root(G)


@settings(max_examples=80)
@given(st.floats(0.002, 0.99))
def test_recovers_planted_root(root):
    res = smallest_root(lambda r: math.expm1(r - root))
    assert abs(res.root - root) <= 1e-12


@settings(max_examples=30, deadline=None)
@given(st.floats(0.0, 0.95))
def test_root_is_sign_change_of_radius_equation(a):
    eq = radius_equation(FunctionalKind(Kind.JACOBIAN, N=3), a)
    res = smallest_root(eq.as_function())
    lo, hi = res.bracket
    assert eq(lo) < 0 <= eq(hi)
    # nothing earlier on the scan grid is non-negative
    k = 1
    while k * 1e-3 < lo:
        assert eq(k * 1e-3) < 0
        k += 1
