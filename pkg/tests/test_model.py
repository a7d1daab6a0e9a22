import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bohr_lab.errors import DomainError, ProfileError
from bohr_lab.model import (
    AlphaParam,
    CoefficientProfile,
    as_alpha,
    coeff_bound,
    distance_bound,
    extremal_profile,
    jacobian_sqrt_bound,
    load_profile,
    majorant,
    minorant,
    parse_profile,
)

alphas = st.floats(0.0, 0.999)
radii = st.floats(0.0, 0.99)


class TestAlpha:
    @pytest.mark.parametrize("bad", [-0.1, 1.0, 1.5, float("nan"), "0.3", True])
    def test_rejects(self, bad):
        with pytest.raises(DomainError):
            AlphaParam(bad)

    def test_width_and_ordering(self):
        assert AlphaParam(0.25).width == 0.75
        assert AlphaParam(0.1) < AlphaParam(0.2)
        assert as_alpha(AlphaParam(0.3)) == AlphaParam(0.3)
        assert float(AlphaParam(0)) == 0.0


class TestBounds:
    def test_coeff_bound(self):
        assert coeff_bound(2, 0.0) == 1.0
        assert coeff_bound(4, 0.5) == 0.25
        assert coeff_bound(2, 1 - 1e-9) < 1e-8
        with pytest.raises(DomainError):
            coeff_bound(1, 0.5)

    def test_distance_bound(self):
        assert distance_bound(0.5) == pytest.approx(math.log(2), abs=1e-12)
        assert distance_bound(0.0) == pytest.approx(0.3862944, abs=5e-8)
        assert distance_bound(1 - 1e-12) == pytest.approx(1.0, abs=1e-11)

    def test_majorant(self):
        assert majorant(0.0, 0.3) == 0.0
        assert majorant(0.5, 0.5) == pytest.approx(0.6931472, abs=5e-8)
        with pytest.raises(DomainError):
            majorant(1.0, 0.5)

    def test_majorant_is_the_coefficient_series(self):
        r, a = 0.5, 0.5
        series = r + math.fsum(2 * (1 - a) * r**n / n for n in range(2, 80))
        assert majorant(r, a) == pytest.approx(series, abs=1e-14)

    def test_minorant(self):
        assert minorant(0.0, 0.7) == 0.0
        # quoted to 7 places as 0.5704060; the value is 0.57040605...
        assert minorant(1.0, 0.3) == pytest.approx(0.5704060, abs=1e-7)
        assert minorant(0.5, 0.5) == pytest.approx(0.4054651, abs=5e-8)

    @pytest.mark.parametrize("a", [k / 10 for k in range(10)])
    def test_minorant_at_one_is_distance(self, a):
        assert abs(minorant(1.0, a) - distance_bound(a)) <= 1e-12

    def test_jacobian_sqrt_bound(self):
        assert jacobian_sqrt_bound(0.0, 0.4) == 1.0
        assert jacobian_sqrt_bound(0.5, 0.0) == pytest.approx(3.0)
        assert jacobian_sqrt_bound(0.5, 0.5) == pytest.approx(2.0)

    @given(radii, alphas)
    def test_minorant_below_majorant(self, r, a):
        assert minorant(r, a) <= majorant(r, a) + 1e-15

    @given(radii, st.floats(0.0, 0.9))
    def test_majorant_decreases_with_alpha(self, r, a):
        assert majorant(r, a + 0.05) <= majorant(r, a) + 1e-15


class TestProfile:
    def test_extremal(self):
        p = extremal_profile(0.0)
        assert p.sum_bound(2) == 1.0
        assert p.sum_bound(3) == pytest.approx(2 / 3)
        assert p.second_coeff == 1.0
        q = extremal_profile(0.5)
        assert q.sum_bound(2) == 0.5 and q.second_coeff == 0.5
        for n in (2, 5, 17):
            assert q.a_bound(n) == q.sum_bound(n)

    def test_overrides_and_vector_access(self):
        import numpy as np

        p = CoefficientProfile(0.5, {3: 0.1}, {3: 0.05}, second_coeff=0.5)
        assert p.sum_bound(3) == 0.1 and p.a_bound(3) == 0.05
        assert p.sum_bound(4) == 0.25
        assert list(p.sum_bounds(np.array([2, 3, 4]))) == [0.5, 0.1, 0.25]

    def test_is_immutable(self):
        p = CoefficientProfile(0.5, {3: 0.1})
        with pytest.raises(TypeError):
            p.sum_overrides[3] = 0.2

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"sum_overrides": {2: 0.6}},  # above 2(1-a)/2 = 0.5
            {"a_overrides": {3: -0.01}},
            {"sum_overrides": {1: 0.1}},
            {"second_coeff": 0.3},  # differs from c_2
            {"second_coeff": 0.7},
        ],
    )
    def test_rejects_invalid(self, kwargs):
        with pytest.raises(ProfileError):
            CoefficientProfile(0.5, **kwargs)

    def test_extremal_cannot_carry_overrides(self):
        with pytest.raises(ProfileError):
            CoefficientProfile(0.5, {3: 0.1}, is_extremal=True)


class TestProfileImport:
    TEXT = """# a sample member
alpha=0.3
n, c_n, a_n_bound
2, 0.5, 0.4
5, 0.1, 0.05
"""

    def test_parse(self):
        p = parse_profile(self.TEXT)
        assert p.alpha == AlphaParam(0.3)
        assert p.sum_bound(2) == 0.5 and p.a_bound(5) == 0.05
        assert p.second_coeff == 0.5
        assert p.sum_bound(3) == pytest.approx(1.4 / 3)

    def test_load(self, tmp_path):
        path = tmp_path / "profile.txt"
        path.write_text(self.TEXT)
        assert load_profile(path) == parse_profile(self.TEXT)

    def test_defaults_second_coeff_to_class_bound(self):
        p = parse_profile("alpha=0.5\nn, c_n, a_n_bound\n")
        assert p.second_coeff == 0.5

    @pytest.mark.parametrize(
        "text",
        [
            "",
            "beta=0.3\nn, c_n, a_n_bound\n",
            "alpha=x\nn, c_n, a_n_bound\n",
            "alpha=1.2\nn, c_n, a_n_bound\n",
            "alpha=0.3\nn, c\n",
            "alpha=0.3\nn, c_n, a_n_bound\n2, 0.5\n",
            "alpha=0.3\nn, c_n, a_n_bound\n2, 0.5, 0.1\n2, 0.4, 0.1\n",
            "alpha=0.3\nn, c_n, a_n_bound\n3, 0.9, 0.1\n",
            "alpha=0.3\nn, c_n, a_n_bound\ntwo, 0.5, 0.1\n",
        ],
    )
    def test_bad_files(self, text):
        with pytest.raises((ProfileError, DomainError)):
            parse_profile(text)
