"""分次与格算术测试"""

from fractions import Fraction

import pytest

from src.topology.grading import (
    CobordismData,
    adjunction,
    blowup_degree_profile,
    blowup_lattice,
    degree_profile_table,
    degree_shift,
    displayed_profile_quadratic,
    reduced_degree,
    relative_invariant_degree,
    spinc_degree,
    spinc_family_c1,
    tau,
)
from src.utils.errors import DomainError


class TestDegreeIdentities:

    @pytest.mark.parametrize("g", range(2, 51))
    def test_relative_invariant_degree_at_blowup_endpoint(self, g):
        d_minus, d_plus = relative_invariant_degree(2 - 2 * g, g)
        assert d_minus == g - Fraction(13, 4)
        assert d_plus == Fraction(5, 4) - g

    def test_worked_example(self):
        assert relative_invariant_degree(-2, 2)[0] == Fraction(-5, 4)

    def test_requires_negative_n(self):
        with pytest.raises(DomainError):
            relative_invariant_degree(0, 1)

    @pytest.mark.parametrize("g", range(1, 21))
    def test_tau_shift_gives_reduced_degree(self, g):
        for k in range(-g, g + 1):
            assert -abs(k) + tau(1 - 2 * g, k) == reduced_degree(k, g)
            assert reduced_degree(k, g) == Fraction(-k * k, 2 * g - 1) - Fraction(g - 1, 2)

    def test_tau_values(self):
        assert tau(-3, 1) == Fraction(1, 6)
        assert tau(1, 0) == 0
        with pytest.raises(DomainError):
            tau(0, 0)

    def test_degree_shift(self):
        # 单次爆破：c₁² = −1、σ = −1、e = 1
        assert degree_shift(CobordismData(Fraction(-1), -1, 1)) == 0
        assert degree_shift(CobordismData(Fraction(1, 2), 0, 0)) == Fraction(1, 8)

    def test_adjunction(self):
        assert adjunction(2, 0) == 2
        assert adjunction(3, -4) == 8


class TestLattice:

    @pytest.mark.parametrize("n", range(-10, 11))
    def test_a_square(self, n):
        lattice = blowup_lattice(n)
        assert lattice.a_square == -n * (n - 1)
        assert lattice.valid

    @pytest.mark.parametrize("g", range(2, 6))
    def test_canonical_class_image(self, g):
        for n in range(2 - 2 * g, 4):
            lattice = blowup_lattice(n, g)
            assert lattice.canonical_image == (2 * g - 1 - n, 2 * g - 2)
            assert lattice.valid

    def test_to_dict(self):
        data = blowup_lattice(-3, 2).to_dict()
        assert data['a'] == [1, 3]
        assert data['a_square'] == -12
        assert all(data['checks'].values())


class TestProfile:

    @pytest.mark.parametrize("g", range(2, 21))
    def test_profile_shape(self, g):
        profile = blowup_degree_profile(g)
        assert profile.argmax == [-(g - 1), g - 1]
        assert profile.maximum == Fraction(5, 4) - g
        assert profile.increasing_on_nonnegative
        # 两条独立路线：剖面端点与相对不变量分次
        assert profile.maximum == relative_invariant_degree(2 - 2 * g, g)[1]

    @pytest.mark.parametrize("g", range(2, 11))
    def test_displayed_quadratic_is_off_by_one_half(self, g):
        profile = blowup_degree_profile(g)
        displayed = displayed_profile_quadratic(g - 1, g)
        assert displayed == -Fraction((2 * g - 1) ** 2, 4) + (g - 1) ** 2
        assert abs(displayed - profile.maximum) == Fraction(1, 2)
        assert profile.endpoint_discrepancy == Fraction(-1, 2)
        assert profile.to_dict()['discrepancy']['difference'] == "-1/2"

    def test_spinc_degree_from_first_principles(self):
        g = 3
        c1 = spinc_family_c1(g - 1, 0, g)
        assert c1 == 2 * g - 2
        c1_square = Fraction(c1 * c1, 1) * Fraction(-1, (2 * g - 1) * (2 * g - 2))
        assert spinc_degree(g - 1, 0, g) == (c1_square + 3 - 2) / 4

    def test_ell_zero_takes_both_m(self):
        profile = blowup_degree_profile(3)
        assert sorted(r.m for r in profile.rows if r.ell == 0) == [-1, 0]

    def test_table(self):
        df = degree_profile_table(blowup_degree_profile(2))
        assert list(df.columns) == ['ell', 'm', 'c1', 'D', 'd', 'degree_sum', 'displayed']
        assert df.loc[df['ell'] == 1, 'degree_sum'].tolist() == ["-3/4"]

    def test_genus_one_refused(self):
        with pytest.raises(DomainError):
            blowup_degree_profile(1)
