"""圆丛的扭曲Floer同调测试"""

from fractions import Fraction

import pytest

from src.homology.circle_bundle import (
    CyclicUTower,
    FreeRankOne,
    SpinCLabel,
    SyzygyKernel,
    SyzygyQuotient,
    Tower,
    centered_representative,
    hf_minus_large_positive,
    hf_plus_large_negative,
    hf_plus_large_positive,
    reduced_support,
    spinc_enumerate,
)
from src.config.constants import RegionKind
from src.homology.chain_complex import Region
from src.homology.knot_floer_model import delta_for_genus_one, e1_page
from src.topology.grading import reduced_degree
from src.utils.errors import DomainError


class TestSpinC:

    def test_centered_representative(self):
        assert centered_representative(4, 5) == -1
        assert centered_representative(2, -4) == 2
        assert centered_representative(-2, 4) == 2

    def test_enumerate(self):
        labels = spinc_enumerate(4)
        assert [s.k for s in labels] == [-1, 0, 1, 2]
        assert SpinCLabel.of(2, 4).is_self_conjugate()
        assert not SpinCLabel.of(1, 5).is_self_conjugate()

    def test_zero_degree_not_torsion(self):
        with pytest.raises(DomainError):
            SpinCLabel.of(0, 0)


class TestLargeNegative:

    def test_genus_two_k_one(self):
        description = hf_plus_large_negative(-3, 2, 1)
        quotient = next(s for s in description.summands if isinstance(s, SyzygyQuotient))
        assert quotient == SyzygyQuotient(1, Fraction(-5, 6))
        assert description.tower() == Tower(Fraction(1, 6), Fraction(-11, 6))

    def test_large_k_is_only_a_tower(self):
        description = hf_plus_large_negative(-5, 2, 2)
        assert description.summands == (Tower(Fraction(-9, 5), Fraction(-9, 5)),)
        assert reduced_support(description) == set()

    @pytest.mark.parametrize("g", [1, 2, 3, 4])
    def test_reduced_part_sits_in_expected_degree(self, g):
        n = 1 - 2 * g
        for k in range(-(g - 1), g):
            description = hf_plus_large_negative(n, g, k)
            assert reduced_support(description) == {reduced_degree(k, g)}

    def test_delta_attaches_presentation(self):
        description = hf_plus_large_negative(-1, 1, 0, delta_for_genus_one())
        quotient = next(s for s in description.summands if isinstance(s, SyzygyQuotient))
        assert quotient.presentation is not None
        assert quotient.presentation.name == "Q_1"

    def test_range_check(self):
        with pytest.raises(DomainError):
            hf_plus_large_negative(-1, 2, 0)

    def test_k_outside_half_range_is_recentered(self):
        # k=2 在 mod 3 下居中为 −1，落在 |k| ≤ g−1 的分支
        description = hf_plus_large_negative(-3, 2, 2)
        assert description == hf_plus_large_negative(-3, 2, -1)
        assert description.spinc.k == -1
        assert any(isinstance(s, SyzygyQuotient) for s in description.summands)


class TestLargePositive:

    def test_middle_spinc(self):
        description = hf_plus_large_positive(3, 2, 0)
        kernel, cyclic, tower = description.summands
        assert kernel == SyzygyKernel(3, Fraction(-1, 2), True)
        assert cyclic == CyclicUTower(1, Fraction(-3, 2))
        assert tower == Tower(Fraction(-3, 2), Fraction(-3, 2))

    def test_top_kernel_is_free(self):
        description = hf_plus_large_positive(3, 2, 1)
        assert description.summands[0] == FreeRankOne(Fraction(-1, 6))
        assert len(description.summands) == 2

    def test_unknown_u_action_is_noted(self):
        description = hf_plus_large_positive(5, 3, 0)
        kernel = description.summands[0]
        assert isinstance(kernel, SyzygyKernel) and not kernel.u_action_known
        assert description.notes

    def test_range_check(self):
        with pytest.raises(DomainError):
            hf_plus_large_positive(2, 2, 0)


class TestMinus:

    @pytest.mark.parametrize("g", [1, 2, 3, 5])
    def test_top_summand_is_free_rank_one(self, g):
        for k in {g - 1, -(g - 1)}:
            description = hf_minus_large_positive(2 * g - 1, g, k)
            assert isinstance(description.top_summand(), FreeRankOne)

    def test_genus_one(self):
        description = hf_minus_large_positive(1, 1, 0)
        assert description.top_summand() == FreeRankOne(Fraction(-2))
        assert description.tower().orientation == "minus"

    def test_only_extremal_spinc(self):
        with pytest.raises(DomainError):
            hf_minus_large_positive(3, 2, 0)

    def test_to_dict(self):
        data = hf_minus_large_positive(3, 2, 1).to_dict()
        assert data['theory'] == "HF-"
        assert data['summands'][0]['kind'] == "free_rank_one"


def _same_module(a, b):
    return a.summands == b.summands and a.tau == b.tau and a.notes == b.notes


class TestConjugation:

    @pytest.mark.parametrize("g", [1, 2, 3, 4])
    def test_large_negative(self, g):
        n = 1 - 2 * g
        for k in range(1, g):
            assert _same_module(hf_plus_large_negative(n, g, k), hf_plus_large_negative(n, g, -k))
        assert _same_module(hf_plus_large_negative(n - 4, g, g + 1), hf_plus_large_negative(n - 4, g, -g - 1))

    @pytest.mark.parametrize("g", [1, 2, 3, 4])
    def test_large_positive(self, g):
        n = 2 * g + 3
        for k in range(1, g + 2):
            assert _same_module(hf_plus_large_positive(n, g, k), hf_plus_large_positive(n, g, -k))

    @pytest.mark.parametrize("g", [2, 3, 5])
    def test_minus(self, g):
        for n in (2 * g - 1, 2 * g + 2):
            assert _same_module(hf_minus_large_positive(n, g, g - 1), hf_minus_large_positive(n, g, 1 - g))


class TestAgreesWithE1Page:

    @pytest.mark.parametrize("g", [1, 2])
    def test_reduced_label_is_boundary_column(self, g):
        for k in range(-(g - 1), g):
            description = hf_plus_large_negative(1 - 2 * g, g, k)
            quotient, = description.reduced_summands()
            boundary = -abs(k)
            label = e1_page(g, Region(RegionKind.UPPER_AND, boundary)).label_at(0, boundary)
            assert label.index == quotient.index == g - abs(k)
            assert quotient.degree == boundary + description.tau
