"""Smith标准形与多项式矩阵测试"""

import pytest

from src.algebra.laurent_ring import LaurentPolynomial
from src.config.constants import CoefficientRing
from src.homology.matrices import PolyMatrix, RankEvaluator
from src.homology.smith import smith_normal_form, verify_smith_form
from src.utils.errors import ParseError, UnsupportedRingError, ValidationError


class TestIntegers:

    def test_diagonal_divisibility(self):
        matrix = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
        form = smith_normal_form(matrix)
        assert form.diagonal == [2, 6, 12]
        assert verify_smith_form(matrix, form)

    def test_rectangular_with_zero_rank(self):
        matrix = [[0, 0], [0, 0], [0, 0]]
        form = smith_normal_form(matrix)
        assert form.diagonal == [0, 0]
        assert form.invariant_factors() == []

    def test_rank_deficient(self):
        matrix = [[1, 2], [2, 4]]
        form = smith_normal_form(matrix)
        assert form.diagonal == [1, 0]
        assert verify_smith_form(matrix, form)

    def test_ragged_rows(self):
        with pytest.raises(ValidationError):
            smith_normal_form([[1, 2], [3]])


class TestLaurentFields:

    def _matrix(self, rows, ring):
        return PolyMatrix.from_text(rows, ("t",), ring=ring)

    def test_rationals(self):
        matrix = self._matrix([["t - 1", "0"], ["0", "t^2 - 1"]], CoefficientRing.RATIONALS)
        form = smith_normal_form(matrix)
        expected = [
            LaurentPolynomial.parse(text, ("t",), CoefficientRing.RATIONALS).normalize_up_to_unit()
            for text in ("t - 1", "t^2 - 1")
        ]
        assert form.diagonal == expected
        assert verify_smith_form(matrix, form)

    def test_mod2_coprime_entries(self):
        matrix = self._matrix([["t + 1", "0"], ["0", "t^2 + t + 1"]], CoefficientRing.MOD2)
        form = smith_normal_form(matrix)
        assert form.diagonal[0] == LaurentPolynomial.one(("t",), CoefficientRing.MOD2)
        assert verify_smith_form(matrix, form)

    def test_integer_laurent_ring_refused(self):
        matrix = self._matrix([["t - 1"]], CoefficientRing.INTEGERS)
        with pytest.raises(UnsupportedRingError):
            smith_normal_form(matrix)

    def test_multivariate_refused(self):
        matrix = PolyMatrix.from_text([["t1 - 1", "t2 - 1"]], ("t1", "t2"), ring=CoefficientRing.MOD2)
        with pytest.raises(UnsupportedRingError):
            smith_normal_form(matrix)


class TestPolyMatrix:

    def test_from_text_ragged(self):
        with pytest.raises(ParseError):
            PolyMatrix.from_text([["1", "t"], ["1"]], ("t",))

    def test_product_and_transpose(self):
        a = PolyMatrix.from_text([["t", "1"]], ("t",))
        b = PolyMatrix.from_text([["1"], ["-t"]], ("t",))
        assert (a @ b).is_zero()
        assert a.transpose().rows == 2

    def test_zero_sized_shapes(self):
        empty = PolyMatrix.zero(0, 3, ("t",))
        assert empty.rows == 0 and empty.cols == 3
        assert RankEvaluator(seed=1).rank(empty) == 0

    def test_fraction_field_rank(self):
        matrix = PolyMatrix.from_text([["t1 - 1", "t2 - 1"], ["2*t1 - 2", "2*t2 - 2"]], ("t1", "t2"))
        assert RankEvaluator(seed=7).rank(matrix) == 1

    def test_mod2_rank_refused(self):
        matrix = PolyMatrix.from_text([["t + 1"]], ("t",), ring=CoefficientRing.MOD2)
        with pytest.raises(UnsupportedRingError):
            RankEvaluator(seed=1).rank(matrix)

    def test_same_seed_same_answer(self):
        matrix = PolyMatrix.from_text([["t1 - 1", "t2 - 1"]], ("t1", "t2"))
        assert RankEvaluator(seed=3).rank(matrix) == RankEvaluator(seed=3).rank(matrix) == 1
