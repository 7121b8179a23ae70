"""Novikov完备化测试"""

import pytest

from src.algebra.laurent_ring import LaurentPolynomial, z_square
from src.algebra.novikov import NovikovSeries, novikov_quotient
from src.config.constants import CoefficientRing, NovikovDirection
from src.utils.errors import DomainError, RingMismatchError


def test_geometric_series(poly):
    q = novikov_quotient(poly("1"), poly("1 - t"), order=10)
    assert q.truncation_order == 10
    assert all(q.coefficient(n) == 1 for n in range(11))
    with pytest.raises(DomainError):
        q.coefficient(11)


def test_exact_quotient_has_no_truncation(poly):
    q = novikov_quotient(poly("t^2 - 1"), poly("t - 1"))
    assert q.is_exact()
    assert q.to_polynomial() == poly("t + 1")


def test_negative_direction_expands_in_inverse_powers(poly):
    q = novikov_quotient(poly("1"), poly("t - 1"), NovikovDirection.NEGATIVE, order=6)
    # 1/(t−1) = t⁻¹ + t⁻² + ⋯
    assert q.coefficient(-1) == 1
    assert q.coefficient(-6) == 1
    assert q.coefficient(0) == 0


def test_multiply_back_recovers_numerator(poly):
    den = z_square()
    for text in ("1", "t^-1 - 1 + t", "-t^-1 + 3 - t"):
        num = poly(text)
        q = novikov_quotient(num, den, order=20)
        assert (q * den).agrees_with(num, through=20)


def test_non_invertible_leading_coefficient(poly):
    with pytest.raises(DomainError):
        novikov_quotient(poly("1"), poly("2 - t"))


def test_rationals_allow_any_leading_coefficient():
    num = LaurentPolynomial.one(("t",), CoefficientRing.RATIONALS)
    den = LaurentPolynomial.parse("2 - t", ("t",), CoefficientRing.RATIONALS)
    q = novikov_quotient(num, den, order=5)
    assert q.coefficient(0) * 2 == 1
    assert q.coefficient(3) * 16 == 1


def test_zero_denominator(poly):
    with pytest.raises(DomainError):
        novikov_quotient(poly("1"), LaurentPolynomial.zero())


def test_product_truncation_is_tracked(poly):
    a = novikov_quotient(poly("1"), poly("1 - t"), order=5)
    b = a.shift(3)
    assert b.truncation_order == 8
    assert b.coefficient(3) == 1


def test_mod2_reduction(poly):
    q = novikov_quotient(poly("1"), z_square(), order=8).reduce_mod2()
    assert q.ring is CoefficientRing.MOD2
    # n·tⁿ 模2：奇数次项系数为1
    assert [q.coefficient(n) for n in range(1, 7)] == [1, 0, 1, 0, 1, 0]


def test_ring_mismatch(poly):
    a = NovikovSeries.from_polynomial(poly("t"))
    b = NovikovSeries.from_polynomial(poly("t"), NovikovDirection.NEGATIVE)
    with pytest.raises(RingMismatchError):
        a + b
