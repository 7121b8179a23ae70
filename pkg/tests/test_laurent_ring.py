"""Laurent多项式环测试"""

from fractions import Fraction

import pytest

from src.algebra.laurent_ring import (
    LaurentPolynomial,
    contract_to_z_square,
    default_variables,
    expand_z_square,
    z_square,
)
from src.config.constants import CoefficientRing
from src.utils.errors import DomainError, ParityError, ParseError, RingMismatchError


class TestParse:

    def test_univariate_text(self, poly):
        p = poly("t^-1 - 1 + t")
        assert p.univariate_terms() == {-1: 1, 0: -1, 1: 1}
        assert str(p) == "t^-1 - 1 + t"

    def test_multivariate_text_orders_variables_naturally(self):
        p = LaurentPolynomial.parse("3*t10^2*t2^-1 - t1")
        assert p.variables == ("t1", "t2", "t10")
        assert p.coefficient((0, -1, 2)) == 3
        assert p.coefficient((1, 0, 0)) == -1

    def test_parenthesised_negative_exponent(self, poly):
        assert poly("t^(-2)") == poly("t^-2")

    def test_fraction_coefficient_only_over_rationals(self):
        with pytest.raises(ParseError):
            LaurentPolynomial.parse("1/2*t")
        p = LaurentPolynomial.parse("1/2*t", ring=CoefficientRing.RATIONALS)
        assert p.coefficient((1,)) == Fraction(1, 2)

    def test_unknown_variable(self):
        with pytest.raises(ParseError):
            LaurentPolynomial.parse("s + 1", ("t",))

    @pytest.mark.parametrize("text", ["", "t^", "2**t", "t + + 1"])
    def test_malformed(self, text):
        with pytest.raises(ParseError):
            LaurentPolynomial.parse(text, ("t",))


class TestArithmetic:

    def test_ring_axioms_on_samples(self, poly):
        a, b, c = poly("t - 2 + t^-1"), poly("3*t^2 + 1"), poly("-t^-3 + 5")
        assert (a + b) * c == a * c + b * c
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a - a == LaurentPolynomial.zero()

    def test_zero_terms_are_dropped(self, poly):
        assert (poly("t + 1") - poly("t")).terms == (((0,), 1),)

    def test_mod2_cancels_even_coefficients(self):
        p = LaurentPolynomial.parse("2*t + 3", ("t",), CoefficientRing.MOD2)
        assert p == LaurentPolynomial.one(("t",), CoefficientRing.MOD2)

    def test_negative_power_of_unit(self, poly):
        u = poly("-t^2")
        assert u ** -1 == poly("-t^-2")
        assert u * u ** -1 == LaurentPolynomial.one()

    def test_negative_power_of_non_unit(self, poly):
        with pytest.raises(DomainError):
            poly("t + 1") ** -1

    def test_mixed_rings_refused(self, poly):
        mod2 = LaurentPolynomial.parse("t", ("t",), CoefficientRing.MOD2)
        with pytest.raises(RingMismatchError):
            poly("t") + mod2
        with pytest.raises(RingMismatchError):
            poly("t") * LaurentPolynomial.parse("s", ("s",))


class TestStructureMaps:

    def test_involution_and_symmetry(self, poly):
        p = poly("2*t^3 - t^-1")
        assert p.involution() == poly("2*t^-3 - t")
        assert poly("t^-1 - 1 + t").is_symmetric()
        assert not p.is_symmetric()

    def test_augmentation(self, poly):
        assert poly("t^-1 - 1 + t").augmentation() == 1
        assert poly("t - 1").augmentation() == 0

    def test_units(self, poly):
        assert poly("-t^4").is_unit()
        assert not poly("2*t").is_unit()
        assert LaurentPolynomial.parse("2*t", ring=CoefficientRing.RATIONALS).is_unit()

    def test_normalize_up_to_unit(self, poly):
        assert poly("-t^-3 + 2*t^-2").normalize_up_to_unit() == poly("1 - 2*t")
        assert poly("t^5").normalize_up_to_unit() == LaurentPolynomial.one()

    def test_embed_by_name(self):
        p = LaurentPolynomial.parse("t2^2 - 1", ("t2",))
        q = p.embed(("t1", "t2"))
        assert q.coefficient((0, 2)) == 1
        with pytest.raises(RingMismatchError):
            p.embed(("t1",))

    def test_evaluate_with_negative_exponents(self, poly):
        assert poly("t^-1 - 1 + t").evaluate((2,)) == Fraction(3, 2)
        assert poly("t^2 + 1").evaluate((3,)) == 10

    def test_default_variables(self):
        assert default_variables(1) == ("t",)
        assert default_variables(3) == ("t1", "t2", "t3")


class TestZSquare:

    def test_z_square(self, poly):
        assert z_square() == poly("t - 2 + t^-1")

    def test_expand_trefoil_conway(self, poly):
        conway = LaurentPolynomial.parse("1 + z^2", ("z",))
        assert expand_z_square(conway) == poly("t^-1 - 1 + t")

    def test_expand_rejects_odd_power(self):
        with pytest.raises(ParityError):
            expand_z_square(LaurentPolynomial.parse("z", ("z",)))

    def test_contract_inverts_expand(self, poly):
        delta = poly("t^-2 - 3*t^-1 + 5 - 3*t + t^2")
        conway = contract_to_z_square(delta)
        assert conway == LaurentPolynomial.parse("1 + z^2 + z^4", ("z",))
        assert expand_z_square(conway) == delta

    def test_contract_requires_symmetry(self, poly):
        with pytest.raises(ParityError):
            contract_to_z_square(poly("t + 1"))
