"""T³ 模型、形式不变量、纤维和与边缘手术判定测试"""

from fractions import Fraction

import numpy as np
import pytest

from src.algebra.laurent_ring import LaurentPolynomial, z_square
from src.config.constants import CoefficientRing, Verdict
from src.knots.diagram import torus_knot_2
from src.surgery.fiber_sum import (
    closed_knot_surgery,
    complement_invariant,
    fiber_sum_product,
    s1_cross_surgery_invariant,
)
from src.surgery.invariants import (
    FormalInvariant,
    GroupQuotient,
    knot_surgery_multiply,
    log_transform_combination,
    pair_invariants,
    t_average,
    unit_equivalent,
)
from src.surgery.torus import (
    T3Class,
    cylinder_action,
    h1_contraction,
    inverse_transpose,
    log_transform_vector,
    random_unimodular,
    t3_theta_image,
)
from src.surgery.verdict import blowup_sequence, rim_surgery_verdict, top_structure
from src.utils.errors import (
    DomainError,
    RingMismatchError,
    UnsupportedRingError,
    ValidationError,
)

TREFOIL = "t^-1 - 1 + t"
FIGURE_EIGHT = "-t^-1 + 3 - t"


class TestTorusModel:

    def test_class_validation(self):
        with pytest.raises(ValidationError):
            T3Class(lambda2_part=(1, 0, 0), lambda1_part=(0, 1, 0))
        with pytest.raises(ValidationError):
            T3Class(u_power=-1)

    def test_degrees(self):
        assert T3Class(lambda2_part=(1, 0, 0)).degree == Fraction(-3, 2)
        assert T3Class(lambda1_part=(1, 0, 0)).degree == Fraction(-5, 2)
        assert T3Class(lambda2_part=(1, 0, 0), u_power=1).degree == Fraction(-7, 2)

    def test_theta_image(self):
        image = t3_theta_image((1, 2, 3))
        assert image.lambda2_part == (1, 2, 3)
        assert image.sign_ambiguous
        with pytest.raises(DomainError):
            t3_theta_image((2, 0, 4))

    def test_contraction_is_cross_product(self):
        x = T3Class(lambda2_part=(1, 0, 0))
        assert h1_contraction(x, (0, 1, 0)).lambda1_part == (0, 0, 1)
        assert h1_contraction(x, (1, 0, 0)).is_zero()
        assert h1_contraction(T3Class(lambda1_part=(1, 0, 0)), (0, 1, 0)).is_zero()

    def test_cylinder_action_composes(self):
        rng = np.random.default_rng(7)
        for _ in range(100):
            phi = random_unimodular(rng)
            psi = random_unimodular(rng)
            v = tuple(int(x) for x in rng.integers(-3, 4, size=3))
            for x in (T3Class(lambda2_part=v), T3Class(lambda1_part=v)):
                if x.is_zero():
                    continue
                assert cylinder_action(phi @ psi, x) == cylinder_action(phi, cylinder_action(psi, x))

    def test_cylinder_action_preserves_pairing(self, rng):
        for _ in range(20):
            phi = random_unimodular(rng)
            v = (1, -2, 3)
            w = (2, 0, -1)
            image_v = cylinder_action(phi, T3Class(lambda2_part=v)).lambda2_part
            image_w = cylinder_action(phi, T3Class(lambda1_part=w)).lambda1_part
            assert np.dot(image_v, image_w) == np.dot(v, w)

    def test_log_transform_vector_is_third_column(self, rng):
        phi = random_unimodular(rng)
        assert log_transform_vector(phi) == tuple(int(x) for x in phi[:, 2])

    def test_inverse_transpose(self, rng):
        phi = random_unimodular(rng)
        assert (inverse_transpose(phi) @ phi.T == np.eye(3, dtype=np.int64)).all()

    def test_non_unimodular(self):
        x = T3Class(lambda2_part=(0, 0, 1))
        with pytest.raises(DomainError):
            cylinder_action([[2, 0, 0], [0, 1, 0], [0, 0, 1]], x)
        with pytest.raises(ValidationError):
            cylinder_action([[1, 0], [0, 1]], x)


def _inv(text, ring=CoefficientRing.INTEGERS, **kwargs):
    return FormalInvariant.build({'s0': [LaurentPolynomial.parse(text, ("t",), ring)]}, ring=ring, **kwargs)


class TestFormalInvariant:

    def test_build_checks_rank_and_ring(self):
        one = LaurentPolynomial.one(("t",))
        with pytest.raises(ValidationError):
            FormalInvariant(("t",), CoefficientRing.INTEGERS, 2, (('s0', (one,)),))
        with pytest.raises(RingMismatchError):
            FormalInvariant.build({'s0': [one]}, ring=CoefficientRing.MOD2)

    def test_generator_over_f2_has_no_sign_ambiguity(self):
        generator = FormalInvariant.generator(rank=2)
        assert not generator.sign_ambiguous
        assert [str(e) for e in generator.component('s0')] == ["1", "0"]
        with pytest.raises(DomainError):
            generator.component('s1')

    def test_unit_equivalence(self):
        # 1 − t + t² 的相反数 = −t·Δ
        assert unit_equivalent(_inv(TREFOIL), _inv("-1 + t - t^2"))
        assert not unit_equivalent(_inv(TREFOIL), _inv(FIGURE_EIGHT))

    def test_unit_equivalence_respects_ambiguity_flags(self):
        strict = dict(sign_ambiguous=False)
        assert unit_equivalent(_inv(TREFOIL, **strict), _inv("1 - t + t^2", **strict))
        assert not unit_equivalent(_inv(TREFOIL, **strict), _inv("-1 + t - t^2", **strict))
        assert not unit_equivalent(
            _inv(TREFOIL, unit_translation=False), _inv("1 - t + t^2", unit_translation=False)
        )

    def test_knot_surgery_multiply(self, poly):
        generator = FormalInvariant.generator()
        surgered = knot_surgery_multiply(generator, poly(TREFOIL), "t")
        assert surgered.component('s0')[0] == poly(TREFOIL).reduce_mod2()
        with pytest.raises(UnsupportedRingError):
            knot_surgery_multiply(_inv("1"), poly(TREFOIL), "t")
        with pytest.raises(DomainError):
            knot_surgery_multiply(generator, poly(TREFOIL), "s")

    def test_mod2_reduction(self):
        reduced = _inv(FIGURE_EIGHT).mod2()
        assert reduced.ring is CoefficientRing.MOD2
        assert not reduced.sign_ambiguous
        assert str(reduced.component('s0')[0]) == "t^-1 + 1 + t"

    def test_log_transform_combination_is_linear(self):
        basis = [_inv("1"), _inv("t"), _inv("t^2")]
        combined = log_transform_combination(2, -1, 3, basis)
        assert str(combined.component('s0')[0]) == "2 - t + 3*t^2"
        with pytest.raises(ValidationError):
            log_transform_combination(1, 0, 0, basis[:2])

    def test_group_quotient(self):
        variables = ("t1", "t2")
        projection = GroupQuotient.forget(variables, ("t1",))
        monomial = LaurentPolynomial.monomial((1, 3), 1, variables)
        assert projection.apply(monomial) == LaurentPolynomial.variable("t1", ("t1",))
        with pytest.raises(DomainError):
            GroupQuotient.from_array(variables, ("s",), [[0, 0]])
        with pytest.raises(ValidationError):
            GroupQuotient.from_array(variables, ("s",), [[1, 0], [0, 1]])
        with pytest.raises(RingMismatchError):
            projection.apply(LaurentPolynomial.one(("t",)))

    def test_t_average(self):
        variables = ("t1", "t2")
        family = FormalInvariant.build({
            'a': [LaurentPolynomial.one(variables)],
            'b': [LaurentPolynomial.monomial((1, 2), 1, variables)],
        }, variables)
        averaged = t_average(family, GroupQuotient.forget(variables, ("t1",)))
        assert averaged.variables == ("t1",)
        assert str(averaged.component('a')[0]) == "1 + t1"
        with pytest.raises(DomainError):
            t_average(family, GroupQuotient.forget(variables, ("t1",)), orbit=[])

    def test_pairing_is_sesquilinear(self, poly):
        x = _inv("t")
        assert pair_invariants(x, x) == poly("1")
        assert pair_invariants(_inv("1 + t"), _inv("1")) == poly("1 + t")


class TestFiberSum:

    def test_s1_cross_unknot_coefficients(self):
        series = s1_cross_surgery_invariant(LaurentPolynomial.one(), order=20)
        assert series.coefficient(0) == 0
        for n in range(1, 16):
            assert series.coefficient(n) == n

    @pytest.mark.parametrize("text", ["1", TREFOIL, FIGURE_EIGHT])
    def test_multiply_back(self, poly, text):
        delta = poly(text)
        series = s1_cross_surgery_invariant(delta, order=20)
        assert (series * z_square()).agrees_with(delta, through=20)

    def test_reads_order_from_config(self):
        series = s1_cross_surgery_invariant(LaurentPolynomial.one())
        assert series.truncation_order is not None

    def test_non_symmetric_refused(self, poly):
        with pytest.raises(DomainError):
            s1_cross_surgery_invariant(poly("1 + t"))

    def test_complement_invariant(self, poly):
        delta = poly(TREFOIL)
        series = complement_invariant(delta, order=12)
        assert (series * poly("t - 1")).agrees_with(delta, through=10)

    def test_closed_knot_surgery_recovers_delta(self, poly):
        delta = poly(FIGURE_EIGHT)
        result = closed_knot_surgery(LaurentPolynomial.one(), delta, order=20)
        assert result.agrees_with(delta, through=10)

    def test_ring_mismatch(self, poly):
        with pytest.raises(RingMismatchError):
            fiber_sum_product(poly("1"), LaurentPolynomial.one(("s",)))


class TestVerdict:

    def test_trefoil_against_unknot(self):
        report = rim_surgery_verdict(2, 0, ["3_1", "0_1"])
        assert report.pairs[0].verdict is Verdict.DISTINCT
        assert not report.pairs[0].invariants_unit_equivalent
        assert report.blowups_applied == 3

    def test_trefoil_and_figure_eight_not_distinguished(self):
        report = rim_surgery_verdict(1, 0, ["3_1", "4_1"])
        pair = report.pairs[0]
        assert pair.verdict is Verdict.NOT_DISTINGUISHED
        assert pair.invariants_unit_equivalent
        assert report.classes == [["3_1", "4_1"]]

    def test_torus_knot_family_pairwise_distinct(self):
        names = [f"T(2,{m})" for m in range(3, 18, 2)]
        report = rim_surgery_verdict(2, 1, names)
        assert len(report.pairs) == len(names) * (len(names) - 1) // 2
        assert report.all_distinct

    def test_named_diagrams(self):
        report = rim_surgery_verdict(1, 3, [("a", torus_knot_2(3)), ("b", torus_knot_2(5))])
        data = report.to_dict()
        assert data['pairs'][0]['pair'] == ["a", "b"]
        assert data['pairs'][0]['blowups_applied'] == 4
        assert data['all_distinct']

    def test_self_intersection_too_small(self):
        with pytest.raises(DomainError):
            rim_surgery_verdict(2, -3, ["3_1", "0_1"])

    def test_needs_two_distinct_names(self):
        with pytest.raises(ValidationError):
            rim_surgery_verdict(2, 0, ["3_1"])
        with pytest.raises(ValidationError):
            rim_surgery_verdict(2, 0, ["3_1", "3_1"])

    def test_blowup_sequence(self):
        assert blowup_sequence(2, 0) == [0, -1, -2, -3]
        assert blowup_sequence(1, -1) == [-1]
        with pytest.raises(DomainError):
            blowup_sequence(0, 0)

    def test_top_structure(self):
        structure = top_structure(2)
        assert structure['n'] == 3
        assert sorted(structure['spinc']) == ["-1", "1"]
