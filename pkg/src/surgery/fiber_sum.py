"""纤维和公式与 S¹×M_K 的闭不变量（在 Novikov 完备化中）"""

from typing import Optional, Union
import logging

from src.algebra.laurent_ring import LaurentPolynomial, z_square
from src.algebra.novikov import NovikovSeries, novikov_quotient
from src.config.constants import NovikovDirection
from src.config.settings import get_config
from src.utils.errors import DomainError, RingMismatchError

logger = logging.getLogger(__name__)

Closed = Union[LaurentPolynomial, NovikovSeries]


def _ring_of(value: Closed):
    if isinstance(value, NovikovSeries):
        return value.variable, value.ring
    if isinstance(value, LaurentPolynomial):
        if value.variable_count != 1:
            raise RingMismatchError(f"纤维和只用单变量环: {value.variables}")
        return value.variables[0], value.ring
    raise RingMismatchError(f"无法识别的不变量类型: {type(value).__name__}")


def fiber_sum_product(o1: Closed, o2: Closed) -> Closed:
    """
    沿环面的纤维和（已做边缘环面投影 ρ）

    [O_{X#Y}] = [(t−2+t⁻¹)·O_X·O_Y]，差 ±tⁿ。
    """
    variable, ring = _ring_of(o1)
    if _ring_of(o2) != (variable, ring):
        raise RingMismatchError(f"纤维和的两个不变量不在同一个环中: {_ring_of(o1)} 与 {_ring_of(o2)}")
    factor = z_square(ring, variable)
    if isinstance(o1, NovikovSeries):
        return o1 * o2 * factor
    if isinstance(o2, NovikovSeries):
        return o2 * o1 * factor
    return factor * o1 * o2


def _settings(direction: Optional[NovikovDirection], order: Optional[int]):
    cfg = get_config().get('novikov', {})
    if direction is None:
        direction = NovikovDirection(cfg.get('direction', 'positive'))
    if order is None:
        order = int(cfg.get('order', 20))
    return direction, order


def s1_cross_surgery_invariant(
    delta: LaurentPolynomial,
    direction: Optional[NovikovDirection] = None,
    order: Optional[int] = None
) -> NovikovSeries:
    """[O_{S¹×M_K}] = [Δ_K(t) / (t−2+t⁻¹)]"""
    if not delta.is_symmetric():
        raise DomainError(f"Δ = {delta} 不对称，不是纽结的Alexander多项式")
    direction, order = _settings(direction, order)
    variable = delta.variables[0]
    return novikov_quotient(delta, z_square(delta.ring, variable), direction, order)


def complement_invariant(
    delta: LaurentPolynomial,
    direction: Optional[NovikovDirection] = None,
    order: Optional[int] = None
) -> NovikovSeries:
    """纽结补的相对不变量 [Ψ_Z] = [Δ_K(t) / (t−1)]"""
    direction, order = _settings(direction, order)
    variable = delta.variables[0]
    denominator = LaurentPolynomial.from_univariate({1: 1, 0: -1}, variable, delta.ring)
    return novikov_quotient(delta, denominator, direction, order)


def closed_knot_surgery(
    o_x: Closed,
    delta: LaurentPolynomial,
    direction: Optional[NovikovDirection] = None,
    order: Optional[int] = None
) -> NovikovSeries:
    """X_K = X 与 S¹×M_K 沿 T 的纤维和：[O_{X_K}] = [O_X·Δ_K(t)]（截断阶内）"""
    series = s1_cross_surgery_invariant(delta, direction, order)
    result = fiber_sum_product(series, o_x)
    logger.debug(f"闭纽结手术: 精确到 {result.truncation_order}")
    return result
