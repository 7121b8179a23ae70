"""Novikov完备化中的截断幂级数"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Tuple, Union
import logging

from src.algebra.laurent_ring import Coefficient, LaurentPolynomial, coerce_coefficient
from src.config.constants import CoefficientRing, NovikovDirection
from src.utils.errors import DomainError, RingMismatchError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NovikovSeries:
    """
    单变量Novikov级数

    POSITIVE方向时，指数 ≤ truncation_order 的系数都是精确的；
    NEGATIVE方向时，指数 ≥ −truncation_order 的系数精确。
    truncation_order 为 None 表示级数实际上是一个精确的多项式。
    """
    variable: str
    direction: NovikovDirection
    truncation_order: Optional[int]
    coefficients: Tuple[Tuple[int, Coefficient], ...]
    ring: CoefficientRing = CoefficientRing.INTEGERS

    @classmethod
    def from_polynomial(
        cls,
        p: LaurentPolynomial,
        direction: NovikovDirection = NovikovDirection.POSITIVE,
        order: Optional[int] = None
    ) -> "NovikovSeries":
        terms = p.univariate_terms()
        return cls._build(p.variables[0], direction, order, _flip(terms, direction), p.ring)

    @classmethod
    def _build(cls, variable, direction, order, positive_terms: Dict[int, Coefficient], ring):
        """从正方向坐标下的系数构造（会丢弃窗口外的项）"""
        kept = {}
        for e, c in positive_terms.items():
            c = coerce_coefficient(c, ring)
            if c != 0 and (order is None or e <= order):
                kept[e] = c
        actual = _flip(kept, direction)
        return cls(variable, direction, order, tuple(sorted(actual.items())), ring)

    # 正方向坐标
    def _positive_terms(self) -> Dict[int, Coefficient]:
        return _flip(dict(self.coefficients), self.direction)

    def _valuation(self) -> Optional[int]:
        terms = self._positive_terms()
        return min(terms) if terms else None

    def is_exact(self) -> bool:
        return self.truncation_order is None

    def coefficient(self, exponent: int) -> Coefficient:
        positive = exponent if self.direction is NovikovDirection.POSITIVE else -exponent
        if self.truncation_order is not None and positive > self.truncation_order:
            raise DomainError(f"指数 {exponent} 超出截断阶 {self.truncation_order}")
        return dict(self.coefficients).get(exponent, 0)

    def to_polynomial(self) -> LaurentPolynomial:
        """已知部分的多项式"""
        return LaurentPolynomial.from_univariate(dict(self.coefficients), self.variable, self.ring)

    def _check(self, other: "NovikovSeries"):
        if (other.variable, other.direction, other.ring) != (self.variable, self.direction, self.ring):
            raise RingMismatchError(
                f"Novikov环不一致: {self.variable}/{self.direction.value}/{self.ring.value} "
                f"与 {other.variable}/{other.direction.value}/{other.ring.value}"
            )

    def _coerce_operand(self, other) -> "NovikovSeries":
        if isinstance(other, NovikovSeries):
            self._check(other)
            return other
        if isinstance(other, LaurentPolynomial):
            if other.variables != (self.variable,) or other.ring is not self.ring:
                raise RingMismatchError(f"多项式 {other} 不在级数环 {self.variable} 中")
            return NovikovSeries.from_polynomial(other, self.direction)
        if isinstance(other, (int, Fraction)):
            return NovikovSeries.from_polynomial(
                LaurentPolynomial.constant(other, (self.variable,), self.ring), self.direction
            )
        return NotImplemented

    def __add__(self, other):
        other = self._coerce_operand(other)
        if other is NotImplemented:
            return other
        order = _min_order(self.truncation_order, other.truncation_order)
        acc = self._positive_terms()
        for e, c in other._positive_terms().items():
            acc[e] = acc.get(e, 0) + c
        return NovikovSeries._build(self.variable, self.direction, order, acc, self.ring)

    __radd__ = __add__

    def __neg__(self):
        return NovikovSeries(
            self.variable, self.direction, self.truncation_order,
            tuple((e, coerce_coefficient(-c, self.ring)) for e, c in self.coefficients), self.ring
        )

    def __sub__(self, other):
        other = self._coerce_operand(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __mul__(self, other):
        other = self._coerce_operand(other)
        if other is NotImplemented:
            return other
        left, right = self._positive_terms(), other._positive_terms()
        order = _product_order(self, other)
        acc: Dict[int, Coefficient] = {}
        for e1, c1 in left.items():
            for e2, c2 in right.items():
                e = e1 + e2
                if order is None or e <= order:
                    acc[e] = acc.get(e, 0) + c1 * c2
        return NovikovSeries._build(self.variable, self.direction, order, acc, self.ring)

    __rmul__ = __mul__

    def reduce_mod2(self) -> "NovikovSeries":
        return NovikovSeries._build(
            self.variable, self.direction, self.truncation_order,
            self._positive_terms(), CoefficientRing.MOD2
        )

    def shift(self, exponent: int) -> "NovikovSeries":
        """乘以 t^exponent"""
        monomial = LaurentPolynomial.monomial((exponent,), 1, (self.variable,), self.ring)
        return self * monomial

    def agrees_with(self, other, through: Optional[int] = None) -> bool:
        """在两者都精确的窗口内（再截到 through）系数相同"""
        other = self._coerce_operand(other)
        bound = _min_order(self.truncation_order, other.truncation_order)
        bound = _min_order(bound, through)
        left, right = self._positive_terms(), other._positive_terms()
        for e in set(left) | set(right):
            if bound is not None and e > bound:
                continue
            if left.get(e, 0) != right.get(e, 0):
                return False
        return True

    def __str__(self) -> str:
        body = str(self.to_polynomial())
        if self.truncation_order is None:
            return body
        if self.direction is NovikovDirection.POSITIVE:
            return f"{body} + O({self.variable}^{self.truncation_order + 1})"
        return f"{body} + O({self.variable}^{-self.truncation_order - 1})"

    def to_dict(self) -> dict:
        return {
            'variable': self.variable,
            'direction': self.direction.value,
            'truncation_order': self.truncation_order,
            'known_terms': str(self.to_polynomial()),
        }


def _flip(terms: Dict[int, Coefficient], direction: NovikovDirection) -> Dict[int, Coefficient]:
    if direction is NovikovDirection.POSITIVE:
        return dict(terms)
    return {-e: c for e, c in terms.items()}


def _min_order(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _effective_valuation(x: NovikovSeries) -> Optional[int]:
    valuation = x._valuation()
    if valuation is None and x.truncation_order is not None:
        return x.truncation_order + 1
    return valuation


def _product_order(x: NovikovSeries, y: NovikovSeries) -> Optional[int]:
    """乘积精确到的阶：min(N1 + v2, N2 + v1)"""
    vx, vy = _effective_valuation(x), _effective_valuation(y)
    if vx is None or vy is None:
        return None  # 精确的零
    bounds = []
    if x.truncation_order is not None:
        bounds.append(x.truncation_order + vy)
    if y.truncation_order is not None:
        bounds.append(y.truncation_order + vx)
    return min(bounds) if bounds else None


def novikov_quotient(
    numerator: LaurentPolynomial,
    denominator: LaurentPolynomial,
    direction: NovikovDirection = NovikovDirection.POSITIVE,
    order: int = 20
) -> NovikovSeries:
    """
    在Novikov完备化中做除法

    返回的级数 q 满足 denominator·q = numerator，精确到指数 order
    （NEGATIVE方向时为 −order）。商为多项式时返回精确结果。
    ℤ 系数时分母在展开方向上的首项系数必须是 ±1，否则该级数在 ℤ 上不存在，抛出 DomainError。
    """
    if numerator.variables != denominator.variables or numerator.ring is not denominator.ring:
        raise RingMismatchError(f"分子分母不在同一个环中: {numerator} / {denominator}")
    if denominator.is_zero():
        raise DomainError("Novikov除法的分母为零")

    variable = denominator.variables[0]
    ring = denominator.ring
    num = _flip(numerator.univariate_terms(), direction)
    den = _flip(denominator.univariate_terms(), direction)

    valuation = min(den)
    lead = den[valuation]
    if ring is CoefficientRing.INTEGERS and lead not in (1, -1):
        raise DomainError(f"分母在完备化方向上的首项系数 {lead} 不可逆")

    precision = order - valuation
    quotient: Dict[int, Coefficient] = {}
    remainder = dict(num)
    exact = False
    while True:
        remainder = {e: c for e, c in remainder.items() if coerce_coefficient(c, ring) != 0}
        if not remainder:
            exact = True
            break
        low = min(remainder)
        e = low - valuation
        if e > precision:
            break
        if ring is CoefficientRing.RATIONALS:
            c = Fraction(remainder[low]) / lead
        else:
            c = coerce_coefficient(remainder[low] * lead, ring)  # lead = ±1
        quotient[e] = c
        for d_exp, d_coeff in den.items():
            key = e + d_exp
            remainder[key] = remainder.get(key, 0) - c * d_coeff

    logger.debug(f"Novikov除法完成: 精确={exact}, 项数={len(quotient)}")
    return NovikovSeries._build(variable, direction, None if exact else precision, quotient, ring)
