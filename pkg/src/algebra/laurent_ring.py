"""
群环 ℤ[ℤʳ] / 𝔽₂[ℤʳ] 上的多元Laurent多项式

所有值不可变；系数为任意精度整数（𝔽₂时为0/1，ℚ时为Fraction）。
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union
import logging

from src.config.constants import CoefficientRing
from src.utils.errors import DomainError, ParityError, ParseError, RingMismatchError

logger = logging.getLogger(__name__)

Exponent = Tuple[int, ...]
Coefficient = Union[int, Fraction]

_TERM_SPLIT = re.compile(r'(?<![\^(])(?=[+-])')
_NUMBER = re.compile(r'^(\d+)(?:/(\d+))?$')
_FACTOR = re.compile(r'^([A-Za-z_][A-Za-z0-9_]*)(?:\^\(?(-?\d+)\)?)?$')
_INDEXED = re.compile(r'^([A-Za-z_]+?)(\d+)$')


def coerce_coefficient(value, ring: CoefficientRing) -> Coefficient:
    """把系数规范到目标环"""
    if ring is CoefficientRing.RATIONALS:
        return Fraction(value)
    if isinstance(value, Fraction):
        if value.denominator != 1:
            raise DomainError(f"系数 {value} 不在{ring.value}中")
        value = value.numerator
    if ring is CoefficientRing.MOD2:
        return int(value) % 2
    return int(value)


def _natural_key(name: str):
    match = _INDEXED.match(name)
    if match:
        return (match.group(1), int(match.group(2)))
    return (name, -1)


def default_variables(count: int) -> Tuple[str, ...]:
    """单变量为 t，多变量为 t1..tr"""
    if count == 1:
        return ("t",)
    return tuple(f"t{i}" for i in range(1, count + 1))


@dataclass(frozen=True)
class LaurentPolynomial:
    """多元Laurent多项式（项按指数元组字典序存储）"""
    variables: Tuple[str, ...]
    terms: Tuple[Tuple[Exponent, Coefficient], ...]
    ring: CoefficientRing = CoefficientRing.INTEGERS

    # ---------- 构造 ----------

    @classmethod
    def from_dict(
        cls,
        mapping: Union[Mapping[Exponent, Coefficient], Iterable[Tuple[Exponent, Coefficient]]],
        variables: Sequence[str] = ("t",),
        ring: CoefficientRing = CoefficientRing.INTEGERS
    ) -> "LaurentPolynomial":
        variables = tuple(variables)
        items = mapping.items() if isinstance(mapping, Mapping) else mapping
        acc: Dict[Exponent, Coefficient] = {}
        for exp, coeff in items:
            if isinstance(exp, int):
                exp = (exp,)
            exp = tuple(int(e) for e in exp)
            if len(exp) != len(variables):
                raise DomainError(f"指数长度 {len(exp)} 与变量数 {len(variables)} 不符")
            acc[exp] = acc.get(exp, 0) + coerce_coefficient(coeff, ring)
        terms = []
        for exp in sorted(acc):
            coeff = coerce_coefficient(acc[exp], ring)
            if coeff != 0:
                terms.append((exp, coeff))
        return cls(variables, tuple(terms), ring)

    @classmethod
    def zero(cls, variables: Sequence[str] = ("t",),
             ring: CoefficientRing = CoefficientRing.INTEGERS) -> "LaurentPolynomial":
        return cls(tuple(variables), (), ring)

    @classmethod
    def constant(cls, value: Coefficient, variables: Sequence[str] = ("t",),
                 ring: CoefficientRing = CoefficientRing.INTEGERS) -> "LaurentPolynomial":
        return cls.from_dict({(0,) * len(variables): value}, variables, ring)

    @classmethod
    def one(cls, variables: Sequence[str] = ("t",),
            ring: CoefficientRing = CoefficientRing.INTEGERS) -> "LaurentPolynomial":
        return cls.constant(1, variables, ring)

    @classmethod
    def monomial(cls, exponent: Sequence[int], coefficient: Coefficient = 1,
                 variables: Sequence[str] = ("t",),
                 ring: CoefficientRing = CoefficientRing.INTEGERS) -> "LaurentPolynomial":
        return cls.from_dict({tuple(exponent): coefficient}, variables, ring)

    @classmethod
    def variable(cls, name: str, variables: Sequence[str] = ("t",),
                 ring: CoefficientRing = CoefficientRing.INTEGERS) -> "LaurentPolynomial":
        variables = tuple(variables)
        if name not in variables:
            raise DomainError(f"未知变量: {name}")
        exp = tuple(1 if v == name else 0 for v in variables)
        return cls.monomial(exp, 1, variables, ring)

    @classmethod
    def from_univariate(cls, coefficients: Mapping[int, Coefficient], variable: str = "t",
                        ring: CoefficientRing = CoefficientRing.INTEGERS) -> "LaurentPolynomial":
        return cls.from_dict({(e,): c for e, c in coefficients.items()}, (variable,), ring)

    @classmethod
    def parse(cls, text: str, variables: Optional[Sequence[str]] = None,
              ring: CoefficientRing = CoefficientRing.INTEGERS) -> "LaurentPolynomial":
        """解析 `t^-1 - 1 + t`、`3*t1^2*t2^-1` 形式的文本"""
        compact = re.sub(r'\s+', '', text or '')
        if not compact:
            raise ParseError("多项式文本为空")

        parsed = []
        names = set()
        for chunk in _TERM_SPLIT.split(compact):
            if not chunk:
                continue
            sign = -1 if chunk[0] == '-' else 1
            body = chunk[1:] if chunk[0] in '+-' else chunk
            if not body:
                raise ParseError(f"多项式项为空: {text!r}")
            coeff: Coefficient = 1
            powers: Dict[str, int] = {}
            for factor in body.split('*'):
                number = _NUMBER.match(factor)
                if number:
                    if number.group(2) is not None:
                        if ring is not CoefficientRing.RATIONALS:
                            raise ParseError(f"分数系数只用于有理数环: {factor}")
                        coeff = coeff * Fraction(int(number.group(1)), int(number.group(2)))
                    else:
                        coeff = coeff * int(number.group(1))
                    continue
                power = _FACTOR.match(factor)
                if not power:
                    raise ParseError(f"无法解析因子 {factor!r}（位于 {text!r}）")
                name = power.group(1)
                exponent = int(power.group(2)) if power.group(2) is not None else 1
                powers[name] = powers.get(name, 0) + exponent
                names.add(name)
            parsed.append((sign * coeff, powers))

        if variables is None:
            variables = tuple(sorted(names, key=_natural_key)) or ("t",)
        variables = tuple(variables)
        unknown = names - set(variables)
        if unknown:
            raise ParseError(f"未知变量: {', '.join(sorted(unknown))}")

        index = {name: i for i, name in enumerate(variables)}
        items = []
        for coeff, powers in parsed:
            exp = [0] * len(variables)
            for name, e in powers.items():
                exp[index[name]] += e
            items.append((tuple(exp), coeff))
        return cls.from_dict(items, variables, ring)

    # ---------- 基本属性 ----------

    @property
    def variable_count(self) -> int:
        return len(self.variables)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def as_dict(self) -> Dict[Exponent, Coefficient]:
        return dict(self.terms)

    def coefficient(self, exponent: Sequence[int]) -> Coefficient:
        return self.as_dict().get(tuple(exponent), 0)

    def univariate_terms(self) -> Dict[int, Coefficient]:
        if self.variable_count != 1:
            raise DomainError(f"需要单变量多项式，实际变量: {self.variables}")
        return {exp[0]: c for exp, c in self.terms}

    def min_exponents(self) -> Exponent:
        if not self.terms:
            return (0,) * self.variable_count
        return tuple(min(exp[i] for exp, _ in self.terms) for i in range(self.variable_count))

    def max_exponents(self) -> Exponent:
        if not self.terms:
            return (0,) * self.variable_count
        return tuple(max(exp[i] for exp, _ in self.terms) for i in range(self.variable_count))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_unit(self) -> bool:
        if not self.is_monomial():
            return False
        coeff = self.terms[0][1]
        if self.ring is CoefficientRing.INTEGERS:
            return coeff in (1, -1)
        return coeff != 0

    def is_symmetric(self) -> bool:
        return self == self.involution()

    # ---------- 环运算 ----------

    def _lift(self, other) -> "LaurentPolynomial":
        if isinstance(other, LaurentPolynomial):
            if other.variables != self.variables or other.ring is not self.ring:
                raise RingMismatchError(
                    f"环不一致: {self.variables}/{self.ring.value} 与 {other.variables}/{other.ring.value}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPolynomial.constant(other, self.variables, self.ring)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        acc = self.as_dict()
        for exp, c in other.terms:
            acc[exp] = acc.get(exp, 0) + c
        return LaurentPolynomial.from_dict(acc, self.variables, self.ring)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial.from_dict({e: -c for e, c in self.terms}, self.variables, self.ring)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        acc: Dict[Exponent, Coefficient] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                exp = tuple(a + b for a, b in zip(e1, e2))
                acc[exp] = acc.get(exp, 0) + c1 * c2
        return LaurentPolynomial.from_dict(acc, self.variables, self.ring)

    __rmul__ = __mul__

    def __pow__(self, power: int):
        if power < 0:
            if not self.is_unit():
                raise DomainError(f"非单位元不能取负幂: {self}")
            exp, coeff = self.terms[0]
            inverse = LaurentPolynomial.monomial(
                tuple(-e for e in exp), self._inverse_scalar(coeff), self.variables, self.ring
            )
            return inverse ** (-power)
        result = LaurentPolynomial.one(self.variables, self.ring)
        base = self
        while power:
            if power & 1:
                result = result * base
            base = base * base
            power >>= 1
        return result

    def _inverse_scalar(self, coeff: Coefficient) -> Coefficient:
        if self.ring is CoefficientRing.RATIONALS:
            return 1 / Fraction(coeff)
        return coeff  # ±1 或 𝔽₂中的1

    def scale(self, factor: Coefficient) -> "LaurentPolynomial":
        return LaurentPolynomial.from_dict({e: c * factor for e, c in self.terms}, self.variables, self.ring)

    def shift(self, exponent: Sequence[int]) -> "LaurentPolynomial":
        """乘以单项式 t^exponent"""
        return LaurentPolynomial(
            self.variables,
            tuple((tuple(a + b for a, b in zip(exp, exponent)), c) for exp, c in self.terms),
            self.ring
        )

    # ---------- 结构映射 ----------

    def involution(self) -> "LaurentPolynomial":
        """所有指数取反"""
        return LaurentPolynomial.from_dict(
            {tuple(-e for e in exp): c for exp, c in self.terms}, self.variables, self.ring
        )

    def augmentation(self) -> Coefficient:
        """系数和（所有群元素映到1）"""
        return coerce_coefficient(sum(c for _, c in self.terms), self.ring)

    def reduce_mod2(self) -> "LaurentPolynomial":
        if self.ring is CoefficientRing.RATIONALS:
            raise DomainError("有理系数多项式不能模2约化")
        return LaurentPolynomial.from_dict(dict(self.terms), self.variables, CoefficientRing.MOD2)

    def to_ring(self, ring: CoefficientRing) -> "LaurentPolynomial":
        """换系数环（𝔽₂提升到ℤ时取0/1代表元）"""
        return LaurentPolynomial.from_dict(dict(self.terms), self.variables, ring)

    def rename(self, variables: Sequence[str]) -> "LaurentPolynomial":
        variables = tuple(variables)
        if len(variables) != self.variable_count:
            raise DomainError(f"变量数不符: {variables}")
        return LaurentPolynomial(variables, self.terms, self.ring)

    def embed(self, variables: Sequence[str]) -> "LaurentPolynomial":
        """按变量名嵌入更大的变量组"""
        variables = tuple(variables)
        missing = set(self.variables) - set(variables)
        if missing:
            raise RingMismatchError(f"目标环缺少变量: {', '.join(sorted(missing))}")
        position = [variables.index(v) for v in self.variables]
        items = []
        for exp, c in self.terms:
            target = [0] * len(variables)
            for src, dst in enumerate(position):
                target[dst] = exp[src]
            items.append((tuple(target), c))
        return LaurentPolynomial.from_dict(items, variables, self.ring)

    def evaluate(self, point: Sequence[int]) -> Coefficient:
        """在整数点处求值（负指数给出有理数）"""
        if len(point) != self.variable_count:
            raise DomainError(f"求值点维数 {len(point)} 与变量数 {self.variable_count} 不符")
        total: Coefficient = 0
        for exp, c in self.terms:
            value: Coefficient = c
            for x, e in zip(point, exp):
                if e >= 0:
                    value = value * x ** e
                else:
                    value = value * Fraction(1, x ** (-e))
            total += value
        if isinstance(total, Fraction) and total.denominator == 1:
            return int(total)
        return total

    def normalize_up_to_unit(self) -> "LaurentPolynomial":
        """单位元等价类中的规范代表元"""
        if not self.terms:
            return self
        shifted = self.shift(tuple(-m for m in self.min_exponents()))
        lead = shifted.terms[0][1]
        if self.ring is CoefficientRing.INTEGERS and lead < 0:
            return -shifted
        if self.ring is CoefficientRing.RATIONALS and lead != 1:
            return shifted.scale(1 / Fraction(lead))
        return shifted

    # ---------- 文本 ----------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for index, (exp, coeff) in enumerate(self.terms):
            negative = coeff < 0
            magnitude = -coeff if negative else coeff
            mono = "*".join(
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(self.variables, exp) if e != 0
            )
            if not mono:
                body = str(magnitude)
            elif magnitude == 1:
                body = mono
            else:
                body = f"{magnitude}*{mono}"
            if index == 0:
                parts.append(f"-{body}" if negative else body)
            else:
                parts.append(f" - {body}" if negative else f" + {body}")
        return "".join(parts)


def normalize_up_to_unit(p: LaurentPolynomial) -> LaurentPolynomial:
    return p.normalize_up_to_unit()


def involution(p: LaurentPolynomial) -> LaurentPolynomial:
    return p.involution()


def augmentation(p: LaurentPolynomial) -> Coefficient:
    return p.augmentation()


def z_square(ring: CoefficientRing = CoefficientRing.INTEGERS, variable: str = "t") -> LaurentPolynomial:
    """z² = t − 2 + t⁻¹"""
    return LaurentPolynomial.from_univariate({1: 1, 0: -2, -1: 1}, variable, ring)


def expand_z_square(conway_poly_in_z: LaurentPolynomial, variable: str = "t") -> LaurentPolynomial:
    """把 z 的偶次多项式按 z² = t − 2 + t⁻¹ 展开"""
    terms = conway_poly_in_z.univariate_terms()
    ring = conway_poly_in_z.ring
    step = z_square(ring, variable)
    result = LaurentPolynomial.zero((variable,), ring)
    for exponent, coeff in sorted(terms.items()):
        if exponent < 0 or exponent % 2:
            raise ParityError(f"z 的指数 {exponent} 不是非负偶数，无法得到纽结多项式")
        result = result + (step ** (exponent // 2)).scale(coeff)
    return result


def contract_to_z_square(delta: LaurentPolynomial, variable: str = "z") -> LaurentPolynomial:
    """expand_z_square 的逆：对称多项式写成 z² 的多项式"""
    if not delta.is_symmetric():
        raise ParityError(f"多项式 {delta} 不对称，不能写成 z² 的多项式")
    remaining = delta
    step = z_square(delta.ring, delta.variables[0])
    coefficients: Dict[int, Coefficient] = {}
    while remaining:
        top = max(remaining.univariate_terms())
        coeff = remaining.univariate_terms()[top]
        coefficients[2 * top] = coeff
        remaining = remaining - (step ** top).scale(coeff)
    return LaurentPolynomial.from_univariate(coefficients, variable, delta.ring)
