"""
相对不变量的形式计算

FormalInvariant 是群环上自由模的元素，按 spin^c 标签分量存储，
并带有"差一个符号"和"差一个 H¹ 平移"两个歧义标记。
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple
import logging

import numpy as np
import sympy

from src.algebra.laurent_ring import LaurentPolynomial
from src.config.constants import CoefficientRing
from src.utils.errors import DomainError, RingMismatchError, UnsupportedRingError, ValidationError
from src.utils.formatting import format_fraction

logger = logging.getLogger(__name__)

Element = Tuple[LaurentPolynomial, ...]


@dataclass(frozen=True)
class FormalInvariant:
    """
    形式相对不变量

    components: spin^c 标签 → 秩为 rank 的自由模中的元素
    degrees: 可选的绝对分次
    """
    variables: Tuple[str, ...]
    ring: CoefficientRing
    rank: int
    components: Tuple[Tuple[str, Element], ...]
    degrees: Tuple[Tuple[str, Fraction], ...] = ()
    sign_ambiguous: bool = True
    unit_translation: bool = True

    def __post_init__(self):
        if self.rank < 1:
            raise ValidationError(f"自由模的秩必须为正: {self.rank}")
        for label, element in self.components:
            if len(element) != self.rank:
                raise ValidationError(f"分量 {label} 的长度 {len(element)} 与秩 {self.rank} 不符")
            for entry in element:
                if entry.variables != self.variables or entry.ring is not self.ring:
                    raise RingMismatchError(f"分量 {label} 的系数不在 {self.variables}/{self.ring.value} 中")
        if self.ring is CoefficientRing.MOD2 and self.sign_ambiguous:
            object.__setattr__(self, 'sign_ambiguous', False)

    # ---------- 构造 ----------

    @classmethod
    def build(
        cls,
        components: Mapping[str, Sequence[LaurentPolynomial]],
        variables: Sequence[str] = ("t",),
        ring: CoefficientRing = CoefficientRing.INTEGERS,
        degrees: Optional[Mapping[str, Fraction]] = None,
        sign_ambiguous: bool = True,
        unit_translation: bool = True
    ) -> "FormalInvariant":
        items = tuple(sorted((label, tuple(element)) for label, element in components.items()))
        if not items:
            raise ValidationError("不变量至少要有一个 spin^c 分量")
        rank = len(items[0][1])
        degree_items = tuple(sorted((degrees or {}).items()))
        return cls(tuple(variables), ring, rank, items, degree_items, sign_ambiguous, unit_translation)

    @classmethod
    def generator(
        cls,
        variables: Sequence[str] = ("t",),
        ring: CoefficientRing = CoefficientRing.MOD2,
        label: str = "s0",
        rank: int = 1,
        degree: Optional[Fraction] = None
    ) -> "FormalInvariant":
        """秩 rank 自由模的第一个生成元（辛侧的不变量）"""
        one = LaurentPolynomial.one(variables, ring)
        zero = LaurentPolynomial.zero(variables, ring)
        element = (one,) + (zero,) * (rank - 1)
        degrees = {label: Fraction(degree)} if degree is not None else None
        return cls.build({label: element}, variables, ring, degrees)

    # ---------- 基本操作 ----------

    def labels(self) -> List[str]:
        return [label for label, _ in self.components]

    def component(self, label: str) -> Element:
        for name, element in self.components:
            if name == label:
                return element
        raise DomainError(f"不变量中没有 spin^c 分量 {label}")

    def is_zero(self) -> bool:
        return all(entry.is_zero() for _, element in self.components for entry in element)

    def _check_compatible(self, other: "FormalInvariant"):
        if other.variables != self.variables or other.ring is not self.ring:
            raise RingMismatchError(
                f"不变量不在同一个系数环中: {self.variables}/{self.ring.value} 与 {other.variables}/{other.ring.value}"
            )
        if other.rank != self.rank:
            raise DomainError(f"秩不一致: {self.rank} 与 {other.rank}")

    def _replace(self, components: Dict[str, Element]) -> "FormalInvariant":
        return FormalInvariant(
            self.variables, self.ring, self.rank,
            tuple(sorted(components.items())), self.degrees,
            self.sign_ambiguous, self.unit_translation
        )

    def map_entries(self, fn) -> "FormalInvariant":
        return self._replace({label: tuple(fn(e) for e in element) for label, element in self.components})

    def scale(self, factor: LaurentPolynomial) -> "FormalInvariant":
        return self.map_entries(lambda e: e * factor)

    def __add__(self, other: "FormalInvariant") -> "FormalInvariant":
        self._check_compatible(other)
        zero = (LaurentPolynomial.zero(self.variables, self.ring),) * self.rank
        acc = dict(self.components)
        for label, element in other.components:
            base = acc.get(label, zero)
            acc[label] = tuple(a + b for a, b in zip(base, element))
        result = self._replace(acc)
        return FormalInvariant(
            result.variables, result.ring, result.rank, result.components,
            tuple(sorted(dict(self.degrees + other.degrees).items())),
            self.sign_ambiguous or other.sign_ambiguous,
            self.unit_translation or other.unit_translation
        )

    def mod2(self) -> "FormalInvariant":
        """模2约化，同时清除符号歧义"""
        return FormalInvariant(
            self.variables, CoefficientRing.MOD2, self.rank,
            tuple((label, tuple(e.reduce_mod2() for e in element)) for label, element in self.components),
            self.degrees, False, self.unit_translation
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            'variables': list(self.variables),
            'ring': self.ring.value,
            'rank': self.rank,
            'components': {label: [str(e) for e in element] for label, element in self.components},
            'degrees': {label: format_fraction(d) for label, d in self.degrees},
            'ambiguity': {'sign': self.sign_ambiguous, 'unit_translation': self.unit_translation},
        }


def _candidate_unit(a: LaurentPolynomial, b: LaurentPolynomial) -> Optional[LaurentPolynomial]:
    """若 a = ±t^m·b，返回该单位元"""
    if a.normalize_up_to_unit() != b.normalize_up_to_unit():
        return None
    shift = tuple(x - y for x, y in zip(a.min_exponents(), b.min_exponents()))
    unit = LaurentPolynomial.monomial(shift, 1, a.variables, a.ring)
    if a == unit * b:
        return unit
    return -unit


def unit_equivalent(a: FormalInvariant, b: FormalInvariant) -> bool:
    """是否存在单位元 u（按歧义标记允许的范围）使 a = u·b 逐分量成立"""
    a._check_compatible(b)
    if a.labels() != b.labels():
        return False
    pairs = [
        (x, y)
        for label in a.labels()
        for x, y in zip(a.component(label), b.component(label))
    ]
    anchor = next(((x, y) for x, y in pairs if not x.is_zero() or not y.is_zero()), None)
    if anchor is None:
        return True
    x, y = anchor
    if x.is_zero() or y.is_zero():
        return False
    unit = _candidate_unit(x, y)
    if unit is None:
        return False

    exponent, coeff = unit.terms[0]
    if coeff != 1 and not (a.sign_ambiguous or b.sign_ambiguous):
        return False
    if any(exponent) and not (a.unit_translation or b.unit_translation):
        return False
    return all(p == unit * q for p, q in pairs)


def knot_surgery_multiply(inv: FormalInvariant, delta: LaurentPolynomial, t_class: str) -> FormalInvariant:
    """
    纽结手术：每个分量乘以 Δ_K(t_class)

    只在 𝔽₂ 上进行，整系数不变量需先 mod2()。
    """
    if t_class not in inv.variables:
        raise DomainError(f"未知的生成元 {t_class}，可用: {', '.join(inv.variables)}")
    if inv.ring is not CoefficientRing.MOD2:
        raise UnsupportedRingError("纽结手术公式只在 𝔽₂ 上成立，请先对不变量做模2约化")
    factor = delta.rename((t_class,)).reduce_mod2().embed(inv.variables)
    logger.debug(f"纽结手术: 乘以 {factor}")
    return inv.scale(factor)


def log_transform_combination(p: int, q: int, r: int, basis: Sequence[FormalInvariant]) -> FormalInvariant:
    """p·Ψ(1,0,0) + q·Ψ(0,1,0) + r·Ψ(0,0,1)"""
    if len(basis) != 3:
        raise ValidationError(f"需要三个基不变量，实际 {len(basis)} 个")
    first = basis[0]
    for other in basis[1:]:
        first._check_compatible(other)
    result = None
    for coeff, inv in zip((p, q, r), basis):
        term = inv.scale(LaurentPolynomial.constant(coeff, inv.variables, inv.ring))
        result = term if result is None else result + term
    return result


@dataclass(frozen=True)
class GroupQuotient:
    """
    系数群的商映射 p_*

    matrix 的第 j 列是源变量 j 在目标变量上的指数向量。
    """
    source: Tuple[str, ...]
    target: Tuple[str, ...]
    matrix: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        array = np.array(self.matrix, dtype=np.int64).reshape(len(self.target), len(self.source))
        if len(self.target) and int(sympy.Matrix(array.tolist()).rank()) != len(self.target):
            raise DomainError(f"映射 {self.source} → {self.target} 不是满射，不是群的商")

    @classmethod
    def from_array(cls, source: Sequence[str], target: Sequence[str], matrix) -> "GroupQuotient":
        array = np.array(matrix, dtype=np.int64)
        if array.shape != (len(target), len(source)):
            raise ValidationError(f"商映射矩阵形状 {array.shape} 与 ({len(target)}, {len(source)}) 不符")
        return cls(tuple(source), tuple(target), tuple(tuple(int(x) for x in row) for row in array.tolist()))

    @classmethod
    def forget(cls, source: Sequence[str], kept: Sequence[str]) -> "GroupQuotient":
        """只保留 kept 中的变量，其余变量映为 1"""
        source, kept = tuple(source), tuple(kept)
        matrix = [[1 if s == k else 0 for s in source] for k in kept]
        return cls.from_array(source, kept, matrix)

    def apply(self, poly: LaurentPolynomial) -> LaurentPolynomial:
        if poly.variables != self.source:
            raise RingMismatchError(f"多项式变量 {poly.variables} 与商映射源 {self.source} 不符")
        array = np.array(self.matrix, dtype=np.int64).reshape(len(self.target), len(self.source))
        items = [
            (tuple(int(x) for x in array @ np.array(exp, dtype=np.int64)), c)
            for exp, c in poly.terms
        ]
        return LaurentPolynomial.from_dict(items, self.target, poly.ring)

    def apply_invariant(self, inv: FormalInvariant) -> FormalInvariant:
        return FormalInvariant(
            self.target, inv.ring, inv.rank,
            tuple((label, tuple(self.apply(e) for e in element)) for label, element in inv.components),
            inv.degrees, inv.sign_ambiguous, inv.unit_translation
        )


def t_average(
    family: FormalInvariant,
    projection: GroupQuotient,
    orbit: Optional[Iterable[str]] = None,
    label: Optional[str] = None
) -> FormalInvariant:
    """按 spin^c 轨道求和，再沿 p_* 推到更粗的系数"""
    orbit = list(orbit) if orbit is not None else family.labels()
    if not orbit:
        raise DomainError("T-平均的 spin^c 轨道为空")
    total = None
    for name in orbit:
        element = family.component(name)
        total = element if total is None else tuple(a + b for a, b in zip(total, element))
    pushed = tuple(projection.apply(e) for e in total)
    label = label or orbit[0]
    return FormalInvariant(
        projection.target, family.ring, family.rank, ((label, pushed),),
        (), family.sign_ambiguous, family.unit_translation
    )


def pair_invariants(x: FormalInvariant, y: FormalInvariant) -> LaurentPolynomial:
    """⟨x, y⟩ = Σ x_i·ȳ_i，第二个变量反线性"""
    x._check_compatible(y)
    if x.labels() != y.labels():
        raise DomainError(f"spin^c 分量不一致: {x.labels()} 与 {y.labels()}")
    total = LaurentPolynomial.zero(x.variables, x.ring)
    for label in x.labels():
        for a, b in zip(x.component(label), y.component(label)):
            total = total + a * b.involution()
    return total
