"""
Laurent环上的自由链复形

Koszul复形、合冲模表示、分式域同调秩，以及双分级截断区域。
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Any, Dict, List, Optional, Sequence, Tuple
import logging

from src.algebra.laurent_ring import LaurentPolynomial, default_variables
from src.config.constants import CoefficientRing, RegionKind
from src.homology.matrices import PolyMatrix, RankEvaluator
from src.utils.errors import DomainError, ParseError, RegionValidityError, ValidationError
from src.utils.formatting import format_fraction

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FreeComplex:
    """
    自由链复形，微分降低位置1

    differentials[p] 是 d_p: C_p → C_{p-1}，形状为 rank(p-1) × rank(p)。
    bigradings 可选，给出每个生成元的 (i, j)。
    """
    variables: Tuple[str, ...]
    ring: CoefficientRing
    low: int
    high: int
    ranks: Dict[int, int]
    differentials: Dict[int, PolyMatrix]
    gradings: Dict[int, Tuple[Fraction, ...]]
    bigradings: Optional[Dict[int, Tuple[Tuple[int, int], ...]]] = None
    labels: Optional[Dict[int, Tuple[str, ...]]] = None

    def __post_init__(self):
        for p, d in self.differentials.items():
            if (d.rows, d.cols) != (self.rank_at(p - 1), self.rank_at(p)):
                raise ValidationError(
                    f"位置 {p} 的微分形状 {d.rows}×{d.cols} 与秩 "
                    f"{self.rank_at(p - 1)}×{self.rank_at(p)} 不符"
                )
        for p, degrees in self.gradings.items():
            if len(degrees) != self.rank_at(p):
                raise ValidationError(f"位置 {p} 的分次个数与秩不符")
        for p in self.positions():
            composite = self.differential_at(p - 1) @ self.differential_at(p)
            if not composite.is_zero():
                raise ValidationError(f"d∘d 在位置 {p} 处不为零")

    def positions(self) -> range:
        return range(self.low, self.high + 1)

    def rank_at(self, p: int) -> int:
        return self.ranks.get(p, 0)

    def differential_at(self, p: int) -> PolyMatrix:
        if p in self.differentials:
            return self.differentials[p]
        return PolyMatrix.zero(self.rank_at(p - 1), self.rank_at(p), self.variables, self.ring)

    def grading_of_generator(self, p: int, index: int) -> Fraction:
        return self.gradings[p][index]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'variables': list(self.variables),
            'ring': self.ring.value,
            'positions': [self.low, self.high],
            'ranks': {str(p): self.rank_at(p) for p in self.positions()},
            'differentials': {
                str(p): self.differential_at(p).to_text()
                for p in self.positions() if self.rank_at(p) and self.rank_at(p - 1)
            },
        }


def _koszul_differential(g: int, ell: int, variables, ring) -> PolyMatrix:
    """Λ^ℓ → Λ^{ℓ-1}：e_S ↦ Σ (−1)^pos (t_s − 1) e_{S∖s}"""
    sources = list(combinations(range(2 * g), ell))
    targets = list(combinations(range(2 * g), ell - 1))
    index = {s: i for i, s in enumerate(targets)}
    zero = LaurentPolynomial.zero(variables, ring)
    one = LaurentPolynomial.one(variables, ring)
    entries = [[zero] * len(sources) for _ in targets]
    for col, subset in enumerate(sources):
        for pos, s in enumerate(subset):
            rest = subset[:pos] + subset[pos + 1:]
            term = LaurentPolynomial.variable(variables[s], variables, ring) - one
            entries[index[rest]][col] = term if pos % 2 == 0 else -term
    return PolyMatrix(len(targets), len(sources), tuple(tuple(r) for r in entries), tuple(variables), ring)


def _wedge_label(subset: Sequence[int]) -> str:
    if not subset:
        return "1"
    return "^".join(f"e{s + 1}" for s in subset)


def koszul_complex(g: int, ring: CoefficientRing = CoefficientRing.INTEGERS) -> FreeComplex:
    """(t₁−1, …, t_{2g}−1) 的Koszul复形，位置 ℓ 的生成元分次为 ℓ − g"""
    if g < 1:
        raise DomainError(f"亏格必须为正整数: g={g}")
    variables = default_variables(2 * g)
    ranks = {ell: comb(2 * g, ell) for ell in range(2 * g + 1)}
    differentials = {ell: _koszul_differential(g, ell, variables, ring) for ell in range(1, 2 * g + 1)}
    gradings = {ell: (Fraction(ell - g),) * ranks[ell] for ell in ranks}
    labels = {ell: tuple(_wedge_label(s) for s in combinations(range(2 * g), ell)) for ell in ranks}
    logger.debug(f"构造Koszul复形 g={g}，秩 {list(ranks.values())}")
    return FreeComplex(tuple(variables), ring, 0, 2 * g, ranks, differentials, gradings, labels=labels)


def fraction_field_homology_ranks(
    complex_: FreeComplex,
    evaluator: Optional[RankEvaluator] = None
) -> Dict[int, int]:
    """各位置同调在分式域上的秩"""
    evaluator = evaluator or RankEvaluator()
    ranks = {}
    for p in complex_.positions():
        outgoing = evaluator.rank(complex_.differential_at(p)) if complex_.rank_at(p - 1) else 0
        incoming = evaluator.rank(complex_.differential_at(p + 1)) if complex_.rank_at(p + 1) else 0
        ranks[p] = complex_.rank_at(p) - outgoing - incoming
    return ranks


@dataclass(frozen=True)
class PresentedModule:
    """有限表示模：generator_count 个生成元，relations 的每一行是一个关系"""
    generator_count: int
    relations: PolyMatrix
    generator_degrees: Tuple[Fraction, ...]
    name: str = ""

    def __post_init__(self):
        if self.relations.cols != self.generator_count:
            raise ValidationError(
                f"关系矩阵列数 {self.relations.cols} 与生成元个数 {self.generator_count} 不符"
            )
        if len(self.generator_degrees) != self.generator_count:
            raise ValidationError("生成元分次个数与生成元个数不符")

    @property
    def relation_count(self) -> int:
        return self.relations.rows

    def is_free(self) -> bool:
        return self.relations.is_zero()

    def with_relations(self, extra: PolyMatrix, name: Optional[str] = None) -> "PresentedModule":
        """追加关系后的商模（去掉零行）"""
        merged = self.relations.stack(extra).without_zero_rows()
        return PresentedModule(self.generator_count, merged, self.generator_degrees, name or self.name)

    def pruned(self) -> "PresentedModule":
        return PresentedModule(self.generator_count, self.relations.without_zero_rows(),
                               self.generator_degrees, self.name)

    def fraction_field_rank(self, evaluator: Optional[RankEvaluator] = None) -> int:
        if self.relations.rows == 0:
            return self.generator_count
        evaluator = evaluator or RankEvaluator()
        return self.generator_count - evaluator.rank(self.relations)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'name': self.name,
            'generator_count': self.generator_count,
            'generator_degrees': [format_fraction(d) for d in self.generator_degrees],
            'relations': self.relations.to_text(),
        }


def syzygy_presentation(
    ell: int,
    g: int,
    ring: CoefficientRing = CoefficientRing.INTEGERS
) -> PresentedModule:
    """
    合冲模 Z_ℓ = im(Λ^ℓ → Λ^{ℓ-1}) 的表示

    生成元为 Λ^ℓ 的Koszul基，关系为下一个Koszul微分的列。
    Z_0 = ℤ，关系为 (t_i − 1)；Z_{2g} 是秩1自由模。
    """
    if g < 1:
        raise DomainError(f"亏格必须为正整数: g={g}")
    if not 0 <= ell <= 2 * g:
        raise DomainError(f"合冲模下标 {ell} 超出范围 [0, {2 * g}]")
    complex_ = koszul_complex(g, ring)
    count = complex_.rank_at(ell)
    if ell < 2 * g:
        relations = complex_.differential_at(ell + 1).transpose()
    else:
        relations = PolyMatrix.zero(0, count, complex_.variables, ring)
    return PresentedModule(count, relations, (Fraction(ell - g),) * count, f"Z_{ell}")


def syzygy_embedding(ell: int, g: int, ring: CoefficientRing = CoefficientRing.INTEGERS) -> Optional[PolyMatrix]:
    """Z_ℓ 在 Λ^{ℓ-1} 中的像矩阵（即 d_ℓ）；Z_0 返回 None"""
    if ell == 0:
        return None
    return koszul_complex(g, ring).differential_at(ell)


_REGION_ALIASES = {
    'lower-and': RegionKind.LOWER_AND,
    'upper-or': RegionKind.UPPER_OR,
    'lower-or': RegionKind.LOWER_OR,
    'upper-and': RegionKind.UPPER_AND,
    'full': RegionKind.FULL,
    'empty': RegionKind.EMPTY,
}

_COMPLEMENTS = {
    RegionKind.LOWER_AND: RegionKind.UPPER_OR,
    RegionKind.UPPER_OR: RegionKind.LOWER_AND,
    RegionKind.LOWER_OR: RegionKind.UPPER_AND,
    RegionKind.UPPER_AND: RegionKind.LOWER_OR,
    RegionKind.FULL: RegionKind.EMPTY,
    RegionKind.EMPTY: RegionKind.FULL,
}


@dataclass(frozen=True)
class Region:
    """(i, j) 平面上的截断区域"""
    kind: RegionKind
    k: int = 0

    @classmethod
    def parse(cls, text: str, k: int = 0) -> "Region":
        key = (text or '').strip().lower().replace('_', '-')
        if key in _REGION_ALIASES:
            return cls(_REGION_ALIASES[key], k)
        for kind in RegionKind:
            if kind.value == text.strip():
                return cls(kind, k)
        raise ParseError(f"未知的区域类型: {text!r}，可选 {', '.join(_REGION_ALIASES)}")

    def contains(self, i: int, j: int) -> bool:
        if self.kind is RegionKind.LOWER_AND:
            return i < 0 and j < self.k
        if self.kind is RegionKind.UPPER_OR:
            return i >= 0 or j >= self.k
        if self.kind is RegionKind.LOWER_OR:
            return i < 0 or j < self.k
        if self.kind is RegionKind.UPPER_AND:
            return i >= 0 and j >= self.k
        return self.kind is RegionKind.FULL

    @property
    def is_subcomplex(self) -> bool:
        return self.kind in (RegionKind.LOWER_AND, RegionKind.LOWER_OR, RegionKind.FULL, RegionKind.EMPTY)

    def complement(self) -> "Region":
        return Region(_COMPLEMENTS[self.kind], self.k)

    def describe(self) -> str:
        if self.kind in (RegionKind.FULL, RegionKind.EMPTY):
            return self.kind.value
        return "{" + self.kind.value.replace("k", str(self.k)) + "}"


def complement(region: Region) -> Region:
    return region.complement()


def bigraded_knot_complex(
    g: int,
    window: Tuple[int, int],
    ring: CoefficientRing = CoefficientRing.INTEGERS
) -> FreeComplex:
    """
    #ᵍB(0,0) 的双分级模型在列 i ∈ window 上的部分

    生成元 (i, ℓ) 位于 j = i + ℓ − g，同调分次 ℓ − g + 2i；
    微分为每一列内部的Koszul微分。
    """
    if g < 1:
        raise DomainError(f"亏格必须为正整数: g={g}")
    lo, hi = window
    if lo > hi:
        raise DomainError(f"列窗口为空: {window}")
    koszul = koszul_complex(g, ring)
    subsets = {ell: list(combinations(range(2 * g), ell)) for ell in range(2 * g + 1)}

    # 按分次收集生成元 (i, ℓ, 子集下标)
    generators: Dict[int, List[Tuple[int, int, int]]] = {}
    for i in range(lo, hi + 1):
        for ell in range(2 * g + 1):
            degree = ell - g + 2 * i
            for s in range(len(subsets[ell])):
                generators.setdefault(degree, []).append((i, ell, s))

    low, high = min(generators), max(generators)
    ranks = {p: len(generators.get(p, [])) for p in range(low, high + 1)}
    zero = LaurentPolynomial.zero(koszul.variables, ring)
    differentials = {}
    for p in range(low + 1, high + 1):
        sources, targets = generators.get(p, []), generators.get(p - 1, [])
        if not sources or not targets:
            continue
        index = {(i, ell, s): r for r, (i, ell, s) in enumerate(targets)}
        entries = [[zero] * len(sources) for _ in targets]
        for col, (i, ell, s) in enumerate(sources):
            if ell == 0:
                continue
            d = koszul.differential_at(ell)
            for t in range(d.rows):
                value = d.entry(t, s)
                if not value.is_zero():
                    entries[index[(i, ell - 1, t)]][col] = value
        differentials[p] = PolyMatrix(len(targets), len(sources), tuple(tuple(r) for r in entries),
                                      koszul.variables, ring)

    gradings = {p: (Fraction(p),) * ranks[p] for p in ranks}
    bigradings = {p: tuple((i, i + ell - g) for i, ell, _ in generators.get(p, [])) for p in ranks}
    labels = {
        p: tuple(f"U^{-i}·{_wedge_label(subsets[ell][s])}" for i, ell, s in generators.get(p, []))
        for p in ranks
    }
    logger.debug(f"构造双分级模型 g={g}，列窗口 {window}，分次 [{low}, {high}]")
    return FreeComplex(koszul.variables, ring, low, high, ranks, differentials, gradings, bigradings, labels)


def truncate_region(complex_: FreeComplex, region: Region) -> FreeComplex:
    """
    限制到区域内的生成元

    子复形区域要求微分不把区域内的生成元送出区域；
    商复形区域要求区域外的生成元不被送进区域。
    """
    if complex_.bigradings is None:
        raise ValidationError("截断需要带 (i, j) 双分级的复形")

    kept = {
        p: [idx for idx, (i, j) in enumerate(complex_.bigradings.get(p, ())) if region.contains(i, j)]
        for p in complex_.positions()
    }

    for p in complex_.positions():
        if not complex_.rank_at(p) or not complex_.rank_at(p - 1):
            continue
        d = complex_.differential_at(p)
        source_in = set(kept[p])
        target_in = set(kept.get(p - 1, []))
        for col in range(d.cols):
            for row in range(d.rows):
                if d.entry(row, col).is_zero():
                    continue
                if region.is_subcomplex and col in source_in and row not in target_in:
                    raise RegionValidityError(
                        f"区域 {region.describe()} 不是子复形：位置 {p} 的生成元 {col} 被送出区域"
                    )
                if not region.is_subcomplex and col not in source_in and row in target_in:
                    raise RegionValidityError(
                        f"区域 {region.describe()} 不是商复形：位置 {p} 的生成元 {col} 被送进区域"
                    )

    ranks = {p: len(kept[p]) for p in complex_.positions()}
    differentials = {}
    for p in complex_.positions():
        if ranks[p] and ranks.get(p - 1):
            differentials[p] = complex_.differential_at(p).submatrix(kept[p - 1], kept[p])
    gradings = {p: tuple(complex_.gradings[p][idx] for idx in kept[p]) for p in complex_.positions()}
    bigradings = {p: tuple(complex_.bigradings[p][idx] for idx in kept[p]) for p in complex_.positions()}
    labels = None
    if complex_.labels is not None:
        labels = {p: tuple(complex_.labels[p][idx] for idx in kept[p]) for p in complex_.positions()}
    logger.debug(f"截断到 {region.describe()}：保留 {sum(ranks.values())} 个生成元")
    return FreeComplex(complex_.variables, complex_.ring, complex_.low, complex_.high,
                       ranks, differentials, gradings, bigradings, labels)
