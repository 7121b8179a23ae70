"""
#ᵍB(0,0) 的扭曲双分级模型

每一列是一份Koszul复形；截断区域后按列取同调得到 E₁ 页。
水平微分 δ 作为外部输入数据，由 validate_zseq 检查。
"""

import json
from dataclasses import dataclass, field
from math import comb
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union
import logging

from src.algebra.laurent_ring import LaurentPolynomial, default_variables
from src.config.constants import CoefficientRing, HomologyKind, RegionKind
from src.homology.chain_complex import (
    PresentedModule,
    Region,
    koszul_complex,
    syzygy_embedding,
    syzygy_presentation,
)
from src.homology.matrices import PolyMatrix, RankEvaluator
from src.homology.smith import smith_normal_form
from src.utils.errors import DomainError, ParseError, ValidationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HomologyLabel:
    """E₁ 页上一个位置的符号化同调"""
    kind: HomologyKind
    index: Optional[int] = None

    def fraction_rank(self, g: int) -> int:
        """分式域上的秩：ℤ ↦ 0，自由 ↦ 1，Z_ℓ ↦ C(2g−1, ℓ−1)"""
        if self.kind is HomologyKind.FREE:
            return 1
        if self.kind is HomologyKind.SYZYGY:
            return comb(2 * g - 1, self.index - 1)
        return 0

    def __str__(self) -> str:
        if self.kind is HomologyKind.SYZYGY:
            return f"Z_{self.index}"
        if self.kind is HomologyKind.FREE:
            return "R_Y"
        if self.kind is HomologyKind.INTEGERS:
            return "Z"
        return "0"


INTEGERS_LABEL = HomologyLabel(HomologyKind.INTEGERS)
FREE_LABEL = HomologyLabel(HomologyKind.FREE)
ZERO_LABEL = HomologyLabel(HomologyKind.ZERO)


def _syzygy_label(ell: int, g: int) -> HomologyLabel:
    """Z_0 = ℤ，Z_{2g} 记为自由模"""
    if ell == 0:
        return INTEGERS_LABEL
    if ell == 2 * g:
        return FREE_LABEL
    return HomologyLabel(HomologyKind.SYZYGY, ell)


@dataclass
class E1Page:
    """(列 i, 分次) → 同调标签"""
    genus: int
    region: Region
    window: Tuple[int, int]
    entries: Dict[Tuple[int, int], HomologyLabel] = field(default_factory=dict)

    def label_at(self, i: int, degree: int) -> HomologyLabel:
        return self.entries.get((i, degree), ZERO_LABEL)

    def column(self, i: int) -> Dict[int, HomologyLabel]:
        return {deg: label for (col, deg), label in self.entries.items() if col == i}

    def degree_ranks(self) -> Dict[int, int]:
        """各分次上所有列的分式域秩之和"""
        totals: Dict[int, int] = {}
        for (_, degree), label in self.entries.items():
            totals[degree] = totals.get(degree, 0) + label.fraction_rank(self.genus)
        return totals

    def column_euler(self, i: int) -> int:
        return sum((-1) ** (deg % 2) * label.fraction_rank(self.genus)
                   for deg, label in self.column(i).items())

    def to_dict(self) -> Dict[str, Any]:
        return {
            'genus': self.genus,
            'region': self.region.describe(),
            'window': list(self.window),
            'entries': [
                {'i': i, 'degree': deg, 'label': str(label)}
                for (i, deg), label in sorted(self.entries.items())
            ],
        }


def _full_column(i: int, g: int) -> Dict[int, HomologyLabel]:
    return {2 * i - g: INTEGERS_LABEL}


def _upper_column(i: int, m: int, g: int) -> Dict[int, HomologyLabel]:
    """保留 ℓ ≥ m 的Koszul截断"""
    if m <= 0:
        return _full_column(i, g)
    if m > 2 * g:
        return {}
    return {m - g + 2 * i: _syzygy_label(m, g)}


def _lower_column(i: int, m: int, g: int) -> Dict[int, HomologyLabel]:
    """保留 ℓ ≤ m 的Koszul截断"""
    if m < 0:
        return {}
    if m == 0:
        return {2 * i - g: FREE_LABEL}
    if m >= 2 * g:
        return _full_column(i, g)
    return {2 * i - g: INTEGERS_LABEL, m - g + 2 * i: _syzygy_label(m + 1, g)}


def e1_page(g: int, region: Region, window: Optional[Tuple[int, int]] = None) -> E1Page:
    """
    区域截断后按列取同调

    在列 i 中生成元 ℓ 位于 j = i + ℓ − g，所以 j ≥ k 等价于 ℓ ≥ g + k − i，
    j < k 等价于 ℓ ≤ g + k − i − 1。
    """
    if g < 1:
        raise DomainError(f"亏格必须为正整数: g={g}")
    window = window or (-g - 2, g + 2)
    k = region.k
    page = E1Page(g, region, window)
    for i in range(window[0], window[1] + 1):
        upper = _upper_column(i, g + k - i, g)
        lower = _lower_column(i, g + k - i - 1, g)
        if region.kind is RegionKind.FULL:
            column = _full_column(i, g)
        elif region.kind is RegionKind.UPPER_AND:
            column = upper if i >= 0 else {}
        elif region.kind is RegionKind.LOWER_AND:
            column = lower if i < 0 else {}
        elif region.kind is RegionKind.LOWER_OR:
            column = _full_column(i, g) if i < 0 else lower
        elif region.kind is RegionKind.UPPER_OR:
            column = _full_column(i, g) if i >= 0 else upper
        else:
            column = {}
        for degree, label in column.items():
            page.entries[(i, degree)] = label
    logger.debug(f"E1页 g={g} 区域 {region.describe()}：{len(page.entries)} 个非零位置")
    return page


def hf_infinity_degrees(g: int, window: Optional[Tuple[int, int]] = None) -> E1Page:
    """全区域：每列 ℤ 位于 2i − g，即 ℤ[U, U⁻¹]"""
    return e1_page(g, Region(RegionKind.FULL), window)


def knot_floer_ranks(g: int) -> Dict[int, int]:
    """ĤFK(j) ≅ Λ^{g+j}M 的秩"""
    if g < 1:
        raise DomainError(f"亏格必须为正整数: g={g}")
    return {j: comb(2 * g, g + j) for j in range(-g, g + 1)}


@dataclass(frozen=True)
class DeltaData:
    """δ_ℓ: Z_ℓ → Z_{ℓ+1}，ℓ ∈ [0, 2g−1]，矩阵形状 C(2g, ℓ+1) × C(2g, ℓ)"""
    genus: int
    matrices: Tuple[PolyMatrix, ...]

    def __post_init__(self):
        g = self.genus
        if g < 1:
            raise ValidationError(f"δ数据的亏格必须为正整数: g={g}")
        if len(self.matrices) != 2 * g:
            raise ValidationError(f"需要 {2 * g} 个δ矩阵，实际 {len(self.matrices)} 个")
        variables = default_variables(2 * g)
        for ell, m in enumerate(self.matrices):
            expected = (comb(2 * g, ell + 1), comb(2 * g, ell))
            if (m.rows, m.cols) != expected:
                raise ValidationError(
                    f"δ_{ell} 形状应为 {expected[0]}×{expected[1]}，实际 {m.rows}×{m.cols}"
                )
            if m.variables != variables:
                raise ValidationError(f"δ_{ell} 的变量应为 {variables}")

    def delta(self, ell: int) -> PolyMatrix:
        return self.matrices[ell]

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "DeltaData":
        try:
            g = int(data['genus'])
            raw = data['matrices']
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(f"δ数据缺少字段: {e}")
        if g < 1:
            raise ValidationError(f"δ数据的亏格必须为正整数: g={g}")
        variables = default_variables(2 * g)
        matrices = []
        for ell, rows in enumerate(raw):
            matrices.append(PolyMatrix.from_text(rows, variables, cols=comb(2 * g, ell)))
        return cls(g, tuple(matrices))

    @classmethod
    def load(cls, path: Union[str, Path]) -> "DeltaData":
        try:
            with open(path, 'r', encoding='utf-8') as f:
                data = json.load(f)
        except json.JSONDecodeError as e:
            raise ParseError(f"δ文件不是合法JSON: {e}")
        except OSError as e:
            raise ParseError(f"无法读取δ文件 {path}: {e}")
        return cls.from_dict(data)

    def to_dict(self) -> Dict[str, Any]:
        return {'genus': self.genus, 'matrices': [m.to_text() for m in self.matrices]}

    def dump(self, path: Union[str, Path]):
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(self.to_dict(), f, ensure_ascii=False, indent=2)


def delta_for_genus_one() -> DeltaData:
    """g=1 时唯一可行的 δ：δ₀ = 0，δ₁ 为增广理想到 R_Y 的包含"""
    variables = default_variables(2)
    zero = PolyMatrix.zero(2, 1, variables)
    t1 = LaurentPolynomial.variable("t1", variables)
    t2 = LaurentPolynomial.variable("t2", variables)
    inclusion = PolyMatrix.from_rows([[t1 - 1, t2 - 1]])
    return DeltaData(1, (zero, inclusion))


@dataclass(frozen=True)
class ZSeqCheck:
    position: int
    check: str
    passed: bool
    detail: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {'position': self.position, 'check': self.check, 'passed': self.passed, 'detail': self.detail}


@dataclass
class ZSeqReport:
    genus: int
    checks: List[ZSeqCheck] = field(default_factory=list)
    undecided: List[int] = field(default_factory=list)  # 只检查了分式域秩的偶数位置

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed_positions(self) -> List[int]:
        return sorted({c.position for c in self.checks if not c.passed})

    def position_status(self) -> Dict[int, bool]:
        status = {ell: True for ell in range(2 * self.genus + 1)}
        for c in self.checks:
            status[c.position] = status.get(c.position, True) and c.passed
        return status

    def to_dict(self) -> Dict[str, Any]:
        return {
            'genus': self.genus,
            'passed': self.passed,
            'failed_positions': self.failed_positions(),
            'checks': [c.to_dict() for c in self.checks],
            'undecided_positions': list(self.undecided),
        }


def _linear_parts(row: Tuple[LaurentPolynomial, ...], count: int) -> List[List[int]]:
    """各元素在 I/I² ≅ ℤ^{count} 中的像：第 i 行是对 t_i 的偏导在 t=1 处的值"""
    return [[int(sum(c * exp[i] for exp, c in entry.terms)) for entry in row] for i in range(count)]


def _restrict_to_variable(entry: LaurentPolynomial, index: int) -> LaurentPolynomial:
    """t_index ↦ t，其余变量 ↦ 1，系数取 ℚ"""
    return LaurentPolynomial.from_dict(
        [((exp[index],), c) for exp, c in entry.terms], ("t",), CoefficientRing.RATIONALS
    )


def _top_position_checks(g: int, row: Tuple[LaurentPolynomial, ...]) -> List[ZSeqCheck]:
    """
    R_Y / im(δ_{2g-1}) ≅ ℤ 当且仅当 δ_{2g-1} 的各分量生成增广理想 I

    可判定的必要条件：分量落在 I 中；线性部分张成 I/I² ≅ ℤ^{2g}（ℤ 上的Smith标准形全为1）；
    限制到每个变量后在 ℚ[t^±] 中生成 (t − 1)。
    """
    top = 2 * g
    checks = []
    augmented = all(e.augmentation() == 0 for e in row)
    checks.append(ZSeqCheck(
        top, "augmentation", augmented,
        "" if augmented else f"δ_{top - 1} 的像不在增广理想中"
    ))

    factors = smith_normal_form(_linear_parts(row, top)).invariant_factors()
    spans = len(factors) == top and all(f == 1 for f in factors)
    checks.append(ZSeqCheck(
        top, "augmentation_ideal_span", spans,
        "" if spans else f"线性部分在 I/I² 中的不变因子为 {factors}（应为 {top} 个 1）"
    ))

    expected = LaurentPolynomial.parse("t - 1", ("t",), CoefficientRing.RATIONALS).normalize_up_to_unit()
    for index in range(top):
        restricted = PolyMatrix.from_rows([[_restrict_to_variable(e, index) for e in row]])
        generator = smith_normal_form(restricted).diagonal[0]
        ok = not generator.is_zero() and generator.normalize_up_to_unit() == expected
        checks.append(ZSeqCheck(
            top, "pid_restriction", ok,
            "" if ok else f"限制到 t{index + 1} 后生成 ({generator})，应为 (t − 1)"
        ))
    return checks


def validate_zseq(
    g: int,
    delta: DeltaData,
    evaluator: Optional[RankEvaluator] = None
) -> ZSeqReport:
    """
    检查 0 → Z_0 → Z_1 → ⋯ → Z_{2g} → 0 的约束

    偶数位置同调为 ℤ，奇数位置为 0。Z_ℓ 通过 d_ℓ 嵌入 Λ^{ℓ-1}，
    因此良定义性与 δ∘δ = 0 都可以在自由模中精确验证；
    同调的分式域秩由随机求值计算，两端另做主理想整环上的精确计算。
    0 < ℓ < 2g 的偶数位置只检查分式域秩，记入 undecided。
    """
    if delta.genus != g:
        raise ValidationError(f"δ数据亏格 {delta.genus} 与 g={g} 不符")
    evaluator = evaluator or RankEvaluator()
    top = 2 * g
    embeddings = {ell: syzygy_embedding(ell, g) for ell in range(1, top + 1)}
    report = ZSeqReport(g)

    # 良定义：Z_ℓ 的关系（d_{ℓ+1} 的列）被送进 Z_{ℓ+1} 的关系
    for ell in range(top):
        image = embeddings[ell + 1] @ delta.delta(ell) @ embeddings[ell + 1]
        report.checks.append(ZSeqCheck(
            ell, "well_defined", image.is_zero(),
            "" if image.is_zero() else f"δ_{ell} 不把 Z_{ell} 的关系送进 Z_{ell + 1} 的关系"
        ))

    # δ∘δ = 0
    for ell in range(top - 1):
        composite = embeddings[ell + 2] @ delta.delta(ell + 1) @ delta.delta(ell)
        report.checks.append(ZSeqCheck(
            ell + 1, "composite", composite.is_zero(),
            "" if composite.is_zero() else f"δ_{ell + 1}∘δ_{ell} ≠ 0"
        ))

    # Z_0 = ℤ 上的同调必须是整个 ℤ
    vanishing = (embeddings[1] @ delta.delta(0)).is_zero()
    report.checks.append(ZSeqCheck(
        0, "vanishing_on_Z0", vanishing, "" if vanishing else "δ_0 ≠ 0，位置0的同调不是 ℤ"
    ))

    def module_rank(ell: int) -> int:
        return 0 if ell == 0 else evaluator.rank(embeddings[ell])

    def map_rank(ell: int) -> int:
        if ell < 0 or ell >= top or ell == 0:
            return 0  # Z_0 的分式域秩为0
        return evaluator.rank(embeddings[ell + 1], delta.delta(ell))

    for ell in range(top + 1):
        rank = module_rank(ell) - map_rank(ell) - map_rank(ell - 1)
        report.checks.append(ZSeqCheck(
            ell, "homology_rank", rank == 0,
            f"分式域秩 {rank}" + ("" if rank == 0 else "（应为 0）")
        ))

    report.checks.extend(_top_position_checks(g, delta.delta(top - 1).row(0)))
    report.undecided = list(range(2, top, 2))

    logger.info(f"Z序列验证 g={g}：失败位置 {report.failed_positions() or '无'}")
    return report


@dataclass
class ZSeqPresentations:
    """由 δ 得到的商模 Q_ℓ 与（可判定时的）核 K_ℓ"""
    genus: int
    quotients: Dict[int, PresentedModule]
    kernels: Dict[int, Optional[PresentedModule]]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'genus': self.genus,
            'quotients': {str(ell): q.to_dict() for ell, q in self.quotients.items()},
            'kernels': {str(ell): (k.to_dict() if k else None) for ell, k in self.kernels.items()},
        }


def zseq_presentations(g: int, delta: DeltaData) -> ZSeqPresentations:
    """
    Q_ℓ = Z_ℓ / δ(Z_{ℓ-1})，ℓ ∈ [1, 2g]；
    K_ℓ = ker(δ_ℓ) 只在 ℓ = 2g 或 δ_ℓ = 0 时给出，否则为 None
    """
    if delta.genus != g:
        raise ValidationError(f"δ数据亏格 {delta.genus} 与 g={g} 不符")
    koszul = koszul_complex(g)
    quotients = {}
    kernels: Dict[int, Optional[PresentedModule]] = {}
    for ell in range(1, 2 * g + 1):
        z = syzygy_presentation(ell, g)
        quotients[ell] = z.with_relations(delta.delta(ell - 1).transpose(), f"Q_{ell}")
        if ell == 2 * g:
            kernels[ell] = PresentedModule(z.generator_count, z.relations, z.generator_degrees, f"K_{ell}")
        elif (koszul.differential_at(ell + 1) @ delta.delta(ell)).is_zero():
            kernels[ell] = PresentedModule(z.generator_count, z.relations, z.generator_degrees, f"K_{ell}")
        else:
            kernels[ell] = None
    return ZSeqPresentations(g, quotients, kernels)
