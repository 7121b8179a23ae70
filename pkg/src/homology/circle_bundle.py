"""
圆丛 Y_n 的扭曲Floer同调（|n| ≥ 2g−1）

结果是符号化的分次模描述：塔、秩1自由模、合冲商/核以及有限 U-塔。
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, ClassVar, Dict, List, Optional, Set, Tuple, Union
import logging

from src.config.constants import SummandKind
from src.homology.chain_complex import PresentedModule
from src.homology.knot_floer_model import DeltaData, zseq_presentations
from src.topology.grading import tau
from src.utils.errors import DomainError, ValidationError
from src.utils.formatting import format_fraction

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Tower:
    """
    ℤ[U]-塔

    orientation 为 "plus" 时 degree 是最低分次（向上无限）；
    为 "minus" 时 degree 是最高分次（向下无限）。
    base_degree 记录截断前塔的起点。
    """
    degree: Fraction
    base_degree: Optional[Fraction] = None
    orientation: str = "plus"
    kind: ClassVar[SummandKind] = SummandKind.TOWER

    def to_dict(self) -> Dict[str, Any]:
        result = {'kind': self.kind.value, 'degree': format_fraction(self.degree), 'orientation': self.orientation}
        if self.base_degree is not None:
            result['base_degree'] = format_fraction(self.base_degree)
        return result


@dataclass(frozen=True)
class FreeRankOne:
    degree: Fraction
    kind: ClassVar[SummandKind] = SummandKind.FREE_RANK_ONE

    def to_dict(self) -> Dict[str, Any]:
        return {'kind': self.kind.value, 'degree': format_fraction(self.degree)}


@dataclass(frozen=True)
class SyzygyQuotient:
    """Q_ℓ = Z_ℓ / δ(Z_{ℓ-1})"""
    index: int
    degree: Fraction
    presentation: Optional[PresentedModule] = field(default=None, compare=False)
    kind: ClassVar[SummandKind] = SummandKind.SYZYGY_QUOTIENT

    def to_dict(self) -> Dict[str, Any]:
        result = {'kind': self.kind.value, 'index': self.index, 'degree': format_fraction(self.degree)}
        if self.presentation is not None:
            result['presentation'] = self.presentation.to_dict()
        return result


@dataclass(frozen=True)
class SyzygyKernel:
    """K_ℓ = ker(δ: Z_ℓ → Z_{ℓ+1})"""
    index: int
    degree: Fraction
    u_action_known: bool = True
    presentation: Optional[PresentedModule] = field(default=None, compare=False)
    kind: ClassVar[SummandKind] = SummandKind.SYZYGY_KERNEL

    def to_dict(self) -> Dict[str, Any]:
        result = {
            'kind': self.kind.value,
            'index': self.index,
            'degree': format_fraction(self.degree),
            'u_action_known': self.u_action_known,
        }
        if self.presentation is not None:
            result['presentation'] = self.presentation.to_dict()
        return result


@dataclass(frozen=True)
class CyclicUTower:
    """ℤ[U]/U^length，最低分次 bottom_degree"""
    length: int
    bottom_degree: Fraction
    kind: ClassVar[SummandKind] = SummandKind.CYCLIC_U_TOWER

    def to_dict(self) -> Dict[str, Any]:
        return {'kind': self.kind.value, 'length': self.length, 'bottom_degree': format_fraction(self.bottom_degree)}


Summand = Union[Tower, FreeRankOne, SyzygyQuotient, SyzygyKernel, CyclicUTower]


@dataclass(frozen=True)
class SpinCLabel:
    """Y_n 上的 spin^c 结构 𝔰_k，k 取 (−|n|/2, |n|/2] 中的代表元"""
    k: int
    n: int
    characteristic_number: int

    @classmethod
    def of(cls, k: int, n: int) -> "SpinCLabel":
        if n == 0:
            raise DomainError("n = 0 时 spin^c 结构不是挠的")
        k = centered_representative(k, n)
        return cls(k, n, (2 * k - n) % (2 * abs(n)))

    def conjugate(self) -> "SpinCLabel":
        return SpinCLabel.of(-self.k, self.n)

    def is_self_conjugate(self) -> bool:
        return self.conjugate().k == self.k

    def to_dict(self) -> Dict[str, Any]:
        return {
            'k': self.k,
            'n': self.n,
            'characteristic_number': self.characteristic_number,
            'conjugate_k': self.conjugate().k,
        }


def centered_representative(k: int, n: int) -> int:
    """k mod n 在 (−|n|/2, |n|/2] 中的代表元"""
    if n == 0:
        raise DomainError("n = 0 时 spin^c 结构不是挠的")
    m = abs(n)
    r = k % m
    if 2 * r > m:
        r -= m
    return r


def spinc_enumerate(n: int, g: int = 1) -> List[SpinCLabel]:
    """Y_n 的全部 |n| 个挠 spin^c 结构"""
    if n == 0:
        raise DomainError("n = 0 时 spin^c 结构不是挠的")
    if g < 1:
        raise DomainError(f"亏格必须为正整数: g={g}")
    m = abs(n)
    low = -((m - 1) // 2)
    return [SpinCLabel.of(k, n) for k in range(low, low + m)]


@dataclass
class GradedModuleDescription:
    genus: int
    spinc: SpinCLabel
    theory: str
    summands: Tuple[Summand, ...]
    tau: Fraction
    notes: List[str] = field(default_factory=list)

    def __post_init__(self):
        towers = [s for s in self.summands if isinstance(s, Tower)]
        if len(towers) > 1:
            raise ValidationError("分次模描述中最多只能有一个塔")

    def tower(self) -> Optional[Tower]:
        return next((s for s in self.summands if isinstance(s, Tower)), None)

    def reduced_summands(self) -> List[Summand]:
        return [s for s in self.summands if not isinstance(s, Tower)]

    def top_summand(self) -> Summand:
        """最高分次处的直和项（负向塔按顶端计）"""
        def top(s):
            if isinstance(s, CyclicUTower):
                return s.bottom_degree + 2 * (s.length - 1)
            return s.degree
        candidates = [s for s in self.summands if not (isinstance(s, Tower) and s.orientation == "plus")]
        return max(candidates or list(self.summands), key=top)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'theory': self.theory,
            'genus': self.genus,
            'spinc': self.spinc.to_dict(),
            'tau': format_fraction(self.tau),
            'summands': [s.to_dict() for s in self.summands],
            'reduced_support': [format_fraction(d) for d in sorted(reduced_support(self))],
            'notes': list(self.notes),
        }


def reduced_support(description: GradedModuleDescription) -> Set[Fraction]:
    """约化部分所在的分次集合"""
    degrees: Set[Fraction] = set()
    for s in description.reduced_summands():
        if isinstance(s, CyclicUTower):
            degrees.update(s.bottom_degree + 2 * i for i in range(s.length))
        else:
            degrees.add(s.degree)
    return degrees


def _check_genus(g: int):
    if g < 1:
        raise DomainError(f"亏格必须为正整数: g={g}")


def hf_plus_large_negative(
    n: int,
    g: int,
    k: int,
    delta: Optional[DeltaData] = None
) -> GradedModuleDescription:
    """
    n ≤ 1−2g 时的 HF⁺(Y_n, 𝔰_k)

    |k| ≤ g−1：从 −|k|+1 开始的塔 ⊕ Q_{g−|k|}（位于 −|k|），整体平移 τ_{n,k}；
    否则只有塔 T_{−g}。
    """
    _check_genus(g)
    if n > 1 - 2 * g:
        raise DomainError(f"要求 n ≤ 1−2g = {1 - 2 * g}，实际 n={n}")
    label = SpinCLabel.of(k, n)
    k_abs = abs(label.k)
    shift = tau(n, label.k)
    base = Fraction(-g) + shift

    if k_abs <= g - 1:
        index = g - k_abs
        presentation = None
        if delta is not None:
            presentation = zseq_presentations(g, delta).quotients[index]
        summands = (
            Tower(Fraction(-k_abs + 1) + shift, base),
            SyzygyQuotient(index, Fraction(-k_abs) + shift, presentation),
        )
    else:
        summands = (Tower(base, base),)

    logger.debug(f"HF+(Y_{n}, s_{label.k}) g={g}: {len(summands)} 个直和项")
    return GradedModuleDescription(g, label, "HF+", summands, shift)


def hf_plus_large_positive(
    n: int,
    g: int,
    k: int,
    delta: Optional[DeltaData] = None
) -> GradedModuleDescription:
    """
    n ≥ 2g−1 时的 HF⁺(Y_n, 𝔰_k)

    |k| ≤ g−1：K_{g+|k|+1}（位于 |k|−1−τ）⊕ ℤ[U]/U^{r_k} ⊕ T_{−g−τ}，
    r_k = ⌊(g−|k|)/2⌋；r_k = 0 时省略中间项。
    """
    _check_genus(g)
    if n < 2 * g - 1:
        raise DomainError(f"要求 n ≥ 2g−1 = {2 * g - 1}，实际 n={n}")
    label = SpinCLabel.of(k, n)
    k_abs = abs(label.k)
    shift = tau(n, label.k)
    notes = []

    if k_abs <= g - 1:
        index = g + k_abs + 1
        degree = Fraction(k_abs - 1) - shift
        if index == 2 * g:
            kernel: Summand = FreeRankOne(degree)
        else:
            known = (label.k - g) % 2 == 0
            presentation = None
            if delta is not None:
                presentation = zseq_presentations(g, delta).kernels.get(index)
            kernel = SyzygyKernel(index, degree, known, presentation)
            if not known:
                notes.append(f"K_{index} 上的 U 作用未确定")
        summands: List[Summand] = [kernel]
        r = (g - k_abs) // 2
        if r > 0:
            summands.append(CyclicUTower(r, Fraction(2 * k_abs - g) - shift))
        summands.append(Tower(Fraction(-g) - shift, Fraction(-g) - shift))
    else:
        summands = [Tower(Fraction(-g) - shift, Fraction(-g) - shift)]

    return GradedModuleDescription(g, label, "HF+", tuple(summands), shift, notes)


def hf_minus_large_positive(n: int, g: int, k: int) -> GradedModuleDescription:
    """
    n ≥ 2g−1、k ≡ ±(g−1) 时的 HF⁻(Y_n, 𝔰_k)

    位于 g−3−τ 的一份 R_Y，加上顶端在 −g−2−τ 的负向塔。
    """
    _check_genus(g)
    if n < 2 * g - 1:
        raise DomainError(f"要求 n ≥ 2g−1 = {2 * g - 1}，实际 n={n}")
    label = SpinCLabel.of(k, n)
    if abs(label.k) != g - 1:
        raise DomainError(f"HF⁻ 公式只覆盖 |k| = g−1 = {g - 1}，实际 k={label.k}")
    shift = tau(n, label.k)
    summands = (
        FreeRankOne(Fraction(g - 3) - shift),
        Tower(Fraction(-g - 2) - shift, orientation="minus"),
    )
    return GradedModuleDescription(g, label, "HF-", summands, shift)
