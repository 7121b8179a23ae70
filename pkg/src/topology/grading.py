"""
分次与格算术

配边的分次平移、τ_{n,k}、相对不变量的分次、爆破配边的上同调格、
spin^c 族的 c₁ 以及分次最大化剖面。全部为精确有理数运算。
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple
import logging

import numpy as np
import pandas as pd

from src.config.constants import BLOWUP_EULER, BLOWUP_SIGNATURE
from src.utils.errors import DomainError
from src.utils.formatting import format_fraction

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CobordismData:
    """配边的 c₁²、符号差与欧拉示性数"""
    c1_square: Fraction
    signature: int
    euler: int


def degree_shift(data: CobordismData) -> Fraction:
    """(c₁² − 3σ − 2e) / 4"""
    return (Fraction(data.c1_square) - 3 * data.signature - 2 * data.euler) / 4


def tau(n: int, k: int) -> Fraction:
    """τ_{n,k} = (|n| − (2|k| − |n|)²) / (4|n|)"""
    if n == 0:
        raise DomainError("τ_{n,k} 要求 n ≠ 0")
    m = abs(n)
    return Fraction(m - (2 * abs(k) - m) ** 2, 4 * m)


def reduced_degree(k: int, g: int) -> Fraction:
    """D(k) = −k²/(2g−1) − (g−1)/2"""
    if g < 1:
        raise DomainError(f"亏格必须为正整数: g={g}")
    return Fraction(-k * k, 2 * g - 1) - Fraction(g - 1, 2)


def relative_invariant_degree(n: int, g: int) -> Tuple[Fraction, Fraction]:
    """
    相对不变量所在的分次 (d⁻, d⁺)

    d⁻ = (−4n − (2g−2−n)² − (1+4g)n) / (4n)，d⁺ = −d⁻ − 2，仅对 n < 0。
    """
    if n >= 0:
        raise DomainError(f"相对不变量分次公式只对 n < 0 成立: n={n}")
    if g < 1:
        raise DomainError(f"亏格必须为正整数: g={g}")
    d_minus = Fraction(-4 * n - (2 * g - 2 - n) ** 2 - (1 + 4 * g) * n, 4 * n)
    return d_minus, -d_minus - 2


def adjunction(g: int, n: int) -> int:
    """⟨c₁(𝔨), Σ⟩ = 2g − 2 − n"""
    return 2 * g - 2 - n


def spinc_family_c1(ell: int, m: int, g: int) -> int:
    """c₁(𝔯_{ℓ,m}) 在 a* 上的系数 (2g−2)((2g−1)(2m+1) − 2ℓ)"""
    if g < 1:
        raise DomainError(f"亏格必须为正整数: g={g}")
    return (2 * g - 2) * ((2 * g - 1) * (2 * m + 1) - 2 * ell)


@dataclass
class BlowupLattice:
    """
    爆破配边的格：H₂(M) 的基 {s_n, e}，相交形式 diag(n, −1)

    a = s_n − n·e 生成 ker B；所有等式都用整数矩阵验证。
    """
    n: int
    form: np.ndarray
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    a_square: int
    checks: Dict[str, bool] = field(default_factory=dict)
    canonical_image: Optional[Tuple[int, int]] = None

    @property
    def valid(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> Dict[str, Any]:
        result = {
            'n': self.n,
            'intersection_form': self.form.tolist(),
            'a': self.a.tolist(),
            'a_square': self.a_square,
            'B': self.b.tolist(),
            'C': self.c.tolist(),
            'checks': dict(self.checks),
        }
        if self.canonical_image is not None:
            result['canonical_image'] = list(self.canonical_image)
        return result


def blowup_lattice(n: int, g: Optional[int] = None) -> BlowupLattice:
    """构造并用矩阵运算验证爆破配边的格；给出 g 时同时计算 C*(K̃)"""
    form = np.array([[n, 0], [0, -1]], dtype=np.int64)
    s_n = np.array([1, 0], dtype=np.int64)
    e = np.array([0, 1], dtype=np.int64)
    a = s_n - n * e
    b = np.array([[n, 1]], dtype=np.int64)
    c = np.array([[1, 1], [-1, -n]], dtype=np.int64)

    a_square = int(a @ form @ a)
    s_prev = s_n - e  # s_{n-1}
    checks = {
        'B(s_n) = n·d': int((b @ s_n)[0]) == n,
        'B(e) = d': int((b @ e)[0]) == 1,
        'a in ker B': int((b @ a)[0]) == 0,
        'a^2 = -n(n-1)': a_square == -n * (n - 1),
        'a . s_{n-1} = 0': int(a @ form @ s_prev) == 0,
        's_{n-1}^2 = n-1': int(s_prev @ form @ s_prev) == n - 1,
        'C(0,1) = a': bool(np.array_equal(c @ np.array([0, 1]), a)),
        'C(1,0) = s_{n-1}': bool(np.array_equal(c @ np.array([1, 0]), s_prev)),
        'C*(s_n*) = s_{n-1}* + a*': bool(np.array_equal(c.T @ np.array([1, 0]), np.array([1, 1]))),
    }

    canonical_image = None
    if g is not None:
        # K̃ = (2g−2−n) s_n* − e*
        image = c.T @ np.array([2 * g - 2 - n, -1], dtype=np.int64)
        canonical_image = (int(image[0]), int(image[1]))
        checks['C*(K) = (2g-1-n) s* + (2g-2) a*'] = canonical_image == (2 * g - 1 - n, 2 * g - 2)

    lattice = BlowupLattice(n, form, a, b, c, a_square, checks, canonical_image)
    if not lattice.valid:
        failed = [name for name, ok in checks.items() if not ok]
        logger.warning(f"格 n={n} 的验证失败: {failed}")
    return lattice


def _profile_m_values(ell: int) -> List[int]:
    """使 (2g−1)(2m+1) − 2ℓ 最接近 0 的 m；ℓ = 0 时两个都取"""
    if ell > 0:
        return [0]
    if ell < 0:
        return [-1]
    return [0, -1]


def spinc_degree(ell: int, m: int, g: int) -> Fraction:
    """d(𝔯_{ℓ,m}) = (c₁²·(a*)² + 1)/4，(a*)² = −1/((2g−1)(2g−2))"""
    c1 = spinc_family_c1(ell, m, g)
    dual_square = Fraction(-1, (2 * g - 1) * (2 * g - 2))
    shift = CobordismData(c1 * c1 * dual_square, BLOWUP_SIGNATURE, BLOWUP_EULER)
    return degree_shift(shift)


def displayed_profile_quadratic(ell: int, g: int) -> Fraction:
    """书面给出的中间二次式 −ℓ² + (2g−2)ℓ − (2g−1)²/4"""
    return Fraction(-ell * ell + (2 * g - 2) * ell) - Fraction((2 * g - 1) ** 2, 4)


@dataclass(frozen=True)
class ProfileRow:
    ell: int
    m: int
    c1: int
    reduced_degree: Fraction
    spinc_degree: Fraction
    degree_sum: Fraction


@dataclass
class DegreeProfile:
    genus: int
    rows: List[ProfileRow]
    argmax: List[int]
    maximum: Fraction
    increasing_on_nonnegative: bool
    endpoint_discrepancy: Fraction

    def degree_sum(self, ell: int) -> Fraction:
        """同一个 ℓ 的所有行取最大（ℓ=0 时两行相等）"""
        return max(r.degree_sum for r in self.rows if r.ell == ell)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'genus': self.genus,
            'rows': [
                {
                    'ell': r.ell, 'm': r.m, 'c1': r.c1,
                    'D': format_fraction(r.reduced_degree),
                    'd': format_fraction(r.spinc_degree),
                    'degree_sum': format_fraction(r.degree_sum),
                }
                for r in self.rows
            ],
            'argmax': self.argmax,
            'maximum': format_fraction(self.maximum),
            'increasing_on_nonnegative': self.increasing_on_nonnegative,
            'discrepancy': {
                'computed_endpoint': format_fraction(self.maximum),
                'displayed_endpoint': format_fraction(displayed_profile_quadratic(self.genus - 1, self.genus)),
                'difference': format_fraction(self.endpoint_discrepancy),
            },
        }


def blowup_degree_profile(g: int) -> DegreeProfile:
    """
    ℓ ∈ [−g+1, g−1] 上 D(ℓ) + d(𝔯_ℓ) 的剖面

    d(𝔯_ℓ) 由 c₁²、σ = −1、e = 1 直接算出，不用书面的中间二次式；
    两者在端点的差作为 endpoint_discrepancy 一并报告。
    """
    if g < 2:
        raise DomainError(f"分次剖面要求 g ≥ 2: g={g}")

    rows = []
    for ell in range(-g + 1, g):
        for m in _profile_m_values(ell):
            d_small = spinc_degree(ell, m, g)
            d_big = reduced_degree(ell, g)
            rows.append(ProfileRow(ell, m, spinc_family_c1(ell, m, g), d_big, d_small, d_big + d_small))

    maximum = max(r.degree_sum for r in rows)
    argmax = sorted({r.ell for r in rows if r.degree_sum == maximum})
    sums = {}
    for r in rows:
        sums[r.ell] = max(sums.get(r.ell, r.degree_sum), r.degree_sum)
    increasing = all(sums[ell] < sums[ell + 1] for ell in range(0, g - 1))
    discrepancy = displayed_profile_quadratic(g - 1, g) - sums[g - 1]

    logger.debug(f"分次剖面 g={g}：最大值 {maximum} 于 ℓ={argmax}，与书面二次式差 {discrepancy}")
    return DegreeProfile(g, rows, argmax, maximum, increasing, discrepancy)


def degree_profile_table(profile: DegreeProfile) -> pd.DataFrame:
    """剖面的表格形式"""
    return pd.DataFrame([
        {
            'ell': r.ell,
            'm': r.m,
            'c1': r.c1,
            'D': format_fraction(r.reduced_degree),
            'd': format_fraction(r.spinc_degree),
            'degree_sum': format_fraction(r.degree_sum),
            'displayed': format_fraction(displayed_profile_quadratic(r.ell, profile.genus)),
        }
        for r in profile.rows
    ])
