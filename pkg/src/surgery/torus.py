"""
HF⁻(T³, 𝔰₀) 的外代数模型与映射柱作用

Λ²H¹(T³) 通过 Poincaré 对偶与 H₁(T³) = ℤ³ 等同：向量 v 表示
v₁·c₍₁₀₀₎* + v₂·c₍₀₁₀₎* + v₃·c₍₀₀₁₎*，其中 c₍₁₀₀₎* = e₂∧e₃（轮换）。
Λ¹ 部分是 H¹ 中的向量，位于低一级的分次。
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Any, Dict, Sequence, Tuple
import logging

import numpy as np
import sympy

from src.config.constants import T3_LAMBDA1_DEGREE, T3_LAMBDA2_DEGREE, U_DEGREE
from src.utils.errors import DomainError, ValidationError
from src.utils.formatting import format_fraction

logger = logging.getLogger(__name__)

Vector3 = Tuple[int, int, int]
_ZERO: Vector3 = (0, 0, 0)


def _vector(values: Sequence[int], name: str = "向量") -> Vector3:
    values = tuple(int(x) for x in values)
    if len(values) != 3:
        raise ValidationError(f"{name}必须是3维整数向量: {values}")
    return values


@dataclass(frozen=True)
class T3Class:
    """HF⁻(T³) 中的齐次元素 U^u_power·(Λ² 部分 或 Λ¹ 部分)"""
    lambda2_part: Vector3 = _ZERO
    lambda1_part: Vector3 = _ZERO
    u_power: int = 0
    sign_ambiguous: bool = False

    def __post_init__(self):
        if self.u_power < 0:
            raise ValidationError(f"U 的幂次必须非负: {self.u_power}")
        if self.lambda2_part != _ZERO and self.lambda1_part != _ZERO:
            raise ValidationError("Λ² 与 Λ¹ 部分不在同一分次，不能同时非零")

    @property
    def degree(self) -> Fraction:
        base = T3_LAMBDA1_DEGREE if self.lambda1_part != _ZERO else T3_LAMBDA2_DEGREE
        return base + U_DEGREE * self.u_power

    def is_zero(self) -> bool:
        return self.lambda2_part == _ZERO and self.lambda1_part == _ZERO

    def to_dict(self) -> Dict[str, Any]:
        return {
            'lambda2': list(self.lambda2_part),
            'lambda1': list(self.lambda1_part),
            'u_power': self.u_power,
            'degree': format_fraction(self.degree),
            'sign_ambiguous': self.sign_ambiguous,
        }


def is_primitive(c: Sequence[int]) -> bool:
    a, b, d = _vector(c)
    return gcd(gcd(abs(a), abs(b)), abs(d)) == 1


def t3_theta_image(c: Sequence[int]) -> T3Class:
    """沿原始类 c 的对数变换得到的 Λ² 元素：c 的 Poincaré 对偶（差一个符号）"""
    c = _vector(c, "曲线类")
    if not is_primitive(c):
        raise DomainError(f"曲线类 {c} 不是原始的")
    return T3Class(lambda2_part=c, sign_ambiguous=True)


def h1_contraction(x: T3Class, c: Sequence[int]) -> T3Class:
    """
    H₁(T³) 的作用：与 c 缩并，Λ² → Λ¹

    对 v* 有 ι_c(v*) = v × c；Λ¹ 部分缩并到 Λ⁰，在此模型中记为零。
    """
    c = _vector(c, "曲线类")
    if x.lambda1_part != _ZERO or x.lambda2_part == _ZERO:
        return T3Class(u_power=x.u_power, sign_ambiguous=x.sign_ambiguous)
    image = np.cross(np.array(x.lambda2_part, dtype=np.int64), np.array(c, dtype=np.int64))
    return T3Class(lambda1_part=_vector(image.tolist()), u_power=x.u_power, sign_ambiguous=x.sign_ambiguous)


def _unimodular(phi) -> Tuple[np.ndarray, int]:
    matrix = np.array(phi, dtype=np.int64)
    if matrix.shape != (3, 3):
        raise ValidationError(f"映射柱矩阵必须是 3×3: {matrix.shape}")
    det = int(sympy.Matrix(matrix.tolist()).det())
    if det not in (1, -1):
        raise DomainError(f"矩阵行列式为 {det}，不是 T³ 的微分同胚")
    return matrix, det


def inverse_transpose(phi) -> np.ndarray:
    """φ 在 H¹ 上诱导的推出 (φ⁻¹)ᵀ，用伴随矩阵精确求逆"""
    matrix, det = _unimodular(phi)
    adjugate = sympy.Matrix(matrix.tolist()).adjugate()
    inverse = np.array([[int(v) for v in row] for row in (adjugate * det).tolist()], dtype=np.int64)
    return inverse.T


def cylinder_action(phi, x: T3Class) -> T3Class:
    """
    映射柱 C_φ 的作用

    Λ² 部分按 (φ_*c)* 变换，即 v ↦ φv；Λ¹ 部分按 (φ⁻¹)ᵀ 变换。
    """
    matrix, _ = _unimodular(phi)
    lambda2 = _vector((matrix @ np.array(x.lambda2_part, dtype=np.int64)).tolist())
    lambda1 = _vector((inverse_transpose(matrix) @ np.array(x.lambda1_part, dtype=np.int64)).tolist())
    return T3Class(lambda2, lambda1, x.u_power, x.sign_ambiguous)


def log_transform_vector(phi) -> Vector3:
    """φ(e₃) = (p, q, r)：c₍₀₀₁₎* 的像在 c₍₁₀₀₎*, c₍₀₁₀₎*, c₍₀₀₁₎* 上的系数"""
    image = cylinder_action(phi, T3Class(lambda2_part=(0, 0, 1)))
    logger.debug(f"对数变换向量: {image.lambda2_part}")
    return image.lambda2_part


def random_unimodular(rng: np.random.Generator, steps: int = 6) -> np.ndarray:
    """用随机初等变换生成行列式 ±1 的 3×3 整数矩阵"""
    matrix = np.eye(3, dtype=np.int64)
    for _ in range(steps):
        i, j = rng.choice(3, size=2, replace=False)
        factor = int(rng.integers(-2, 3))
        matrix[i] += factor * matrix[j]
    if rng.integers(0, 2):
        matrix[0] = -matrix[0]
    return matrix
