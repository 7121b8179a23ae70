"""Laurent多项式矩阵与分式域秩"""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple
import logging

import numpy as np
import sympy
from sympy.polys.matrices import DomainMatrix

from src.algebra.laurent_ring import LaurentPolynomial
from src.config.constants import CoefficientRing
from src.config.settings import get_config
from src.utils.errors import ParseError, RetryExhaustedError, RingMismatchError, UnsupportedRingError, ValidationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PolyMatrix:
    """行优先存储的多项式矩阵（显式记录形状，允许0行或0列）"""
    rows: int
    cols: int
    entries: Tuple[Tuple[LaurentPolynomial, ...], ...]
    variables: Tuple[str, ...]
    ring: CoefficientRing = CoefficientRing.INTEGERS

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValidationError(f"矩阵形状不符: 声明 {self.rows}×{self.cols}")

    @classmethod
    def zero(cls, rows: int, cols: int, variables: Sequence[str],
             ring: CoefficientRing = CoefficientRing.INTEGERS) -> "PolyMatrix":
        z = LaurentPolynomial.zero(variables, ring)
        return cls(rows, cols, tuple(tuple(z for _ in range(cols)) for _ in range(rows)), tuple(variables), ring)

    @classmethod
    def identity(cls, size: int, variables: Sequence[str],
                 ring: CoefficientRing = CoefficientRing.INTEGERS) -> "PolyMatrix":
        z = LaurentPolynomial.zero(variables, ring)
        one = LaurentPolynomial.one(variables, ring)
        return cls(size, size, tuple(
            tuple(one if i == j else z for j in range(size)) for i in range(size)
        ), tuple(variables), ring)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[LaurentPolynomial]], cols: Optional[int] = None,
                  variables: Optional[Sequence[str]] = None,
                  ring: Optional[CoefficientRing] = None) -> "PolyMatrix":
        rows = [tuple(r) for r in rows]
        if rows and rows[0]:
            variables = variables or rows[0][0].variables
            ring = ring or rows[0][0].ring
        if variables is None:
            raise ValidationError("空矩阵需要显式给出变量")
        ring = ring or CoefficientRing.INTEGERS
        cols = len(rows[0]) if rows else (cols or 0)
        for row in rows:
            for entry in row:
                if entry.variables != tuple(variables) or entry.ring is not ring:
                    raise RingMismatchError(f"矩阵元素 {entry} 不在环 {tuple(variables)} 中")
        return cls(len(rows), cols, tuple(rows), tuple(variables), ring)

    @classmethod
    def from_text(cls, rows: Sequence[Sequence[str]], variables: Sequence[str],
                  cols: Optional[int] = None,
                  ring: CoefficientRing = CoefficientRing.INTEGERS) -> "PolyMatrix":
        """从字符串矩阵解析（JSON格式）"""
        if not isinstance(rows, (list, tuple)) or any(not isinstance(r, (list, tuple)) for r in rows):
            raise ParseError("矩阵必须是字符串的二维列表")
        parsed = [[LaurentPolynomial.parse(str(x), variables, ring) for x in r] for r in rows]
        widths = {len(r) for r in parsed}
        if len(widths) > 1:
            raise ParseError(f"矩阵各行长度不一致: {sorted(widths)}")
        return cls.from_rows(parsed, cols=cols, variables=variables, ring=ring)

    def entry(self, i: int, j: int) -> LaurentPolynomial:
        return self.entries[i][j]

    def row(self, i: int) -> Tuple[LaurentPolynomial, ...]:
        return self.entries[i]

    def column(self, j: int) -> Tuple[LaurentPolynomial, ...]:
        return tuple(r[j] for r in self.entries)

    def is_zero(self) -> bool:
        return all(e.is_zero() for r in self.entries for e in r)

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.cols, self.rows,
                          tuple(self.column(j) for j in range(self.cols)), self.variables, self.ring)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix(len(rows), len(cols),
                          tuple(tuple(self.entries[i][j] for j in cols) for i in rows),
                          self.variables, self.ring)

    def stack(self, other: "PolyMatrix") -> "PolyMatrix":
        """上下拼接"""
        if other.cols != self.cols:
            raise ValidationError(f"列数不同无法拼接: {self.cols} 与 {other.cols}")
        return PolyMatrix(self.rows + other.rows, self.cols, self.entries + other.entries,
                          self.variables, self.ring)

    def without_zero_rows(self) -> "PolyMatrix":
        kept = tuple(r for r in self.entries if any(not e.is_zero() for e in r))
        return PolyMatrix(len(kept), self.cols, kept, self.variables, self.ring)

    def map(self, func) -> "PolyMatrix":
        rows = tuple(tuple(func(e) for e in r) for r in self.entries)
        sample = rows[0][0] if rows and rows[0] else None
        ring = sample.ring if sample is not None else self.ring
        return PolyMatrix(self.rows, self.cols, rows, self.variables, ring)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ValidationError(f"矩阵乘法维数不符: {self.rows}×{self.cols} 与 {other.rows}×{other.cols}")
        if self.variables != other.variables or self.ring is not other.ring:
            raise RingMismatchError("矩阵乘法的两个因子不在同一个环中")
        zero = LaurentPolynomial.zero(self.variables, self.ring)
        result = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = zero
                for m in range(self.cols):
                    a = self.entries[i][m]
                    if a.is_zero():
                        continue
                    b = other.entries[m][j]
                    if not b.is_zero():
                        acc = acc + a * b
                row.append(acc)
            result.append(tuple(row))
        return PolyMatrix(self.rows, other.cols, tuple(result), self.variables, self.ring)

    def evaluate(self, point: Sequence[int]) -> sympy.Matrix:
        """在整数点处求值得到有理数矩阵"""
        values = []
        for r in self.entries:
            for e in r:
                v = Fraction(e.evaluate(point))
                values.append(sympy.Rational(v.numerator, v.denominator))
        return sympy.Matrix(self.rows, self.cols, values)

    def to_text(self) -> List[List[str]]:
        return [[str(e) for e in r] for r in self.entries]


class RankEvaluator:
    """
    分式域上的秩：在随机整数点求值后精确求秩

    每次在若干个独立点处求值，全部一致才接受；否则重试。
    """

    def __init__(
        self,
        seed: Optional[int] = None,
        points: Optional[int] = None,
        max_retries: Optional[int] = None,
        sample_bound: Optional[int] = None
    ):
        arithmetic = get_config().get('arithmetic', {})
        self.seed = arithmetic.get('seed', 0) if seed is None else seed
        self.points = points or arithmetic.get('evaluation_points', 3)
        self.max_retries = max_retries or arithmetic.get('max_retries', 8)
        self.sample_bound = sample_bound or arithmetic.get('sample_bound', 1000003)
        self.rng = np.random.default_rng(self.seed)

    def _sample(self, count: int) -> Tuple[int, ...]:
        return tuple(int(x) for x in self.rng.integers(2, self.sample_bound, size=count))

    def rank(self, *factors: PolyMatrix) -> int:
        """矩阵乘积 factors[0] @ factors[1] @ ... 的分式域秩"""
        if not factors:
            raise ValidationError("至少需要一个矩阵")
        for left, right in zip(factors, factors[1:]):
            if left.cols != right.rows:
                raise ValidationError(f"矩阵链维数不符: {left.rows}×{left.cols} 与 {right.rows}×{right.cols}")
        ring = factors[0].ring
        if ring is CoefficientRing.MOD2:
            raise UnsupportedRingError("𝔽₂ 系数的复形不支持分式域秩计算")
        if factors[0].rows == 0 or factors[-1].cols == 0:
            return 0

        variables = factors[0].variables
        for attempt in range(1, self.max_retries + 1):
            ranks = []
            for _ in range(self.points):
                point = self._sample(len(variables))
                product = factors[0].evaluate(point)
                for f in factors[1:]:
                    product = product * f.evaluate(point)
                ranks.append(DomainMatrix.from_Matrix(product).to_field().rank())
            if len(set(ranks)) == 1:
                return ranks[0]
            logger.debug(f"求值点秩不一致 {ranks}，第 {attempt} 次重试")

        raise RetryExhaustedError(f"{self.max_retries} 次重试后求值点的秩仍不一致")
