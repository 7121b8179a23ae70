"""
Smith标准形

支持 ℤ 以及单变量 𝔽₂[t^±]、ℚ[t^±]（都是主理想整环）。
多变量或 ℤ[t^±] 不是主理想整环，直接拒绝。
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union
import logging

from src.algebra.laurent_ring import LaurentPolynomial, coerce_coefficient
from src.config.constants import CoefficientRing
from src.homology.matrices import PolyMatrix
from src.utils.errors import UnsupportedRingError, ValidationError

logger = logging.getLogger(__name__)

Entry = Union[int, LaurentPolynomial]


class IntegerDomain:
    """ℤ：范数为绝对值"""
    name = "integers"
    zero = 0
    one = 1

    def is_zero(self, a: int) -> bool:
        return a == 0

    def norm(self, a: int) -> int:
        return abs(a)

    def divmod(self, a: int, b: int) -> Tuple[int, int]:
        return divmod(a, b)

    def normalizing_unit(self, a: int) -> int:
        return -1 if a < 0 else 1


class LaurentFieldDomain:
    """k[t^±]，k 为 𝔽₂ 或 ℚ：范数为指数跨度，单位为单项式"""

    def __init__(self, variable: str, ring: CoefficientRing):
        self.variable = variable
        self.ring = ring
        self.name = f"{ring.value}[{variable}^±]"
        self.zero = LaurentPolynomial.zero((variable,), ring)
        self.one = LaurentPolynomial.one((variable,), ring)

    def is_zero(self, a: LaurentPolynomial) -> bool:
        return a.is_zero()

    def norm(self, a: LaurentPolynomial) -> int:
        terms = a.univariate_terms()
        return max(terms) - min(terms)

    def _scalar_div(self, a, b):
        if self.ring is CoefficientRing.RATIONALS:
            return Fraction(a) / Fraction(b)
        return coerce_coefficient(a, self.ring)  # 𝔽₂中非零元只有1

    def divmod(self, a: LaurentPolynomial, b: LaurentPolynomial) -> Tuple[LaurentPolynomial, LaurentPolynomial]:
        """把两者移成常数项非零的多项式后做长除法"""
        if a.is_zero():
            return self.zero, self.zero
        a_terms, b_terms = a.univariate_terms(), b.univariate_terms()
        alpha, beta = min(a_terms), min(b_terms)
        remainder = {e - alpha: c for e, c in a_terms.items()}
        divisor = {e - beta: c for e, c in b_terms.items()}
        top = max(divisor)
        lead = divisor[top]

        quotient: Dict[int, Any] = {}
        while remainder and max(remainder) >= top:
            high = max(remainder)
            c = self._scalar_div(remainder[high], lead)
            quotient[high - top] = c
            for e, d in divisor.items():
                key = e + high - top
                value = coerce_coefficient(remainder.get(key, 0) - c * d, self.ring)
                if value == 0:
                    remainder.pop(key, None)
                else:
                    remainder[key] = value

        q = LaurentPolynomial.from_univariate(quotient, self.variable, self.ring).shift((alpha - beta,))
        return q, a - q * b

    def normalizing_unit(self, a: LaurentPolynomial) -> LaurentPolynomial:
        """使 a·u 的最低次项为常数1的单位 u"""
        terms = a.univariate_terms()
        low = min(terms)
        return LaurentPolynomial.monomial((-low,), self._scalar_div(1, terms[low]), (self.variable,), self.ring)


@dataclass
class SmithForm:
    """U·M·V = D，U、V 可逆"""
    diagonal: List[Entry]
    left: List[List[Entry]]
    right: List[List[Entry]]
    shape: Tuple[int, int]
    domain: str = "integers"

    def invariant_factors(self) -> List[Entry]:
        """非零的不变因子"""
        return [d for d in self.diagonal if not _is_zero(d)]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'domain': self.domain,
            'shape': list(self.shape),
            'diagonal': [str(d) for d in self.diagonal],
        }


def _is_zero(a: Entry) -> bool:
    if isinstance(a, LaurentPolynomial):
        return a.is_zero()
    return a == 0


def _prepare(matrix: Union[PolyMatrix, Sequence[Sequence[Entry]]]):
    if isinstance(matrix, PolyMatrix):
        rows = [list(r) for r in matrix.entries]
        cols = matrix.cols
        if len(matrix.variables) != 1:
            raise UnsupportedRingError(
                f"{len(matrix.variables)} 元Laurent多项式环不是主理想整环，不能计算Smith标准形"
            )
        if matrix.ring is CoefficientRing.INTEGERS:
            raise UnsupportedRingError("ℤ[t^±] 不是主理想整环，请改用 𝔽₂ 或 ℚ 系数")
        return rows, cols, LaurentFieldDomain(matrix.variables[0], matrix.ring)

    rows = [list(r) for r in matrix]
    cols = len(rows[0]) if rows else 0
    if any(len(r) != cols for r in rows):
        raise ValidationError("矩阵各行长度不一致")
    sample = next((e for r in rows for e in r), None)
    if isinstance(sample, LaurentPolynomial):
        return _prepare(PolyMatrix.from_rows(rows))
    return rows, cols, IntegerDomain()


def _identity(size: int, domain) -> List[List[Entry]]:
    return [[domain.one if i == j else domain.zero for j in range(size)] for i in range(size)]


def _add_row(matrix, target: int, source: int, factor):
    matrix[target] = [a + factor * b for a, b in zip(matrix[target], matrix[source])]


def _add_col(matrix, target: int, source: int, factor):
    for row in matrix:
        row[target] = row[target] + factor * row[source]


def _swap_rows(matrix, i: int, j: int):
    matrix[i], matrix[j] = matrix[j], matrix[i]


def _swap_cols(matrix, i: int, j: int):
    for row in matrix:
        row[i], row[j] = row[j], row[i]


def _min_entry(a, k: int, domain) -> Optional[Tuple[int, int]]:
    best = None
    for i in range(k, len(a)):
        for j in range(k, len(a[i])):
            if domain.is_zero(a[i][j]):
                continue
            norm = domain.norm(a[i][j])
            if best is None or norm < best[0]:
                best = (norm, i, j)
    return None if best is None else (best[1], best[2])


def smith_normal_form(matrix: Union[PolyMatrix, Sequence[Sequence[Entry]]]) -> SmithForm:
    """
    计算Smith标准形及变换矩阵

    对角元依次整除，并规范化（ℤ上取非负，k[t^±]上最低次项为常数1）。
    """
    rows, cols, domain = _prepare(matrix)
    a = [list(r) for r in rows]
    m, n = len(a), cols
    u = _identity(m, domain)
    v = _identity(n, domain)

    for k in range(min(m, n)):
        position = _min_entry(a, k, domain)
        if position is None:
            break
        while True:
            i, j = position
            _swap_rows(a, k, i)
            _swap_rows(u, k, i)
            _swap_cols(a, k, j)
            _swap_cols(v, k, j)
            pivot = a[k][k]

            clean = True
            for i in range(k + 1, m):
                if not domain.is_zero(a[i][k]):
                    q, r = domain.divmod(a[i][k], pivot)
                    _add_row(a, i, k, -q)
                    _add_row(u, i, k, -q)
                    clean = clean and domain.is_zero(r)
            for j in range(k + 1, n):
                if not domain.is_zero(a[k][j]):
                    q, r = domain.divmod(a[k][j], pivot)
                    _add_col(a, j, k, -q)
                    _add_col(v, j, k, -q)
                    clean = clean and domain.is_zero(r)

            if clean:
                # 剩余块中不能被主元整除的元素所在行加到第k行
                offender = next(
                    (i for i in range(k + 1, m) for j in range(k + 1, n)
                     if not domain.is_zero(domain.divmod(a[i][j], pivot)[1])),
                    None
                )
                if offender is None:
                    break
                _add_row(a, k, offender, domain.one)
                _add_row(u, k, offender, domain.one)
            position = _min_entry(a, k, domain)

        unit = domain.normalizing_unit(a[k][k])
        a[k] = [unit * x for x in a[k]]
        u[k] = [unit * x for x in u[k]]

    diagonal = [a[k][k] for k in range(min(m, n))]
    logger.debug(f"Smith标准形 ({domain.name}, {m}×{n}): {[str(d) for d in diagonal]}")
    return SmithForm(diagonal, u, v, (m, n), domain.name)


def verify_smith_form(matrix: Union[PolyMatrix, Sequence[Sequence[Entry]]], form: SmithForm) -> bool:
    """检查 U·M·V 是否等于对角矩阵"""
    rows, cols, domain = _prepare(matrix)
    m, n = len(rows), cols

    def product(x, y, inner):
        return [[sum((x[i][t] * y[t][j] for t in range(inner)), domain.zero)
                 for j in range(len(y[0]) if y else 0)] for i in range(len(x))]

    if m == 0 or n == 0:
        return True
    left = product(form.left, rows, m)
    result = product(left, form.right, n)
    for i in range(m):
        for j in range(n):
            expected = form.diagonal[i] if i == j else domain.zero
            if result[i][j] != expected:
                return False
    return True
