"""输出格式化工具"""

from fractions import Fraction
from typing import Union

from src.utils.errors import ParseError


def format_fraction(value: Union[int, Fraction]) -> str:
    """精确有理数输出为 "p/q"（整数不带分母）"""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_fraction(text: str) -> Fraction:
    """format_fraction 的逆"""
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"不是合法的有理数: {text!r}")
