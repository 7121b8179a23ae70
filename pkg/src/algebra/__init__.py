"""代数模块：Laurent多项式群环与Novikov级数"""

from .laurent_ring import (
    LaurentPolynomial,
    normalize_up_to_unit,
    involution,
    augmentation,
    expand_z_square,
    contract_to_z_square,
)
from .novikov import NovikovSeries, novikov_quotient

__all__ = [
    'LaurentPolynomial', 'normalize_up_to_unit', 'involution', 'augmentation',
    'expand_z_square', 'contract_to_z_square', 'NovikovSeries', 'novikov_quotient',
]
