"""手术演算：形式不变量、T³ 模型、纤维和与边缘手术判定"""

from .torus import T3Class, t3_theta_image, h1_contraction, cylinder_action, log_transform_vector
from .invariants import (
    FormalInvariant,
    GroupQuotient,
    unit_equivalent,
    knot_surgery_multiply,
    log_transform_combination,
    t_average,
    pair_invariants,
)
from .fiber_sum import (
    fiber_sum_product,
    s1_cross_surgery_invariant,
    complement_invariant,
    closed_knot_surgery,
)
from .verdict import RimSurgeryReport, rim_surgery_verdict

__all__ = [
    'T3Class', 't3_theta_image', 'h1_contraction', 'cylinder_action', 'log_transform_vector',
    'FormalInvariant', 'GroupQuotient', 'unit_equivalent', 'knot_surgery_multiply',
    'log_transform_combination', 't_average', 'pair_invariants',
    'fiber_sum_product', 's1_cross_surgery_invariant', 'complement_invariant', 'closed_knot_surgery',
    'RimSurgeryReport', 'rim_surgery_verdict',
]
