"""同调计算模块"""
from .matrices import PolyMatrix, RankEvaluator
from .smith import SmithForm, smith_normal_form, verify_smith_form
from .chain_complex import (
    FreeComplex,
    PresentedModule,
    Region,
    bigraded_knot_complex,
    complement,
    fraction_field_homology_ranks,
    koszul_complex,
    syzygy_presentation,
    truncate_region,
)
from .knot_floer_model import (
    DeltaData,
    E1Page,
    HomologyLabel,
    ZSeqReport,
    delta_for_genus_one,
    e1_page,
    hf_infinity_degrees,
    knot_floer_ranks,
    validate_zseq,
    zseq_presentations,
)
from .circle_bundle import (
    GradedModuleDescription,
    SpinCLabel,
    hf_minus_large_positive,
    hf_plus_large_negative,
    hf_plus_large_positive,
    reduced_support,
    spinc_enumerate,
)

__all__ = [
    'PolyMatrix', 'RankEvaluator',
    'SmithForm', 'smith_normal_form', 'verify_smith_form',
    'FreeComplex', 'PresentedModule', 'Region', 'bigraded_knot_complex', 'complement',
    'fraction_field_homology_ranks', 'koszul_complex', 'syzygy_presentation', 'truncate_region',
    'DeltaData', 'E1Page', 'HomologyLabel', 'ZSeqReport', 'delta_for_genus_one', 'e1_page',
    'hf_infinity_degrees', 'knot_floer_ranks', 'validate_zseq', 'zseq_presentations',
    'GradedModuleDescription', 'SpinCLabel', 'hf_minus_large_positive', 'hf_plus_large_negative',
    'hf_plus_large_positive', 'reduced_support', 'spinc_enumerate',
]
