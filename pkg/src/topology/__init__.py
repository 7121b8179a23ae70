"""分次与格算术模块"""
from .grading import (
    BlowupLattice,
    CobordismData,
    DegreeProfile,
    adjunction,
    blowup_degree_profile,
    blowup_lattice,
    degree_profile_table,
    degree_shift,
    displayed_profile_quadratic,
    reduced_degree,
    relative_invariant_degree,
    spinc_family_c1,
    tau,
)

__all__ = [
    'BlowupLattice', 'CobordismData', 'DegreeProfile', 'adjunction', 'blowup_degree_profile',
    'blowup_lattice', 'degree_profile_table', 'degree_shift', 'displayed_profile_quadratic',
    'reduced_degree', 'relative_invariant_degree', 'spinc_family_c1', 'tau',
]
