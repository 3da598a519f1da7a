from rinehart.invariants.dual_pair import (
    angular_momenta,
    check_invariance,
    closure_table,
    invariant_generators,
    kinetic_energy,
    sal_deficiency_report,
)
from rinehart.invariants.hilbert import hilbert_map, hilbert_preimage
from rinehart.invariants.homogeneous import (
    check_reductive,
    g_times_g_pair,
    homogeneous_invariant_gap,
    lie_poisson_casimirs,
)
from rinehart.invariants.momentum import (
    momentum_matrix,
    momentum_property_check,
    pairing,
    standard_sp_basis,
    verify_sp_isomorphism,
)

__all__ = [
    "angular_momenta",
    "check_invariance",
    "check_reductive",
    "closure_table",
    "g_times_g_pair",
    "hilbert_map",
    "hilbert_preimage",
    "homogeneous_invariant_gap",
    "invariant_generators",
    "kinetic_energy",
    "lie_poisson_casimirs",
    "momentum_matrix",
    "momentum_property_check",
    "pairing",
    "sal_deficiency_report",
    "standard_sp_basis",
    "verify_sp_isomorphism",
]
