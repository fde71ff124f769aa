"""Exact combinatorics of moduli charts of calibrated (quantum) fans."""
from .combinatorics import (
    CombinatorialType,
    InvalidTypeError,
    RayPermutation,
    Violation,
    automorphism_group,
    cycle_type,
    enumerate_degenerations,
    full_cone_type,
    is_degeneration_of,
    product_p1_p2,
    simplex_type,
    validate,
)
from .degeneration import (
    OutsideClosureError,
    Stratum,
    classify,
    degenerate_type,
    projected_calibration,
    strata_scan,
    stratum_code,
    zero_patterns,
)
from .exact import DimensionError, PreconditionError, RationalMatrix, det, kernel_basis, nullspace, rank
from .grassmann import PluckerVector, chart_normalize, closure_conditions, gale, plucker, transition
from .moduli import (
    Calibration,
    Inequality,
    SignVector,
    UnsupportedTypeError,
    component_inequalities,
    det_signs,
    is_admissible,
    reference_calibration,
)
from .symmetry import GroupElement, act, action_cocycle, canonical_form, group_elements, isomorphic, orbit

__version__ = "0.1.0"
