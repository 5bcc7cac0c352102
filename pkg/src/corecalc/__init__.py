"""Cores of ideals in polynomial rings and their quotients, localized at the origin.

The core of I is the intersection of all its reductions.  Two pipelines
compute it: intersecting general minimal reductions until the result
stabilizes, and a closed colon formula over a ring with generic
coefficients adjoined.  Both rest on a small exact Groebner basis engine.
"""
from .core import (
    CoreError,
    CoreResult,
    HypothesisViolation,
    UnsupportedInput,
    build_universal,
    compute_core,
    core_deterministic,
    core_negative_fixture,
    core_probabilistic,
    verify_core,
)
from .groebner import GroebnerBasis, ResourceLimitError, buchberger, normal_form
from .ideals import (
    Ideal,
    eliminate,
    fitting_ideal,
    height,
    ideal_colon,
    ideal_intersection,
    ideal_membership,
    ideal_power,
    ideal_product,
    ideal_saturation,
    ideal_sum,
    krull_dimension,
    local_contraction_zero_dim,
    local_membership,
    radical_membership,
    syzygies,
    vector_space_dimension,
)
from .kernel import QQ, AlgebraError, Field, MonomialOrder, ParseError, Polynomial, Ring, parse_poly
from .reductions import (
    ReductionCertificate,
    ReductionError,
    analytic_spread,
    check_G_s,
    classify_hypotheses,
    multiplicity,
    reduction_number,
    sample_general_reduction,
)

__all__ = [
    "AlgebraError", "CoreError", "CoreResult", "Field", "GroebnerBasis", "HypothesisViolation",
    "Ideal", "MonomialOrder", "ParseError", "Polynomial", "QQ", "ReductionCertificate",
    "ReductionError", "ResourceLimitError", "Ring", "UnsupportedInput", "analytic_spread",
    "buchberger", "build_universal", "check_G_s", "classify_hypotheses", "compute_core",
    "core_deterministic", "core_negative_fixture", "core_probabilistic", "eliminate",
    "fitting_ideal", "height", "ideal_colon", "ideal_intersection", "ideal_membership",
    "ideal_power", "ideal_product", "ideal_saturation", "ideal_sum", "krull_dimension",
    "local_contraction_zero_dim", "local_membership", "multiplicity", "normal_form",
    "parse_poly", "radical_membership", "reduction_number", "sample_general_reduction",
    "syzygies", "vector_space_dimension", "verify_core",
]
