"""Exact-arithmetic cone analysis for hyperbolic Picard-type lattices.

The package answers, for an integer lattice of signature (1, rank-1) tagged
with one of the known deformation families, which primitive classes are
numerically exceptional, what chamber the ample class sits in, and whether
the pseudo-effective candidate is polyhedral or circular up to an explicit
search bound. Everything is integer or rational arithmetic; the only floats
live in the SVG renderer.
"""

from .alphas import (
    AlphaContext,
    AlphaResult,
    alpha_case_a,
    alpha_case_b,
    alpha_effective,
    alpha_k,
    beta_projection,
    build_context,
)
from .catalog import (
    DeformationType,
    ExceptionalProfile,
    Kind,
    embeds_two_hyperbolic_planes,
    expected_disc_group,
    is_numerically_exceptional,
    matches_profile,
    parse_type,
    profiles,
    rlf_and_cone_flags,
)
from .engine import (
    ConeAnalysis,
    EnumerationBound,
    FinitenessReport,
    MDSReport,
    MovCandidate,
    Rank2Report,
    RayDescriptor,
    VERDICT_CIRCULAR,
    VERDICT_POLYHEDRAL,
    analyze,
    classify_rank2,
    enumerate_exceptional,
    finiteness_report,
    mds_classify,
)
from .errors import (
    AmpleOnWallError,
    BoundExceededError,
    ContractViolationError,
    DegenerateGramError,
    DimensionMismatchError,
    IHSConeError,
    InputFormatError,
    MixedRationalityError,
    NonIntegralReflectionError,
    PellRangeError,
    PellSquareError,
    PreconditionError,
    SignatureError,
)
from .lattice import (
    DiscClass,
    DiscriminantGroup,
    Lattice,
    disc_class,
    discriminant_group,
    divisibility,
    eichler_equivalent,
    gram_vec,
    is_primitive,
    norm,
    pairing,
    signature,
    smith_normal_form,
)
from .pell import (
    PellSolution,
    fundamental_solution,
    is_perfect_square,
    next_solution,
    second_solution,
    solution_with_residue,
)
from .svg import render_section
from .weyl import (
    ChamberReduction,
    Reflection,
    is_chamber_wall,
    reflect,
    reflection_is_integral,
    weyl_reduce,
)

__version__ = "0.1.0"

__all__ = [
    "AlphaContext",
    "AlphaResult",
    "AmpleOnWallError",
    "BoundExceededError",
    "ChamberReduction",
    "ConeAnalysis",
    "ContractViolationError",
    "DeformationType",
    "DegenerateGramError",
    "DimensionMismatchError",
    "DiscClass",
    "DiscriminantGroup",
    "EnumerationBound",
    "ExceptionalProfile",
    "FinitenessReport",
    "IHSConeError",
    "InputFormatError",
    "Kind",
    "Lattice",
    "MDSReport",
    "MixedRationalityError",
    "MovCandidate",
    "NonIntegralReflectionError",
    "PellRangeError",
    "PellSolution",
    "PellSquareError",
    "PreconditionError",
    "Rank2Report",
    "RayDescriptor",
    "Reflection",
    "SignatureError",
    "VERDICT_CIRCULAR",
    "VERDICT_POLYHEDRAL",
    "alpha_case_a",
    "alpha_case_b",
    "alpha_effective",
    "alpha_k",
    "analyze",
    "beta_projection",
    "build_context",
    "classify_rank2",
    "disc_class",
    "discriminant_group",
    "divisibility",
    "eichler_equivalent",
    "embeds_two_hyperbolic_planes",
    "enumerate_exceptional",
    "expected_disc_group",
    "finiteness_report",
    "fundamental_solution",
    "gram_vec",
    "is_chamber_wall",
    "is_numerically_exceptional",
    "is_perfect_square",
    "is_primitive",
    "matches_profile",
    "mds_classify",
    "next_solution",
    "norm",
    "pairing",
    "parse_type",
    "profiles",
    "reflect",
    "reflection_is_integral",
    "render_section",
    "rlf_and_cone_flags",
    "second_solution",
    "signature",
    "smith_normal_form",
    "solution_with_residue",
    "weyl_reduce",
]
