"""rthy: exact-arithmetic toolkit for finite resource theories.

Resource theories are modeled as finite quantale modules (transformations
acting on resources, with a designated free subset); the flagship concrete
theory is statistical distinguishability of finite encodings under matrix
majorization.  Everything is exact: rationals throughout, LP answers ship
machine-checkable certificates, searches are exhaustive or guarded.
"""

from .errors import (
    BadStratumBounds,
    DimensionMismatch,
    EnumerationTooLarge,
    FormatError,
    GuardError,
    HypothesisMismatch,
    IndexOutOfRange,
    InvalidModule,
    LengthMismatch,
    NotLeftInvariant,
    NotReflexiveTransitive,
    NotRightInvariant,
    RthyError,
    SearchTooLarge,
    ShapeMismatch,
    WrongHypothesisCount,
    ZeroReference,
)
from .exactmath import (
    INFEASIBLE,
    OPTIMAL,
    UNBOUNDED,
    LpBuilder,
    LpOutcome,
    LpProblem,
    Matrix,
    format_rational,
    lp_solve,
    parse_rational,
    rank,
    verify_certificate,
)
from .order import (
    FinitePreorder,
    all_downsets,
    chain,
    degradation_geq,
    discrete,
    down_closure,
    downsets_fixed,
    enhancement_geq,
    up_closure,
)
from .quantale import (
    Augmentation,
    CommutativeQuantale,
    FiniteQuantaleModule,
    FunctionAction,
    PermutationAction,
    Violation,
    action_from_names,
    augment,
    catalytic_order,
    check_morphism,
    covariant_transformations,
    free_image,
    induced_module,
    is_g_compatible,
    is_left_invariant,
    is_right_invariant,
    left_right_augmentations,
    reachability,
    ucrt_order,
    validate,
    validate_quantale,
)
from .monotone import (
    MINUS_INF,
    PLUS_INF,
    InterestingRelation,
    PartialValuation,
    cost,
    cost_witness,
    interesting_pairs,
    more_informative,
    value_from_json,
    value_to_json,
    yield_,
    yield_witness,
)
from .majorize import (
    Convertible,
    Encoding,
    NotConvertible,
    StochasticMap,
    Zonotope2,
    det_postprocessings,
    enumeration_guard,
    lorenz,
    majorizes,
    markotope_contains,
    orbit_encoding,
    relative_majorizes,
    zonotope,
    zonotope_includes,
)
from .measures import (
    convex_combination_weight,
    cva,
    deterministic_encodings,
    free_robustness,
    hull_member,
    nonconvexity,
    robustness,
    weight,
    weight_fmk,
)
from .possibilistic import (
    BoolEncoding,
    BoolStochasticMap,
    bool_majorizes,
    ceil,
    ceil_map,
    to_hypergraph,
)
from .channels import (
    ChannelEncoding,
    ChannelYield,
    CombWitness,
    apply_input,
    channel_equivalent,
    channel_yield,
    check_comb_witness,
    comb_simulates,
    delta_input,
)

__version__ = "0.1.0"

__all__ = [
    "BadStratumBounds", "DimensionMismatch", "EnumerationTooLarge",
    "FormatError", "GuardError", "HypothesisMismatch", "IndexOutOfRange",
    "InvalidModule", "LengthMismatch", "NotLeftInvariant",
    "NotReflexiveTransitive", "NotRightInvariant", "RthyError",
    "SearchTooLarge", "ShapeMismatch", "WrongHypothesisCount",
    "ZeroReference",
    "INFEASIBLE", "OPTIMAL", "UNBOUNDED", "LpBuilder", "LpOutcome",
    "LpProblem", "Matrix", "format_rational", "lp_solve", "parse_rational",
    "rank", "verify_certificate",
    "FinitePreorder", "all_downsets", "chain", "degradation_geq",
    "discrete", "down_closure", "downsets_fixed", "enhancement_geq",
    "up_closure",
    "Augmentation", "CommutativeQuantale", "FiniteQuantaleModule",
    "FunctionAction", "PermutationAction", "Violation", "action_from_names",
    "augment", "catalytic_order", "check_morphism",
    "covariant_transformations", "free_image", "induced_module",
    "is_g_compatible", "is_left_invariant", "is_right_invariant",
    "left_right_augmentations", "reachability", "ucrt_order", "validate",
    "validate_quantale",
    "MINUS_INF", "PLUS_INF", "InterestingRelation", "PartialValuation",
    "cost", "cost_witness", "interesting_pairs", "more_informative",
    "value_from_json", "value_to_json", "yield_", "yield_witness",
    "Convertible", "Encoding", "NotConvertible", "StochasticMap",
    "Zonotope2", "det_postprocessings", "enumeration_guard", "lorenz",
    "majorizes", "markotope_contains", "orbit_encoding",
    "relative_majorizes", "zonotope", "zonotope_includes",
    "convex_combination_weight", "cva", "deterministic_encodings",
    "free_robustness", "hull_member", "nonconvexity", "robustness",
    "weight", "weight_fmk",
    "BoolEncoding", "BoolStochasticMap", "bool_majorizes", "ceil",
    "ceil_map", "to_hypergraph",
    "ChannelEncoding", "ChannelYield", "CombWitness", "apply_input",
    "channel_equivalent", "channel_yield", "check_comb_witness",
    "comb_simulates", "delta_input",
]
