"""Naturally labelled posets: families, bijections, counting, asymptotics."""

__version__ = "1.0.0"

from .bijections import (
    FISHBURN,
    P_12_34,
    P_12_43,
    P_21_43,
    P_3_12,
    P_43_12,
    P_ANCHORED_3_12,
    WILF_CLASS,
    BicolouredPermutation,
    BijectionError,
    DecoratedPoset,
    LabelledBinaryWord,
    PatternParseError,
    Permutation,
    StanleyGraph,
    VincularPattern,
    bicoloured_to_word,
    contains_pattern,
    decode_word,
    decorated_decode,
    decorated_encode,
    encode_word,
    enumerate_bicoloured,
    lambda_full_inverse,
    lambda_map,
    poset_from_stanley,
    psi_map,
    stanley_from_poset,
    word_to_bicoloured,
)
from .analysis import (
    FREE,
    GAMMA_DEFAULT,
    FitEstimate,
    FitMode,
    RatioSequence,
    TransformTable,
    direct_fit,
    log_of_count,
    make_model_series,
    ols_fit,
    ratio_transforms,
    ratios,
    transformed_curvature,
)
from .config import ResourceGuardError, active_backend, set_backend
from .counting import (
    CountSeries,
    EqId,
    GFId,
    MinimaTable,
    brute_force_avoider_count,
    change_of_variables_residual,
    check_functional_equation,
    generating_tree_counts,
    q_stirling_table,
    series_from_gf,
)
from .kernels import characterization_sweep, count_avoiders, dp_terms
from .oeis import (
    BFile,
    CompareReport,
    OeisUnavailableError,
    oeis_compare,
    oeis_fetch,
    parse_b_file,
    write_b_file,
)
from .posets import (
    BLANK,
    FORBIDDEN_PATTERNS,
    M0,
    M0_CORNER,
    M1,
    M2,
    M3,
    FamilyId,
    IncidenceMatrix,
    MatrixPattern,
    Poset,
    PosetError,
    count_family,
    count_family_by_minima,
    enumerate_family,
    is_in_family,
    matches_pattern,
    pattern_assignments,
)

__all__ = [
    "BLANK",
    "FISHBURN",
    "FORBIDDEN_PATTERNS",
    "FREE",
    "GAMMA_DEFAULT",
    "M0",
    "M0_CORNER",
    "M1",
    "M2",
    "M3",
    "P_12_34",
    "P_12_43",
    "P_21_43",
    "P_3_12",
    "P_43_12",
    "P_ANCHORED_3_12",
    "WILF_CLASS",
    "BFile",
    "BicolouredPermutation",
    "BijectionError",
    "CompareReport",
    "CountSeries",
    "DecoratedPoset",
    "EqId",
    "FamilyId",
    "FitEstimate",
    "FitMode",
    "GFId",
    "IncidenceMatrix",
    "LabelledBinaryWord",
    "MatrixPattern",
    "MinimaTable",
    "OeisUnavailableError",
    "PatternParseError",
    "Permutation",
    "Poset",
    "PosetError",
    "RatioSequence",
    "ResourceGuardError",
    "StanleyGraph",
    "TransformTable",
    "VincularPattern",
    "active_backend",
    "bicoloured_to_word",
    "brute_force_avoider_count",
    "change_of_variables_residual",
    "characterization_sweep",
    "check_functional_equation",
    "contains_pattern",
    "count_avoiders",
    "count_family",
    "count_family_by_minima",
    "decode_word",
    "decorated_decode",
    "decorated_encode",
    "direct_fit",
    "dp_terms",
    "encode_word",
    "enumerate_bicoloured",
    "enumerate_family",
    "generating_tree_counts",
    "is_in_family",
    "lambda_full_inverse",
    "lambda_map",
    "log_of_count",
    "make_model_series",
    "matches_pattern",
    "oeis_compare",
    "oeis_fetch",
    "ols_fit",
    "parse_b_file",
    "pattern_assignments",
    "poset_from_stanley",
    "psi_map",
    "q_stirling_table",
    "ratio_transforms",
    "ratios",
    "series_from_gf",
    "set_backend",
    "stanley_from_poset",
    "transformed_curvature",
    "word_to_bicoloured",
    "write_b_file",
    "__version__",
]
