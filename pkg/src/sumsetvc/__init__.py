"""Exact machinery for VC dimension, interpolation degree and slice rank of
sumsets of set families, plus theorem-verification harnesses at desk scale."""

__version__ = "0.1.0"

from .clp import (
    CLPBoundReport,
    DiagonalReport,
    SliceDecomposition,
    SliceTerm,
    SumTensor,
    clp_matrix,
    diagonal_slice_rank_bounds,
    reconstruction_matches,
    slice_decompose,
    sum_tensor,
    verify_clp_bound,
)
from .errors import (
    DimensionMismatchError,
    EmptyFamilyError,
    FamilyFormatError,
    ParameterError,
    ResourceLimitError,
    SumsetVCError,
    WitnessNotFoundError,
)
from .families import (
    FamilyKind,
    PointSet,
    SetFamily,
    binom_sum,
    embed_01,
    family_from_points,
    format_family_text,
    generate_family,
    k_fold_sumset,
    pairwise_family,
    parse_family_text,
)
from .interpolation import (
    PartialFunction,
    deg_on_set,
    evaluation_matrix,
    find_unshattered_witness,
    int_deg,
    represent_monomial,
)
from .linalg import FieldMatrix, rank
from .polynomials import (
    MonomialBasis,
    ReducedPolynomial,
    indicator_of_zero,
    monomial_basis,
    monomial_count,
    random_polynomial,
)
from .sampling import SplitMix64, sample_distinct
from .vc import ShatterReport, is_shattered, shattered_sets, vc_dim
from .verify import (
    CounterexampleReport,
    EvidenceRow,
    EvidenceTable,
    TheoremId,
    VerificationReport,
    check_instance,
    counterexample_demo,
    exhaustive_scan,
    open_question_constraint,
    random_scan,
    search_open_question,
)

__all__ = [
    "__version__",
    "SumsetVCError",
    "EmptyFamilyError",
    "DimensionMismatchError",
    "ParameterError",
    "ResourceLimitError",
    "WitnessNotFoundError",
    "FamilyFormatError",
    "SetFamily",
    "PointSet",
    "FamilyKind",
    "binom_sum",
    "pairwise_family",
    "k_fold_sumset",
    "embed_01",
    "family_from_points",
    "generate_family",
    "format_family_text",
    "parse_family_text",
    "ShatterReport",
    "is_shattered",
    "shattered_sets",
    "vc_dim",
    "FieldMatrix",
    "rank",
    "MonomialBasis",
    "ReducedPolynomial",
    "monomial_count",
    "monomial_basis",
    "indicator_of_zero",
    "random_polynomial",
    "PartialFunction",
    "evaluation_matrix",
    "deg_on_set",
    "int_deg",
    "find_unshattered_witness",
    "represent_monomial",
    "CLPBoundReport",
    "SliceTerm",
    "SliceDecomposition",
    "SumTensor",
    "DiagonalReport",
    "clp_matrix",
    "verify_clp_bound",
    "slice_decompose",
    "reconstruction_matches",
    "sum_tensor",
    "diagonal_slice_rank_bounds",
    "TheoremId",
    "VerificationReport",
    "CounterexampleReport",
    "EvidenceRow",
    "EvidenceTable",
    "check_instance",
    "exhaustive_scan",
    "random_scan",
    "counterexample_demo",
    "search_open_question",
    "open_question_constraint",
    "SplitMix64",
    "sample_distinct",
]
