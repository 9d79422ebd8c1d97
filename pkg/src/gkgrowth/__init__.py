"""Exact growth filtrations, growth-degree estimation and
growth-equivalence certificates for finitely generated subalgebras of
matrix algebras over commutative coefficient rings, entirely over QQ.
"""

from ._ratio import QQ
from .algebras import (
    AlgebraPresentation,
    GrowthTable,
    adjoin_generators,
    element_membership_at_level,
    growth_sequence,
)
from .charpoly import (
    CharPolyPair,
    UPoly,
    cayley_hamilton_check,
    char_poly,
    determinant,
    regular_rep_charpoly,
    regular_rep_matrix,
)
from .closure import (
    DiagonalEmbedding,
    ModuleFinitenessReport,
    TraceClosure,
    build_diagonal_embedding_example,
    elementary_symmetric,
    module_finiteness_check,
    trace_algebra_generators,
)
from .errors import (
    CapExceededError,
    GkGrowthError,
    InputError,
    InsufficientDataError,
    InternalCheckError,
    NegativeExponentError,
    NonStabilizingError,
    NotSplitOverBaseError,
    PolyParseError,
    RingMismatchError,
    ShapeMismatchError,
    UnknownVariableError,
)
from .fdalg import (
    FiniteDimAlgebra,
    WedderburnData,
    central_primitive_idempotents,
    close_to_fdalg,
    decompose_element,
    nilpotence_degree,
    radical,
    wedderburn_complement,
)
from .growth import (
    CertificateReport,
    DominanceReport,
    EquivalenceReport,
    GkEstimate,
    difference_degree,
    dominance_check,
    equivalence_check,
    gk_estimate,
    verify_bimodule_certificate,
    verify_central_multiplier_certificate,
    verify_finite_commuting_adjoin_certificate,
    verify_nilpotent_adjoin_certificate,
)
from .matrices import Matrix, mat_mul
from .parse import parse_entry, parse_poly_expr, parse_ratfunc_expr
from .pipeline import (
    PipelineConfig,
    PipelineReport,
    PipelineStage,
    ReducedWord,
    enumerate_reduced_words,
    run_pipeline,
)
from .poly import (
    Poly,
    PolyRing,
    RatFunc,
    RatFuncField,
    RationalField,
    uni_divmod,
    uni_gcd,
)
from .spans import (
    EchelonBasis,
    membership_ratfunc,
    solve_q_linear,
)

__version__ = "0.1.0"
