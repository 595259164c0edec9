"""Numerical laboratory for pairs of truncated shifts on the bidisc:
inner functions, shift-invariant submodules and their quotient models,
frames of operator iterates, similarity transport, and orbit dynamics.
"""

from ._linalg import subspace_distance
from .hardy import (
    BidiscPoly,
    DegreePair,
    TruncatedSpace,
    adjoint_shift,
    inner_product,
    make_space,
    mult_operator,
    shift_matrix,
    shift_w,
    shift_z,
)
from .inner import InnerPoly, InnerSpec, build_inner, verify_unimodular
from .submodule import (
    DoublyCommuteReport,
    QuotientModel,
    SubmoduleModel,
    beurling_submodule,
    codimension_profile,
    doubly_commute_test,
    export_quotient,
    export_submodule,
    generated_submodule,
    jordan_identity_check,
    jordan_identity_residual,
    quotient,
    zero_submodule,
)
from .frames import (
    FrameReport,
    GuardError,
    InvariantViolation,
    IterateSystem,
    KernelCommuteReport,
    KernelInvarianceReport,
    OperatorTriple,
    frame_bounds,
    iterate,
    kernel_doubly_commutes,
    kernel_shift_invariance,
    synthesis_kernel,
)
from .models import (
    ModelRecovery,
    SimilarityWitness,
    UniquenessReport,
    certify_similarity,
    estimate_similarity,
    random_similarity,
    recover_model,
    transport,
    triple_from_quotient,
    uniqueness_of_L,
)
from .dynamics import (
    OrbitTrace,
    adjoint_decay,
    conjecture_probe,
    equivalent_frame_vector,
    partial_energy,
)
from .fixtures import (
    CATALOG,
    Fixture,
    FixtureChain,
    build_chain,
    catalog_inner_specs,
    get_fixture,
    list_fixtures,
)
from .runner import CHECK_NAMES, CheckResult, ExperimentConfig, RunOutcome, run

__version__ = "0.1.0"

__all__ = [
    "BidiscPoly",
    "DegreePair",
    "TruncatedSpace",
    "adjoint_shift",
    "inner_product",
    "make_space",
    "mult_operator",
    "shift_matrix",
    "shift_w",
    "shift_z",
    "InnerPoly",
    "InnerSpec",
    "build_inner",
    "verify_unimodular",
    "DoublyCommuteReport",
    "QuotientModel",
    "SubmoduleModel",
    "beurling_submodule",
    "codimension_profile",
    "doubly_commute_test",
    "export_quotient",
    "export_submodule",
    "generated_submodule",
    "jordan_identity_check",
    "jordan_identity_residual",
    "quotient",
    "zero_submodule",
    "FrameReport",
    "GuardError",
    "InvariantViolation",
    "IterateSystem",
    "KernelCommuteReport",
    "KernelInvarianceReport",
    "OperatorTriple",
    "frame_bounds",
    "iterate",
    "kernel_doubly_commutes",
    "kernel_shift_invariance",
    "synthesis_kernel",
    "ModelRecovery",
    "SimilarityWitness",
    "UniquenessReport",
    "certify_similarity",
    "estimate_similarity",
    "random_similarity",
    "recover_model",
    "transport",
    "triple_from_quotient",
    "uniqueness_of_L",
    "OrbitTrace",
    "adjoint_decay",
    "conjecture_probe",
    "equivalent_frame_vector",
    "partial_energy",
    "CATALOG",
    "Fixture",
    "FixtureChain",
    "build_chain",
    "catalog_inner_specs",
    "get_fixture",
    "list_fixtures",
    "CHECK_NAMES",
    "CheckResult",
    "ExperimentConfig",
    "RunOutcome",
    "run",
    "subspace_distance",
    "__version__",
]
