"""Hermitian self-orthogonal GRS codes over GF(q^2) and the quantum MDS
parameters they produce, with exact arithmetic and brute-force verification."""

from .gf import (
    DEFAULT_TABLE_BUDGET,
    ONE,
    ZERO,
    FieldContext,
    NonPrimeError,
    NotInBaseField,
    TableBudgetExceeded,
    make_context,
)
from .linalg import (
    BadShape,
    DimensionMismatch,
    Matrix,
    NonzeroSolutionNotFound,
    all_nonzero_kernel_vector,
    column_removal_preserves_rank,
    conjugate,
    matrix,
    nullspace_basis,
    rank,
    row_equivalent,
    rref,
    subfield_kernel_basis,
)
from .grs import (
    GrsCode,
    MdsResult,
    QuantumParams,
    generator_matrix,
    gram_check,
    hermitian_power_sum,
    is_hermitian_self_orthogonal,
    mds_check,
    propagate,
    quantum_params,
)
from .constructions import (
    CatalogEntry,
    CongruenceClass,
    ConstructionParams,
    HypothesisViolated,
    ResidueSet,
    SolvabilityRouteFailed,
    admissible_h_values,
    build_catalog,
    build_coefficient_matrix,
    build_locators,
    congruence_class,
    construct,
    kmax,
    lemma_k_bound,
    lemma_t_range,
    make_params,
    odd_prime_powers,
    params_residue_set,
    residue_pattern,
    residue_set,
    theorem_instances,
)
from .oracle import (
    BudgetExceeded,
    VerificationReport,
    brute_force_residue_set,
    exhaustive_min_distance,
    full_verify,
)

__version__ = "0.1.0"
