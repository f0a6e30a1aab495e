"""Quantum F-polynomials of cluster algebras.

Exact arithmetic over Z[q^(+-1/2)], based quantum tori, quantum seed
mutation, and two independent routes to quantum F-polynomials, plus
closed forms for induced trees and chains of a quiver.
"""
from .errors import (
    BadDirection,
    EntriesOutOfRange,
    EpsilonMismatch,
    InexactDivision,
    NegativeExponent,
    NotCompatible,
    NotDivisible,
    NotInColumnSpan,
    NotProportional,
    NotSkewSymmetric,
    NotSkewSymmetrizable,
    NotTypeA,
    QClusterError,
    RankMismatch,
    UnsupportedExponent,
)
from .qscalar import ONE, ZERO, QLaurent, qlaurent_bar, qlaurent_eval_one, qlaurent_mul, t_binomial
from .torus import (
    SkewForm,
    TorusElement,
    exact_left_divide,
    exact_right_divide,
    frame_product,
    ordered_product,
    torus_bar,
    torus_mul,
)
from .classical import (
    CommPoly,
    ExchangeData,
    classical_f_polys,
    denominator_vectors,
    extended_g_vectors,
    find_symmetrizer,
    g_vectors,
    matrix_mutate,
    mutate_matrix,
    principal_matrix,
)
from .seed import (
    CompatiblePair,
    QuantumSeed,
    SeedCache,
    YHat,
    check_compatible,
    extended_principal_pair,
    lambda_mutate,
    principal_lambda,
    principal_pair,
    seed_along,
    seed_monomial,
    seed_mutate,
    yhat_current,
)
from .fpoly import (
    LambdaShift,
    QFPoly,
    RhoTable,
    coefficient_symmetry_check,
    extract_all,
    extract_qfpoly,
    l_apply,
    qfpoly_mutate,
    qfpolys_by_recurrence,
    rho_update,
    right_fpoly,
    substitute_yhat,
    verify_general_coefficients,
)
from .trees import (
    GammaData,
    Quiver,
    TreeSubset,
    closed_subsets,
    gamma_rank,
    quiver_from_matrix,
    tree_gvector,
    tree_qfpoly,
    typeA_chains,
    typeA_gvector,
)

__version__ = "0.1.0"
