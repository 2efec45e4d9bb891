"""Toric ideals as integer-matrix parametrizations, and their sums."""

from .binomials import (
    Binomial,
    IdealPresentation,
    Monomial,
    VariableSet,
    dehomogenize_binomial,
    format_binomial,
    format_monomial,
    homogenize_binomial,
    parse_binomial,
    relabel_binomial,
    split_disjoint,
    total_degree,
)
from .exact_linalg import (
    IntegerMatrix,
    LatticeBasis,
    RationalMatrix,
    SmithDecomposition,
    clear_denominators,
    determinant,
    extend_to_basis,
    hermite_normal_form,
    independent_rows,
    inverse_and_clear,
    kernel_lattice,
    rank,
    saturate_lattice,
    smith_normal_form,
    solve_row_rational,
)
from .oracle import (
    EQUAL_UP_TO_DEGREE,
    MISSING_IN_KERNEL,
    MISSING_IN_SUM,
    CertificationVerdict,
    DegreeBound,
    certify_presentation,
    certify_sum,
    default_degree_bound,
    enumerate_kernel_binomials,
    membership_by_classes,
    reduces_to_zero,
    rewrite_chain,
)
from .parametrization import (
    ConstructionError,
    HomogeneityCertificate,
    Parametrization,
    PinResult,
    contains_binomial,
    dehomogenize_parametrization,
    dimension,
    evaluate,
    homogeneity_certificate,
    is_maximal_rank,
    normalize_pin,
    parametrization_from_lattice,
    reparametrize,
)
from .sums import (
    FamilyReport,
    GraphComponent,
    IdealFamilyGraph,
    SumConstruction,
    build_family_graph,
    sum_disjoint,
    sum_family,
    sum_shared,
)

__version__ = "0.1.0"

__all__ = [
    "Binomial",
    "CertificationVerdict",
    "ConstructionError",
    "DegreeBound",
    "EQUAL_UP_TO_DEGREE",
    "FamilyReport",
    "GraphComponent",
    "HomogeneityCertificate",
    "IdealFamilyGraph",
    "IdealPresentation",
    "IntegerMatrix",
    "LatticeBasis",
    "MISSING_IN_KERNEL",
    "MISSING_IN_SUM",
    "Monomial",
    "Parametrization",
    "PinResult",
    "RationalMatrix",
    "SmithDecomposition",
    "SumConstruction",
    "VariableSet",
    "build_family_graph",
    "certify_presentation",
    "certify_sum",
    "clear_denominators",
    "contains_binomial",
    "default_degree_bound",
    "dehomogenize_binomial",
    "dehomogenize_parametrization",
    "determinant",
    "dimension",
    "enumerate_kernel_binomials",
    "evaluate",
    "extend_to_basis",
    "format_binomial",
    "format_monomial",
    "hermite_normal_form",
    "homogeneity_certificate",
    "homogenize_binomial",
    "independent_rows",
    "inverse_and_clear",
    "is_maximal_rank",
    "kernel_lattice",
    "membership_by_classes",
    "normalize_pin",
    "parametrization_from_lattice",
    "parse_binomial",
    "rank",
    "reduces_to_zero",
    "relabel_binomial",
    "reparametrize",
    "rewrite_chain",
    "saturate_lattice",
    "smith_normal_form",
    "solve_row_rational",
    "split_disjoint",
    "sum_disjoint",
    "sum_family",
    "sum_shared",
    "total_degree",
]
