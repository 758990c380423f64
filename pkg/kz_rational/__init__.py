"""Exact rational fundamental solutions of the KZ equations for the natural representation of S_n."""

from .models import (
    AssembledSolution,
    BasePointConfig,
    CheckReport,
    CheckResult,
    FundamentalSolution,
    GaussParams,
    N3Solution,
    PartialFractionSolution,
    PhiPair,
    SelftestConfig,
)
from .arith import RatFunc, RFMatrix, ground_types, rfmatrix_inverse, to_latex, u_ring, z_ring
from .config import (
    ConfigError,
    default_base_points,
    load_selftest_config,
    parse_base_points,
    parse_selftest_config,
)
from .symmetric import check_consistency, check_transposition_relations, kz_coefficient, perm_matrix
from .series import predicted_resonances, run_recursion, t_minus1_eigensystem
from .builder import check_degree_law, decompose_column, fundamental_solution, normalize_at
from .assembly import (
    assemble_product,
    equation_solution,
    oracle_report,
    swap_solution,
    verify_full_system,
)
from .coords import chain_rule_h_matrix, coordinate_maps, h_asymptotic_check, h_matrix, u_from_z, z_from_u
from .spectra import asymptotic_exponents, omega_eigensystem, omega_matrix, spectral_matrix_power
from .asymptotics import check_leading_asymptotics
from .hypergeom import build_n3_solution, factorization_check, gauss_params, rationality_certificate
from .serialization import matrix_from_document, matrix_to_document, solution_from_document, solution_to_document
from .explain import format_report
from .errors import KZError

__all__ = [
    "AssembledSolution",
    "BasePointConfig",
    "CheckReport",
    "CheckResult",
    "FundamentalSolution",
    "GaussParams",
    "N3Solution",
    "PartialFractionSolution",
    "PhiPair",
    "SelftestConfig",
    "RatFunc",
    "RFMatrix",
    "ground_types",
    "rfmatrix_inverse",
    "to_latex",
    "u_ring",
    "z_ring",
    "ConfigError",
    "default_base_points",
    "load_selftest_config",
    "parse_base_points",
    "parse_selftest_config",
    "check_consistency",
    "check_transposition_relations",
    "kz_coefficient",
    "perm_matrix",
    "predicted_resonances",
    "run_recursion",
    "t_minus1_eigensystem",
    "check_degree_law",
    "decompose_column",
    "fundamental_solution",
    "normalize_at",
    "assemble_product",
    "equation_solution",
    "oracle_report",
    "swap_solution",
    "verify_full_system",
    "chain_rule_h_matrix",
    "coordinate_maps",
    "h_asymptotic_check",
    "h_matrix",
    "u_from_z",
    "z_from_u",
    "asymptotic_exponents",
    "omega_eigensystem",
    "omega_matrix",
    "spectral_matrix_power",
    "check_leading_asymptotics",
    "build_n3_solution",
    "factorization_check",
    "gauss_params",
    "rationality_certificate",
    "matrix_from_document",
    "matrix_to_document",
    "solution_from_document",
    "solution_to_document",
    "format_report",
    "KZError",
]
