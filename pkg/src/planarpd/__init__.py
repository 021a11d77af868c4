"""Planar-network and cluster-algebra tests for positive definiteness, in exact arithmetic."""

from .numeric import (
    GaussianRational,
    Matrix,
    NoLDUError,
    SingularMatrixError,
    determinant,
    is_hermitian,
    ldu_decompose,
    leading_principal_minors,
    minor,
    parse_scalar,
    pd_oracle,
    rank_factorization,
)
from .jacobi import (
    JacobiFactor,
    Kind,
    adjacent_chain_row_addition,
    factor_to_matrix,
    factorize_general,
    factorize_invertible,
    factorize_ldu_form,
    row_swap_chain,
)
from .network import (
    Chip,
    PlanarNetwork,
    chip_from_factor,
    essential_tp_network,
    is_ldu_shape,
    line_weights,
    minor_lgv,
    network_from_factors,
    network_to_dot,
    pd_check_network,
    weight_matrix,
)
from .wiring import (
    Chamber,
    Color,
    Crossing,
    DoubleWiringDiagram,
    build_quiver,
    chamber_minors,
    chambers,
    standard_pd_diagram,
    validate_diagram,
    wiring_to_dot,
)
from .cluster import Quiver, Seed, explore, freeze, mutate_quiver, mutate_seed, pd_check_cluster

__version__ = "0.1.0"

__all__ = [
    "GaussianRational",
    "Matrix",
    "NoLDUError",
    "SingularMatrixError",
    "determinant",
    "is_hermitian",
    "ldu_decompose",
    "leading_principal_minors",
    "minor",
    "parse_scalar",
    "pd_oracle",
    "rank_factorization",
    "JacobiFactor",
    "Kind",
    "adjacent_chain_row_addition",
    "factor_to_matrix",
    "factorize_general",
    "factorize_invertible",
    "factorize_ldu_form",
    "row_swap_chain",
    "Chip",
    "PlanarNetwork",
    "chip_from_factor",
    "essential_tp_network",
    "is_ldu_shape",
    "line_weights",
    "minor_lgv",
    "network_from_factors",
    "network_to_dot",
    "pd_check_network",
    "weight_matrix",
    "Chamber",
    "Color",
    "Crossing",
    "DoubleWiringDiagram",
    "build_quiver",
    "chamber_minors",
    "chambers",
    "standard_pd_diagram",
    "validate_diagram",
    "wiring_to_dot",
    "Quiver",
    "Seed",
    "explore",
    "freeze",
    "mutate_quiver",
    "mutate_seed",
    "pd_check_cluster",
]
