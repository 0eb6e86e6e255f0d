"""Balancing indices of integer matrices and signed multigraphs."""

from .balance import (
    bad_triples,
    bal,
    bal_skew,
    bal_symmetric,
    bal_tournament,
    classify,
    e_pairs,
    is_ternary_triple,
    local_lattice_matrix,
    localizer,
    matrix_primitive_decomposition,
    primitivity_lattice,
    ternary_triple_count,
    three_by_three_predicates,
    triangle_invariant,
)
from .bruteforce import oracle_bal, oracle_certificate, oracle_symmetric_image
from .certify import build_certificate, mu_lambda_membership, verify
from .errors import InternalError, OracleCapExceeded, ParseError
from .graphs import (
    SignedMultigraph,
    bal_multigraph,
    bal_with_loops,
    coboundary,
    local_lattice_graph,
    local_lattice_with_loops,
    primitive_decomposition,
    primitivity_index,
    psi,
    simple_graph_lambda_min,
    two_dim_basis,
    two_dim_least_multiple,
    wilson_two_isolates,
)
from .intlinalg import (
    Lattice,
    gcd_with_provenance,
    lattice_member,
    least_positive_multiple,
    smith_normal_form,
    solve_diophantine,
)
from .matrices import (
    IntMatrix,
    Permutation,
    ScaledMatrix,
    SignedCombination,
    conjugate,
    is_completely_symmetric,
    mean_matrix,
    stats,
)

__version__ = "0.1.0"

__all__ = [
    "IntMatrix",
    "Permutation",
    "ScaledMatrix",
    "SignedCombination",
    "SignedMultigraph",
    "Lattice",
    "InternalError",
    "OracleCapExceeded",
    "ParseError",
    "bad_triples",
    "bal",
    "bal_multigraph",
    "bal_skew",
    "bal_symmetric",
    "bal_tournament",
    "bal_with_loops",
    "build_certificate",
    "classify",
    "coboundary",
    "conjugate",
    "e_pairs",
    "gcd_with_provenance",
    "is_completely_symmetric",
    "is_ternary_triple",
    "lattice_member",
    "least_positive_multiple",
    "local_lattice_graph",
    "local_lattice_matrix",
    "local_lattice_with_loops",
    "localizer",
    "matrix_primitive_decomposition",
    "mean_matrix",
    "mu_lambda_membership",
    "oracle_bal",
    "oracle_certificate",
    "oracle_symmetric_image",
    "primitive_decomposition",
    "primitivity_index",
    "primitivity_lattice",
    "psi",
    "simple_graph_lambda_min",
    "smith_normal_form",
    "solve_diophantine",
    "stats",
    "ternary_triple_count",
    "three_by_three_predicates",
    "triangle_invariant",
    "two_dim_basis",
    "two_dim_least_multiple",
    "verify",
    "wilson_two_isolates",
]
