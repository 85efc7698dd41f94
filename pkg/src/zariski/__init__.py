"""Exact Zariski decomposition in rational intersection spaces."""

from .cones import (
    IntersectionSpace,
    find_effective_nef,
    is_effective,
    is_nef,
    is_nef_on_subspace,
    max_vectors,
    negative_definite_sublattice,
    pairing,
    support,
    validate_space,
)
from .decomposition import (
    AlgorithmTrace,
    ZariskiDecomposition,
    build_m2k_family,
    decompose_direct,
    decompose_oracle,
    decompose_quasi_effective,
    decompose_zariski,
    is_numerically_equivalent,
    is_quasi_effective,
    verify_decomposition,
)
from .exact_linalg import (
    RationalMatrix,
    determinant,
    invert,
    is_negative_definite,
    solve_linear_system,
)

__all__ = [
    "AlgorithmTrace",
    "IntersectionSpace",
    "RationalMatrix",
    "ZariskiDecomposition",
    "build_m2k_family",
    "decompose_direct",
    "decompose_oracle",
    "decompose_quasi_effective",
    "decompose_zariski",
    "determinant",
    "find_effective_nef",
    "invert",
    "is_effective",
    "is_negative_definite",
    "is_nef",
    "is_nef_on_subspace",
    "is_numerically_equivalent",
    "is_quasi_effective",
    "max_vectors",
    "negative_definite_sublattice",
    "pairing",
    "solve_linear_system",
    "support",
    "validate_space",
    "verify_decomposition",
]
