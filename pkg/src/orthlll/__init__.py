"""Exact, instrumented LLL reduction for orthogonal lattices."""

from .exactlin import NotFullRankError, oracle_kernel_basis
from .gso import GSO, compute as compute_gso
from .lll import ReductionTrace, is_lll_reduced, lll_reduce
from .ortho import (
    ExtractionError,
    KernelResult,
    build_extended,
    orthogonal_lattice_basis,
    threshold_K_general,
    threshold_K_heuristic,
    verify_kernel,
)
from .potential import partition_indices, potential_classic, potential_k

__all__ = [
    "NotFullRankError",
    "oracle_kernel_basis",
    "GSO",
    "compute_gso",
    "ReductionTrace",
    "is_lll_reduced",
    "lll_reduce",
    "ExtractionError",
    "KernelResult",
    "build_extended",
    "orthogonal_lattice_basis",
    "threshold_K_general",
    "threshold_K_heuristic",
    "verify_kernel",
    "partition_indices",
    "potential_classic",
    "potential_k",
]

__version__ = "0.1.0"
