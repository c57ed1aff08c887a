"""Orthogonal lattices through LLL on the scaled extended basis.

For an n x k integer matrix ``A`` of full column rank, the extended basis
stacks ``K * A^T`` on top of ``I_n`` (n columns of dimension n + k). For
``K`` large enough, the first n - k columns of its LLL-reduced form vanish on
the top k coordinates and their bottom parts form an LLL-reduced basis of
``{m in Z^n : A^T m = 0}``.
"""

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from . import gso as _gso
from .exactlin import (
    NotFullRankError,
    columns,
    from_columns,
    gram_matrix,
    determinant,
    in_lattice,
    matmul,
    matrix_norm_bound,
    oracle_kernel_basis,
    rank,
    same_lattice,
    transpose,
)
from .lll import DEFAULT_DELTA, alpha, is_lll_reduced, lll_reduce

__all__ = [
    "ExtractionError",
    "SubThresholdWarning",
    "ExtendedBasis",
    "KernelResult",
    "build_extended",
    "threshold_K_general",
    "threshold_K_heuristic",
    "orthogonal_lattice_basis",
    "extract_row_lattice_basis",
    "verify_kernel",
    "verify_output_separation",
    "embed",
    "erase",
]


class ExtractionError(RuntimeError):
    """The reduced basis does not have the expected zero top-left block."""


class SubThresholdWarning(UserWarning):
    pass


def _check_a(a):
    if not a or not a[0]:
        raise ValueError("empty matrix")
    if rank(a) != len(a[0]):
        raise NotFullRankError("not full column rank")


def embed(v, k):
    """Prefix ``k`` zeros to a vector of Z^n."""
    return [0] * k + list(v)


def erase(v, k):
    """Drop the first ``k`` coordinates of a vector of Z^(n+k)."""
    return list(v[k:])


@dataclass
class ExtendedBasis:
    a: list
    K: int
    basis: list  # n columns of length n + k

    @property
    def n(self):
        return len(self.a)

    @property
    def k(self):
        return len(self.a[0])


def build_extended(a, K):
    """Columns of ``[[K * A^T], [I_n]]``."""
    _check_a(a)
    if K < 1:
        raise ValueError("K must be a positive integer")
    n = len(a)
    cols = [[K * x for x in a[i]] + [int(t == i) for t in range(n)] for i in range(n)]
    return ExtendedBasis([list(r) for r in a], K, cols)


def _iroot_floor(x, e):
    """Largest integer r with r**e <= x, for x >= 0."""
    if x < 2:
        return x
    r = 1 << -(-x.bit_length() // e)  # upper estimate
    while True:
        s = ((e - 1) * r + x // r ** (e - 1)) // e
        if s >= r:
            break
        r = s
    while r**e > x:
        r -= 1
    while (r + 1) ** e <= x:
        r += 1
    return r


def threshold_K_general(a):
    """Smallest K with ``K > 2^((n-1)/2) (n-k)^((n-k)/2) ||A||^k``.

    The right-hand side squared, ``2^(n-1) (n-k)^(n-k) N^k`` with ``N`` the
    squared norm bound, is an integer, so the strict inequality is decided
    exactly with an integer square root.
    """
    _check_a(a)
    n, k = len(a), len(a[0])
    if n == k:
        raise ValueError("kernel is trivial")
    sq = 2 ** (n - 1) * (n - k) ** (n - k) * matrix_norm_bound(a) ** k
    return isqrt(sq) + 1


def threshold_K_heuristic(a, c=1):
    """Smallest K with ``K > 2^(c n) ||A||^(k/(n-k))``.

    Raised to the power ``2(n-k)`` both sides are integers; the comparison is
    exact.
    """
    _check_a(a)
    n, k = len(a), len(a[0])
    if n == k:
        raise ValueError("kernel is trivial")
    if c < 0:
        raise ValueError("c must be non-negative")
    e = 2 * (n - k)
    target = 2 ** (c * n * e) * matrix_norm_bound(a) ** k
    return _iroot_floor(target, e) + 1


@dataclass
class KernelResult:
    C: list  # n x (n-k), columns form the kernel basis
    M: list  # k x k
    N: list  # n x k
    K_used: int
    swap_count: int
    reduced: list = field(repr=False)  # reduced extended basis, as columns
    trace: object = field(repr=False, default=None)
    warnings: list = field(default_factory=list)
    A: list = field(repr=False, default=None)

    @property
    def kernel_columns(self):
        return columns(self.C)


def orthogonal_lattice_basis(
    a,
    mode="general",
    K=None,
    c=1,
    delta=DEFAULT_DELTA,
    hook=None,
    checkpoints=False,
):
    """LLL-reduced basis of the orthogonal lattice of ``a``.

    Args:
        a: n x k integer matrix (list of rows), full column rank, n > k.
        mode: ``"general"`` (provable threshold), ``"heuristic"`` (needs
            ``c``), or ``"explicit"`` (uses ``K``). Passing ``K`` alone
            implies ``"explicit"``.
        hook, checkpoints: forwarded to :func:`lll_reduce`.

    Raises:
        ExtractionError: the reduced basis lacks the zero top-left block,
            which happens when K is too small.
    """
    _check_a(a)
    n, k = len(a), len(a[0])
    if n == k:
        raise ValueError("kernel is trivial")
    if K is not None:
        mode = "explicit"
    notes = []
    general = threshold_K_general(a)
    if mode == "general":
        K = general
    elif mode == "heuristic":
        K = threshold_K_heuristic(a, c)
    elif mode == "explicit":
        if K is None:
            raise ValueError("explicit mode needs K")
        K = int(K)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if K < general:
        msg = f"K={K} is below the general threshold {general}"
        notes.append(msg)
        warnings.warn(msg, SubThresholdWarning, stacklevel=2)

    ext = build_extended(a, K)
    reduced, trace = lll_reduce(ext.basis, delta, hook=hook, checkpoints=checkpoints)
    d = n - k
    if any(x != 0 for col in reduced[:d] for x in col[:k]):
        raise ExtractionError(
            f"extraction failed: top-left {k}x{d} block is not zero (K={K} too small?)"
        )
    c_cols = [erase(col, k) for col in reduced[:d]]
    m_cols = [col[:k] for col in reduced[d:]]
    n_cols = [erase(col, k) for col in reduced[d:]]
    return KernelResult(
        C=from_columns(c_cols),
        M=from_columns(m_cols),
        N=from_columns(n_cols),
        K_used=K,
        swap_count=trace.swap_count,
        reduced=reduced,
        trace=trace,
        warnings=notes,
        A=[list(r) for r in a],
    )


def extract_row_lattice_basis(result):
    """``M / K`` as exact rationals, checked to be a basis of the row lattice of ``A``.

    The row lattice is the set of integer combinations of the rows of ``A``,
    a full-rank lattice of Z^k.
    """
    a, K = result.A, result.K_used
    scaled = [[Fraction(x, K) for x in row] for row in result.M]
    if any(x.denominator != 1 for row in scaled for x in row):
        raise ExtractionError("extraction failed: M is not divisible by K")
    ints = [[int(x) for x in row] for row in scaled]
    # witness: the top block equals K * A^T times the bottom block
    if matmul(transpose(a), result.N) != ints:
        raise ExtractionError("extraction failed: M != K * A^T N")
    basis = columns(ints)
    if rank(ints) != len(a[0]) or not all(in_lattice(basis, row) for row in a):
        raise ExtractionError("extraction failed: M/K does not generate the row lattice")
    return scaled


@dataclass
class KernelReport:
    annihilated: bool
    full_rank: bool
    lattice_equal: bool
    lll_reduced: bool
    failures: list

    @property
    def ok(self):
        return not self.failures


def verify_kernel(a, c, delta=DEFAULT_DELTA):
    """Check a candidate kernel basis ``c`` (n x (n-k), columns) against ``a``."""
    n, k = len(a), len(a[0])
    failures = []
    prod = matmul(transpose(a), c) if c else []
    annihilated = all(x == 0 for row in prod for x in row)
    if not annihilated:
        failures.append("A^T C != 0")
    cols = columns(c) if c else []
    full_rank = bool(c) and rank(c) == n - k and len(cols) == n - k
    if not full_rank:
        failures.append(f"rank(C) != {n - k}")
    lattice_equal = full_rank and same_lattice(cols, columns(oracle_kernel_basis(a)))
    if not lattice_equal:
        failures.append("C does not generate the orthogonal lattice")
    lll_ok = full_rank and is_lll_reduced(cols, delta)
    if not lll_ok:
        failures.append("C is not LLL-reduced")
    return KernelReport(annihilated, full_rank, lattice_equal, lll_ok, failures)


@dataclass
class SeparationReport:
    small: list
    large: list
    separated: bool
    floor_ok: bool
    failures: list

    @property
    def ok(self):
        return not self.failures


def verify_output_separation(reduced, n, k, K, delta=DEFAULT_DELTA):
    """Check the Gram-Schmidt norm split of a reduced extended basis.

    The first n - k squared norms must all be strictly below the last k, and
    the j-th of the last k (1-based) must be at least ``alpha^(1-j) K^2``.
    """
    r = _gso.compute(reduced).r
    d = n - k
    small, large = list(r[:d]), list(r[d:])
    failures = []
    separated = not small or not large or max(small) < min(large)
    if not separated:
        failures.append("Gram-Schmidt norms are not separated")
    a = alpha(delta)
    floor_ok = all(x >= Fraction(K * K) / a**j for j, x in enumerate(large))
    if not floor_ok:
        failures.append("large Gram-Schmidt norms below the K floor")
    return SeparationReport(small, large, separated, floor_ok, failures)


def orthogonal_lattice_det_sq(a):
    """``det(L)^2`` of the orthogonal lattice, via the oracle basis."""
    cols = columns(oracle_kernel_basis(a))
    return determinant(gram_matrix(cols))
