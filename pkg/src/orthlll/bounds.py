"""Closed-form swap-count bounds for reducing the scaled extended basis.

All logarithms are base 2. ``log_norm_a`` is ``log2 ||A||`` where ``||A||``
is the largest Euclidean norm among the rows and columns of ``A``.
"""

from dataclasses import dataclass
from typing import Optional

import mpmath

from .exactlin import determinant, matrix_norm_bound
from .potential import PRECISION, half_log2, log2_swap_gain

__all__ = [
    "BoundReport",
    "log_norm",
    "swap_bound_theorem2",
    "swap_bound_classical",
    "classical_crossover_log_k",
    "Table1Row",
    "table1_row",
    "leading_minor_nonzero",
]


def log_norm(a, prec=PRECISION):
    """``log2 ||A||`` computed from the exact squared norm bound."""
    return half_log2(matrix_norm_bound(a), prec)


def leading_minor_nonzero(a):
    """Whether the top k x k block of the n x k matrix ``a`` is invertible."""
    k = len(a[0])
    return determinant([row[:k] for row in a[:k]]) != 0


def swap_bound_theorem2(n, k, log_norm_a, prec=PRECISION):
    """K-independent swap bound ``(k(n - k/2) log||A|| + k^3 + (n-k)k) / log2(2/sqrt3)``."""
    if not 1 <= k < n:
        raise ValueError(f"need 1 <= k < n, got n={n}, k={k}")
    with mpmath.workprec(prec):
        num = k * (n - mpmath.mpf(k) / 2) * log_norm_a + k**3 + (n - k) * k
        return num / log2_swap_gain(prec)


def swap_bound_classical(n, k, log_k, log_norm_a, prec=PRECISION):
    """Bound from the classical potential, linear in ``log K``."""
    if not 1 <= k < n:
        raise ValueError(f"need 1 <= k < n, got n={n}, k={k}")
    with mpmath.workprec(prec):
        weight = mpmath.mpf(k * (2 * n - k + 1)) / 2
        return weight * (log_k + log_norm_a) / log2_swap_gain(prec)


def classical_crossover_log_k(n, k, log_norm_a, prec=PRECISION):
    """The ``log2 K`` above which the classical bound exceeds the K-independent one."""
    with mpmath.workprec(prec):
        weight = mpmath.mpf(k * (2 * n - k + 1)) / 2
        target = swap_bound_theorem2(n, k, log_norm_a, prec) * log2_swap_gain(prec)
        return target / weight - log_norm_a


@dataclass
class BoundReport:
    n: int
    k: int
    log_norm_A: mpmath.mpf
    bound_theorem2: mpmath.mpf
    bound_classical: mpmath.mpf
    bound_potential_min_k: Optional[mpmath.mpf]
    measured_swaps: int
    leading_minor_nonzero: Optional[bool] = None

    def satisfied(self, slack=mpmath.mpf("1e-6")):
        bounds = [self.bound_theorem2, self.bound_classical]
        if self.bound_potential_min_k is not None:
            bounds.append(self.bound_potential_min_k)
        return all(self.measured_swaps <= b + slack for b in bounds)

    def to_dict(self):
        def num(x):
            return None if x is None else mpmath.nstr(x, 20)

        return {
            "n": self.n,
            "k": self.k,
            "log_norm_A": num(self.log_norm_A),
            "bound_theorem2": num(self.bound_theorem2),
            "bound_classical": num(self.bound_classical),
            "bound_potential_min_k": num(self.bound_potential_min_k),
            "measured_swaps": self.measured_swaps,
            "leading_minor_nonzero": self.leading_minor_nonzero,
        }


_TABLE1_ORDERS = {
    "one": ("O(n^2 log n + n alpha)", "O(n^2 + n alpha)", "O(n alpha)"),
    "half": ("O(n^3 log n + n^3 alpha)", "O(n^3 + n^2 alpha)", "O(n^3 + n^2 alpha)"),
    "n_minus_1": ("O(n^2 alpha)", "O(n^2 alpha)", "O(n^3 + n alpha)"),
}


@dataclass(frozen=True)
class Table1Row:
    n: int
    k: int
    alpha: mpmath.mpf
    classical: mpmath.mpf
    heuristic: mpmath.mpf
    new: mpmath.mpf
    orders: tuple


def table1_row(n, k_mode, alpha, c=1, prec=PRECISION):
    """Instantiate one row of the swap-bound comparison with explicit constants.

    ``k_mode`` is ``"one"``, ``"half"`` or ``"n_minus_1"``. The classical
    column plugs the general threshold's ``log K`` into the classical-potential
    bound, the heuristic column plugs ``c*n + k/(n-k) * alpha``, and the last
    column is the K-independent bound.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    k = {"one": 1, "half": max(1, n // 2), "n_minus_1": n - 1}[k_mode]
    with mpmath.workprec(prec):
        alpha = mpmath.mpf(alpha)
        d = n - k
        log_k_general = mpmath.mpf(n - 1) / 2 + mpmath.mpf(d) / 2 * mpmath.log(d, 2) + k * alpha
        log_k_heuristic = c * n + mpmath.mpf(k) / d * alpha
        return Table1Row(
            n,
            k,
            alpha,
            swap_bound_classical(n, k, log_k_general, alpha, prec),
            swap_bound_classical(n, k, log_k_heuristic, alpha, prec),
            swap_bound_theorem2(n, k, alpha, prec),
            _TABLE1_ORDERS[k_mode],
        )
