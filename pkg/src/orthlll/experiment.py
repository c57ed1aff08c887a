"""K-sweep experiment: swap counts of the orthogonal-lattice pipeline versus bounds.

Random matrices come from numpy's PCG64 generator (``numpy.random.default_rng``)
seeded with a 64-bit integer, so a seed pins the instance on every platform.
"""

import csv
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import mpmath
import numpy as np

from .bounds import (
    classical_crossover_log_k,
    log_norm,
    swap_bound_classical,
    swap_bound_theorem2,
)
from .exactlin import rank
from .ortho import orthogonal_lattice_basis, threshold_K_general
from .potential import PRECISION, half_log2, swap_bound_from_potentials

__all__ = ["CSV_HEADER", "SweepRow", "random_full_rank", "run_sweep", "write_csv", "crossover_summary"]

CSV_HEADER = [
    "n",
    "k",
    "entry_bits",
    "sweep_i",
    "K_bits",
    "swaps",
    "bound_thm2",
    "bound_classical",
    "bound_potential",
]


@dataclass(frozen=True)
class SweepRow:
    n: int
    k: int
    entry_bits: int
    sweep_i: int
    K: int
    swaps: int
    bound_thm2: mpmath.mpf
    bound_classical: mpmath.mpf
    bound_potential: mpmath.mpf

    @property
    def K_bits(self):
        return self.K.bit_length()

    def csv_fields(self):
        return [
            self.n,
            self.k,
            self.entry_bits,
            self.sweep_i,
            self.K_bits,
            self.swaps,
            f"{float(self.bound_thm2):.6f}",
            f"{float(self.bound_classical):.6f}",
            f"{float(self.bound_potential):.6f}",
        ]


def random_full_rank(n, k, bits, seed):
    """n x k matrix with entries uniform in [-2^bits, 2^bits], resampled until rank k."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    if not 0 <= bits <= 62:
        raise ValueError("entry bits must be in 0..62")
    rng = np.random.default_rng(seed)
    lim = 2**bits
    while True:
        a = rng.integers(-lim, lim, size=(n, k), endpoint=True).tolist()
        if rank(a) == k:
            return a


def _one_run(args):
    a, K, sweep_i, entry_bits, prec = args
    n, k = len(a), len(a[0])
    res = orthogonal_lattice_basis(a, K=K)
    tr = res.trace
    with mpmath.workprec(prec):
        lna = log_norm(a, prec)
        pot = min(
            swap_bound_from_potentials(tr.initial_norms, tr.final_norms, kk, prec)
            for kk in range(1, n + 1)
        )
        return SweepRow(
            n,
            k,
            entry_bits,
            sweep_i,
            K,
            res.swap_count,
            swap_bound_theorem2(n, k, lna, prec),
            swap_bound_classical(n, k, half_log2(K * K, prec), lna, prec),
            pot,
        )


def run_sweep(a, count, entry_bits=None, jobs=1, prec=PRECISION):
    """Run the pipeline at ``K0 * 2^i`` for ``i < count``, K0 the general threshold.

    Rows come back ordered by sweep index whatever ``jobs`` is.
    """
    if count < 1:
        raise ValueError("sweep count must be positive")
    if entry_bits is None:
        entry_bits = max(abs(x) for row in a for x in row).bit_length()
    k0 = threshold_K_general(a)
    tasks = [(a, k0 << i, i, entry_bits, prec) for i in range(count)]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            return list(pool.map(_one_run, tasks))
    return [_one_run(t) for t in tasks]


def write_csv(rows, fh):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow(r.csv_fields())


def crossover_summary(a, rows, prec=PRECISION):
    """Where the classical bound overtakes the K-independent one, per row.

    Returns ``(crossover_log2_K, [(sweep_i, above_crossover, thm2_below_classical)])``.
    """
    n, k = len(a), len(a[0])
    with mpmath.workprec(prec):
        cross = classical_crossover_log_k(n, k, log_norm(a, prec), prec)
        out = []
        for r in rows:
            above = half_log2(r.K * r.K, prec) > cross
            out.append((r.sweep_i, above, r.bound_thm2 < r.bound_classical))
    return cross, out
