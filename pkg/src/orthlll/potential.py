"""Classical and k-th LLL potentials over squared Gram-Schmidt norms.

Potentials are evaluated in base-2 logarithms with mpmath at a configurable
working precision (128 bits by default). Index sets reported to callers are
1-based, matching the usual presentation of the potential; everything else
in the package is 0-based.
"""

from dataclasses import dataclass
from fractions import Fraction

import mpmath

__all__ = [
    "PRECISION",
    "SLACK",
    "IndexPartition",
    "log2_swap_gain",
    "half_log2",
    "partition_indices",
    "potential_classic",
    "potential_k",
    "SwapDecrease",
    "DecreaseReport",
    "verify_swap_decrease",
    "swap_bound_from_potentials",
    "MissingCheckpointsError",
]

PRECISION = 128
SLACK = mpmath.mpf("1e-9")


class MissingCheckpointsError(ValueError):
    pass


@dataclass(frozen=True)
class IndexPartition:
    """``small`` holds the n-k positions with the smallest norms, ``large`` the rest."""

    k: int
    small: tuple
    large: tuple


def log2_swap_gain(prec=PRECISION):
    """``log2(2/sqrt(3))``, the minimal potential drop per swap."""
    with mpmath.workprec(prec):
        return 1 - mpmath.log(3, 2) / 2


def half_log2(x, prec=PRECISION):
    """``log2(sqrt(x))`` for a positive rational ``x``."""
    x = Fraction(x)
    if x <= 0:
        raise ValueError("logarithm of a non-positive norm")
    with mpmath.workprec(prec):
        return (mpmath.log(x.numerator, 2) - mpmath.log(x.denominator, 2)) / 2


def partition_indices(norms, k):
    """Split positions into the n-k smallest norms and the k others.

    Ties at the boundary go to the smaller index first, which gives the
    lexicographically smallest choice of small positions.

    >>> partition_indices([25, 1, 16, 4], 2)
    IndexPartition(k=2, small=(2, 4), large=(1, 3))
    """
    n = len(norms)
    if not 1 <= k <= n:
        raise ValueError(f"k must be in 1..{n}, got {k}")
    order = sorted(range(n), key=lambda t: (norms[t], t))
    small = sorted(t + 1 for t in order[: n - k])
    large = sorted(t + 1 for t in order[n - k :])
    return IndexPartition(k, tuple(small), tuple(large))


def _weighted_logs(terms, prec):
    total = mpmath.mpf(0)
    for weight, x in terms:
        if weight:
            total += weight * half_log2(x, prec)
    return total


def potential_classic(norms, prec=PRECISION):
    """``sum_{i<n} (n - i) log2 ||b_i*||`` from squared norms."""
    n = len(norms)
    with mpmath.workprec(prec):
        return _weighted_logs(((n - i, norms[i - 1]) for i in range(1, n)), prec)


def potential_k(norms, k, prec=PRECISION):
    """The k-th potential; coincides with :func:`potential_classic` at ``k = n``."""
    part = partition_indices(norms, k)
    with mpmath.workprec(prec):
        large = _weighted_logs(((k - j, norms[l - 1]) for j, l in enumerate(part.large, 1)), prec)
        small = _weighted_logs(((i, norms[s - 1]) for i, s in enumerate(part.small, 1)), prec)
        return large - small + sum(part.small)


@dataclass(frozen=True)
class SwapDecrease:
    step: int
    i: int
    before: mpmath.mpf
    after: mpmath.mpf
    decrease: mpmath.mpf


@dataclass
class DecreaseReport:
    k: int
    swaps: list
    violations: list

    @property
    def ok(self):
        return not self.violations

    @property
    def min_decrease(self):
        return min((s.decrease for s in self.swaps), default=None)


def verify_swap_decrease(trace, k, prec=PRECISION, slack=SLACK):
    """Check that every recorded swap lowers the k-th potential enough.

    Each swap must drop the potential by at least ``log2(2/sqrt(3)) - slack``.
    Requires a trace produced with ``checkpoints=True``.
    """
    if trace.checkpoints is None:
        raise MissingCheckpointsError("trace has no potential checkpoints")
    gain = log2_swap_gain(prec)
    swaps, bad = [], []
    with mpmath.workprec(prec):
        for cp in trace.checkpoints:
            before = potential_k(cp.before, k, prec)
            after = potential_k(cp.after, k, prec)
            rec = SwapDecrease(cp.step, cp.i, before, after, before - after)
            swaps.append(rec)
            if rec.decrease < gain - slack:
                bad.append(rec)
    return DecreaseReport(k, swaps, bad)


def swap_bound_from_potentials(norms_in, norms_out, k, prec=PRECISION):
    """``(Pi_k(in) - Pi_k(out)) / log2(2/sqrt(3))``: an upper bound on the swap count."""
    with mpmath.workprec(prec):
        return (potential_k(norms_in, k, prec) - potential_k(norms_out, k, prec)) / log2_swap_gain(prec)
