"""Exact Gram-Schmidt orthogonalization with incremental updates.

Only squared Gram-Schmidt norms are stored, so every quantity stays rational.
Indices are 0-based throughout.
"""

from dataclasses import dataclass
from fractions import Fraction

from .exactlin import NotFullRankError, dot

__all__ = ["GSO", "compute", "swap_update", "size_reduce_update", "gs_vectors"]


@dataclass
class GSO:
    """Gram-Schmidt data of a basis.

    ``mu[i][j]`` for ``j < i`` holds the Gram-Schmidt coefficient, and
    ``r[i]`` holds the squared norm of the i-th Gram-Schmidt vector. Rows of
    ``mu`` have length ``i`` (strictly lower triangular storage).
    """

    mu: list
    r: list

    @property
    def n(self):
        return len(self.r)

    def copy(self):
        return GSO([list(row) for row in self.mu], list(self.r))


def compute(basis):
    """Full Gram-Schmidt recomputation from a list of integer columns.

    Uses the inner-product recurrence, so no Gram-Schmidt vector is ever
    formed explicitly.
    """
    n = len(basis)
    mu = [[Fraction(0)] * i for i in range(n)]
    r = [Fraction(0)] * n
    for i in range(n):
        # a[j] = <b_i, b_j*> accumulated from the Gram matrix
        a = [Fraction(0)] * i
        for j in range(i):
            a[j] = Fraction(dot(basis[i], basis[j])) - sum(mu[j][l] * a[l] for l in range(j))
            mu[i][j] = a[j] / r[j]
        r[i] = Fraction(dot(basis[i], basis[i])) - sum(mu[i][j] * a[j] for j in range(i))
        if r[i] == 0:
            raise NotFullRankError(f"zero Gram-Schmidt norm at index {i}")
    return GSO(mu, r)


def gs_vectors(basis):
    """The Gram-Schmidt vectors themselves, as lists of Fractions."""
    out = []
    for b in basis:
        v = [Fraction(x) for x in b]
        for w in out:
            c = Fraction(dot(b, w)) / dot(w, w)
            v = [x - c * y for x, y in zip(v, w)]
        out.append(v)
    return out


def swap_update(state, i):
    """Update ``state`` in place after columns ``i`` and ``i + 1`` were exchanged.

    Uses the local update formulas: only ``r[i]``, ``r[i+1]``, row ``i`` and
    ``i+1`` of ``mu`` and column ``i``/``i+1`` entries below them change.
    """
    n = state.n
    if not 0 <= i < n - 1:
        raise IndexError(f"swap index {i} out of range for n={n}")
    mu, r = state.mu, state.r
    m = mu[i + 1][i]
    r_new_i = r[i + 1] + m * m * r[i]
    m_new = m * r[i] / r_new_i
    r_new_i1 = r[i] * r[i + 1] / r_new_i

    mu[i], mu[i + 1] = mu[i + 1][:i], mu[i][:i] + [m_new]
    r[i], r[i + 1] = r_new_i, r_new_i1
    for t in range(i + 2, n):
        a, b = mu[t][i], mu[t][i + 1]
        mu[t][i + 1] = a - m * b
        mu[t][i] = b + m_new * mu[t][i + 1]
    return state


def size_reduce_update(state, i, j, q):
    """Update ``mu`` in place after ``b_i <- b_i - q * b_j`` with ``j < i``."""
    if not 0 <= j < i < state.n:
        raise IndexError(f"translation indices ({i}, {j}) out of range")
    if q:
        row, src = state.mu[i], state.mu[j]
        for l in range(j):
            row[l] -= q * src[l]
        row[j] -= q
    return state
