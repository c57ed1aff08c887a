"""Instrumented exact LLL reduction.

The loop follows the textbook structure: size-reduce ``b_i`` against
``b_{i-1}, ..., b_1``, then either advance or swap ``b_i`` with ``b_{i-1}``.
Every translation and swap is recorded in a :class:`ReductionTrace`.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import floor
from typing import Callable, Optional

from . import gso as _gso
from .exactlin import NotFullRankError, norm_sq, rank

__all__ = [
    "DEFAULT_DELTA",
    "Event",
    "SwapCheckpoint",
    "ReductionTrace",
    "lll_reduce",
    "is_lll_reduced",
    "check_reduced_consequences",
    "lovasz_holds",
    "alpha",
    "replay",
    "parse_delta",
    "successive_minima_bruteforce",
]

DEFAULT_DELTA = Fraction(3, 4)


@dataclass(frozen=True)
class Event:
    """One basis operation.

    ``kind == "translate"``: ``b_i <- b_i - q * b_j``.
    ``kind == "swap"``: columns ``i`` and ``i + 1`` exchanged (``j``/``q`` unused).
    """

    step: int
    kind: str
    i: int
    j: Optional[int] = None
    q: Optional[int] = None

    def to_dict(self):
        d = {"step": self.step, "kind": self.kind, "i": self.i}
        if self.kind == "translate":
            d["j"], d["q"] = self.j, self.q
        return d

    @classmethod
    def from_dict(cls, d):
        return cls(d["step"], d["kind"], d["i"], d.get("j"), d.get("q"))


@dataclass(frozen=True)
class SwapCheckpoint:
    """Squared Gram-Schmidt norms just before and just after one swap."""

    step: int
    i: int
    before: tuple
    after: tuple


@dataclass
class ReductionTrace:
    delta: Fraction = DEFAULT_DELTA
    events: list = field(default_factory=list)
    checkpoints: Optional[list] = None
    initial_norms: Optional[tuple] = None
    final_norms: Optional[tuple] = None

    @property
    def swap_count(self):
        return sum(1 for e in self.events if e.kind == "swap")


def parse_delta(text):
    """Parse ``"p/q"`` into an exact delta, enforcing ``1/4 < delta < 1``."""
    d = Fraction(text)
    if not Fraction(1, 4) < d < 1:
        raise ValueError(f"delta must satisfy 1/4 < delta < 1, got {d}")
    return d


def alpha(delta=DEFAULT_DELTA):
    return Fraction(4) / (4 * Fraction(delta) - 1)


def _round_half_up(x):
    return floor(x + Fraction(1, 2))


def lovasz_holds(state, i, delta):
    """Lovász condition between positions ``i - 1`` and ``i``."""
    m = state.mu[i][i - 1]
    return delta * state.r[i - 1] <= state.r[i] + m * m * state.r[i - 1]


def lll_reduce(
    basis,
    delta=DEFAULT_DELTA,
    hook: Optional[Callable] = None,
    checkpoints=False,
    verify_every: Optional[int] = None,
):
    """LLL-reduce a basis given as a list of integer columns.

    Args:
        basis: list of integer column vectors, linearly independent.
        delta: Lovász parameter, an exact rational in (1/4, 1).
        hook: called as ``hook(event, basis, gso)`` after every translation
            and swap. It must treat its arguments as read-only.
        checkpoints: record the squared Gram-Schmidt norms around each swap,
            so potentials can be evaluated afterwards.
        verify_every: when set, recompute the Gram-Schmidt data from scratch
            every that many events and assert it matches the incremental state.

    Returns:
        ``(reduced_basis, trace)``. The input is not modified.
    """
    delta = Fraction(delta)
    if not Fraction(1, 4) < delta < 1:
        raise ValueError(f"delta must satisfy 1/4 < delta < 1, got {delta}")
    b = [[int(x) for x in col] for col in basis]
    if not b:
        raise ValueError("empty basis")
    if len({len(col) for col in b}) != 1:
        raise ValueError("basis vectors have different dimensions")
    state = _gso.compute(b)
    n = len(b)
    trace = ReductionTrace(delta=delta, initial_norms=tuple(state.r))
    if checkpoints:
        trace.checkpoints = []

    def emit(event):
        trace.events.append(event)
        if verify_every and len(trace.events) % verify_every == 0:
            fresh = _gso.compute(b)
            assert fresh.mu == state.mu and fresh.r == state.r, "incremental GSO drifted"
        if hook is not None:
            hook(event, b, state)

    i = 1
    while i < n:
        for j in range(i - 1, -1, -1):
            m = state.mu[i][j]
            if abs(m) > Fraction(1, 2):
                q = _round_half_up(m)
                b[i] = [x - q * y for x, y in zip(b[i], b[j])]
                _gso.size_reduce_update(state, i, j, q)
                emit(Event(len(trace.events), "translate", i, j, q))
        if lovasz_holds(state, i, delta):
            i += 1
            continue
        before = tuple(state.r) if checkpoints else None
        b[i - 1], b[i] = b[i], b[i - 1]
        _gso.swap_update(state, i - 1)
        if checkpoints:
            trace.checkpoints.append(
                SwapCheckpoint(len(trace.events), i - 1, before, tuple(state.r))
            )
        emit(Event(len(trace.events), "swap", i - 1))
        i = max(i - 1, 1)
    trace.final_norms = tuple(state.r)
    return b, trace


def is_lll_reduced(basis, delta=DEFAULT_DELTA):
    """Exact check of size-reduction and all Lovász conditions."""
    state = _gso.compute(basis)
    half = Fraction(1, 2)
    for i in range(1, state.n):
        if any(abs(m) > half for m in state.mu[i]):
            return False
        if not lovasz_holds(state, i, Fraction(delta)):
            return False
    return True


def check_reduced_consequences(basis, delta=DEFAULT_DELTA, minima=None):
    """List violations of the standard consequences of LLL-reducedness.

    Checks ``r_i <= alpha * r_{i+1}`` and ``||b_i||^2 <= alpha^i * r_i``
    (0-based ``i``) in exact arithmetic. If the squared successive minima are
    supplied, also checks ``||b_i||^2 <= alpha^(n-1) * lambda_j^2`` for
    ``i <= j``. An empty list means no violation.
    """
    a = alpha(delta)
    state = _gso.compute(basis)
    violations = []
    for i in range(state.n - 1):
        if state.r[i] > a * state.r[i + 1]:
            violations.append(("gs_ratio", i))
    for i, col in enumerate(basis):
        if norm_sq(col) > a**i * state.r[i]:
            violations.append(("length", i))
    if minima is not None:
        top = a ** (state.n - 1)
        for i, col in enumerate(basis):
            if any(norm_sq(col) > top * lam for lam in minima[i:]):
                violations.append(("minima", i))
    return violations


def replay(basis, events):
    """Apply recorded events to a copy of ``basis``."""
    b = [[int(x) for x in col] for col in basis]
    for e in events:
        if e.kind == "swap":
            b[e.i], b[e.i + 1] = b[e.i + 1], b[e.i]
        elif e.kind == "translate":
            b[e.i] = [x - e.q * y for x, y in zip(b[e.i], b[e.j])]
        else:
            raise ValueError(f"unknown event kind {e.kind!r}")
    return b


def successive_minima_bruteforce(basis, radius):
    """Successive minima (squared) by enumeration of coefficient vectors.

    Only for tiny dimensions: enumerates every integer coefficient vector with
    entries in ``[-radius, radius]``. Correct whenever the true minima are
    attained within that box.
    """
    n = len(basis)
    vecs = []
    for coeffs in product(range(-radius, radius + 1), repeat=n):
        if any(coeffs):
            v = [sum(c * col[t] for c, col in zip(coeffs, basis)) for t in range(len(basis[0]))]
            vecs.append((norm_sq(v), v))
    vecs.sort(key=lambda p: p[0])
    chosen, minima = [], []
    for nsq, v in vecs:
        if rank(chosen + [v]) > len(chosen):
            chosen.append(v)
            minima.append(nsq)
            if len(chosen) == n:
                break
    if len(minima) < n:
        raise NotFullRankError("enumeration box too small")
    return minima
