import warnings
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings

from orthlll.exactlin import (
    NotFullRankError,
    columns,
    from_columns,
    in_lattice,
    matmul,
    matrix_norm_bound,
    oracle_kernel_basis,
    same_lattice,
    transpose,
)
from orthlll.experiment import random_full_rank
from orthlll.gso import compute
from orthlll.lll import is_lll_reduced, lll_reduce
from orthlll.ortho import (
    ExtractionError,
    SubThresholdWarning,
    build_extended,
    embed,
    erase,
    extract_row_lattice_basis,
    orthogonal_lattice_basis,
    orthogonal_lattice_det_sq,
    threshold_K_general,
    threshold_K_heuristic,
    verify_kernel,
    verify_output_separation,
)
from orthlll.potential import verify_swap_decrease

from .strategies import full_rank_matrices


def test_build_extended_examples():
    assert from_columns(build_extended([[1], [1]], 3).basis) == [[3, 3], [1, 0], [0, 1]]
    assert from_columns(build_extended([[1], [0]], 1).basis) == [[1, 0], [1, 0], [0, 1]]
    ext = build_extended([[1, 2], [3, 4], [5, 6]], 7)
    rows = from_columns(ext.basis)
    assert rows[:2] == [[7, 21, 35], [14, 28, 42]]
    assert rows[2:] == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert (ext.n, ext.k) == (3, 2)


def test_build_extended_errors():
    with pytest.raises(NotFullRankError):
        build_extended([[1, 2], [2, 4]], 3)
    with pytest.raises(ValueError):
        build_extended([[1], [1]], 0)


@given(full_rank_matrices(max_n=6))
@settings(max_examples=60, deadline=None)
def test_extended_gs_norms_at_least_one(a):
    for K in (1, threshold_K_general(a)):
        assert all(r >= 1 for r in compute(build_extended(a, K).basis).r)


def _general_rhs(a):
    n, k = len(a), len(a[0])
    with mpmath.workprec(300):
        return (
            mpmath.mpf(2) ** (mpmath.mpf(n - 1) / 2)
            * mpmath.mpf(n - k) ** (mpmath.mpf(n - k) / 2)
            * mpmath.sqrt(matrix_norm_bound(a)) ** k
        )


def _heuristic_rhs(a, c):
    n, k = len(a), len(a[0])
    with mpmath.workprec(300):
        return mpmath.mpf(2) ** (c * n) * mpmath.sqrt(matrix_norm_bound(a)) ** (mpmath.mpf(k) / (n - k))


def test_threshold_general_examples():
    assert threshold_K_general([[1], [1]]) == 3
    assert threshold_K_general([[1], [0]]) == 2
    with pytest.raises(ValueError, match="kernel is trivial"):
        threshold_K_general([[1, 0], [0, 1]])


def test_threshold_heuristic_examples():
    assert threshold_K_heuristic([[1], [1]]) == 6
    for n in (2, 3, 5):
        a = [[1]] + [[0]] * (n - 1)
        assert threshold_K_heuristic(a) == 2**n + 1
    assert threshold_K_heuristic([[1], [0], [0]], c=2) == 2**6 + 1


@given(full_rank_matrices(max_n=7, max_entry=300))
@settings(max_examples=100, deadline=None)
def test_thresholds_against_high_precision(a):
    eps = mpmath.mpf(10) ** -50
    for K, rhs in ((threshold_K_general(a), _general_rhs(a)), (threshold_K_heuristic(a, 1), _heuristic_rhs(a, 1))):
        with mpmath.workprec(300):
            # K is strictly above the bound, K - 1 is not
            assert K > rhs - eps
            assert K - 1 <= rhs + eps


def test_heuristic_below_general_on_dense_inputs():
    checked = 0
    for n in range(4, 9):
        for k in range(1, n // 2 + 1):
            for seed in range(5):
                a = random_full_rank(n, k, 6, seed)
                if matrix_norm_bound(a) < 16:
                    continue
                assert threshold_K_heuristic(a) <= threshold_K_general(a)
                checked += 1
    assert checked > 50


@pytest.mark.parametrize(
    "a, expected",
    [([[1], [1]], [1, -1]), ([[1], [0]], [0, 1])],
)
def test_kernel_examples(a, expected):
    res = orthogonal_lattice_basis(a)
    c = res.kernel_columns
    assert len(c) == 1 and c[0] in (expected, [-x for x in expected])
    assert verify_kernel(a, res.C).ok


def test_kernel_1x3():
    a = [[2], [3], [5]]
    res = orthogonal_lattice_basis(a)
    assert same_lattice(res.kernel_columns, columns(oracle_kernel_basis(a)))
    assert in_lattice(res.kernel_columns, [1, 1, -1])
    assert verify_kernel(a, res.C).ok


def test_kernel_trivial_and_rank_errors():
    with pytest.raises(ValueError, match="kernel is trivial"):
        orthogonal_lattice_basis([[1, 0], [0, 1]])
    with pytest.raises(NotFullRankError, match="not full column rank"):
        orthogonal_lattice_basis([[1, 2], [2, 4], [3, 6]])


def test_sub_threshold_fails_loudly():
    with pytest.warns(SubThresholdWarning):
        with pytest.raises(ExtractionError, match="extraction failed"):
            orthogonal_lattice_basis([[1], [1]], K=1)


def test_sub_threshold_recorded_when_shape_survives():
    # K=2 is below the threshold 3 but the output still has the zero block
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SubThresholdWarning)
        res = orthogonal_lattice_basis([[1], [1]], K=2)
    assert res.warnings and "below the general threshold" in res.warnings[0]
    assert verify_kernel([[1], [1]], res.C).ok


def test_heuristic_mode():
    a = random_full_rank(6, 2, 8, 3)
    # the heuristic threshold sits far below the provable one here
    with pytest.warns(SubThresholdWarning):
        res = orthogonal_lattice_basis(a, mode="heuristic")
    assert res.K_used == threshold_K_heuristic(a)
    assert verify_kernel(a, res.C).ok


def test_row_lattice_examples():
    res = orthogonal_lattice_basis([[1], [1]])
    assert res.K_used == 3 and res.M in ([[3]], [[-3]])
    assert extract_row_lattice_basis(res) in ([[1]], [[-1]])
    res = orthogonal_lattice_basis([[2], [0]])
    assert extract_row_lattice_basis(res) in ([[2]], [[-2]])


@given(full_rank_matrices(max_n=6))
@settings(max_examples=40, deadline=None)
def test_row_lattice_property(a):
    res = orthogonal_lattice_basis(a)
    scaled = extract_row_lattice_basis(res)
    ints = [[int(x) for x in row] for row in scaled]
    cols = columns(ints)
    # mutual membership with the lattice spanned by the rows of A
    assert all(in_lattice(cols, row) for row in a)
    assert matmul(transpose(a), res.N) == ints
    assert all(isinstance(x, Fraction) for row in scaled for x in row)


def test_verify_kernel_examples():
    a = [[1], [1]]
    rep = verify_kernel(a, oracle_kernel_basis(a))
    assert rep.annihilated and rep.lattice_equal
    rep = verify_kernel(a, [[1], [1]])
    assert not rep.annihilated and "A^T C != 0" in rep.failures
    # right lattice, not reduced
    a = [[1], [0], [0]]
    rep = verify_kernel(a, [[0, 0], [1, 5], [0, 1]])
    assert rep.lattice_equal and not rep.lll_reduced


def test_separation_examples():
    res = orthogonal_lattice_basis([[1], [1]])
    rep = verify_output_separation(res.reduced, 2, 1, 3)
    assert rep.ok
    assert rep.small == [2] and rep.large[0] >= Fraction(9, 2)
    reduced, _ = lll_reduce(build_extended([[1], [1]], 1).basis)
    assert not verify_output_separation(reduced, 2, 1, 1).ok


@given(full_rank_matrices(max_n=6, max_entry=40))
@settings(max_examples=60, deadline=None)
def test_pipeline_properties(a):
    n, k = len(a), len(a[0])
    gs_ok = []
    res = orthogonal_lattice_basis(a, hook=lambda e, b, s: gs_ok.append(all(r >= 1 for r in s.r)))
    assert all(gs_ok)
    assert all(x == 0 for col in res.reduced[: n - k] for x in col[:k])
    assert verify_kernel(a, res.C).ok
    assert verify_output_separation(res.reduced, n, k, res.K_used).ok
    assert is_lll_reduced(res.reduced)


@given(full_rank_matrices(max_n=5))
@settings(max_examples=40, deadline=None)
def test_embedding_duality(a):
    k = len(a[0])
    ext = build_extended(a, 11)
    rows = from_columns(ext.basis)
    for c in columns(oracle_kernel_basis(a)):
        bc = [sum(x * y for x, y in zip(row, c)) for row in rows]
        assert bc == embed(c, k)
        assert erase(bc, k) == c


@given(full_rank_matrices(max_n=5))
@settings(max_examples=40, deadline=None)
def test_orthogonal_lattice_det_bound(a):
    k = len(a[0])
    assert orthogonal_lattice_det_sq(a) <= matrix_norm_bound(a) ** k


def test_own_k_potential_decreases_on_extended_bases():
    # observed on every seeded instance; the matrix's own k is the one the
    # K-independent bound uses
    for seed in range(30):
        n = 3 + seed % 6
        k = 1 + seed % (n - 1)
        a = random_full_rank(n, k, 6, seed)
        res = orthogonal_lattice_basis(a, checkpoints=True)
        assert verify_swap_decrease(res.trace, k).ok
