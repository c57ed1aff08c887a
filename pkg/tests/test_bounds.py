import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orthlll.bounds import (
    BoundReport,
    classical_crossover_log_k,
    leading_minor_nonzero,
    log_norm,
    swap_bound_classical,
    swap_bound_theorem2,
    table1_row,
)
from orthlll.ortho import orthogonal_lattice_basis
from orthlll.potential import half_log2

GAIN = 0.2075187496394219  # log2(2/sqrt(3)), frozen from an independent float evaluation


def test_gain_constant():
    assert abs(float(mpmath.log(2 / mpmath.sqrt(3), 2)) - GAIN) < 1e-15


def test_k_independent_bound_examples():
    assert float(swap_bound_theorem2(2, 1, mpmath.mpf("0.5"))) == pytest.approx(2.75 / GAIN, abs=1e-9)
    assert float(swap_bound_theorem2(2, 1, 0)) == pytest.approx(2 / GAIN, abs=1e-9)
    assert float(swap_bound_theorem2(2, 1, mpmath.mpf("0.5"))) == pytest.approx(13.25, abs=0.01)
    assert float(swap_bound_theorem2(2, 1, 0)) == pytest.approx(9.64, abs=0.01)


def test_k_independent_bound_covers_tiny_run():
    a = [[1], [1]]
    res = orthogonal_lattice_basis(a, K=3)
    assert res.swap_count <= swap_bound_theorem2(2, 1, log_norm(a))


def test_classical_example():
    v = swap_bound_classical(2, 1, mpmath.log(3, 2), mpmath.mpf("0.5"))
    assert float(v) == pytest.approx(2 * (1.584962500721156 + 0.5) / GAIN, abs=1e-9)
    assert float(v) == pytest.approx(20.1, abs=0.05)


def test_bounds_reject_bad_k():
    for n, k in ((2, 0), (2, 2), (3, 4)):
        with pytest.raises(ValueError):
            swap_bound_theorem2(n, k, 1)
        with pytest.raises(ValueError):
            swap_bound_classical(n, k, 1, 1)


@given(st.integers(2, 12), st.data(), st.floats(0, 40), st.floats(0, 40))
@settings(max_examples=80)
def test_classical_linear_in_log_k(n, data, log_k, lna):
    k = data.draw(st.integers(1, n - 1))
    with mpmath.workprec(128):
        log_k, lna = mpmath.mpf(log_k), mpmath.mpf(lna)
        step = mpmath.mpf(k * (2 * n - k + 1)) / 2 / mpmath.log(2 / mpmath.sqrt(3), 2)
        lo = swap_bound_classical(n, k, log_k, lna)
        hi = swap_bound_classical(n, k, log_k + 1, lna)
        assert abs(hi - lo - step) < 1e-20


@given(st.integers(2, 12), st.data(), st.floats(0, 40), st.floats(0.001, 20))
@settings(max_examples=80)
def test_crossover(n, data, lna, eps):
    k = data.draw(st.integers(1, n - 1))
    cross = classical_crossover_log_k(n, k, lna)
    thm2 = swap_bound_theorem2(n, k, lna)
    assert abs(swap_bound_classical(n, k, cross, lna) - thm2) < 1e-20 * (1 + thm2)
    assert swap_bound_classical(n, k, cross + eps, lna) > thm2
    assert swap_bound_classical(n, k, cross - eps, lna) < thm2


def test_table1_k1_linear_in_alpha():
    vals = [table1_row(8, "one", a).new for a in (0, 1, 2, 3)]
    diffs = [vals[i + 1] - vals[i] for i in range(3)]
    assert all(abs(d - diffs[0]) < 1e-30 for d in diffs)
    # slope (n - 1/2) / gain
    assert float(diffs[0]) == pytest.approx(7.5 / GAIN, rel=1e-12)


def test_table1_orders_and_shapes():
    assert table1_row(8, "one", 1).orders[2] == "O(n alpha)"
    assert table1_row(8, "half", 1).orders[2] == "O(n^3 + n^2 alpha)"
    assert table1_row(8, "n_minus_1", 1).orders[2] == "O(n^3 + n alpha)"
    assert (table1_row(8, "half", 1).k, table1_row(8, "n_minus_1", 1).k) == (4, 7)
    with pytest.raises(ValueError):
        table1_row(1, "one", 1)
    # for large alpha the new column wins over both K-dependent ones when k = 1
    row = table1_row(16, "one", 50)
    assert row.new < row.heuristic < row.classical


def test_table1_n_minus_1_alpha_slope():
    # k = n-1: slope in alpha is (n-1)(n+1)/2 / gain, i.e. n^2 order
    r0, r1 = table1_row(10, "n_minus_1", 0), table1_row(10, "n_minus_1", 1)
    assert float(r1.new - r0.new) == pytest.approx(9 * 5.5 / GAIN, rel=1e-12)


def test_leading_minor():
    assert leading_minor_nonzero([[1], [0]])
    assert not leading_minor_nonzero([[0], [1]])
    assert not leading_minor_nonzero([[1, 2], [2, 4], [0, 1]])


def test_bound_report():
    rep = BoundReport(2, 1, mpmath.mpf("0.5"), mpmath.mpf(13), mpmath.mpf(20), None, 13)
    assert rep.satisfied()
    rep = BoundReport(2, 1, mpmath.mpf("0.5"), mpmath.mpf(13), mpmath.mpf(20), mpmath.mpf("12.5"), 13)
    assert not rep.satisfied()
    d = rep.to_dict()
    assert d["measured_swaps"] == 13 and d["bound_potential_min_k"].startswith("12.5")


def test_log_norm():
    assert log_norm([[1], [1]]) == half_log2(2)
    assert float(log_norm([[3, 4], [0, 0], [0, 0]])) == pytest.approx(mpmath.log(5, 2))
