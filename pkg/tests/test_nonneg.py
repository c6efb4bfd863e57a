import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from heller.catalog import fixtures
from heller.nonneg import U_LEFT, U_RIGHT, blocking_certificate, brute_force_column, nonneg_solve, solve_column


@st.composite
def instances(draw):
    n = 3
    h = np.array(draw(st.lists(st.integers(0, 2), min_size=n * n, max_size=n * n))).reshape(n, n)
    np.fill_diagonal(h, np.maximum(np.diag(h), 1))
    t = np.array(draw(st.lists(st.integers(0, 4), min_size=n, max_size=n)))
    return h, t


@given(instances())
def test_solve_column_matches_brute_force(inst):
    h, t = inst
    ours = {tuple(u) for u in solve_column(h, t)[0]}
    brute = {tuple(u) for u in brute_force_column(h, t, int(t.max()))}
    assert ours == brute


@given(instances())
def test_certificate_implies_infeasible(inst):
    h, t = inst
    if blocking_certificate(h, t) is not None:
        assert not solve_column(h, t)[0]


def test_identity_and_self_target():
    h = np.eye(3, dtype=np.int64)
    t = np.array([[1, 0, 2], [0, 3, 0], [1, 1, 1]])
    res = nonneg_solve(h, t, U_RIGHT)
    assert res.feasible and np.array_equal(res.first(), t)
    g = np.array([[1, 1, 0], [0, 2, 1], [1, 0, 1]])
    res = nonneg_solve(g, g, U_RIGHT)
    assert any(np.array_equal(res.first()[:, j], np.eye(3, dtype=np.int64)[:, j]) for j in range(3))
    assert all(any(np.array_equal(u, np.eye(3, dtype=np.int64)[:, j]) for u in res.solutions[j]) for j in range(3))


def test_left_orientation():
    h = np.array([[1, 1], [0, 1]])
    t = np.array([[1, 2]])
    res = nonneg_solve(h, t, U_LEFT)
    assert res.feasible and np.array_equal(res.first() @ h, t)


def test_c3_obstruction_trace():
    fx = fixtures("C3")
    res = nonneg_solve(fx.H, fx.H_prime, U_RIGHT)
    assert not res.feasible
    by_col = {tr.column + 1: tr for tr in res.traces}
    assert sorted(by_col) == [2, 3, 5, 6]
    tr = by_col[3]
    assert tr.pivot_row == 0
    assert tr.support == [0, 2, 4]
    assert all(s == 1 for s in tr.blockers.values())
    text = res.render(fx.H, fx.H_prime, ["Y1", "Y2", "Y3", "Y4", "Y5", "Y6", "Y7"])
    assert "candidates k in {Y1, Y3, Y5}" in text


def test_rejects_negative_and_bad_shape():
    with pytest.raises(ValueError):
        solve_column(np.array([[-1]]), np.array([1]))
    with pytest.raises(ValueError):
        nonneg_solve(np.eye(2), np.zeros((3, 1)), U_RIGHT)
    with pytest.raises(ValueError):
        nonneg_solve(np.eye(2), np.zeros((2, 2)), "sideways")
