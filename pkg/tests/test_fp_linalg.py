import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from heller import fp_linalg as fl

from .conftest import all_rows

PRIMES = [2, 3, 5, 7]


@st.composite
def matrices(draw, max_rows=5, max_cols=5, primes=PRIMES):
    p = draw(st.sampled_from(primes))
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(0, max_cols))
    entries = draw(st.lists(st.integers(0, p - 1), min_size=r * c, max_size=r * c))
    return np.array(entries, dtype=np.int64).reshape(r, c), p


def test_check_prime():
    assert fl.check_prime(997) == 997
    for bad in (0, 1, 4, 1000, 1009):
        with pytest.raises(ValueError):
            fl.check_prime(bad)


def test_rref_identity_and_zero():
    r, k, piv = fl.rref(fl.identity(3), 3)
    assert k == 3 and np.array_equal(r, fl.identity(3)) and list(piv) == [0, 1, 2]
    r, k, piv = fl.rref(fl.zeros(2, 4), 2)
    assert k == 0 and not r.any() and list(piv) == []


def test_rref_rank_one():
    _, k, piv = fl.rref([[1, 2], [2, 4]], 5)
    assert k == 1 and list(piv) == [0]


def test_left_kernel_examples():
    assert fl.left_kernel(fl.identity(4), 3).shape[0] == 0
    assert fl.rank(fl.left_kernel(fl.zeros(3, 2), 5), 5) == 3
    m = np.array([[1, 0], [2, 0]])
    k = fl.left_kernel(m, 3)
    brute = [v for v in all_rows(2, 3) if v.any() and not ((v @ m) % 3).any()]
    assert k.shape[0] == 1 and len(brute) == 2
    assert any(np.array_equal(k[0], v) for v in brute)


def test_solve_row_examples():
    b = np.array([2, 1, 0])
    assert np.array_equal(fl.solve_row(fl.identity(3), b, 3), b)
    assert fl.solve_row(fl.zeros(2, 2), [1, 0], 2) is None
    a = np.array([[1, 1], [0, 1]])
    x = fl.solve_row(a, [0, 1], 2)
    assert np.array_equal(x, [0, 1])
    assert [list(v) for v in all_rows(2, 2) if np.array_equal((v @ a) % 2, [0, 1])] == [[0, 1]]


def test_solve_row_rejects_bad_shape():
    with pytest.raises(ValueError):
        fl.solve_row(fl.identity(2), [1, 0, 0], 2)


@given(matrices())
def test_rank_transpose(mp):
    m, p = mp
    assert fl.rank(m, p) == fl.rank(m.T, p)


@given(matrices())
def test_left_kernel_property(mp):
    m, p = mp
    k = fl.left_kernel(m, p)
    assert not ((k @ m) % p).any()
    assert fl.rank(k, p) == k.shape[0]
    assert k.shape[0] + fl.rank(m, p) == m.shape[0]


@given(matrices())
def test_right_kernel_property(mp):
    m, p = mp
    k = fl.right_kernel(m, p)
    assert not ((m @ k.T) % p).any()
    assert k.shape[0] + fl.rank(m, p) == m.shape[1]


@given(matrices(max_rows=4, max_cols=3, primes=[2, 3]), st.data())
def test_solve_row_against_brute_force(mp, data):
    a, p = mp
    c = a.shape[1]
    b = np.array(data.draw(st.lists(st.integers(0, p - 1), min_size=c, max_size=c)), dtype=np.int64)
    x = fl.solve_row(a, b, p)
    brute = [v for v in all_rows(a.shape[0], p) if np.array_equal((v @ a) % p, b)] if c else [None]
    if x is None:
        assert not brute
    else:
        assert np.array_equal((x @ a) % p, b)


@given(matrices(max_rows=5, max_cols=5))
def test_quotient_coords_roundtrip(mp):
    u, p = mp
    n = u.shape[1]
    q = fl.QuotientCoords(u, n, p)
    assert q.dim == n - fl.rank(u, p)
    for row in u:
        assert not q.reduce(row).any()
    rng = np.random.default_rng(0)
    c = rng.integers(0, p, size=q.dim)
    assert np.array_equal(q.reduce(q.lift(c)), c)


@given(st.sampled_from(PRIMES), st.integers(1, 5), st.integers(0, 2 ** 31))
def test_inverse_and_batch_invertible(p, n, seed):
    rng = np.random.default_rng(seed)
    mats = rng.integers(0, p, size=(8, n, n))
    flags = fl.batch_invertible(mats, p)
    for m, ok in zip(mats, flags):
        assert ok == (fl.rank(m, p) == n)
        if ok:
            assert np.array_equal((m @ fl.inverse(m, p)) % p, fl.identity(n))


def test_matrix_power():
    m = np.array([[1, 1], [0, 1]])
    assert np.array_equal(fl.matrix_power(m, 5, 7), [[1, 5], [0, 1]])
    assert np.array_equal(fl.matrix_power(m, 0, 7), fl.identity(2))
