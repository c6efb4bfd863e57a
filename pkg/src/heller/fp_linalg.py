"""Exact dense linear algebra over a prime field F_p.

Matrices are plain ``int64`` numpy arrays with entries in ``[0, p)``; the
modulus travels alongside as an ``int``.  Vectors are rows and maps act by
right multiplication, so "x then f then g" is ``x @ F @ G``.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

MAX_PRIME = 997


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def check_prime(p: int) -> int:
    p = int(p)
    if not is_prime(p) or p > MAX_PRIME:
        raise ValueError(f"modulus must be a prime <= {MAX_PRIME}, got {p}")
    return p


@lru_cache(maxsize=None)
def inverse_table(p: int) -> np.ndarray:
    inv = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        inv[a] = pow(a, -1, p)
    return inv


def fp(a, p: int) -> np.ndarray:
    """Coerce to an int64 array reduced mod p (always a fresh copy)."""
    return np.array(a, dtype=np.int64) % p


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return (a @ b) % p


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def rref(m, p: int, ncols: int | None = None):
    """Reduced row echelon form.

    Returns ``(R, rank, pivot_cols)``.  With ``ncols`` the pivot search is
    restricted to the first ``ncols`` columns (augmented systems).
    """
    a = fp(m, p)
    if a.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    rows, cols = a.shape
    limit = cols if ncols is None else ncols
    inv = inverse_table(p)
    r = 0
    pivots: list[int] = []
    for c in range(limit):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r, c:] = (a[r, c:] * inv[a[r, c]]) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit, c:] = (a[hit, c:] - np.outer(col[hit], a[r, c:])) % p
        pivots.append(c)
        r += 1
    return a, r, pivots


def rank(m, p: int) -> int:
    m = np.asarray(m)
    if m.size == 0:
        return 0
    return rref(m, p)[1]


def row_basis(m, p: int) -> np.ndarray:
    """Rows of the rref that span the row space of ``m``."""
    m = np.asarray(m, dtype=np.int64)
    if m.ndim != 2:
        raise ValueError("row_basis expects a 2-d array")
    if m.shape[0] == 0:
        return m.reshape(0, m.shape[1])
    r, k, _ = rref(m, p)
    return r[:k]


def right_kernel(m, p: int) -> np.ndarray:
    """Basis rows of ``{x : m @ x = 0}``.

    Each basis vector has a 1 at one free column and 0 at every other free
    column, so coordinates of a kernel vector are its free entries.
    """
    m = np.asarray(m, dtype=np.int64)
    rows, cols = m.shape
    if rows == 0:
        return identity(cols)
    r, k, piv = rref(m, p)
    free = [c for c in range(cols) if c not in set(piv)]
    basis = zeros(len(free), cols)
    for i, c in enumerate(free):
        basis[i, c] = 1
        basis[i, piv] = (-r[:k, c]) % p
    return basis


def free_columns(m, p: int) -> list[int]:
    m = np.asarray(m, dtype=np.int64)
    if m.shape[0] == 0:
        return list(range(m.shape[1]))
    piv = set(rref(m, p)[2])
    return [c for c in range(m.shape[1]) if c not in piv]


def left_kernel(m, p: int) -> np.ndarray:
    """Basis rows of ``{x : x @ m = 0}``; row count is ``rows(m) - rank(m)``."""
    m = np.asarray(m, dtype=np.int64)
    return right_kernel(m.T, p)


class RowSolver:
    """Solves ``x @ A = b`` for many right-hand sides against a fixed ``A``.

    Elimination happens once, on ``[A^T | I]``; each solve is then a single
    product.  The returned solution sets every free variable to 0.
    """

    def __init__(self, a, p: int):
        a = np.asarray(a, dtype=np.int64) % p
        if a.ndim != 2:
            raise ValueError("RowSolver expects a 2-d array")
        self.p = p
        self.shape = a.shape
        r, c = a.shape
        aug = np.hstack([a.T, identity(c)])
        red, k, piv = rref(aug, p, ncols=r)
        self.rank = k
        self.pivots = piv
        self._transform = red[:, r:]

    def solve(self, b) -> np.ndarray | None:
        r, c = self.shape
        b = np.asarray(b, dtype=np.int64) % self.p
        single = b.ndim == 1
        if single:
            b = b[None, :]
        if b.shape[1] != c:
            raise ValueError(f"right-hand side has {b.shape[1]} columns, expected {c}")
        y = (self._transform @ b.T) % self.p
        if np.any(y[self.rank:]):
            return None
        x = zeros(r, b.shape[0])
        x[self.pivots] = y[: self.rank]
        x = x.T
        return x[0] if single else x


def solve_row(a, b, p: int) -> np.ndarray | None:
    """Some ``x`` with ``x @ a = b`` (row-wise), or ``None`` if inconsistent."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if b.shape[-1] != a.shape[1]:
        raise ValueError("solve_row: cols(b) must equal cols(a)")
    return RowSolver(a, p).solve(b)


def inverse(m, p: int) -> np.ndarray:
    m = np.asarray(m, dtype=np.int64)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    r, k, _ = rref(np.hstack([m, identity(n)]), p, ncols=n)
    if k < n:
        raise ValueError("matrix is singular")
    return r[:, n:]


class QuotientCoords:
    """Canonical coordinates on ``F_p^n / span(U)``.

    ``reduce`` clears the pivot coordinates of ``U``'s rref and reads off
    the remaining (free) coordinates; ``lift`` is the matching section.
    """

    def __init__(self, u, n: int, p: int):
        u = np.asarray(u, dtype=np.int64)
        u = u.reshape(-1, n) if n else np.zeros((0, 0), dtype=np.int64)
        self.p = p
        self.n = n
        if u.shape[0]:
            r, k, piv = rref(u, p)
            self.basis = r[:k]
            self.pivots = list(piv)
        else:
            self.basis = zeros(0, n)
            self.pivots = []
        pivset = set(self.pivots)
        self.free = [c for c in range(n) if c not in pivset]

    @property
    def dim(self) -> int:
        return len(self.free)

    def reduce(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=np.int64) % self.p
        single = v.ndim == 1
        if single:
            v = v[None, :]
        if self.pivots:
            v = (v - v[:, self.pivots] @ self.basis) % self.p
        out = v[:, self.free]
        return out[0] if single else out

    def lift(self, coords) -> np.ndarray:
        coords = np.asarray(coords, dtype=np.int64) % self.p
        single = coords.ndim == 1
        if single:
            coords = coords[None, :]
        out = np.zeros((coords.shape[0], self.n), dtype=np.int64)
        out[:, self.free] = coords
        return out[0] if single else out


def batch_invertible(mats, p: int) -> np.ndarray:
    """Invertibility of a stack of square matrices, shape ``(B, n, n)``."""
    a = np.array(mats, dtype=np.int64) % p
    b, n, n2 = a.shape
    if n != n2:
        raise ValueError("batch_invertible expects square matrices")
    alive = np.ones(b, dtype=bool)
    inv = inverse_table(p)
    idx = np.arange(b)
    for c in range(n):
        mask = a[:, c:, c] != 0
        has = mask.any(axis=1)
        alive &= has
        piv = c + np.argmax(mask, axis=1)
        rows_c = a[idx, c].copy()
        a[idx, c] = a[idx, piv]
        a[idx, piv] = rows_c
        scale = inv[a[idx, c, c]]
        a[:, c, :] = (a[:, c, :] * scale[:, None]) % p
        factors = a[:, :, c].copy()
        factors[:, c] = 0
        a = (a - factors[:, :, None] * a[:, c, None, :]) % p
    return alive


def matrix_power(m: np.ndarray, e: int, p: int) -> np.ndarray:
    result = identity(m.shape[0])
    base = m % p
    while e:
        if e & 1:
            result = (result @ base) % p
        base = (base @ base) % p
        e >>= 1
    return result
