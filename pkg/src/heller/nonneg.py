"""Bounded search for nonnegative integer solutions of ``H U = T`` or ``U H = T``.

Both orientations reduce to columns: ``H u = t`` with ``u >= 0``.  All
entries are nonnegative and ``diag(H) >= 1``, so ``u_k <= t_k`` and any
partial sum exceeding ``t`` prunes the branch.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

U_RIGHT = "U_right"  # H @ U = T
U_LEFT = "U_left"  # U @ H = T


@dataclass
class ColumnTrace:
    """Why one column has no solution."""

    column: int
    nodes: int
    pivot_row: int | None = None
    support: list[int] = field(default_factory=list)
    blockers: dict[int, int] = field(default_factory=dict)

    def render(self, h: np.ndarray, t: np.ndarray, names: list[str] | None = None) -> str:
        name = (lambda k: names[k]) if names else (lambda k: str(k + 1))
        head = f"column {self.column + 1}: no nonnegative solution ({self.nodes} search nodes)"
        if self.pivot_row is None:
            return head
        r = self.pivot_row
        lines = [head,
                 f"  row {r + 1} of the target is {t[r]} > 0, so some u_k > 0 with H[{r + 1},k] > 0;"
                 f" candidates k in {{{', '.join(name(k) for k in self.support)}}}"]
        for k in self.support:
            s = self.blockers[k]
            lines.append(f"  k = {name(k)}: H[{s + 1},{k + 1}] = {h[s, k]} > target row {s + 1} = {t[s]}")
        lines.append("  every choice overshoots a target entry: contradiction")
        return "\n".join(lines)


@dataclass
class SolveResult:
    orientation: str
    solutions: list[np.ndarray]  # per column (U_right) / row (U_left): list of vectors
    feasible: bool
    traces: list[ColumnTrace]

    def first(self) -> np.ndarray | None:
        """One full solution matrix, if every column is solvable."""
        if not self.feasible:
            return None
        cols = [s[0] for s in self.solutions]
        u = np.array(cols, dtype=np.int64).T
        return u if self.orientation == U_RIGHT else u.T

    def render(self, h, t, names=None) -> str:
        if self.feasible:
            return "feasible"
        h, t = np.asarray(h), np.asarray(t)
        mat, cols = (h, t.T) if self.orientation == U_RIGHT else (h.T, t)
        return "\n".join(tr.render(mat, cols[tr.column], names) for tr in self.traces)


def solve_column(h: np.ndarray, t: np.ndarray, limit: int | None = None) -> tuple[list[np.ndarray], int]:
    """All ``u >= 0`` with ``h @ u == t``; returns ``(solutions, nodes)``."""
    h = np.asarray(h, dtype=np.int64)
    t = np.asarray(t, dtype=np.int64)
    n = h.shape[1]
    if np.any(h < 0) or np.any(t < 0):
        raise ValueError("nonneg_solve expects nonnegative matrices")
    # u_k * h[r, k] <= t_r for every row; with diag(H) >= 1 this gives u_k <= t_k
    bounds = []
    for k in range(n):
        col = h[:, k]
        nz = np.flatnonzero(col)
        bounds.append(int(min(t[r] // col[r] for r in nz)) if nz.size else 0)
    out: list[np.ndarray] = []
    nodes = 0
    u = np.zeros(n, dtype=np.int64)

    def rec(k: int, rest: np.ndarray):
        nonlocal nodes
        nodes += 1
        if limit is not None and len(out) >= limit:
            return
        if k == n:
            if not np.any(rest):
                out.append(u.copy())
            return
        col = h[:, k]
        for v in range(bounds[k] + 1):
            r = rest - v * col
            if np.any(r < 0):
                break
            u[k] = v
            rec(k + 1, r)
        u[k] = 0

    rec(0, t.copy())
    return out, nodes


def blocking_certificate(h: np.ndarray, t: np.ndarray) -> tuple[int, list[int], dict[int, int]] | None:
    """A row ``r`` with ``t_r > 0`` such that every column ``k`` with
    ``h[r, k] > 0`` has some row ``s`` with ``h[s, k] > t_s``."""
    for r in np.flatnonzero(t > 0):
        support = [int(k) for k in np.flatnonzero(h[r] > 0)]
        blockers = {}
        for k in support:
            over = np.flatnonzero(h[:, k] > t)
            if over.size == 0:
                break
            blockers[k] = int(over[0])
        else:
            return int(r), support, blockers
    return None


def nonneg_solve(h, target, orientation: str = U_RIGHT, limit: int | None = None) -> SolveResult:
    h = np.asarray(h, dtype=np.int64)
    target = np.asarray(target, dtype=np.int64)
    if orientation == U_RIGHT:
        if h.shape[0] != target.shape[0]:
            raise ValueError("H @ U = T needs rows(H) == rows(T)")
        mat, cols = h, target.T
    elif orientation == U_LEFT:
        if h.shape[1] != target.shape[1]:
            raise ValueError("U @ H = T needs cols(H) == cols(T)")
        mat, cols = h.T, target
    else:
        raise ValueError(f"orientation must be {U_RIGHT!r} or {U_LEFT!r}")
    sols, traces = [], []
    for j, t in enumerate(cols):
        found, nodes = solve_column(mat, t, limit)
        sols.append(found)
        if not found:
            tr = ColumnTrace(j, nodes)
            cert = blocking_certificate(mat, t)
            if cert is not None:
                tr.pivot_row, tr.support, tr.blockers = cert
            traces.append(tr)
    return SolveResult(orientation, sols, not traces, traces)


def brute_force_column(h: np.ndarray, t: np.ndarray, bound: int) -> list[np.ndarray]:
    """Every ``u in [0, bound]^n`` with ``h @ u == t`` (test oracle)."""
    n = h.shape[1]
    return [np.array(u) for u in product(range(bound + 1), repeat=n)
            if np.array_equal(h @ np.array(u, dtype=np.int64), t)]
