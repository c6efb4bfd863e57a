"""Krull-Schmidt decomposition by idempotent splitting in ``End(M)``."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import sympy

from . import fp_linalg as fl
from .modules import (
    HomSpace,
    Module,
    ModuleError,
    ModuleMap,
    direct_sum,
    hom_space,
    is_isomorphic,
    submodule,
)

RANDOM_ELEMENTS = 64
EXHAUSTIVE_LIMIT = 10 ** 6


class UnknownSummand(LookupError):
    """A summand matched no catalog label: the catalog is incomplete."""

    def __init__(self, module: Module):
        self.module = module
        super().__init__(f"unknown summand {module!r}: dim vector {module.dim_vector}, "
                         f"action {module.action.tolist()}")


@dataclass(eq=False)
class EndAlgebra:
    module: Module
    space: HomSpace
    table: np.ndarray  # table[i, j] = coordinates of basis_i @ basis_j

    @property
    def basis(self) -> np.ndarray:
        return self.space.basis

    @property
    def dim(self) -> int:
        return self.space.dim


def end_algebra(m: Module) -> EndAlgebra:
    h = hom_space(m, m)
    t = h.dim
    p = m.p
    if t:
        prods = np.einsum("iab,jbc->ijac", h.basis, h.basis) % p
        table = h.coords(prods.reshape(t * t, m.dim, m.dim)).reshape(t, t, t)
    else:
        table = np.zeros((0, 0, 0), dtype=np.int64)
    return EndAlgebra(m, h, table)


@dataclass
class LocalityCertificate:
    """``J`` = span of ``b_i - λ_i·1`` is a nilpotent two-sided ideal of
    codimension 1, so ``End/J = F_p`` and ``End`` is local."""

    scalars: list[int]
    radical_dim: int
    nilpotency_index: int


def _single_eigenvalue(mat: np.ndarray, p: int) -> int | None:
    d = mat.shape[0]
    candidates = range(p)
    if d % p:
        candidates = [int(np.trace(mat) * pow(d, -1, p)) % p]
    for lam in candidates:
        if not np.any(fl.matrix_power((mat - lam * fl.identity(d)) % p, d, p)):
            return lam
    return None


def locality_certificate(end: EndAlgebra) -> LocalityCertificate | None:
    m, p = end.module, end.module.p
    d, t = m.dim, end.dim
    if d == 0 or t == 0:
        return None
    eye = fl.identity(d)
    scalars, gens = [], []
    for b in end.basis:
        lam = _single_eigenvalue(b, p)
        if lam is None:
            return None
        scalars.append(lam)
        gens.append(((b - lam * eye) % p).ravel())
    jrows = fl.row_basis(np.array(gens), p)
    if jrows.shape[0] != t - 1:
        return None
    ideal = jrows.reshape(-1, d, d)
    left = np.einsum("iab,jbc->ijac", end.basis, ideal).reshape(-1, d * d) % p
    right = np.einsum("jab,ibc->ijac", ideal, end.basis).reshape(-1, d * d) % p
    if fl.rank(np.vstack([jrows, left, right]), p) != jrows.shape[0]:
        return None
    power, steps = ideal, 1
    while power.shape[0]:
        if steps > d:
            return None
        prods = np.einsum("iab,jbc->ijac", power, ideal).reshape(-1, d * d) % p
        power = fl.row_basis(prods, p).reshape(-1, d, d)
        steps += 1
    return LocalityCertificate(scalars, t - 1, steps)


@dataclass
class IdempotentSearch:
    idempotent: ModuleMap | None
    method: str
    certificate: LocalityCertificate | None = None


def _fitting_idempotent(phi: np.ndarray, p: int) -> np.ndarray | None:
    d = phi.shape[0]
    power = fl.matrix_power(phi, d, p)
    r = fl.rank(power, p)
    if r == 0 or r == d:
        return None
    img = fl.row_basis(power, p)
    ker = fl.row_basis(fl.left_kernel(power, p), p)
    return _projection(img, ker, p)


def _projection(img: np.ndarray, ker: np.ndarray, p: int) -> np.ndarray:
    b = np.vstack([img, ker])
    diag = np.zeros_like(b)
    diag[: img.shape[0], : img.shape[0]] = fl.identity(img.shape[0])
    # row convention: e = B^-1 diag(I, 0) B
    return (fl.inverse(b, p) @ diag @ b) % p


def _minpoly_idempotent(phi: np.ndarray, p: int) -> np.ndarray | None:
    d = phi.shape[0]
    x = sympy.symbols("x")
    rows = [fl.identity(d).ravel()]
    power = fl.identity(d)
    coeffs = None
    for _ in range(d):
        power = (power @ phi) % p
        sol = fl.solve_row(np.array(rows), power.ravel(), p)
        if sol is not None:
            coeffs = [(-int(c)) % p for c in sol] + [1]
            break
        rows.append(power.ravel())
    if coeffs is None:
        return None
    poly = sympy.Poly(list(reversed(coeffs)), x, modulus=p)
    _, factors = poly.factor_list()
    if len(factors) < 2:
        return None
    first = factors[0][0] ** factors[0][1]
    rest = sympy.Poly(1, x, modulus=p)
    for f, e in factors[1:]:
        rest = rest * f ** e
    s, t, g = sympy.gcdex(first, rest)
    # s*first + t*rest = 1, so t*rest is 1 mod first and 0 mod rest
    idem_poly = (t * rest).rem(poly)
    result = fl.zeros(d, d)
    power = fl.identity(d)
    for c in reversed(idem_poly.all_coeffs()):
        result = (result + int(c) % p * power) % p
        power = (power @ phi) % p
    if not np.any(result) or np.array_equal(result, fl.identity(d)):
        return None
    return result


def find_idempotent(end: EndAlgebra, seed: int = 0) -> IdempotentSearch:
    """A nontrivial idempotent of ``End(M)``, or a proof there is none.

    Ladder: Fitting splitting of basis elements; locality certificate;
    Fitting splitting of seeded random elements; minimal-polynomial (CRT)
    splitting; exhaustive enumeration when ``p^dim End <= 10^6``.
    """
    m, p = end.module, end.module.p
    d = m.dim
    if d == 0 or end.dim == 0:
        return IdempotentSearch(None, "zero")

    def found(e, how):
        return IdempotentSearch(ModuleMap(m, m, e), how)

    for b in end.basis:
        e = _fitting_idempotent(b, p)
        if e is not None:
            return found(e, "fitting")
    cert = locality_certificate(end)
    if cert is not None:
        return IdempotentSearch(None, "local", cert)
    rng = np.random.default_rng([seed, d])
    coeffs = rng.integers(0, p, size=(RANDOM_ELEMENTS, end.dim))
    elems = np.tensordot(coeffs, end.basis, axes=(1, 0)) % p
    for phi in elems:
        e = _fitting_idempotent(phi, p)
        if e is not None:
            return found(e, "fitting-random")
    for phi in list(end.basis) + list(elems[:8]):
        e = _minpoly_idempotent(phi, p)
        if e is not None:
            return found(e, "minpoly")
    if p ** end.dim <= EXHAUSTIVE_LIMIT:
        e = exhaustive_idempotent(end)
        return found(e, "exhaustive") if e is not None else IdempotentSearch(None, "exhaustive")
    raise ModuleError(f"could not split or certify {m!r}")


def all_idempotents(end: EndAlgebra) -> np.ndarray:
    """Every idempotent of ``End(M)`` as a coordinate vector (brute force)."""
    from .projectives import all_vectors

    p, t = end.module.p, end.dim
    found = []
    for c in all_vectors(t, p, chunk=2048):
        sq = np.einsum("ni,nj,ijk->nk", c, c, end.table) % p
        hit = np.all(sq == c, axis=1)
        found.extend(c[hit])
    return np.array(found, dtype=np.int64).reshape(-1, t)


def exhaustive_idempotent(end: EndAlgebra) -> np.ndarray | None:
    p, d = end.module.p, end.module.dim
    eye = fl.identity(d)
    for c in all_idempotents(end):
        e = end.space.combine(c)
        if np.any(e) and not np.array_equal(e, eye):
            return e
    return None


# ------------------------------------------------------------- decomposition


@dataclass(eq=False)
class Decomposition:
    """``summands`` as ``(module, multiplicity)``; ``witness`` is an iso from
    the direct sum (summands repeated per multiplicity, in order) onto the
    original module."""

    module: Module
    summands: list[tuple[Module, int]]
    witness: ModuleMap
    parts: list[tuple[Module, np.ndarray]] = field(default_factory=list)

    def expanded(self) -> list[Module]:
        return [s for s, k in self.summands for _ in range(k)]


def _split(m: Module, seed: int) -> list[tuple[Module, np.ndarray]]:
    if m.dim == 0:
        return []
    res = find_idempotent(end_algebra(m), seed)
    if res.idempotent is None:
        return [(m, fl.identity(m.dim))]
    p = m.p
    e = res.idempotent.matrix
    out = []
    for proj in (e, (fl.identity(m.dim) - e) % p):
        rows = fl.row_basis(proj, p)
        sub, inc = submodule(m, rows)
        for piece, prow in _split(sub, seed):
            out.append((piece, (prow @ rows) % p))
    return out


def _sort_key(m: Module):
    return (m.dim, m.dim_vector, m.action.tobytes())


def decompose(m: Module, seed: int = 0) -> Decomposition:
    """Split ``m`` into certified indecomposables, grouped by iso class."""
    p = m.p
    parts = _split(m, seed)
    classes: list[list] = []  # [representative, [(iso rep->piece, rows)]]
    for piece, rows in parts:
        for cls in classes:
            iso = is_isomorphic(cls[0], piece, seed)
            if iso is not None:
                cls[1].append((iso.matrix, rows))
                break
        else:
            classes.append([piece, [(fl.identity(piece.dim), rows)]])
    classes.sort(key=lambda c: _sort_key(c[0]))
    summands = [(c[0], len(c[1])) for c in classes]
    expanded = [c[0] for c in classes for _ in c[1]]
    ds = direct_sum(expanded, m.algebra)
    wit = [(iso @ rows) % p for c in classes for iso, rows in c[1]]
    mat = np.vstack(wit) if wit else fl.zeros(0, m.dim)
    return Decomposition(m, summands, ModuleMap(ds.module, m, mat), parts)


def is_indecomposable(m: Module, seed: int = 0) -> bool:
    return m.dim > 0 and find_idempotent(end_algebra(m), seed).idempotent is None


def isomorphism_via_decomposition(m: Module, n: Module, seed: int = 0) -> ModuleMap | None:
    """Decide ``m ≅ n`` by matching Krull-Schmidt multisets."""
    dm, dn = decompose(m, seed), decompose(n, seed)
    if len(dm.parts) == 1 and len(dn.parts) == 1:
        # both indecomposable: End local, so the basis test already decided
        return None
    if sorted(k for _, k in dm.summands) != sorted(k for _, k in dn.summands):
        return None
    used = set()
    pairs = []
    for s, k in dm.summands:
        for j, (t, k2) in enumerate(dn.summands):
            if j in used or k != k2:
                continue
            iso = is_isomorphic(s, t, seed)
            if iso is not None:
                used.add(j)
                pairs.append((s, k, j, iso))
                break
        else:
            return None
    # M <- ⊕S (witness_m); ⊕S -> ⊕T blockwise; ⊕T -> N (witness_n)
    p = m.p
    blocks_t = []
    off = 0
    for t, k in dn.summands:
        blocks_t.append(off)
        off += t.dim * k
    rows_src = []
    for s, k, j, iso in pairs:
        t = dn.summands[j][0]
        for c in range(k):
            start = blocks_t[j] + c * t.dim
            emb = fl.zeros(s.dim, dn.witness.matrix.shape[0])
            emb[:, start:start + t.dim] = iso.matrix
            rows_src.append(emb)
    sum_to_sum = np.vstack(rows_src)
    inv_m = fl.inverse(dm.witness.matrix, p)
    mat = (inv_m @ sum_to_sum @ dn.witness.matrix) % p
    return ModuleMap(m, n, mat)


def identify(m: Module, catalog: Sequence[tuple[str, Module]], seed: int = 0) -> dict[str, int]:
    """Multiplicity of each catalog label in the decomposition of ``m``.

    Raises :class:`UnknownSummand` when a summand matches no label.
    """
    counts = {label: 0 for label, _ in catalog}
    if m.dim == 0:
        return counts
    for s, k in decompose(m, seed).summands:
        counts[match_indecomposable(s, catalog, seed)] += k
    return counts


def match_indecomposable(s: Module, catalog: Sequence[tuple[str, Module]], seed: int = 0) -> str:
    for label, x in catalog:
        if x.dim == s.dim and x.dim_vector == s.dim_vector and is_isomorphic(x, s, seed) is not None:
            return label
    raise UnknownSummand(s)
