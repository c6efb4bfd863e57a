"""The stable category: Hom modulo maps factoring through projectives.

Any map ``M -> Q -> N`` with ``Q`` projective lifts through the projective
cover ``PN ->> N``, so the projective-factoring maps are exactly the image
of ``Hom(M, PN) -> Hom(M, N)``, ``g |-> g p_N``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np

from . import fp_linalg as fl
from .modules import HomSpace, Module, ModuleError, ModuleMap, hom_space, is_isomorphic
from .projectives import projective_cover


@dataclass(eq=False)
class StableHomSpace:
    source: Module
    target: Module
    total: HomSpace
    proj_subspace: np.ndarray  # rows: Hom coordinates of projective-factoring maps
    quotient: fl.QuotientCoords

    @property
    def dim(self) -> int:
        return self.quotient.dim

    @property
    def proj_dim(self) -> int:
        return self.quotient.basis.shape[0]

    def reduce(self, f) -> np.ndarray:
        """Stable coordinates of a map (or stack of maps)."""
        return self.quotient.reduce(self.total.coords(f))

    def lift(self, coords) -> np.ndarray:
        """A representative matrix (or stack) of the given stable classes."""
        coords = np.asarray(coords, dtype=np.int64)
        hc = self.quotient.lift(coords)
        if hc.ndim == 1:
            return self.total.combine(hc)
        if self.total.dim == 0:
            return np.zeros((hc.shape[0], self.source.dim, self.target.dim), dtype=np.int64)
        return np.tensordot(hc, self.total.basis, axes=(1, 0)) % self.source.p

    @cached_property
    def basis(self) -> np.ndarray:
        """Representatives of the stable basis classes, shape ``(dim, dM, dN)``."""
        return self.lift(fl.identity(self.dim)).reshape(self.dim, self.source.dim, self.target.dim)

    def is_zero(self, f) -> bool:
        return not np.any(self.reduce(f))


@lru_cache(maxsize=8192)
def stable_hom(m: Module, n: Module) -> StableHomSpace:
    if m.algebra is not n.algebra:
        raise ModuleError("modules over different algebras")
    p = m.p
    h = hom_space(m, n)
    if h.dim == 0:
        return StableHomSpace(m, n, h, fl.zeros(0, 0), fl.QuotientCoords(fl.zeros(0, 0), 0, p))
    pc = projective_cover(n)
    hp = hom_space(m, pc.pmod)
    if hp.dim:
        comp = np.einsum("nab,bc->nac", hp.basis, pc.cover.matrix) % p
        proj = fl.row_basis(h.coords(comp), p)
    else:
        proj = fl.zeros(0, h.dim)
    return StableHomSpace(m, n, h, proj, fl.QuotientCoords(proj, h.dim, p))


def is_stably_zero(f: ModuleMap) -> bool:
    return stable_hom(f.source, f.target).is_zero(f)


def nonprojective_part(m: Module, seed: int = 0):
    """``m`` with projective summands removed, and the inclusion as a
    direct summand; decomposition-based."""
    from .krull_schmidt import decompose
    from .modules import direct_sum

    dec = decompose(m, seed)
    keep, rows = [], []
    for piece, prow in dec.parts:
        if not is_projective(piece):
            keep.append(piece)
            rows.append(prow)
    ds = direct_sum(keep, m.algebra)
    mat = np.vstack(rows) if rows else fl.zeros(0, m.dim)
    return ds.module, ModuleMap(ds.module, m, mat % m.p)


def is_projective(m: Module) -> bool:
    """``dim P(M) == dim M``: the projective cover is an isomorphism."""
    return projective_cover(m).pmod.dim == m.dim


def is_stably_isomorphic(m: Module, n: Module, seed: int = 0) -> bool:
    a, _ = nonprojective_part(m, seed)
    b, _ = nonprojective_part(n, seed)
    return is_isomorphic(a, b, seed) is not None


def is_stable_iso(f: ModuleMap) -> bool:
    """``[f]`` invertible: some ``g`` with ``[f g] = [1]`` and ``[g f] = [1]``."""
    m, n, p = f.source, f.target, f.p
    sh_nm = stable_hom(n, m)
    if sh_nm.dim == 0:
        return stable_hom(m, m).dim == 0 and stable_hom(n, n).dim == 0
    # [f g] and [g f] are linear in the stable class of g
    reps = sh_nm.basis
    left = stable_hom(m, m)
    right = stable_hom(n, n)
    fg = left.reduce(np.einsum("ab,nbc->nac", f.matrix, reps) % p)
    gf = right.reduce(np.einsum("nab,bc->nac", reps, f.matrix) % p)
    sys = np.hstack([fg.reshape(sh_nm.dim, -1), gf.reshape(sh_nm.dim, -1)])
    rhs = np.concatenate([left.reduce(fl.identity(m.dim)), right.reduce(fl.identity(n.dim))])
    if sys.shape[1] == 0:
        return True
    return fl.solve_row(sys, rhs, p) is not None


def induced_map(t: Module, f: ModuleMap) -> np.ndarray:
    """Matrix of ``stHom(T, X) -> stHom(T, Y)``, ``[g] |-> [g f]``, on stable
    coordinates (rows: source classes)."""
    src = stable_hom(t, f.source)
    dst = stable_hom(t, f.target)
    if src.dim == 0:
        return fl.zeros(0, dst.dim)
    comp = np.einsum("nab,bc->nac", src.basis, f.matrix) % f.p
    return dst.reduce(comp).reshape(src.dim, dst.dim)


def is_stable_mono(f: ModuleMap, catalog: Sequence[Module]) -> bool:
    """Injectivity of ``stHom(T, f)`` for every indecomposable ``T``."""
    catalog = list(catalog)
    if not catalog:
        raise ValueError("is_stable_mono needs a nonempty catalog of indecomposables")
    for t in catalog:
        mat = induced_map(t, f)
        if fl.rank(mat, f.p) != mat.shape[0]:
            return False
    return True


def stable_mono_witness(f: ModuleMap, catalog: Sequence[Module]) -> tuple[int, np.ndarray] | None:
    """Brute force: ``(index of T, g)`` with ``[g] != 0`` and ``[g f] = 0``."""
    from .projectives import all_vectors

    for idx, t in enumerate(catalog):
        src = stable_hom(t, f.source)
        dst = stable_hom(t, f.target)
        if src.dim == 0:
            continue
        for chunk in all_vectors(src.dim, f.p):
            for c in chunk[1:] if not np.any(chunk[0]) else chunk:
                g = src.lift(c)
                if dst.is_zero((g @ f.matrix) % f.p):
                    return idx, g
    return None


def is_coretraction(f: ModuleMap) -> ModuleMap | None:
    """A stable retraction ``r`` with ``[f r] = [1_X]``, or ``None``.

    The condition is linear in the stable class of ``r``: one solve.
    """
    x, y, p = f.source, f.target, f.p
    end_x = stable_hom(x, x)
    target = end_x.reduce(fl.identity(x.dim))
    if not np.any(target):
        return ModuleMap(y, x, fl.zeros(y.dim, x.dim))
    back = stable_hom(y, x)
    if back.dim == 0:
        return None
    comp = end_x.reduce(np.einsum("ab,nbc->nac", f.matrix, back.basis) % p)
    sol = fl.solve_row(comp.reshape(back.dim, -1), target, p)
    if sol is None:
        return None
    return ModuleMap(y, x, back.lift(sol))
