"""Projective covers and the syzygy operator Ω on objects and morphisms."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np

from . import fp_linalg as fl
from .algebra import BasedAlgebra
from .modules import (
    DirectSum,
    Module,
    ModuleMap,
    direct_sum,
    hom_space,
    submodule,
    zero_module,
)


class LemmaFalsified(AssertionError):
    """A cover endomorphism ``s`` with ``s p = p`` turned out non-invertible."""


@lru_cache(maxsize=None)
def _projective_data(alg: BasedAlgebra):
    # For each idempotent e_i: basis rows of e_i Λ in Λ-coordinates, the
    # right action on it, and the coordinates of the generator e_i.
    p = alg.p
    out = []
    for e in alg.idempotents:
        w = fl.row_basis(alg.mul[e], p)
        solver = fl.RowSolver(w, p)
        images = np.einsum("rk,bkc->brc", w, alg.right_regular) % p
        action = solver.solve(images.reshape(-1, alg.dim)).reshape(alg.dim, w.shape[0], w.shape[0])
        gen = solver.solve(np.eye(alg.dim, dtype=np.int64)[e])
        out.append((w, action, gen))
    return out


@lru_cache(maxsize=None)
def indecomposable_projectives(alg: BasedAlgebra) -> list[Module]:
    """``e_i Λ`` with the right regular action, one per primitive idempotent."""
    return [Module(alg, action, f"P{i + 1}") for i, (_, action, _) in enumerate(_projective_data(alg))]


def projective_sum(alg: BasedAlgebra, tops: Sequence[int]) -> tuple[Module, np.ndarray]:
    """``⊕_j e_{tops[j]} Λ`` and the generator row of each summand."""
    projs = indecomposable_projectives(alg)
    data = _projective_data(alg)
    if not tops:
        return zero_module(alg), fl.zeros(0, 0)
    ds = direct_sum([projs[t] for t in tops])
    gens = fl.zeros(len(tops), ds.module.dim)
    off = 0
    for j, t in enumerate(tops):
        gens[j, off:off + projs[t].dim] = data[t][2]
        off += projs[t].dim
    return ds.module, gens


def map_from_generators(alg: BasedAlgebra, tops: Sequence[int], target: Module, images) -> np.ndarray:
    """Matrix of the map ``⊕ e_{tops[j]} Λ -> target`` sending the j-th
    generator to ``images[j]`` (which must lie in ``target . e_{tops[j]}``)."""
    data = _projective_data(alg)
    p = alg.p
    blocks = []
    for j, t in enumerate(tops):
        w = data[t][0]
        rows = np.einsum("a,rk,kab->rb", np.asarray(images[j], dtype=np.int64), w, target.action) % p
        blocks.append(rows)
    if not blocks:
        return fl.zeros(0, target.dim)
    return np.vstack(blocks)


@dataclass(frozen=True, eq=False)
class ProjectiveCover:
    pmod: Module
    cover: ModuleMap
    tops: tuple[int, ...]
    generators: np.ndarray


@lru_cache(maxsize=8192)
def projective_cover(m: Module) -> ProjectiveCover:
    """Minimal projective ``P ->> M``: one summand ``e_i Λ`` per copy of the
    simple ``S_i`` in ``top(M) = M / M rad``."""
    alg, p = m.algebra, m.p
    tops: list[int] = []
    images = []
    quot = fl.QuotientCoords(m.radical_rows, m.dim, p)
    for i in range(len(alg.idempotents)):
        rows = m.idempotent_rows(i)
        if rows.shape[0] == 0:
            continue
        reduced = quot.reduce(rows)
        _, k, piv = fl.rref(reduced.T, p)
        for r in piv:
            tops.append(i)
            images.append(rows[r])
    pmod, gens = projective_sum(alg, tops)
    mat = map_from_generators(alg, tops, m, images) if tops else fl.zeros(0, m.dim)
    return ProjectiveCover(pmod, ModuleMap(pmod, m, mat), tuple(tops), gens)


@dataclass(frozen=True, eq=False)
class SyzygyPresentation:
    """``ΩX >-incl-> PX -cover->> X``."""

    base: Module
    pmod: Module
    cover: ModuleMap
    omega: Module
    incl: ModuleMap
    tops: tuple[int, ...]
    generators: np.ndarray

    @cached_property
    def incl_solver(self) -> fl.RowSolver:
        return fl.RowSolver(self.incl.matrix, self.base.p)

    @cached_property
    def lift_solvers(self):
        out = []
        for i in range(len(self.base.algebra.idempotents)):
            rows = self.pmod.idempotent_rows(i)
            out.append((rows, fl.RowSolver((rows @ self.cover.matrix) % self.base.p, self.base.p)))
        return out

    def check(self) -> list[str]:
        p = self.base.p
        out = []
        if fl.rank(self.cover.matrix, p) != self.base.dim:
            out.append("cover is not surjective")
        if fl.rank(self.incl.matrix, p) != self.omega.dim:
            out.append("inclusion is not injective")
        if np.any((self.incl.matrix @ self.cover.matrix) % p):
            out.append("image(incl) is not inside kernel(cover)")
        if self.omega.dim != self.pmod.dim - self.base.dim:
            out.append("image(incl) is smaller than kernel(cover)")
        if not is_small(self):
            out.append("kernel(cover) is not inside P rad")
        return out


def presentation_from_cover(m: Module, pmod: Module, cover: ModuleMap, tops, generators) -> SyzygyPresentation:
    """Ω-presentation from any projective epimorphism onto ``m``."""
    p = m.p
    k = fl.row_basis(fl.left_kernel(cover.matrix, p), p) if pmod.dim else fl.zeros(0, 0)
    omega, incl = submodule(pmod, k.reshape(k.shape[0], pmod.dim), name=f"Omega({m.name})" if m.name else "")
    return SyzygyPresentation(m, pmod, cover, omega, incl, tuple(tops), generators)


@lru_cache(maxsize=8192)
def syzygy(m: Module) -> SyzygyPresentation:
    pc = projective_cover(m)
    return presentation_from_cover(m, pc.pmod, pc.cover, pc.tops, pc.generators)


def is_small(pres: SyzygyPresentation) -> bool:
    """``ker(cover) ⊆ P rad`` (superfluous kernel)."""
    p = pres.base.p
    rad = pres.pmod.radical_rows
    if pres.omega.dim == 0:
        return True
    return fl.rank(np.vstack([rad, pres.incl.matrix]), p) == rad.shape[0]


def lift_to_covers(f: ModuleMap, pres_m: SyzygyPresentation, pres_n: SyzygyPresentation) -> ModuleMap:
    """A module map ``ĥ: PM -> PN`` with ``ĥ p_N = p_M f``."""
    alg, p = f.source.algebra, f.p
    targets = (pres_m.generators @ pres_m.cover.matrix @ f.matrix) % p if pres_m.tops else fl.zeros(0, 0)
    images = []
    for j, t in enumerate(pres_m.tops):
        rows, solver = pres_n.lift_solvers[t]
        w = solver.solve(targets[j]) if rows.shape[0] else (None if np.any(targets[j]) else fl.zeros(1, 0)[0])
        if w is None:
            raise AssertionError("projective lifting failed: target cover is not surjective")
        images.append((w @ rows) % p if rows.shape[0] else fl.zeros(1, pres_n.pmod.dim)[0])
    mat = map_from_generators(alg, pres_m.tops, pres_n.pmod, images)
    return ModuleMap(pres_m.pmod, pres_n.pmod, mat.reshape(pres_m.pmod.dim, pres_n.pmod.dim))


def omega_map(f: ModuleMap, pres_m: SyzygyPresentation | None = None,
              pres_n: SyzygyPresentation | None = None) -> ModuleMap:
    """``Ω f: ΩM -> ΩN``, the restriction of a cover lift to the kernels."""
    pres_m = pres_m if pres_m is not None else syzygy(f.source)
    pres_n = pres_n if pres_n is not None else syzygy(f.target)
    p = f.p
    hhat = lift_to_covers(f, pres_m, pres_n)
    if pres_m.omega.dim == 0:
        return ModuleMap(pres_m.omega, pres_n.omega, fl.zeros(0, pres_n.omega.dim))
    rhs = (pres_m.incl.matrix @ hhat.matrix) % p
    if pres_n.omega.dim == 0:
        if np.any(rhs):
            raise AssertionError("lift does not restrict to the kernels")
        return ModuleMap(pres_m.omega, pres_n.omega, fl.zeros(pres_m.omega.dim, 0))
    sol = pres_n.incl_solver.solve(rhs)
    if sol is None:
        raise AssertionError("lift does not restrict to the kernels")
    return ModuleMap(pres_m.omega, pres_n.omega, sol)


def direct_sum_presentation(pres: Sequence[SyzygyPresentation], alg: BasedAlgebra | None = None):
    """Presentation of ``⊕ X_k`` assembled from presentations of the ``X_k``.

    Returns ``(presentation, DirectSum of the bases)``.
    """
    pres = list(pres)
    bases = direct_sum([x.base for x in pres], alg)
    if not pres:
        z = bases.module
        return SyzygyPresentation(z, z, ModuleMap(z, z, fl.zeros(0, 0)), z,
                                  ModuleMap(z, z, fl.zeros(0, 0)), (), fl.zeros(0, 0)), bases
    p = pres[0].base.p
    pm = direct_sum([x.pmod for x in pres])
    om = direct_sum([x.omega for x in pres])

    def blockdiag(mats, rows, cols):
        out = fl.zeros(rows, cols)
        r = c = 0
        for a in mats:
            out[r:r + a.shape[0], c:c + a.shape[1]] = a
            r += a.shape[0]
            c += a.shape[1]
        return out

    cover = blockdiag([x.cover.matrix for x in pres], pm.module.dim, bases.module.dim)
    incl = blockdiag([x.incl.matrix for x in pres], om.module.dim, pm.module.dim)
    gens = blockdiag([x.generators.reshape(len(x.tops), x.pmod.dim) for x in pres],
                     sum(len(x.tops) for x in pres), pm.module.dim)
    tops = tuple(t for x in pres for t in x.tops)
    out = SyzygyPresentation(bases.module, pm.module, ModuleMap(pm.module, bases.module, cover % p),
                             om.module, ModuleMap(om.module, pm.module, incl % p), tops, gens)
    return out, bases


@dataclass
class RigidityReport:
    affine_dim: int
    checked: int
    exhaustive: bool


def cover_rigidity_check(pres: SyzygyPresentation, budget: int = 2000, seed: int = 0,
                         exhaustive_limit: int = 10 ** 4) -> RigidityReport:
    """Check that every ``s in End(PX)`` with ``s p_X = p_X`` is invertible.

    The set of such ``s`` is ``id + {t : t p_X = 0}``; it is swept completely
    when it has at most ``exhaustive_limit`` elements, else ``budget`` seeded
    samples are drawn.  A singular ``s`` raises :class:`LemmaFalsified`.
    """
    p = pres.base.p
    pmod, cov = pres.pmod, pres.cover.matrix
    d = pmod.dim
    if d == 0:
        return RigidityReport(0, 0, True)
    h = hom_space(pmod, pmod)
    comp = np.einsum("nab,bc->nac", h.basis, cov) % p
    kern = fl.left_kernel(comp.reshape(h.dim, -1), p)
    ts = np.tensordot(kern, h.basis, axes=(1, 0)) % p if kern.shape[0] else np.zeros((0, d, d), np.int64)
    k = ts.shape[0]
    total = p ** k
    eye = fl.identity(d)
    if total <= exhaustive_limit:
        coeff_iter = _all_vectors(k, p)
        exhaustive = True
    else:
        rng = np.random.default_rng([seed, d, k])
        coeff_iter = [rng.integers(0, p, size=(budget, k))]
        exhaustive = False
    checked = 0
    for coeffs in coeff_iter:
        s = (eye[None] + (np.tensordot(coeffs, ts, axes=(1, 0)) if k else 0)) % p
        ok = fl.batch_invertible(s, p)
        checked += len(ok)
        if not ok.all():
            bad = s[int(np.argmin(ok))]
            raise LemmaFalsified(f"non-invertible s with s p = p for {pres.base!r}:\n{bad}")
    return RigidityReport(k, checked, exhaustive)


def _all_vectors(k: int, p: int, chunk: int = 4096):
    total = p ** k
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk))
        digits = np.zeros((idx.size, k), dtype=np.int64)
        rest = idx.copy()
        for j in range(k - 1, -1, -1):
            digits[:, j] = rest % p
            rest //= p
        yield digits


all_vectors = _all_vectors
