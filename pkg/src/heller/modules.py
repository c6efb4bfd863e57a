"""Right modules as matrix representations, their maps and Hom spaces.

A module over a :class:`BasedAlgebra` with basis ``b_0..b_{d-1}`` is stored as
one ``dim x dim`` action matrix per basis element; ``x . b`` is ``x @ action[b]``.
A module map is a single ``dim(source) x dim(target)`` matrix ``F`` with
``F @ action_target[b] == action_source[b] @ F``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np

from . import fp_linalg as fl
from .algebra import BasedAlgebra, builtin_algebra, parse_path_label, triangle_algebra


class ModuleError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Module:
    algebra: BasedAlgebra
    action: np.ndarray  # (algebra.dim, dim, dim)
    name: str = ""

    @property
    def p(self) -> int:
        return self.algebra.p

    @property
    def dim(self) -> int:
        return int(self.action.shape[1])

    def act(self, b: int | str) -> np.ndarray:
        if isinstance(b, str):
            b = self.algebra.index(b)
        return self.action[b]

    @cached_property
    def dim_vector(self) -> tuple[int, ...]:
        return tuple(fl.rank(self.action[i], self.p) for i in self.algebra.idempotents)

    @cached_property
    def adapted(self):
        """Basis change ``B`` whose rows run through ``M e_1``, ``M e_2``, ...

        Returns ``(B, B^-1, blocks)`` with ``blocks[i]`` the row range of the
        i-th idempotent summand.
        """
        rows, blocks, start = [], [], 0
        for i in self.algebra.idempotents:
            part = fl.row_basis(self.action[i], self.p) if self.dim else fl.zeros(0, 0)
            rows.append(part)
            blocks.append(range(start, start + part.shape[0]))
            start += part.shape[0]
        b = np.vstack(rows) if self.dim else fl.zeros(0, 0)
        if b.shape[0] != self.dim:
            raise ModuleError("idempotent actions do not decompose the module")
        return b, (fl.inverse(b, self.p) if self.dim else b), blocks

    @cached_property
    def radical_rows(self) -> np.ndarray:
        """Basis rows of ``M . rad``."""
        if not self.dim or not self.algebra.radical:
            return fl.zeros(0, self.dim)
        stacked = self.action[list(self.algebra.radical)].reshape(-1, self.dim)
        return fl.row_basis(stacked, self.p)

    def idempotent_rows(self, i: int) -> np.ndarray:
        """Basis rows of ``M e_i`` (``i`` indexes ``algebra.idempotents``)."""
        b, _, blocks = self.adapted
        return b[blocks[i].start:blocks[i].stop]

    def check(self) -> list[str]:
        """Failed module invariants (empty when the action is a module)."""
        alg, p, d = self.algebra, self.p, self.dim
        out = []
        if self.action.shape != (alg.dim, d, d):
            return [f"shape: action has shape {self.action.shape}"]
        if d == 0:
            return out
        act = self.action % p
        lhs = np.einsum("iab,jbc->ijac", act, act) % p
        rhs = np.einsum("ijk,kac->ijac", alg.mul, act) % p
        bad = np.argwhere(np.any(lhs != rhs, axis=(2, 3)))
        for i, j in bad[:3]:
            out.append(f"structure: action({alg.basis[i]})*action({alg.basis[j]}) "
                       f"!= action({alg.basis[i]}*{alg.basis[j]})")
        total = act[list(alg.idempotents)].sum(axis=0) % p
        if np.any(total != fl.identity(d)):
            out.append("unit: idempotent actions do not sum to the identity")
        return out

    def is_zero(self) -> bool:
        return self.dim == 0

    def __repr__(self) -> str:
        tag = f" {self.name}" if self.name else ""
        return f"<Module{tag} dim={self.dim} dimvec={self.dim_vector} over {self.algebra.name} p={self.p}>"


def make_module(alg: BasedAlgebra, action, name: str = "") -> Module:
    """Build a module and reject actions violating the module axioms."""
    act = np.asarray(action, dtype=np.int64) % alg.p
    if act.ndim != 3:
        act = act.reshape(alg.dim, 0, 0)
    m = Module(alg, act, name)
    problems = m.check()
    if problems:
        raise ModuleError("; ".join(problems))
    return m


def zero_module(alg: BasedAlgebra) -> Module:
    return Module(alg, np.zeros((alg.dim, 0, 0), dtype=np.int64), "0")


@dataclass(frozen=True, eq=False)
class ModuleMap:
    source: Module
    target: Module
    matrix: np.ndarray

    @property
    def p(self) -> int:
        return self.source.p

    def __matmul__(self, other: "ModuleMap") -> "ModuleMap":
        """``f @ g`` is "f then g", matching the row-vector product order."""
        return ModuleMap(self.source, other.target, (self.matrix @ other.matrix) % self.p)

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.source, self.target, (self.matrix + other.matrix) % self.p)

    def __sub__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.source, self.target, (self.matrix - other.matrix) % self.p)

    def __rmul__(self, c: int) -> "ModuleMap":
        return ModuleMap(self.source, self.target, (int(c) * self.matrix) % self.p)

    def is_zero(self) -> bool:
        return not np.any(self.matrix % self.p)

    def rank(self) -> int:
        return fl.rank(self.matrix, self.p)

    def check(self) -> list[str]:
        s, t, p = self.source, self.target, self.p
        if self.matrix.shape != (s.dim, t.dim):
            return [f"shape: matrix {self.matrix.shape} vs ({s.dim}, {t.dim})"]
        out = []
        for b, label in enumerate(s.algebra.basis):
            if np.any((self.matrix @ t.action[b] - s.action[b] @ self.matrix) % p):
                out.append(f"intertwining fails for {label}")
        return out


def module_map(source: Module, target: Module, matrix, check: bool = True) -> ModuleMap:
    mat = np.asarray(matrix, dtype=np.int64).reshape(source.dim, target.dim) % source.p
    f = ModuleMap(source, target, mat)
    if check:
        problems = f.check()
        if problems:
            raise ModuleError("; ".join(problems))
    return f


def identity_map(m: Module) -> ModuleMap:
    return ModuleMap(m, m, fl.identity(m.dim))


def zero_map(m: Module, n: Module) -> ModuleMap:
    return ModuleMap(m, n, fl.zeros(m.dim, n.dim))


# ---------------------------------------------------------------- pair form

_TERM_RE = re.compile(r"([+-]?)([^+-]+)")


def parse_residue(entry, p: int) -> list[int]:
    """Coefficients ``[c0, c1, ...]`` of a polynomial in π.

    Accepts ints, coefficient lists, or strings like ``"1"``, ``"-pi"``,
    ``"2+pi^2"``, ``"3*pi"``.
    """
    if isinstance(entry, (int, np.integer)):
        return [int(entry) % p]
    if isinstance(entry, (list, tuple)):
        return [int(c) % p for c in entry]
    s = str(entry).replace(" ", "")
    if not s:
        raise ModuleError("empty residue string")
    coeffs: dict[int, int] = {}
    for sign, term in _TERM_RE.findall(s):
        c, power = 1, 0
        for factor in term.split("*"):
            if factor.startswith("pi"):
                rest = factor[2:]
                if rest == "":
                    power += 1
                elif rest.startswith("^") and rest[1:].isdigit():
                    power += int(rest[1:])
                else:
                    raise ModuleError(f"cannot parse residue {entry!r}")
            elif factor.isdigit():
                c *= int(factor)
            else:
                raise ModuleError(f"cannot parse residue {entry!r}")
        if sign == "-":
            c = -c
        coeffs[power] = coeffs.get(power, 0) + c
    top = max(coeffs) if coeffs else 0
    return [coeffs.get(i, 0) % p for i in range(top + 1)]


def format_residue(coeffs: Sequence[int]) -> str:
    terms = []
    for i, c in enumerate(coeffs):
        if not c:
            continue
        mono = "" if i == 0 else ("pi" if i == 1 else f"pi^{i}")
        if i == 0:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}*{mono}")
    return "+".join(terms) if terms else "0"


def _offsets(part: Sequence[int]) -> list[int]:
    out, acc = [], 0
    for lam in part:
        out.append(acc)
        acc += lam
    return out


def pair_block_matrix(src: Sequence[int], tgt: Sequence[int], entries, p: int) -> np.ndarray:
    """Matrix of the map ``⊕ R/π^src_i -> ⊕ R/π^tgt_j`` sending generator
    ``x_i`` to ``Σ_j c_ij(π) y_j``.

    Rows of ``entries`` follow source summands, columns target summands; the
    basis of each cyclic summand ``R/π^λ`` is ``x, xπ, ..., xπ^(λ-1)``.
    """
    so, to = _offsets(src), _offsets(tgt)
    out = fl.zeros(sum(src), sum(tgt))
    if len(src) and len(tgt):
        if len(entries) != len(src) or any(len(row) != len(tgt) for row in entries):
            raise ModuleError(f"entry matrix must be {len(src)}x{len(tgt)}")
    for i, lam in enumerate(src):
        for j, mu in enumerate(tgt):
            coeffs = parse_residue(entries[i][j], p)
            for t in range(lam):
                for s, c in enumerate(coeffs):
                    if c and s + t < mu:
                        out[so[i] + t, to[j] + s + t] = (out[so[i] + t, to[j] + s + t] + c) % p
    return out


def _shift(part: Sequence[int]) -> np.ndarray:
    out = fl.zeros(sum(part), sum(part))
    for off, lam in zip(_offsets(part), part):
        for t in range(lam - 1):
            out[off + t, off + t + 1] = 1
    return out


def module_from_pair(alg: BasedAlgebra, e_part: Sequence[int], f_part: Sequence[int],
                     a_matrix=None, name: str = "") -> Module:
    """The module ``(X --a--> Y)`` with ``X = ⊕ R/π^λ``, ``Y = ⊕ R/π^μ``.

    Basis order: the e-part blocks, then the f-part blocks.  Invalid data
    (e.g. a non-equivariant ``a``) is rejected by the module check.
    """
    p = alg.p
    e_part, f_part = [int(x) for x in e_part], [int(x) for x in f_part]
    if any(x < 1 for x in e_part + f_part):
        raise ModuleError("partition parts must be positive")
    dx, dy = sum(e_part), sum(f_part)
    d = dx + dy
    if a_matrix is None or (len(e_part) and len(f_part) and len(a_matrix) == 0):
        a_matrix = [[0] * len(f_part) for _ in e_part]
    a = pair_block_matrix(e_part, f_part, a_matrix, p)
    u = _shift(e_part)
    v = _shift(f_part)
    ex = np.zeros((d, d), dtype=np.int64)
    ex[:dx, :dx] = fl.identity(dx)
    fy = np.zeros((d, d), dtype=np.int64)
    fy[dx:, dx:] = fl.identity(dy)
    action = np.zeros((alg.dim, d, d), dtype=np.int64)
    for b, label in enumerate(alg.basis):
        parsed = parse_path_label(label)
        if parsed is None:
            raise ModuleError(f"pair form needs path-labelled algebra, got basis label {label!r}")
        power, vertex = parsed
        if vertex == "e":
            action[b, :dx, :dx] = fl.matrix_power(u, power, p) if dx else 0
        elif vertex == "f":
            action[b, dx:, dx:] = fl.matrix_power(v, power, p) if dy else 0
        else:
            if dx and dy:
                action[b, :dx, dx:] = (fl.matrix_power(u, power, p) @ a) % p
    return make_module(alg, action, name)


def resolve_algebra(spec, p: int | None = None) -> BasedAlgebra:
    from .algebra import algebra_from_json

    if isinstance(spec, BasedAlgebra):
        return spec
    if isinstance(spec, str):
        if p is None:
            raise ModuleError("a prime is needed to resolve a named algebra")
        return builtin_algebra(spec, p)
    if isinstance(spec, dict) and {"n", "m", "k"} <= set(spec):
        return triangle_algebra(spec.get("p", p), spec["n"], spec["m"], spec["k"])
    return algebra_from_json(spec)


def module_from_json(data, p: int | None = None, algebra: BasedAlgebra | None = None) -> Module:
    """Load the JSON module format ``{"algebra", "e_part", "f_part", "a"}``."""
    if isinstance(data, str):
        data = json.loads(data)
    alg = algebra if algebra is not None else resolve_algebra(data["algebra"], p)
    return module_from_pair(alg, data.get("e_part", []), data.get("f_part", []),
                            data.get("a"), data.get("name", ""))


# ------------------------------------------------------------------ Hom spaces


@dataclass(eq=False)
class HomSpace:
    """``Hom(M, N)`` with a basis and a fast coordinate map."""

    source: Module
    target: Module
    basis: np.ndarray  # (dim, dM, dN)
    _support: np.ndarray
    _free: np.ndarray

    @property
    def dim(self) -> int:
        return int(self.basis.shape[0])

    def maps(self) -> list[ModuleMap]:
        return [ModuleMap(self.source, self.target, b) for b in self.basis]

    def coords(self, f) -> np.ndarray:
        """Coordinates of homomorphisms (matrix or stack of matrices)."""
        mat = f.matrix if isinstance(f, ModuleMap) else np.asarray(f, dtype=np.int64)
        single = mat.ndim == 2
        if single:
            mat = mat[None]
        p = self.source.p
        bm, _, _ = self.source.adapted
        _, bni, _ = self.target.adapted
        if self.dim == 0:
            out = np.zeros((mat.shape[0], 0), dtype=np.int64)
        else:
            y = np.einsum("ab,nbc,cd->nad", bm, mat % p, bni) % p
            out = y.reshape(mat.shape[0], -1)[:, self._support][:, self._free]
        return out[0] if single else out

    def combine(self, coeffs) -> np.ndarray:
        coeffs = np.asarray(coeffs, dtype=np.int64)
        if self.dim == 0:
            return fl.zeros(self.source.dim, self.target.dim)
        return np.tensordot(coeffs, self.basis, axes=(0, 0)) % self.source.p


@lru_cache(maxsize=8192)
def hom_space(m: Module, n: Module, full: bool = False) -> HomSpace:
    """Solve the intertwining equations for ``Hom(M, N)``.

    Maps are sought block-diagonal in idempotent-adapted bases, so only the
    radical generators contribute equations.  ``full=True`` imposes the
    equations for every basis element instead (a cross-check).
    """
    if m.algebra is not n.algebra:
        raise ModuleError("modules over different algebras")
    p = m.p
    dm, dn = m.dim, n.dim
    empty = np.zeros(0, dtype=np.int64)
    if dm == 0 or dn == 0:
        return HomSpace(m, n, np.zeros((0, dm, dn), dtype=np.int64), empty, empty)
    bm, bmi, blocks_m = m.adapted
    bn, bni, blocks_n = n.adapted
    support = np.array([r * dn + c for bm_, bn_ in zip(blocks_m, blocks_n)
                        for r in bm_ for c in bn_], dtype=np.int64)
    if support.size == 0:
        return HomSpace(m, n, np.zeros((0, dm, dn), dtype=np.int64), support, empty)
    gens = range(m.algebra.dim) if full else m.algebra.radical_generators
    eqs = []
    eye_m, eye_n = fl.identity(dm), fl.identity(dn)
    for g in gens:
        mg = (bm @ m.action[g] @ bmi) % p
        ng = (bn @ n.action[g] @ bni) % p
        c = (np.kron(eye_m, ng.T) - np.kron(mg, eye_n))[:, support] % p
        c = c[np.any(c, axis=1)]
        if c.size:
            eqs.append(c)
    system = np.vstack(eqs) if eqs else fl.zeros(0, support.size)
    kern = fl.right_kernel(system, p)
    free = np.array(fl.free_columns(system, p), dtype=np.int64)
    basis = np.zeros((kern.shape[0], dm * dn), dtype=np.int64)
    basis[:, support] = kern
    basis = basis.reshape(-1, dm, dn)
    basis = np.einsum("ab,nbc,cd->nad", bmi, basis, bn) % p
    return HomSpace(m, n, basis, support, free)


def hom_basis(m: Module, n: Module, full: bool = False) -> list[ModuleMap]:
    return hom_space(m, n, full).maps()


# ------------------------------------------------------------ constructions


@dataclass(frozen=True, eq=False)
class DirectSum:
    module: Module
    injections: list[ModuleMap]
    projections: list[ModuleMap]


def direct_sum(mods: Sequence[Module], alg: BasedAlgebra | None = None) -> DirectSum:
    mods = list(mods)
    if not mods:
        if alg is None:
            raise ModuleError("empty direct sum needs an explicit algebra")
        return DirectSum(zero_module(alg), [], [])
    alg = mods[0].algebra
    if any(x.algebra is not alg for x in mods):
        raise ModuleError("direct sum of modules over different algebras")
    d = sum(x.dim for x in mods)
    action = np.zeros((alg.dim, d, d), dtype=np.int64)
    inj, proj, off = [], [], 0
    out = Module(alg, action, "+".join(x.name or "?" for x in mods))
    for x in mods:
        action[:, off:off + x.dim, off:off + x.dim] = x.action
        off += x.dim
    off = 0
    for x in mods:
        i = fl.zeros(x.dim, d)
        i[:, off:off + x.dim] = fl.identity(x.dim)
        inj.append(ModuleMap(x, out, i))
        proj.append(ModuleMap(out, x, i.T.copy()))
        off += x.dim
    return DirectSum(out, inj, proj)


def block_map(source: DirectSum, target: DirectSum, blocks: dict[tuple[int, int], ModuleMap]) -> ModuleMap:
    """Assemble a map between direct sums from its ``(i, j)`` components."""
    mat = fl.zeros(source.module.dim, target.module.dim)
    for (i, j), f in blocks.items():
        mat = (mat + source.projections[i].matrix @ f.matrix @ target.injections[j].matrix) % f.p
    return ModuleMap(source.module, target.module, mat)


def submodule(m: Module, rows, name: str = "") -> tuple[Module, ModuleMap]:
    """Submodule spanned by independent, invariant ``rows``; with inclusion."""
    p = m.p
    rows = np.asarray(rows, dtype=np.int64)
    rows = (rows.reshape(-1, m.dim) if m.dim else fl.zeros(0, 0)) % p
    k = rows.shape[0]
    if k == 0:
        z = zero_module(m.algebra)
        return z, ModuleMap(z, m, fl.zeros(0, m.dim))
    solver = fl.RowSolver(rows, p)
    if solver.rank != k:
        raise ModuleError("submodule rows are linearly dependent")
    images = np.einsum("ra,bac->brc", rows, m.action) % p
    sol = solver.solve(images.reshape(-1, m.dim))
    if sol is None:
        raise ModuleError("rows do not span a submodule")
    action = sol.reshape(m.algebra.dim, k, k)
    sub = Module(m.algebra, action, name)
    return sub, ModuleMap(sub, m, rows)


def quotient_module(m: Module, rows, name: str = "") -> tuple[Module, ModuleMap]:
    """``M / span(rows)`` with its projection, in canonical coordinates."""
    p = m.p
    q = fl.QuotientCoords(rows, m.dim, p)
    d = q.dim
    if q.basis.shape[0]:
        images = np.einsum("ra,bac->brc", q.basis, m.action) % p
        if np.any(q.reduce(images.reshape(-1, m.dim))):
            raise ModuleError("rows do not span a submodule")
    free = q.free
    action = np.stack([q.reduce(m.action[b][free]) for b in range(m.algebra.dim)]) if d else \
        np.zeros((m.algebra.dim, 0, 0), dtype=np.int64)
    quo = Module(m.algebra, action.reshape(m.algebra.dim, d, d), name)
    return quo, ModuleMap(m, quo, q.reduce(fl.identity(m.dim)).reshape(m.dim, d))


def kernel_rows(f: ModuleMap) -> np.ndarray:
    return fl.row_basis(fl.left_kernel(f.matrix, f.p), f.p) if f.source.dim else fl.zeros(0, 0)


def image_rows(f: ModuleMap) -> np.ndarray:
    return fl.row_basis(f.matrix, f.p) if f.source.dim else fl.zeros(0, f.target.dim)


# ---------------------------------------------------------------- isomorphism

RANDOM_ATTEMPTS = 64


def is_isomorphic(m: Module, n: Module, seed: int = 0) -> ModuleMap | None:
    """An isomorphism ``M -> N`` if one exists, else ``None``.

    Cheap witnesses first (dimension vectors, ``dim Hom`` asymmetry), then
    basis elements and seeded random combinations of ``Hom(M, N)``.  When
    that fails, ``None`` is returned only on a proof: ``End(M)`` certified
    local (then every nonzero class of ``Hom`` spanning set contains an iso
    if one exists, so trying the basis was conclusive) or a mismatch of the
    Krull-Schmidt multisets.
    """
    if m.algebra is not n.algebra:
        raise ModuleError("modules over different algebras")
    if m.dim != n.dim or m.dim_vector != n.dim_vector:
        return None
    if m.dim == 0:
        return ModuleMap(m, n, fl.zeros(0, 0))
    h = hom_space(m, n)
    if h.dim == 0 or h.dim != hom_space(n, m).dim:
        return None
    p = m.p
    basis = h.basis
    ok = fl.batch_invertible(basis, p)
    if ok.any():
        return ModuleMap(m, n, basis[int(np.argmax(ok))])
    from . import krull_schmidt as ks

    if ks.locality_certificate(ks.end_algebra(m)) is not None:
        return None
    rng = np.random.default_rng([seed, m.dim])
    coeffs = rng.integers(0, p, size=(RANDOM_ATTEMPTS, h.dim))
    cands = np.tensordot(coeffs, basis, axes=(1, 0)) % p
    ok = fl.batch_invertible(cands, p)
    if ok.any():
        return ModuleMap(m, n, cands[int(np.argmax(ok))])
    return ks.isomorphism_via_decomposition(m, n, seed)


# ---------------------------------------------------------------- randomness


def random_module(alg: BasedAlgebra, seed: int, max_dim: int, max_relations: int = 3) -> Module:
    """Cokernel of a random map ``Q -> P`` between sums of indecomposable
    projectives; deterministic in ``seed``, of dimension at most ``max_dim``."""
    from .projectives import indecomposable_projectives, map_from_generators, projective_sum

    if max_dim < 1:
        raise ValueError("max_dim must be >= 1")
    projs = indecomposable_projectives(alg)
    p = alg.p
    for attempt in range(1000):
        rng = np.random.default_rng([seed, attempt])
        tops: list[int] = []
        budget = max_dim + int(rng.integers(0, max_dim + 1))
        while True:
            i = int(rng.integers(len(projs)))
            if sum(projs[t].dim for t in tops) + projs[i].dim > budget:
                break
            tops.append(i)
            if rng.random() < 0.25:
                break
        if not tops:
            continue
        pmod, _ = projective_sum(alg, tops)
        n_rel = int(rng.integers(0, max_relations + 1))
        rel_tops = [int(rng.integers(len(projs))) for _ in range(n_rel)]
        images = []
        for t in rel_tops:
            rows = pmod.idempotent_rows(t)
            if rng.random() < 0.8:
                rows = fl.row_basis((pmod.radical_rows @ pmod.action[alg.idempotents[t]]) % p, p)
            if rows.shape[0] == 0:
                images.append(fl.zeros(1, pmod.dim)[0])
            else:
                images.append((rng.integers(0, p, size=rows.shape[0]) @ rows) % p)
        if rel_tops:
            rel = map_from_generators(alg, rel_tops, pmod, np.array(images))
            img = fl.row_basis(rel, p)
        else:
            img = fl.zeros(0, pmod.dim)
        if pmod.dim - img.shape[0] > max_dim:
            continue
        quo, _ = quotient_module(pmod, img, name=f"rand{seed}")
        if quo.dim:
            return quo
    raise RuntimeError("random_module failed to produce a module")
