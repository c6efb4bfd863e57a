"""Split basic finite-dimensional algebras over F_p.

The workhorse is the triangle family ``Λ(n, m, k)``: the path algebra of
``e --a--> f`` with loops ``u`` at ``e`` and ``v`` at ``f`` subject to
``u^n = 0``, ``v^m = 0``, ``u^k a = 0`` and ``u a = a v``.  Writing ``π`` for
both loops, its basis is ``{π^s e}_{s<n} ∪ {π^t f}_{t<m} ∪ {π^r a}_{r<k}``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

from . import fp_linalg as fl

# Λ(n, m, k) parameters of A and of its quotients.
BUILTIN_PARAMS = {
    "A": (3, 3, 3),
    "B": (3, 3, 2),
    "C1": (3, 2, 2),
    "C2": (3, 1, 1),
    "C3": (2, 2, 2),
    "C4": (3, 3, 1),
    "C5": (3, 2, 1),
    "C6": (2, 3, 2),
    "C7": (1, 3, 1),
    "C8": (2, 3, 1),
}

# Ideal generators of A cutting out each quotient.
QUOTIENT_IDEALS = {
    "A": (),
    "B": ("pi^2*a",),
    "C1": ("pi^2*f",),
    "C2": ("pi*f",),
    "C3": ("pi^2*e", "pi^2*f"),
    "C4": ("pi*a",),
    "C5": ("pi*a", "pi^2*f"),
    "C6": ("pi^2*e",),
    "C7": ("pi*e",),
    "C8": ("pi^2*e", "pi*a"),
}


class AlgebraError(ValueError):
    pass


def path_label(power: int, vertex: str) -> str:
    if power == 0:
        return vertex
    if power == 1:
        return f"pi*{vertex}"
    return f"pi^{power}*{vertex}"


_LABEL_RE = re.compile(r"^(?:pi(?:\^(\d+))?\*)?([efa])$")


def parse_path_label(label: str) -> tuple[int, str] | None:
    """``"pi^2*a"`` -> ``(2, "a")``; ``None`` if the label is not a path."""
    m = _LABEL_RE.match(label)
    if not m:
        return None
    if label.startswith("pi"):
        return (int(m.group(1)) if m.group(1) else 1), m.group(2)
    return 0, m.group(2)


@dataclass(frozen=True, eq=False)
class BasedAlgebra:
    """An algebra given by a basis and structure constants.

    ``mul[i, j]`` is the coefficient row of ``b_i * b_j``.  The listed
    idempotents are primitive, orthogonal and sum to 1; ``radical`` indexes a
    basis of the Jacobson radical.
    """

    p: int
    basis: tuple[str, ...]
    mul: np.ndarray
    idempotents: tuple[int, ...]
    radical: tuple[int, ...]
    name: str = ""
    params: tuple[int, int, int] | None = field(default=None)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index(self, label: str) -> int:
        try:
            return self.basis.index(label)
        except ValueError:
            raise KeyError(f"{label!r} is not a basis label of {self.name or 'algebra'}") from None

    @cached_property
    def right_regular(self) -> np.ndarray:
        """``R[b]`` with row ``k`` equal to the coordinates of ``b_k * b_b``."""
        return np.ascontiguousarray(np.transpose(self.mul, (1, 0, 2)))

    @cached_property
    def one(self) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[list(self.idempotents)] = 1
        return v

    @cached_property
    def radical_generators(self) -> tuple[int, ...]:
        """Radical basis elements spanning ``rad / rad^2``."""
        rad = list(self.radical)
        if not rad:
            return ()
        prods = self.mul[np.ix_(rad, rad)].reshape(-1, self.dim)
        rad2 = fl.row_basis(prods, self.p)
        chosen: list[int] = []
        current = rad2
        r0 = current.shape[0]
        for i in rad:
            unit = np.zeros((1, self.dim), dtype=np.int64)
            unit[0, i] = 1
            trial = np.vstack([current, unit])
            if fl.rank(trial, self.p) > r0:
                chosen.append(i)
                current = trial
                r0 += 1
        return tuple(chosen)

    @cached_property
    def generators(self) -> tuple[int, ...]:
        return tuple(self.idempotents) + self.radical_generators

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "dim": self.dim,
            "basis": list(self.basis),
            "idempotents": list(self.idempotents),
            "radical": list(self.radical),
            "mul": self.mul.tolist(),
        }


def triangle_algebra(p: int, n: int, m: int, k: int, name: str = "") -> BasedAlgebra:
    p = fl.check_prime(p)
    if n < 1 or m < 1 or k < 1 or k > min(n, m):
        raise AlgebraError(f"need n, m >= 1 and 1 <= k <= min(n, m); got ({n}, {m}, {k})")
    labels = [path_label(s, "e") for s in range(n)]
    labels += [path_label(t, "f") for t in range(m)]
    labels += [path_label(r, "a") for r in range(k)]
    e0, f0, a0 = 0, n, n + m
    d = n + m + k
    mul = np.zeros((d, d, d), dtype=np.int64)
    for s in range(n):
        for s2 in range(n):
            if s + s2 < n:
                mul[e0 + s, e0 + s2, e0 + s + s2] = 1
        for r in range(k):
            if s + r < k:
                mul[e0 + s, a0 + r, a0 + s + r] = 1
    for t in range(m):
        for t2 in range(m):
            if t + t2 < m:
                mul[f0 + t, f0 + t2, f0 + t + t2] = 1
    for r in range(k):
        for t in range(m):
            if r + t < k:
                mul[a0 + r, f0 + t, a0 + r + t] = 1
    radical = tuple(i for i in range(d) if i not in (e0, f0))
    return BasedAlgebra(
        p=p,
        basis=tuple(labels),
        mul=mul,
        idempotents=(e0, f0),
        radical=radical,
        name=name or f"Lambda({n},{m},{k})",
        params=(n, m, k),
    )


@lru_cache(maxsize=None)
def builtin_algebra(name: str, p: int) -> BasedAlgebra:
    if name not in BUILTIN_PARAMS:
        raise KeyError(f"unknown algebra {name!r}; choose from {sorted(BUILTIN_PARAMS)}")
    return triangle_algebra(p, *BUILTIN_PARAMS[name], name=name)


def validate_algebra(alg: BasedAlgebra) -> list[str]:
    """Every failed invariant, by name.  Empty list means valid."""
    p, d = alg.p, alg.dim
    mul = alg.mul % p
    failures: list[str] = []
    if mul.shape != (d, d, d):
        return [f"shape: structure constants have shape {mul.shape}, expected {(d, d, d)}"]

    left = np.einsum("ijl,lkm->ijkm", mul, mul) % p
    right = np.einsum("jkl,ilm->ijkm", mul, mul) % p
    bad = np.argwhere(np.any(left != right, axis=3))
    if bad.size:
        i, j, k = bad[0]
        failures.append(
            f"associativity: ({alg.basis[i]}*{alg.basis[j]})*{alg.basis[k]} != "
            f"{alg.basis[i]}*({alg.basis[j]}*{alg.basis[k]})"
        )

    idem = list(alg.idempotents)
    for a in idem:
        for b in idem:
            want = np.zeros(d, dtype=np.int64)
            if a == b:
                want[a] = 1
            if np.any(mul[a, b] != want):
                failures.append(f"idempotents: {alg.basis[a]}*{alg.basis[b]} wrong")
    one = alg.one
    lhs = np.einsum("i,ijk->jk", one, mul) % p
    rhs = np.einsum("j,ijk->ik", one, mul) % p
    if np.any(lhs != fl.identity(d)) or np.any(rhs != fl.identity(d)):
        failures.append("unit: idempotents do not sum to the identity")

    rad = list(alg.radical)
    if sorted(idem + rad) != list(range(d)) or len(set(idem) & set(rad)):
        failures.append("basis: basis is not the disjoint union of idempotents and radical")
    outside = [i for i in range(d) if i not in set(rad)]
    if rad and outside:
        closure = np.concatenate([mul[rad][:, :, outside].ravel(), mul[:, rad][:, :, outside].ravel()])
        if np.any(closure):
            failures.append("ideal-closure: radical span is not a two-sided ideal")
    if rad:
        power = fl.row_basis(fl.identity(d)[rad], p)
        base = power
        for _ in range(d + 1):
            if power.shape[0] == 0:
                break
            prods = np.einsum("ai,bj,ijk->abk", power, base, mul).reshape(-1, d) % p
            power = fl.row_basis(prods, p)
        if power.shape[0]:
            failures.append("nilpotency: radical is not nilpotent")
    return failures


def check_algebra(alg: BasedAlgebra) -> BasedAlgebra:
    failures = validate_algebra(alg)
    if failures:
        raise AlgebraError("; ".join(failures))
    return alg


def algebra_from_json(data: dict | str) -> BasedAlgebra:
    """Load and validate the JSON algebra format (see docs/formats.md)."""
    if isinstance(data, str):
        data = json.loads(data)
    try:
        p = fl.check_prime(data["p"])
        basis = tuple(str(b) for b in data["basis"])
        mul = np.array(data["mul"], dtype=np.int64) % p
        dim = int(data.get("dim", len(basis)))
        idem = tuple(int(i) for i in data["idempotents"])
        rad = tuple(int(i) for i in data["radical"])
    except (KeyError, TypeError) as exc:
        raise AlgebraError(f"malformed algebra JSON: {exc}") from exc
    if dim != len(basis):
        raise AlgebraError(f"dim {dim} does not match {len(basis)} basis labels")
    params = None
    parsed = [parse_path_label(b) for b in basis]
    if all(parsed):
        counts = {v: sum(1 for _, w in parsed if w == v) for v in "efa"}
        params = (counts["e"], counts["f"], counts["a"])
    alg = BasedAlgebra(p=p, basis=basis, mul=mul, idempotents=idem, radical=rad,
                       name=data.get("name", "custom"), params=params)
    return check_algebra(alg)


def triangularity(alg: BasedAlgebra) -> tuple[bool, bool]:
    """``(eΛf spanned by a-paths, fΛe == 0)`` for a triangle algebra."""
    e, f = alg.idempotents
    p, d = alg.p, alg.dim
    left_e = alg.mul[e] % p
    efs = (left_e @ alg.right_regular[f]) % p  # rows: e*b_k*f
    span = fl.row_basis(efs, p)
    a_idx = [i for i, b in enumerate(alg.basis) if b.endswith("a")]
    a_span = fl.row_basis(fl.identity(d)[a_idx], p)
    same = span.shape == a_span.shape and np.array_equal(span, a_span)
    fe = (alg.mul[f] @ alg.right_regular[e]) % p
    return same, not np.any(fe)
