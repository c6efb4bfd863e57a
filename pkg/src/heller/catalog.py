"""Labelled catalogs of indecomposables and the expected-result fixtures."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

import numpy as np

from . import fp_linalg as fl
from .algebra import BUILTIN_PARAMS, QUOTIENT_IDEALS, BasedAlgebra, builtin_algebra
from .modules import Module, ModuleMap, is_isomorphic, module_from_pair, pair_block_matrix
from .projectives import indecomposable_projectives

FIXTURE_NAMES = ("A", "B", "C3", "C5")


def _data(name: str) -> str:
    return resources.files("heller.data").joinpath(name).read_text()


def data_checksums() -> dict[str, str]:
    out = {}
    for f in sorted(resources.files("heller.data").iterdir(), key=lambda x: x.name):
        if f.name.endswith(".json"):
            out[f.name] = hashlib.sha256(f.read_bytes()).hexdigest()
    return out


@dataclass(eq=False)
class Catalog:
    """Nonprojective indecomposables in a fixed label order, plus the
    indecomposable projectives."""

    algebra: BasedAlgebra
    labels: list[str]
    modules: list[Module]
    projectives: list[Module]
    pair_data: dict[str, dict] = field(default_factory=dict)
    aliases: dict[str, str] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.labels)

    def __getitem__(self, label: str) -> Module:
        label = self.aliases.get(label, label)
        try:
            return self.modules[self.labels.index(label)]
        except ValueError:
            raise KeyError(f"{label!r} is not in the {self.algebra.name} catalog") from None

    def index(self, label: str) -> int:
        return self.labels.index(self.aliases.get(label, label))

    def items(self) -> list[tuple[str, Module]]:
        return list(zip(self.labels, self.modules))

    def with_projectives(self) -> list[tuple[str, Module]]:
        return self.items() + [(f"P{i + 1}", q) for i, q in enumerate(self.projectives)]


@lru_cache(maxsize=1)
def _catalog_json() -> dict:
    return json.loads(_data("catalog_A.json"))


@lru_cache(maxsize=None)
def catalog_A(p: int) -> Catalog:
    alg = builtin_algebra("A", p)
    raw = _catalog_json()
    labels, mods = [], []
    for label, d in raw["modules"].items():
        labels.append(label)
        mods.append(module_from_pair(alg, d["e_part"], d["f_part"], d["a"], label))
    projs = [module_from_pair(alg, d["e_part"], d["f_part"], d["a"], k) for k, d in raw["projectives"].items()]
    return Catalog(alg, labels, mods, projs, dict(raw["modules"]))


def annihilated(m: Module, alg_a: BasedAlgebra, ideal: tuple[str, ...]) -> bool:
    """Whether the two-sided ideal generated by ``ideal`` acts as zero
    (``x (b g b') = ((x b) g) b'``, so the generators suffice)."""
    return not any(np.any(m.action[alg_a.index(label)]) for label in ideal)


@lru_cache(maxsize=None)
def catalog_quotient(name: str, p: int) -> Catalog:
    """Catalog of a quotient of ``A``: the A-catalog entries killed by the
    defining ideal, minus the new projectives ``eΛ`` and ``fΛ``."""
    if name == "A":
        return catalog_A(p)
    if name not in QUOTIENT_IDEALS:
        raise KeyError(f"unknown algebra {name!r}; choose from {sorted(BUILTIN_PARAMS)}")
    cat_a = catalog_A(p)
    alg = builtin_algebra(name, p)
    projs = indecomposable_projectives(alg)
    ideal = QUOTIENT_IDEALS[name]
    labels, mods = [], []
    for label, m in cat_a.items():
        if not annihilated(m, cat_a.algebra, ideal):
            continue
        d = cat_a.pair_data[label]
        q = module_from_pair(alg, d["e_part"], d["f_part"], d["a"], label)
        if any(is_isomorphic(q, pr) is not None for pr in projs):
            continue
        labels.append(label)
        mods.append(q)
    aliases = {}
    if name == "C3":
        aliases = dict(json.loads(_data("fixtures_C3.json"))["aliases"])
    return Catalog(alg, labels, mods, list(projs), {k: cat_a.pair_data[k] for k in labels}, aliases)


def get_catalog(name: str, p: int) -> Catalog:
    fl.check_prime(p)
    return catalog_A(p) if name == "A" else catalog_quotient(name, p)


# ----------------------------------------------------------------- fixtures


@dataclass
class EpsilonFixture:
    label: str
    target: dict
    e_map: list
    f_map: list

    def build(self, cat: Catalog) -> ModuleMap:
        """The transcribed map ``X_i -> T`` (``T`` a presentation of ``ΩSX_i``)."""
        alg, p = cat.algebra, cat.algebra.p
        src_data = cat.pair_data[self.label]
        src = cat[self.label]
        t = self.target
        tgt = module_from_pair(alg, t["e_part"], t["f_part"], t["a"], f"T{self.label[1:]}")
        e = pair_block_matrix(src_data["e_part"], t["e_part"], self.e_map, p)
        f = pair_block_matrix(src_data["f_part"], t["f_part"], self.f_map, p)
        mat = fl.zeros(src.dim, tgt.dim)
        dx, tx = e.shape
        mat[:dx, :tx] = e
        mat[dx:, tx:] = f
        return ModuleMap(src, tgt, mat)


@dataclass
class Fixtures:
    name: str
    S: dict[str, dict[str, int]] = field(default_factory=dict)
    omega_S: dict[str, dict[str, int]] = field(default_factory=dict)
    epsilon: dict[str, EpsilonFixture] = field(default_factory=dict)
    H: np.ndarray | None = None
    H_prime: np.ndarray | None = None
    labels: list[str] = field(default_factory=list)
    aliases: dict[str, str] = field(default_factory=dict)
    prime: int | None = None
    extra: dict = field(default_factory=dict)


@lru_cache(maxsize=None)
def fixtures(name: str) -> Fixtures:
    if name not in FIXTURE_NAMES:
        raise KeyError(f"no fixtures for {name!r}; have {FIXTURE_NAMES}")
    raw = json.loads(_data(f"fixtures_{name}.json"))
    fx = Fixtures(name)
    fx.S = raw.get("S", {})
    fx.omega_S = raw.get("omega_S", {})
    fx.epsilon = {k: EpsilonFixture(k, v["target"], v["e_map"], v["f_map"])
                  for k, v in raw.get("epsilon", {}).items()}
    if "H" in raw:
        fx.H = np.array(raw["H"], dtype=np.int64)
        fx.H_prime = np.array(raw["H_prime"], dtype=np.int64)
    fx.labels = raw.get("labels", [])
    fx.aliases = raw.get("aliases", {})
    fx.prime = raw.get("prime")
    fx.extra = {k: v for k, v in raw.items()
                if k not in {"S", "omega_S", "epsilon", "H", "H_prime", "labels", "aliases", "prime"}}
    return fx


def label_vector(counts: dict[str, int], labels: list[str]) -> list[int]:
    return [int(counts.get(lab, 0)) for lab in labels]
