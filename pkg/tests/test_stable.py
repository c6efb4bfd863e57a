import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from heller import fp_linalg as fl
from heller.algebra import builtin_algebra
from heller.catalog import catalog_A
from heller.modules import ModuleMap, direct_sum, hom_space, random_module
from heller.projectives import indecomposable_projectives, syzygy
from heller.stable import (
    induced_map, is_coretraction, is_projective, is_stable_iso, is_stable_mono, is_stably_isomorphic,
    stable_hom, stable_mono_witness,
)

A2 = builtin_algebra("A", 2)


def factoring_span(m, n):
    """Oracle: span of all composites ``M -> Q -> N`` over indecomposable
    projectives ``Q``, in Hom(M, N) coordinates."""
    h = hom_space(m, n)
    rows = []
    for q in indecomposable_projectives(m.algebra):
        a, b = hom_space(m, q), hom_space(q, n)
        for g in a.basis:
            for k in b.basis:
                rows.append(h.coords((g @ k) % m.p))
    if not rows or h.dim == 0:
        return fl.zeros(0, h.dim)
    return fl.row_basis(np.array(rows), m.p)


def _same_span(u, v, p):
    if u.shape[0] != v.shape[0]:
        return False
    return u.shape[0] == 0 or fl.rank(np.vstack([u, v]), p) == u.shape[0]


@given(st.integers(0, 10 ** 6), st.integers(0, 10 ** 6), st.sampled_from(["A", "B", "C3"]))
def test_projective_subspace_matches_oracle(s1, s2, name):
    alg = builtin_algebra(name, 2)
    m, n = random_module(alg, s1, 7), random_module(alg, s2, 7)
    sh = stable_hom(m, n)
    assert _same_span(sh.quotient.basis, factoring_span(m, n), 2)
    assert sh.total.dim == sh.dim + sh.proj_dim


def test_projective_subspace_catalog_pairs(cat_a2):
    labels = ["X1", "X2", "X5", "X12", "X17", "X19", "X21"]
    for a in labels:
        for b in labels:
            m, n = cat_a2[a], cat_a2[b]
            assert _same_span(stable_hom(m, n).quotient.basis, factoring_span(m, n), 2), (a, b)


def test_projective_target_is_stably_zero(cat_a2):
    for q in indecomposable_projectives(A2):
        assert stable_hom(cat_a2["X5"], q).dim == 0
        assert stable_hom(q, cat_a2["X5"]).dim == 0


def test_c3_diagonal(cat_c3_3):
    assert stable_hom(cat_c3_3["Y1"], cat_c3_3["Y1"]).dim == 1
    assert stable_hom(cat_c3_3["Y4"], cat_c3_3["Y4"]).dim == 2


def test_stable_isomorphism_examples(cat_a2):
    x = cat_a2["X7"]
    p1, _ = indecomposable_projectives(A2)
    assert is_stably_isomorphic(x, direct_sum([x, p1], A2).module)
    assert not is_stably_isomorphic(cat_a2["X1"], cat_a2["X2"])
    assert is_stably_isomorphic(syzygy(cat_a2["X5"]).omega, cat_a2["X19"])


@given(st.integers(0, 10 ** 6))
def test_reduce_respects_composition(seed):
    rng = np.random.default_rng(seed)
    x, y, z = (random_module(A2, seed + i, 6) for i in range(3))
    hxy, hyz = hom_space(x, y), hom_space(y, z)
    if hxy.dim == 0 or hyz.dim == 0:
        return
    f = hxy.combine(rng.integers(0, 2, hxy.dim))
    g = hyz.combine(rng.integers(0, 2, hyz.dim))
    sh = stable_hom(x, y)
    if sh.proj_dim:
        k = sh.quotient.basis.shape[0]
        noise = hxy.combine((rng.integers(0, 2, k) @ sh.quotient.basis) % 2)
    else:
        noise = fl.zeros(x.dim, y.dim)
    sxz = stable_hom(x, z)
    assert np.array_equal(sxz.reduce((f @ g) % 2), sxz.reduce(((f + noise) @ g) % 2))


@given(st.integers(0, 10 ** 6), st.integers(0, 10 ** 6), st.integers(0, 10 ** 6))
def test_stable_hom_additive(s1, s2, s3):
    m1, m2, n = (random_module(A2, s, 5) for s in (s1, s2, s3))
    ds = direct_sum([m1, m2], A2).module
    assert stable_hom(ds, n).dim == stable_hom(m1, n).dim + stable_hom(m2, n).dim


def test_stable_mono_examples(cat_a2):
    mods = [m for _, m in cat_a2.items()]
    x = cat_a2["X5"]
    ident = ModuleMap(x, x, fl.identity(x.dim))
    assert is_stable_iso(ident) and is_stable_mono(ident, mods)
    zero = ModuleMap(x, x, fl.zeros(x.dim, x.dim))
    assert not is_stable_mono(zero, mods)
    idx, g = stable_mono_witness(zero, mods)
    assert not stable_hom(mods[idx], x).is_zero(g)
    with pytest.raises(ValueError):
        is_stable_mono(ident, [])


def test_stable_mono_pi_map(cat_a2):
    """``(R/π -> R/π) -> (R/π² -> R/π²)`` sending generators to π-multiples."""
    x1, x2 = cat_a2["X1"], cat_a2["X2"]
    mods = [m for _, m in cat_a2.items()]
    h = hom_space(x1, x2)
    found = False
    for v in range(1, 2 ** h.dim):
        c = np.array([(v >> i) & 1 for i in range(h.dim)])
        f = ModuleMap(x1, x2, h.combine(c))
        assert is_stable_mono(f, mods) == (stable_mono_witness(f, mods) is None)
        found = True
    assert found


@given(st.integers(0, 10 ** 6))
def test_stable_mono_against_witness_search(seed):
    rng = np.random.default_rng(seed)
    mods = [m for _, m in catalog_A(2).items()]
    x, y = random_module(A2, seed, 5), random_module(A2, seed + 7, 7)
    h = hom_space(x, y)
    f = ModuleMap(x, y, h.combine(rng.integers(0, 2, h.dim)) if h.dim else fl.zeros(x.dim, y.dim))
    assert is_stable_mono(f, mods) == (stable_mono_witness(f, mods) is None)


def test_coretraction_examples(cat_a2):
    x = cat_a2["X9"]
    r = is_coretraction(ModuleMap(x, x, fl.identity(x.dim)))
    assert r is not None
    sh = stable_hom(x, x)
    assert np.array_equal(sh.reduce(r.matrix), sh.reduce(fl.identity(x.dim)))
    assert is_coretraction(ModuleMap(x, x, fl.zeros(x.dim, x.dim))) is None


def test_coretraction_witness_is_checked(cat_a2):
    x, y = cat_a2["X1"], cat_a2["X7"]
    ds = direct_sum([x, y], A2)
    r = is_coretraction(ds.injections[0])
    assert r is not None and r.check() == []
    sh = stable_hom(x, x)
    assert np.array_equal(sh.reduce((ds.injections[0].matrix @ r.matrix) % 2), sh.reduce(fl.identity(x.dim)))


def test_induced_map_shape(cat_a2):
    x = cat_a2["X5"]
    m = induced_map(cat_a2["X19"], ModuleMap(x, x, fl.identity(x.dim)))
    d = stable_hom(cat_a2["X19"], x).dim
    assert m.shape == (d, d) and fl.rank(m, 2) == d


def test_projective_modules_detected():
    for q in indecomposable_projectives(builtin_algebra("C3", 3)):
        assert is_projective(q)
