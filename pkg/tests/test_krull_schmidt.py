import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from heller import fp_linalg as fl
from heller.algebra import builtin_algebra
from heller.catalog import catalog_A
from heller.krull_schmidt import (
    UnknownSummand, all_idempotents, decompose, end_algebra, find_idempotent, identify,
    is_indecomposable, locality_certificate,
)
from heller.modules import direct_sum, is_isomorphic, random_module, submodule, zero_module
from heller.projectives import indecomposable_projectives

A2 = builtin_algebra("A", 2)


def brute_decompose(m):
    """Oracle: split along any nontrivial idempotent found by full enumeration."""
    if m.dim == 0:
        return []
    end = end_algebra(m)
    eye = fl.identity(m.dim)
    for c in all_idempotents(end):
        e = end.space.combine(c)
        if np.any(e) and not np.array_equal(e, eye):
            out = []
            for proj in (e, (eye - e) % m.p):
                sub, _ = submodule(m, fl.row_basis(proj, m.p))
                out.extend(brute_decompose(sub))
            return out
    return [m]


def same_multiset(xs, ys):
    ys = list(ys)
    for x in xs:
        for j, y in enumerate(ys):
            if is_isomorphic(x, y) is not None:
                del ys[j]
                break
        else:
            return False
    return not ys


def test_end_algebra_examples(cat_a2):
    simple = cat_a2["X21"]
    assert simple.dim == 1 and end_algebra(simple).dim == 1
    p1, _ = indecomposable_projectives(A2)
    end = end_algebra(p1)
    assert end.dim == 3
    assert np.array_equal(end.table, np.transpose(end.table, (1, 0, 2)))
    x = cat_a2["X5"]
    assert end_algebra(direct_sum([x, x], A2).module).dim == 4 * end_algebra(x).dim


def test_find_idempotent_examples(cat_a2):
    res = find_idempotent(end_algebra(cat_a2["X1"]))
    assert res.idempotent is None and res.certificate is not None
    assert len(all_idempotents(end_algebra(cat_a2["X1"]))) == 2
    both = direct_sum([cat_a2["X1"], cat_a2["X2"]], A2).module
    e = find_idempotent(end_algebra(both)).idempotent
    assert e is not None and np.array_equal((e.matrix @ e.matrix) % 2, e.matrix)
    p1, _ = indecomposable_projectives(A2)
    assert find_idempotent(end_algebra(p1)).idempotent is None
    assert len(all_idempotents(end_algebra(p1))) == 2


def test_decompose_examples(cat_a2):
    _, p2 = indecomposable_projectives(A2)
    x1 = cat_a2["X1"]
    dec = decompose(direct_sum([x1, x1, p2], A2).module)
    got = sorted((s.dim, k) for s, k in dec.summands)
    assert got == [(2, 2), (3, 1)]
    assert any(is_isomorphic(s, x1) is not None and k == 2 for s, k in dec.summands)
    assert decompose(zero_module(A2)).summands == []


@given(st.integers(0, 10 ** 6), st.sampled_from(["A", "B"]))
def test_decompose_witness(seed, name):
    alg = builtin_algebra(name, 2)
    m = random_module(alg, seed, 12)
    dec = decompose(m, seed)
    assert dec.witness.check() == []
    assert fl.rank(dec.witness.matrix, 2) == m.dim == dec.witness.matrix.shape[0]
    for s, _ in dec.summands:
        assert is_indecomposable(s)


@given(st.integers(0, 10 ** 6))
def test_decompose_matches_brute_force(seed):
    m = random_module(A2, seed, 8)
    ours = decompose(m, seed).expanded()
    assert same_multiset(ours, brute_decompose(m))


@given(st.integers(0, 10 ** 6), st.integers(0, 10 ** 6))
def test_decompose_additive(s1, s2):
    m, n = random_module(A2, s1, 6), random_module(A2, s2, 6)
    both = decompose(direct_sum([m, n], A2).module).expanded()
    assert same_multiset(both, decompose(m).expanded() + decompose(n).expanded())


@given(st.integers(0, 10 ** 6))
def test_decompose_seed_independent(seed):
    m = random_module(A2, seed, 10)
    assert same_multiset(decompose(m, 0).expanded(), decompose(m, seed + 1).expanded())


def test_identify_examples(cat_a2):
    cat = cat_a2.with_projectives()
    m = direct_sum([cat_a2["X2"], cat_a2["X19"]], A2).module
    counts = identify(m, cat)
    assert {k: v for k, v in counts.items() if v} == {"X2": 1, "X19": 1}
    assert not any(identify(zero_module(A2), cat).values())
    p1, _ = indecomposable_projectives(A2)
    with pytest.raises(UnknownSummand):
        identify(p1, cat_a2.items())


@pytest.mark.parametrize("p", [2, 3])
def test_catalog_locality(p):
    for label, m in catalog_A(p).items():
        assert locality_certificate(end_algebra(m)) is not None, label
