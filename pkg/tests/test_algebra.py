import dataclasses
import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from heller import fp_linalg as fl
from heller.algebra import (
    BUILTIN_PARAMS, QUOTIENT_IDEALS, AlgebraError, algebra_from_json, builtin_algebra,
    triangle_algebra, triangularity, validate_algebra,
)


@st.composite
def params(draw):
    n = draw(st.integers(1, 4))
    m = draw(st.integers(1, 4))
    k = draw(st.integers(1, min(n, m)))
    return draw(st.sampled_from([2, 3, 5])), n, m, k


def test_triangle_examples():
    a = triangle_algebra(3, 3, 3, 3)
    assert a.dim == 9 and len(a.idempotents) == 2 and len(a.radical) == 7
    a2 = triangle_algebra(2, 1, 1, 1)
    assert a2.dim == 3 and set(a2.basis) == {"e", "f", "a"}
    assert triangle_algebra(3, 2, 2, 2).dim == 6


def test_triangle_rejects_bad_input():
    with pytest.raises((AlgebraError, ValueError)):
        triangle_algebra(2, 2, 1, 2)
    with pytest.raises(ValueError):
        triangle_algebra(4, 1, 1, 1)


def test_builtin_parameters():
    assert builtin_algebra("A", 5).params == (3, 3, 3)
    assert builtin_algebra("B", 3).params == (3, 3, 2)
    assert builtin_algebra("C7", 2).dim == 5
    with pytest.raises(KeyError):
        builtin_algebra("Z", 2)


@given(params())
def test_triangle_valid(prm):
    p, n, m, k = prm
    alg = triangle_algebra(p, n, m, k)
    assert validate_algebra(alg) == []
    assert alg.dim == n + m + k
    assert triangularity(alg) == (True, True)


@given(params())
def test_radical_power_vanishes(prm):
    p, n, m, k = prm
    alg = triangle_algebra(p, n, m, k)
    d = alg.dim
    rad = fl.identity(d)[list(alg.radical)]
    power = rad
    for _ in range(max(n, m)):
        power = fl.row_basis(np.einsum("ai,bj,ijk->abk", power, rad, alg.mul).reshape(-1, d) % p, p)
    assert power.shape[0] == 0


def _perturbed(alg, **kw):
    return dataclasses.replace(alg, **kw)


def test_validate_names_associativity_fault():
    alg = triangle_algebra(3, 2, 2, 2)
    mul = alg.mul.copy()
    i, j = alg.index("pi*e"), alg.index("a")
    mul[i, j] = (mul[i, j] + 1) % 3
    fails = validate_algebra(_perturbed(alg, mul=mul))
    assert any(f.startswith("associativity") for f in fails)


def test_validate_names_radical_fault():
    alg = triangle_algebra(3, 2, 2, 2)
    missing = alg.index("pi*a")
    rad = tuple(i for i in alg.radical if i != missing)
    fails = validate_algebra(_perturbed(alg, radical=rad))
    assert any(f.startswith("ideal-closure") for f in fails)


def _ideal_span(alg, gens):
    p, d = alg.p, alg.dim
    rows = fl.identity(d)[[alg.index(g) for g in gens]]
    span = fl.row_basis(rows, p) if gens else fl.zeros(0, d)
    while True:
        left = np.einsum("ai,ijk->ajk", span, alg.mul).reshape(-1, d)
        right = np.einsum("ai,jik->ajk", span, alg.mul).reshape(-1, d)
        new = fl.row_basis(np.vstack([span, left % p, right % p]), p)
        if new.shape[0] == span.shape[0]:
            return new
        span = new


@pytest.mark.parametrize("name", sorted(BUILTIN_PARAMS))
def test_quotient_consistency(name):
    a = builtin_algebra("A", 3)
    c = builtin_algebra(name, 3)
    phi = fl.zeros(a.dim, c.dim)
    for i, lab in enumerate(a.basis):
        if lab in c.basis:
            phi[i, c.index(lab)] = 1
    # multiplicative: phi(x y) = phi(x) phi(y) on basis pairs
    lhs = np.einsum("ijk,kl->ijl", a.mul, phi) % 3
    rhs = np.einsum("ia,jb,abl->ijl", phi, phi, c.mul) % 3
    assert np.array_equal(lhs, rhs)
    kernel = fl.row_basis(fl.left_kernel(phi, 3), 3)
    ideal = _ideal_span(a, QUOTIENT_IDEALS[name])
    assert fl.rank(np.vstack([kernel, ideal]), 3) == kernel.shape[0] == ideal.shape[0]


def test_json_roundtrip_and_errors():
    alg = triangle_algebra(2, 1, 1, 1)
    back = algebra_from_json(json.dumps(alg.to_json()))
    assert back.basis == alg.basis and np.array_equal(back.mul, alg.mul)
    with pytest.raises(AlgebraError):
        algebra_from_json({"p": 2, "basis": ["e"]})
    bad = alg.to_json()
    bad["radical"] = []
    bad["idempotents"] = [0, 1]
    with pytest.raises(AlgebraError):
        algebra_from_json(bad)
