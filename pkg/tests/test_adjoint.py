import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heller import fp_linalg as fl
from heller.adjoint import (
    AdjointContext, apply_S, compare_unit_description, find_left_adjoint, first_invertible,
    hom_dim_matrix, omega_s_idempotency, omega_twisted_matrix, right_adjoint_obstruction, s_object,
    stable_counts, verify_epsilon,
)
from heller.algebra import triangle_algebra
from heller.catalog import Catalog, EpsilonFixture, catalog_A, fixtures, get_catalog, label_vector
from heller.modules import ModuleMap, direct_sum, hom_space, module_from_pair
from heller.projectives import indecomposable_projectives, omega_map
from heller.stable import stable_hom


@pytest.fixture(scope="module")
def cert_a2():
    return find_left_adjoint(catalog_A(2))


@pytest.fixture(scope="module")
def cert_b2():
    return find_left_adjoint(get_catalog("B", 2))


def hereditary_catalog(p=2):
    alg = triangle_algebra(p, 1, 1, 1, name="Lambda(1,1,1)")
    simple_e = module_from_pair(alg, [1], [], [], "X21")
    return Catalog(alg, ["X21"], [simple_e], list(indecomposable_projectives(alg)))


def sub_catalog(cat, labels):
    return Catalog(cat.algebra, list(labels), [cat[k] for k in labels], cat.projectives,
                   {k: cat.pair_data[k] for k in labels})


def test_dim_matrices_c3(cat_c3_3):
    fx = fixtures("C3")
    assert np.array_equal(hom_dim_matrix(cat_c3_3).entries, fx.H)
    right = omega_twisted_matrix(cat_c3_3, "right")
    assert np.array_equal(right.entries, fx.H_prime)
    assert not right.entries[3].any() and not right.entries[6].any()
    assert hom_dim_matrix(cat_c3_3).to_csv().splitlines()[1] == "X1,1,0,1,0,1,0,0"


def test_dim_matrix_small_catalogs(cat_a2):
    assert hom_dim_matrix(sub_catalog(cat_a2, ["X1"])).entries.tolist() == [[1]]
    assert hom_dim_matrix(sub_catalog(cat_a2, [])).entries.shape == (0, 0)
    left = omega_twisted_matrix(cat_a2, "left")
    assert left.entries[cat_a2.index("X1"), cat_a2.index("X2")] == 1
    with pytest.raises(ValueError):
        omega_twisted_matrix(cat_a2, "up")


@pytest.mark.parametrize("name", ["A", "B", "C3", "C5"])
def test_h_diagonal_positive(name):
    ctx = AdjointContext(get_catalog(name, 2))
    assert (np.diag(ctx.H) >= 1).all()


def test_left_adjoint_a_spot_values(cert_a2):
    assert cert_a2.ok
    assert cert_a2.s_counts("X5") == {"X19": 1}
    assert cert_a2.s_counts("X16") == {"X2": 1, "X19": 1}
    assert cert_a2.s_counts("X10") == {}


def test_left_adjoint_b_spot_values(cert_b2):
    assert cert_b2.ok
    assert cert_b2.s_counts("X17") == {"X1": 1, "X2": 1, "X9": 1}


def test_dimension_bookkeeping(cert_a2):
    ctx = cert_a2.context
    for i, label in enumerate(cert_a2.labels):
        u = cert_a2.entries[label].s_vector
        assert np.array_equal(u @ ctx.H, ctx.N_left[i])
        assert all(cert_a2.entries[label].bijective)


def test_unique_s_vectors(cert_a2):
    for e in cert_a2.entries.values():
        assert len(e.verified_vectors) == 1


def test_certificate_json_and_jobs_determinism(cert_a2):
    doc = cert_a2.to_json()
    assert doc["schema"] == "heller.certificate/1"
    text = json.dumps(doc, sort_keys=True)
    again = find_left_adjoint(catalog_A(2), jobs=4).to_json()
    assert json.dumps(again, sort_keys=True) == text


def test_hereditary_left_adjoint_is_zero():
    cat = hereditary_catalog()
    cert = find_left_adjoint(cat)
    assert cert.ok and cert.s_counts("X21") == {}
    rows = omega_s_idempotency(cert)
    assert rows[0].omega_s == {} and rows[0].omega_s2 == {}
    rep = right_adjoint_obstruction(cat)
    assert rep.feasible and not rep.H_prime.entries.any()


def test_max_eps_dim_zero_rejects(cert_a2):
    cert = find_left_adjoint(sub_catalog(catalog_A(2), catalog_A(2).labels), max_eps_dim=0)
    assert not cert.ok
    assert all("dimension" in reason for fails in cert.failures.values() for _, reason in fails)


def test_first_invertible_offsets():
    t = [np.array([[[1, 0], [0, 1]]])]
    assert first_invertible(t, 2, dim=1) is not None
    assert first_invertible([np.array([[[1, 1], [1, 1]]])], 2, dim=1) is None
    off = [np.array([[1, 0], [0, 0]])]
    c = first_invertible([np.array([[[0, 0], [0, 1]]])], 3, offsets=off, dim=1)
    assert c is not None and c[0] != 0


@pytest.mark.parametrize("name,label", [("A", "X5"), ("B", "X1"), ("A", "X16"), ("B", "X17")])
def test_epsilon_fixture_examples(name, label):
    cat = get_catalog(name, 2)
    fx = fixtures(name)
    svec = np.array(label_vector(fx.S[label], cat.labels))
    chk = verify_epsilon(AdjointContext(cat), fx.epsilon[label], svec)
    assert chk.ok, chk


def test_zeroed_epsilon_fails_with_witness():
    cat = get_catalog("A", 2)
    fx = fixtures("A").epsilon["X1"]
    zero = lambda m: [["0"] * len(r) for r in m] if m and m[0] else m  # noqa: E731
    bad = EpsilonFixture("X1", fx.target, zero(fx.e_map), zero(fx.f_map))
    svec = np.array(label_vector(fixtures("A").S["X1"], cat.labels))
    chk = verify_epsilon(AdjointContext(cat), bad, svec)
    assert chk.valid_map and not chk.ok
    assert chk.witness is not None and chk.witness["j"] in cat.labels


def test_broken_square_reports_cells():
    cat = get_catalog("A", 2)
    fx = fixtures("A").epsilon["X5"]
    bad = EpsilonFixture("X5", fx.target, fx.e_map, [["0"]])
    svec = np.array(label_vector(fixtures("A").S["X5"], cat.labels))
    chk = verify_epsilon(AdjointContext(cat), bad, svec)
    assert not chk.valid_map and any(e.startswith("cell (1,1)") for e in chk.map_errors)


def _class(f):
    return stable_hom(f.source, f.target).reduce(f.matrix)


def test_apply_s_identity_and_zero(cert_a2):
    cat = cert_a2.catalog
    y = direct_sum([cat["X16"], cat["X5"]], cat.algebra).module
    s_id = apply_S(cert_a2, ModuleMap(y, y, fl.identity(y.dim)))
    sy = s_id.source
    assert np.array_equal(_class(s_id), stable_hom(sy, sy).reduce(fl.identity(sy.dim)))
    s_zero = apply_S(cert_a2, ModuleMap(y, y, fl.zeros(y.dim, y.dim)))
    assert not _class(s_zero).any()


@settings(max_examples=15)
@given(st.integers(0, 10 ** 6))
def test_apply_s_functorial(seed):
    cert = find_left_adjoint(catalog_A(2))
    cat = cert.catalog
    rng = np.random.default_rng(seed)
    labels = rng.choice(cat.labels, size=3)
    x, y, z = (cat[str(k)] for k in labels)

    def rand(m, n):
        h = hom_space(m, n)
        return ModuleMap(m, n, h.combine(rng.integers(0, 2, h.dim)) if h.dim else fl.zeros(m.dim, n.dim))

    f, g = rand(x, y), rand(y, z)
    lhs = apply_S(cert, ModuleMap(x, z, (f.matrix @ g.matrix) % 2))
    sf, sg = apply_S(cert, f), apply_S(cert, g)
    rhs = ModuleMap(lhs.source, lhs.target, (sf.matrix @ sg.matrix) % 2)
    assert np.array_equal(_class(lhs), _class(rhs))


def test_adjunction_bijection_on_direct_sums(cert_a2):
    cat = cert_a2.catalog
    y = direct_sum([cat["X12"], cat["X3"]], cat.algebra).module
    so = s_object(cert_a2, y)
    sy = so.presentation.base
    for z_label in ("X1", "X5", "X19", "X24"):
        z = cat[z_label]
        src = stable_hom(sy, z)
        dst = stable_hom(y, cert_a2.context.syz[cat.index(z_label)].omega)
        assert src.dim == dst.dim
        if not src.dim:
            continue
        rows = []
        for b in src.basis:
            om = omega_map(ModuleMap(sy, z, b), so.presentation)
            rows.append(dst.reduce((so.eps.matrix @ om.matrix) % 2))
        assert fl.rank(np.array(rows), 2) == dst.dim


def test_unit_descriptions_examples(cert_a2, cert_b2):
    a = cert_a2.catalog
    assert compare_unit_description(cert_a2, a["X5"], "X5").agree
    for i, q in enumerate(a.projectives):
        r = compare_unit_description(cert_a2, q, f"P{i + 1}")
        assert r.unit_zero and r.described_zero
    assert compare_unit_description(cert_b2, cert_b2.catalog["X6"], "X6").agree


def test_right_obstruction_reports(cat_c3_3):
    rep = right_adjoint_obstruction(cat_c3_3)
    assert not rep.feasible
    assert "candidates k in {X1, X6, X21}" in rep.trace()
    rep_a = right_adjoint_obstruction(catalog_A(2))
    assert isinstance(rep_a.feasible, bool)


def test_stable_counts_strips_projectives(cat_a2):
    m = direct_sum([cat_a2["X3"], cat_a2.projectives[0]], cat_a2.algebra).module
    assert stable_counts(m, cat_a2) == {"X3": 1}
