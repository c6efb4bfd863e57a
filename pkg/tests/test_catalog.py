import json

import numpy as np
import pytest

from heller.algebra import BUILTIN_PARAMS, builtin_algebra
from heller.catalog import catalog_A, data_checksums, fixtures, get_catalog, label_vector
from heller.krull_schmidt import identify
from heller.modules import is_isomorphic, module_from_pair, random_module
from heller.projectives import indecomposable_projectives, syzygy
from heller.stable import is_projective

C3_LABELS = ["X1", "X3", "X6", "X10", "X21", "X22", "X25"]


def test_catalog_a_shape(cat_a2):
    assert len(cat_a2) == 25 and len(cat_a2.projectives) == 2
    assert cat_a2["X1"].dim == 2 and cat_a2["X17"].dim == 9
    assert is_isomorphic(cat_a2["X4"], cat_a2["X23"]) is None
    assert cat_a2["X4"].dim_vector == cat_a2["X23"].dim_vector


def test_catalog_projectives_match(cat_a2):
    for q, ref in zip(cat_a2.projectives, indecomposable_projectives(cat_a2.algebra)):
        assert is_isomorphic(q, ref) is not None


def test_quotient_catalogs():
    b = get_catalog("B", 3)
    assert len(b) == 24 and "X4" not in b.labels
    e_b = indecomposable_projectives(b.algebra)[0]
    x4 = catalog_A(3).pair_data["X4"]
    assert is_isomorphic(module_from_pair(b.algebra, x4["e_part"], x4["f_part"], x4["a"]), e_b) is not None
    c3 = get_catalog("C3", 3)
    assert c3.labels == C3_LABELS
    assert c3["Y4"] is c3["X10"]
    c2 = get_catalog("C2", 2)
    assert c2.labels == ["X1", "X3", "X10", "X15", "X21"]


@pytest.mark.parametrize("name", sorted(BUILTIN_PARAMS))
def test_quotient_catalog_entries_valid(name):
    cat = get_catalog(name, 2)
    for label, m in cat.items():
        assert m.check() == [], label
        assert not is_projective(m), label


@pytest.mark.parametrize("name", ["C1", "C2", "C4", "C6", "C7", "C8"])
def test_quotient_catalog_complete(name):
    """Statistical completeness: random modules decompose over the catalog."""
    cat = get_catalog(name, 2)
    alg = builtin_algebra(name, 2)
    for seed in range(25):
        identify(random_module(alg, seed, 9), cat.with_projectives(), seed)


@pytest.mark.parametrize("name", sorted(BUILTIN_PARAMS))
def test_omega_closure(name):
    cat = get_catalog(name, 3)
    for _, m in cat.items():
        identify(syzygy(m).omega, cat.with_projectives())


def test_fixture_values():
    assert fixtures("A").S["X16"] == {"X2": 1, "X19": 1}
    assert fixtures("B").S["X17"] == {"X1": 1, "X2": 1, "X9": 1}
    assert fixtures("C3").H[3].tolist() == [0, 1, 0, 2, 1, 0, 1]
    assert fixtures("C3").labels == C3_LABELS
    assert fixtures("A").S["X10"] == {}
    with pytest.raises(KeyError):
        fixtures("C9")


def test_label_vector():
    assert label_vector({"X2": 1, "X19": 2}, ["X1", "X2", "X19"]) == [0, 1, 2]


def test_epsilon_fixtures_build(cat_a2):
    fx = fixtures("A")
    assert sorted(fx.epsilon, key=cat_a2.index) == cat_a2.labels
    for label, e in fx.epsilon.items():
        f = e.build(cat_a2)
        assert f.check() == [], label


def test_data_checksums_stable():
    a, b = data_checksums(), data_checksums()
    assert a == b and "catalog_A.json" in a and all(len(v) == 64 for v in a.values())


def test_catalog_json_schema():
    from importlib import resources
    raw = json.loads(resources.files("heller.data").joinpath("catalog_A.json").read_text())
    assert raw["schema"] == "heller.catalog/1"
    assert len(raw["modules"]) == 25
