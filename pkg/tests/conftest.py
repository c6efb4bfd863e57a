import itertools

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def all_rows(n: int, p: int):
    """Every vector of F_p^n, as int64 arrays (brute-force oracle helper)."""
    for v in itertools.product(range(p), repeat=n):
        yield np.array(v, dtype=np.int64)


@pytest.fixture(scope="session")
def cat_a2():
    from heller.catalog import catalog_A
    return catalog_A(2)


@pytest.fixture(scope="session")
def cat_b2():
    from heller.catalog import get_catalog
    return get_catalog("B", 2)


@pytest.fixture(scope="session")
def cat_c3_3():
    from heller.catalog import get_catalog
    return get_catalog("C3", 3)
