import numpy as np
import pytest

from sievebound import build_table, default_params


@pytest.fixture(scope="session")
def params():
    return default_params()


@pytest.fixture(scope="session")
def table():
    return build_table()


@pytest.fixture()
def rng():
    return np.random.default_rng(20250810)
