import pytest

from extgb.formats import example1_ideal, example1_initial, example1_order, example1_witness
from extgb.groebner import IdealSpec


@pytest.fixture(scope="session")
def ex_order():
    return example1_order()


@pytest.fixture(scope="session")
def ex_witness():
    return example1_witness()


@pytest.fixture(scope="session")
def ex_spec():
    n, gens = example1_ideal()
    return IdealSpec(n, tuple(gens))


@pytest.fixture(scope="session")
def ex_initial():
    return example1_initial()
