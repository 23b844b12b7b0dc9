import pytest

from blocklex import TotalOrder, clique, factor_profile_and_order, graph_power, petersen


@pytest.fixture(scope="session")
def pet():
    return petersen()


@pytest.fixture(scope="session")
def pet_profile(pet):
    return factor_profile_and_order(pet)[0]


@pytest.fixture(scope="session")
def pet_order(pet):
    return factor_profile_and_order(pet)[1]


@pytest.fixture(scope="session")
def cube3():
    return graph_power(clique(2), 3)


@pytest.fixture(scope="session")
def k2_order():
    return TotalOrder.identity(2)
