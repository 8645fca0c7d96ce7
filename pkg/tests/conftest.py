import pytest

from sihinsure.actuarial import price
from sihinsure.model import default_scenarios
from sihinsure.sensitivity import sensitivity_table
from sihinsure.simulator import simulate


@pytest.fixture(scope="session")
def euler_scenarios():
    return default_scenarios("euler")


@pytest.fixture(scope="session")
def seq_scenarios():
    return default_scenarios("sequential")


@pytest.fixture(scope="session")
def disease_free(euler_scenarios):
    return euler_scenarios[0]


@pytest.fixture(scope="session")
def endemic(euler_scenarios):
    return euler_scenarios[1]


@pytest.fixture(scope="session")
def euler_trajectories(euler_scenarios):
    return [simulate(sc) for sc in euler_scenarios]


@pytest.fixture(scope="session")
def euler_pricing(euler_scenarios):
    return [price(sc) for sc in euler_scenarios]


@pytest.fixture(scope="session")
def seq_pricing(seq_scenarios):
    return [price(sc) for sc in seq_scenarios]


@pytest.fixture(scope="session")
def seq_sensitivity(seq_scenarios):
    return [sensitivity_table(sc) for sc in seq_scenarios]
