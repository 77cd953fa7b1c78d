import pytest

from exccover.groups import Perm


@pytest.fixture(scope="session", autouse=True)
def composition_convention():
    """The fixed convention (sigma * tau)(s) = sigma(tau(s)), re-checked
    at the start of every test run."""
    sigma = Perm((1, 2, 0))
    tau = Perm((0, 2, 1))
    prod = sigma * tau
    assert all(prod(s) == sigma(tau(s)) for s in range(3))
    yield
