import pytest
from hypothesis import HealthCheck, settings

from regaut import fixtures

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def fig1():
    return fixtures.load("fig1-gura")


@pytest.fixture(scope="session")
def accept_all():
    return fixtures.load("accept-all-nat")


@pytest.fixture(scope="session")
def lemma44():
    return fixtures.load("lemma44-k2")


@pytest.fixture(scope="session")
def order2():
    return fixtures.load("sec5-2ura-order")


@pytest.fixture(scope="session")
def second_to_last():
    return fixtures.load("second-to-last")
