import pytest

from geozeta import fixtures


@pytest.fixture(scope="session")
def small_spec():
    return fixtures.load_spectrum("small")


@pytest.fixture(scope="session")
def medium_spec():
    return fixtures.load_spectrum("medium")


@pytest.fixture(scope="session")
def invariants():
    return fixtures.load_invariants()
