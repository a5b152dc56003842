import pytest

from exdg.loader import load_fixture


@pytest.fixture(scope="session")
def a2():
    return load_fixture("a2-two-term")


@pytest.fixture(scope="session")
def a3():
    return load_fixture("a3-two-term")


@pytest.fixture(scope="session")
def cycle3():
    return load_fixture("cycle3")


@pytest.fixture(scope="session")
def a4rel():
    return load_fixture("linear-a4-rel")
