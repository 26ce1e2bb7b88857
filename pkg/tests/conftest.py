import pytest

from malcev.presentation import build_presentation


@pytest.fixture(scope="session")
def m1():
    return build_presentation(1)


@pytest.fixture(scope="session")
def m2():
    return build_presentation(2)


@pytest.fixture(scope="session")
def m3():
    return build_presentation(3)


@pytest.fixture(scope="session")
def m5():
    return build_presentation(5)
