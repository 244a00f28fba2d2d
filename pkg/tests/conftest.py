import pytest

from propsemiring.algebra import free_boolean_algebra, table_semiring

from helpers import zmod_spec


@pytest.fixture(scope="session")
def ba0():
    return free_boolean_algebra(0)


@pytest.fixture(scope="session")
def ba1():
    return free_boolean_algebra(1)


@pytest.fixture(scope="session")
def ba2():
    return free_boolean_algebra(2)


@pytest.fixture(scope="session")
def z2():
    return table_semiring(zmod_spec(2))


@pytest.fixture(scope="session")
def z3():
    return table_semiring(zmod_spec(3))


@pytest.fixture(scope="session")
def z5():
    return table_semiring(zmod_spec(5))
