import pytest

from shiftq import Scalars, build_cartan


@pytest.fixture(scope="session")
def ctx_a():
    return Scalars(params=("a",))


@pytest.fixture(scope="session")
def ctx_ab():
    return Scalars(params=("a", "b"))


@pytest.fixture(scope="session")
def cd_a1(ctx_ab):
    return build_cartan(ctx_ab, "A", 1)


@pytest.fixture(scope="session")
def cd_a2(ctx_ab):
    return build_cartan(ctx_ab, "A", 2)


@pytest.fixture(scope="session")
def cd_b2(ctx_ab):
    return build_cartan(ctx_ab, "B", 2)


@pytest.fixture(scope="session")
def cd_g2(ctx_ab):
    return build_cartan(ctx_ab, "G", 2)
