import pytest

from t2forms import fields


@pytest.fixture(scope="session")
def gf2():
    return fields.GF2


@pytest.fixture(scope="session")
def gf4():
    return fields.GF2.extend("a^2+a+1")


@pytest.fixture(scope="session")
def gf8():
    return fields.GF2.extend("a^3+a+1")


@pytest.fixture(scope="session")
def gf64_tower(gf4):
    # a relative extension on top of GF(4)
    return gf4.extend("b^3+b+1")
