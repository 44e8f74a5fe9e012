import pytest

from equibrane.towers import build_free_tower, build_genus3_tower

STANDARD_Z = ["1", "-1", "2", "-2", "3", "-3"]
OTHER_Z = [["2", "5", "-1", "7", "1/3", "4"], ["-3", "1/2", "9", "2", "-5", "6"],
           ["1/5", "-7", "3/2", "8", "-1/3", "10"]]


@pytest.fixture(scope="session")
def g3():
    return build_genus3_tower(STANDARD_Z)


@pytest.fixture(scope="session")
def free2():
    return build_free_tower(2)


@pytest.fixture(scope="session")
def free3():
    return build_free_tower(3)
