import pytest

from flagroots import LieType, build_constants, paint, root_system

SPACES = {
    "G2_12": (LieType.G2, (1, 2)),
    "F4_34": (LieType.F4, (3, 4)),
    "E6_36": (LieType.E6, (3, 6)),
    "E7_56": (LieType.E7, (5, 6)),
    "E8_12": (LieType.E8, (1, 2)),
}


@pytest.fixture(scope="session")
def systems():
    return {t: root_system(t) for t in LieType}


@pytest.fixture(scope="session")
def tables(systems):
    return {t: build_constants(s) for t, s in systems.items()}


@pytest.fixture(scope="session")
def diagrams(systems):
    return {sid: paint(systems[t], nodes) for sid, (t, nodes) in SPACES.items()}
