import pytest

from paracert import builders, fixtures, kostant, parabolic, seed as seedmod


@pytest.fixture(scope="session")
def sl4():
    return builders.build_sl(4)


@pytest.fixture(scope="session")
def sl5():
    return builders.build_sl(5)


@pytest.fixture(scope="session")
def sl7():
    return builders.build_sl(7)


@pytest.fixture(scope="session")
def qc22():
    return builders.build_quaternionic(2, 2)


class Geometry:
    """Grading plus chain complex for one parabolic choice."""

    def __init__(self, algebra, system, crossed):
        self.algebra = algebra
        self.system = system
        self.grading = parabolic.grade(system, crossed)
        self.complex = kostant.ChainComplex(self.grading)

    def root(self, *eps):
        return self.system.covector_from_eps(list(eps))


@pytest.fixture(scope="session")
def grass_k2(sl4):
    algebra, system = sl4
    return Geometry(algebra, system, [system.simples[1]])


@pytest.fixture(scope="session")
def borel4(sl4):
    algebra, system = sl4
    return Geometry(algebra, system, system.simples)


@pytest.fixture(scope="session")
def grass_k1_m5(sl5):
    algebra, system = sl5
    return Geometry(algebra, system, [system.simples[0]])


@pytest.fixture(scope="session")
def path5(sl5):
    algebra, system = sl5
    return Geometry(algebra, system, system.simples[:2])


@pytest.fixture(scope="session")
def grass_k3_m7(sl7):
    algebra, system = sl7
    return Geometry(algebra, system, [system.simples[2]])


@pytest.fixture(scope="session")
def qc(qc22):
    algebra, system = qc22
    return Geometry(algebra, system, [system.simples[0]])


def _seed_for(geometry, name):
    record = fixtures.load_fixture(name)
    return fixtures.seed_from_record(geometry.complex, record)


@pytest.fixture(scope="session")
def seed_k2_m4(grass_k2):
    return _seed_for(grass_k2, "grassmannian_k2_m4")


@pytest.fixture(scope="session")
def seed_borel_pos(borel4):
    return _seed_for(borel4, "borel_pgl4_pos")


@pytest.fixture(scope="session")
def seed_borel_neg(borel4):
    return _seed_for(borel4, "borel_pgl4_neg")


@pytest.fixture(scope="session")
def seed_k1_m5(grass_k1_m5):
    return _seed_for(grass_k1_m5, "grassmannian_k1_m5")


@pytest.fixture(scope="session")
def seed_path(path5):
    return _seed_for(path5, "path_m5")


@pytest.fixture(scope="session")
def seed_k3_m7(grass_k3_m7):
    return _seed_for(grass_k3_m7, "grassmannian_k3_m7")


@pytest.fixture(scope="session")
def seed_qc(qc):
    return _seed_for(qc, "quaternionic_m2_n2")
