import random

import pytest

from skewtaylor.qcommute import QMatrix
from skewtaylor.scalars import QQ, PrimeField
from skewtaylor.skewpoly import minimal_generators

F101 = PrimeField(101)


def random_qmatrix(rng, n, F=F101, commutative=False):
    upper = {}
    if not commutative:
        for i in range(n):
            for j in range(i + 1, n):
                upper[(i, j)] = F.random_nonzero(rng)
    return QMatrix.from_upper(n, upper, F)


def random_gens(rng, n, s_max=5, e_max=3, min_degree=1):
    while True:
        raw = []
        for _ in range(rng.randint(1, s_max)):
            raw.append(tuple(rng.randint(0, e_max) for _ in range(n)))
        raw = [g for g in raw if sum(g) >= min_degree]
        if raw:
            return minimal_generators(raw)


def random_instance(rng, n_max=5, s_max=5, e_max=3, F=F101, commutative=False):
    n = rng.randint(1, n_max)
    return random_gens(rng, n, s_max, e_max), random_qmatrix(rng, n, F, commutative)


def random_instances(seed, count, **kw):
    rng = random.Random(seed)
    return [random_instance(rng, **kw) for _ in range(count)]


def qring(q, F=QQ):
    """The three-variable ring with xy = q yx, xz = -zx, yz = -q^-1 zy."""
    return QMatrix.from_upper(3, {(0, 1): q, (0, 2): F.coerce(-1), (1, 2): F.neg(F.inv(q))}, F)


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.report_lines():
        terminalreporter.write_line(line)
