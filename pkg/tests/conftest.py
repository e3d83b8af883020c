import random

import pytest

from valfrob.gf import field
from valfrob.poly import FieldDescriptor, Polynomial


@pytest.fixture
def rng():
    return random.Random(12345)


def make_field(p, names, k=1):
    return FieldDescriptor(field(p, k), tuple(names))


def random_poly(rng, F, n, degree=6, terms=6):
    out = {}
    for _ in range(rng.randint(1, terms)):
        exp = [0] * n
        for _ in range(rng.randint(0, degree)):
            exp[rng.randrange(n)] += 1
        out[tuple(exp)] = rng.randrange(1, F.q)
    return Polynomial(F, n, out)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
