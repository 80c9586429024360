import random

import pytest

from fibercert.lattice import det


def random_unimodular(rng: random.Random, n: int, steps: int = 12):
    """Product of random elementary matrices and a signed permutation."""
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        k = rng.choice([-2, -1, 1, 2])
        m[i] = [a + k * b for a, b in zip(m[i], m[j])]
    perm = list(range(n))
    rng.shuffle(perm)
    signs = [rng.choice([-1, 1]) for _ in range(n)]
    m = [[s * x for x in m[p]] for p, s in zip(perm, signs)]
    assert abs(det(m)) == 1
    return m


def affine_image(points, u, shift):
    return [tuple(sum(u[i][j] * p[j] for j in range(len(p))) + shift[i] for i in range(len(u))) for p in points]


@pytest.fixture
def rng():
    return random.Random(20261015)


UNIT_TET = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]
NONSMOOTH_TET = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 2)]
REMARK_TET = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 2)]


def standard_simplex(dim, size=1):
    return [tuple([0] * dim)] + [tuple(size * int(i == j) for j in range(dim)) for i in range(dim)]


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
