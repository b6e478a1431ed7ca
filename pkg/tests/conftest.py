import random

import pytest

from nilbound.words import FreeWord, reduce


def random_word(rng: random.Random, rank: int, max_len: int, min_len: int = 0) -> FreeWord:
    n = rng.randint(min_len, max_len)
    return reduce([(rng.randrange(rank), rng.choice((-1, 1))) for _ in range(n)], rank)


def mat_mul(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def unitriangular_inverse(m):
    """Inverse of an integer unitriangular matrix (I + N)^-1 = sum (-N)^k."""
    n = len(m)
    nil = [[m[i][j] - (i == j) for j in range(n)] for i in range(n)]
    out = [[int(i == j) for j in range(n)] for i in range(n)]
    term = [row[:] for row in out]
    for _ in range(n):
        term = mat_mul(term, [[-x for x in row] for row in nil])
        out = [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(out, term)]
    return out


def evaluate(word: FreeWord, images):
    """Image of ``word`` under generator -> unitriangular matrix."""
    n = len(images[0])
    out = [[int(i == j) for j in range(n)] for i in range(n)]
    inverses = [unitriangular_inverse(m) for m in images]
    for gen, exp in word.letters:
        m = images[gen] if exp > 0 else inverses[gen]
        for _ in range(abs(exp)):
            out = mat_mul(out, m)
    return out


def heisenberg(word):
    """Mal'cev coordinates from the 3x3 unitriangular representation.

    a^x b^y [a,b]^z maps to [[1, x, xy + z], [0, 1, y], [0, 0, 1]].
    """
    m = evaluate(word, [[[1, 1, 0], [0, 1, 0], [0, 0, 1]], [[1, 0, 0], [0, 1, 1], [0, 0, 1]]])
    x, y = m[0][1], m[1][2]
    return (x, y, m[0][2] - x * y)


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
