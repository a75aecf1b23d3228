import random
from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from hyperpf.linalg import SquareMatrix
from hyperpf.tensor import SparseTensor

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


rationals = st.builds(
    Fraction,
    st.integers(min_value=-9, max_value=9),
    st.integers(min_value=1, max_value=5),
)
nonzero_rationals = rationals.filter(bool)


def sparse_tensors(n, m, max_entries=6):
    idx = st.tuples(*[st.integers(min_value=1, max_value=n)] * m)
    return st.dictionaries(idx, nonzero_rationals, max_size=max_entries).map(
        lambda entries: SparseTensor(n, m, entries)
    )


def square_matrices(n):
    return st.lists(st.lists(rationals, min_size=n, max_size=n), min_size=n, max_size=n).map(
        lambda rows: SquareMatrix(tuple(map(tuple, rows)))
    )


def random_matrix(rng: random.Random, n: int, size: int = 5) -> SquareMatrix:
    return SquareMatrix(tuple(
        tuple(Fraction(rng.randint(-size, size), rng.randint(1, 3)) for _ in range(n)) for _ in range(n)
    ))


def random_antisymmetric(rng: random.Random, n: int) -> SquareMatrix:
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            rows[i][j] = Fraction(rng.randint(-6, 6), rng.randint(1, 3))
            rows[j][i] = -rows[i][j]
    return SquareMatrix(tuple(map(tuple, rows)))


@pytest.fixture
def rng():
    return random.Random(20191219)
