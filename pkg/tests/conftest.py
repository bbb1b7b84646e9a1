import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from radialfree.words import reduce


def naive_product(u, v):
    """Concatenate, then cancel adjacent inverse pairs until none remain."""
    w = list(u) + list(v)
    changed = True
    while changed:
        changed = False
        for i in range(len(w) - 1):
            if w[i] == -w[i + 1]:
                del w[i : i + 2]
                changed = True
                break
    return tuple(w)


def letters(l):
    return st.sampled_from([k for k in range(-l, l + 1) if k])


def words(l, max_size=8):
    return st.lists(letters(l), max_size=max_size).map(reduce)


def fractions(max_den=6):
    return st.builds(Fraction, st.integers(-9, 9), st.integers(1, max_den))


def elements(l, max_terms=5, max_len=4):
    from radialfree.group_algebra import AlgebraElement

    return st.lists(st.tuples(words(l, max_len), fractions()), max_size=max_terms).map(
        lambda pairs: AlgebraElement(l, pairs)
    )


@pytest.fixture
def rng():
    return random.Random(20261016)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
