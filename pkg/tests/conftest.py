import random
from pathlib import Path

import pytest
from hypothesis import strategies as st

from princcong.lattice import lattice_from_covers
from princcong.poset import Poset, chain, poset_from_pairs, transitive_closure
from princcong.randomgen import random_functor

DATA = Path(__file__).parent / "data"


def make_n5():
    return lattice_from_covers(
        ["0", "a", "b", "c", "1"],
        [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
    )


def make_m3():
    return lattice_from_covers(
        ["0", "p", "q", "r", "1"],
        [("0", "p"), ("0", "q"), ("0", "r"), ("p", "1"), ("q", "1"), ("r", "1")],
    )


def make_chain(n):
    labels = ["0"] + ["m%d" % i for i in range(1, n - 1)] + ["1"] if n > 1 else ["0"]
    return lattice_from_covers(labels, list(zip(labels, labels[1:])))


def square(bottom="0", left="x", right="y", top="1"):
    return poset_from_pairs([bottom, left, right, top],
                            [(bottom, left), (bottom, right), (left, top), (right, top)])


@pytest.fixture
def n5():
    return make_n5()


@pytest.fixture
def m3():
    return make_m3()


@pytest.fixture
def chain2():
    return make_chain(2)


@pytest.fixture
def chain3():
    return lattice_from_covers(["0", "m", "1"], [("0", "m"), ("m", "1")])


@pytest.fixture
def data_dir():
    return DATA


def random_functors(count, seed, **kw):
    rng = random.Random(seed)
    return [random_functor(rng, **kw) for _ in range(count)]


@st.composite
def posets(draw, min_size=1, max_size=6):
    """Random posets on labels e0, e1, ... whose order extends the index order."""
    n = draw(st.integers(min_size, max_size))
    rows = [0] * n
    for a in range(n):
        for b in range(a + 1, n):
            if draw(st.booleans()):
                rows[a] |= 1 << b
    return Poset(["e%d" % i for i in range(n)], transitive_closure(rows))


@st.composite
def relations(draw, max_size=6):
    n = draw(st.integers(1, max_size))
    els = ["v%d" % i for i in range(n)]
    pairs = draw(st.lists(st.tuples(st.sampled_from(els), st.sampled_from(els)), max_size=10))
    return els, pairs


@st.composite
def bounded_posets(draw, max_size=6):
    m = draw(st.integers(0, max_size - 2))
    rows = [0] * m
    for a in range(m):
        for b in range(a + 1, m):
            if draw(st.booleans()):
                rows[a] |= 1 << b
    rows = transitive_closure(rows)
    n = m + 2
    full = (1 << n) - 1
    up = [full] + [(row << 1) | 1 << (n - 1) for row in rows] + [1 << (n - 1)]
    return Poset(["bot"] + ["e%d" % i for i in range(m)] + ["top"], up)


__all__ = ["chain", "make_n5", "make_m3", "make_chain", "square"]
