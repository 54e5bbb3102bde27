import random
from functools import lru_cache

import pytest
from hypothesis import strategies as st

from maxla import Arrangement, FreeTree, enumerate_free_trees


# nine-vertex worked example: a..i = 0..8
WORKED_EDGES = [(0, 1), (0, 2), (0, 3), (3, 4), (4, 5), (4, 6), (4, 7), (7, 8)]
# h g i e f d b c a
WORKED_ORDER = (7, 6, 8, 4, 5, 3, 1, 2, 0)

# seven vertices, hubs 2 and 4 joined through 3
TWO_HUB_EDGES = [(0, 2), (1, 2), (2, 3), (3, 4), (4, 5), (4, 6)]


@pytest.fixture
def worked():
    return FreeTree(9, WORKED_EDGES), Arrangement(WORKED_ORDER)


@pytest.fixture
def two_hub():
    return FreeTree(7, TWO_HUB_EDGES)


@lru_cache(maxsize=None)
def trees(n):
    return tuple(enumerate_free_trees(n))


def trees_upto(n, lo=1):
    for k in range(lo, n + 1):
        yield from trees(k)


def random_tree(n, rng):
    perm = list(range(n))
    rng.shuffle(perm)
    return FreeTree(n, [(perm[v], perm[rng.randrange(v)]) for v in range(1, n)])


@st.composite
def tree_and_arrangement(draw, min_n=1, max_n=12):
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = random.Random(seed)
    t = random_tree(n, rng)
    order = draw(st.permutations(range(n)))
    return t, Arrangement(tuple(order))


@st.composite
def free_trees(draw, min_n=1, max_n=12):
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_tree(n, random.Random(seed))
