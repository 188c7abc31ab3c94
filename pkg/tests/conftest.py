import os
import sys

import networkx as nx
import pytest
from hypothesis import settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from treealpha.graph import Graph  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def graph_of(n, edges):
    return Graph(range(n), edges)


def cycle(n):
    return graph_of(n, [(i, (i + 1) % n) for i in range(n)])


def k23():
    return graph_of(5, [(a, b) for a in (0, 1) for b in (2, 3, 4)])


def petersen():
    h = nx.petersen_graph()
    return graph_of(10, h.edges)


@st.composite
def graphs(draw, min_n=1, max_n=10):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return graph_of(n, [e for e, keep in zip(pairs, mask) if keep])


@pytest.fixture
def c6():
    return cycle(6)
