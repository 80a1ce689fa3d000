from __future__ import annotations

import random

import pytest
from hypothesis import strategies as st

from bidigraph import BidirectedGraph, load_example
from bidigraph.oracle import random_graph


@pytest.fixture
def path_graph():
    return load_example("path")


@pytest.fixture
def tri_graph():
    return load_example("triangle")


@pytest.fixture
def circ_graph():
    return load_example("circuit")


@pytest.fixture
def quasi_graph():
    return load_example("quasi")


def single_edge(su=1, sv=-1):
    return BidirectedGraph(["x", "y"], [("e1", "x", su, "y", sv)])


@st.composite
def graphs(draw, max_vertices=6, max_edges=8):
    """Random bidirected multigraphs driven by a hypothesis-chosen seed."""
    seed = draw(st.integers(min_value=0, max_value=2**32 - 1))
    return random_graph(random.Random(seed), max_vertices, max_edges)
