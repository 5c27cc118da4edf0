"""Shared fixtures."""

from __future__ import annotations

import pytest

from search_trees.fixtures import load_graph, load_tree
from search_trees.graph import Graph, SpanningTree


@pytest.fixture
def c4() -> Graph:
    return load_graph("c4")


@pytest.fixture
def c4_path(c4: Graph) -> SpanningTree:
    return load_tree("c4_path", c4)


@pytest.fixture
def k4() -> Graph:
    return load_graph("k4")


@pytest.fixture
def k4_star(k4: Graph) -> SpanningTree:
    return load_tree("k4_star", k4)


@pytest.fixture
def split2() -> Graph:
    return load_graph("split2")
