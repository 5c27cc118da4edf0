"""Tests for the shipped fixtures and the search classes they separate."""

from __future__ import annotations

import pytest

from search_trees.fixtures import (
    FORMULAS,
    GRAPHS,
    TREES,
    load_cnf,
    load_graph,
    load_tree,
    read_fixture_text,
    vertex_names,
)
from search_trees.graph import validate_spanning_tree
from search_trees.oracle import oracle_recognize
from search_trees.recognizers import recognize
from search_trees.searches import SearchKind
from search_trees.trees import Side

SEPARATING_CLAIMS = [
    ("bfs-not-lbfs", SearchKind.BFS, Side.F, True),
    ("bfs-not-lbfs", SearchKind.LBFS, Side.F, False),
    ("bfs-not-lbfs", SearchKind.MNS, Side.F, False),
    ("mns-not-lbfs", SearchKind.MNS, Side.F, True),
    ("mns-not-lbfs", SearchKind.BFS, Side.F, True),
    ("mns-not-lbfs", SearchKind.LBFS, Side.F, False),
    ("lbfs-not-mcs", SearchKind.MNS, Side.F, True),
    ("lbfs-not-mcs", SearchKind.BFS, Side.F, True),
    ("lbfs-not-mcs", SearchKind.LBFS, Side.F, True),
    ("lbfs-not-mcs", SearchKind.MCS, Side.F, False),
    ("dfs-not-ldfs", SearchKind.DFS, Side.L, True),
    ("dfs-not-ldfs", SearchKind.LDFS, Side.L, False),
]


@pytest.mark.parametrize("name", GRAPHS)
def test_graphs_load_connected(name):
    assert load_graph(name).is_connected()


@pytest.mark.parametrize("name", TREES)
def test_trees_span_their_graphs(name):
    g = load_graph(name.split("_")[0])
    assert validate_spanning_tree(g, load_tree(name))


@pytest.mark.parametrize("name", FORMULAS)
def test_formulas_parse(name):
    f = load_cnf(name)
    assert f.variable_count >= 1
    assert f.clause_count >= 1


def test_mns_gadget_variants_differ_in_the_third_clause():
    main, alt = load_cnf("mns-gadget"), load_cnf("mns-gadget-alt")
    assert main.clauses[:2] == alt.clauses[:2]
    assert main.clauses[2] == (-1, -3, -4)
    assert alt.clauses[2] == alt.clauses[0]


def test_vertex_names():
    assert vertex_names("apex22") == {1: "r", 2: "a", 3: "b", 4: "x", 5: "y"}
    assert vertex_names("c4") == {}


def test_unknown_fixture():
    with pytest.raises(FileNotFoundError):
        read_fixture_text("nope.graph")


@pytest.mark.parametrize(("name", "kind", "side", "expected"), SEPARATING_CLAIMS)
def test_separating_claims(name, kind, side, expected):
    g = load_graph(name)
    t = load_tree(name, g)
    assert (oracle_recognize(g, t, kind, side) is not None) == expected
    assert recognize(g, t, kind, side).recognized == expected
