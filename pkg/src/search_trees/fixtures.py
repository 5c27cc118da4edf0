"""Named instances shipped with the package (small graphs, hand-checked trees, formulas)."""

from __future__ import annotations

from importlib import resources
from importlib.resources.abc import Traversable

from search_trees.fileio import (
    parse_dimacs_cnf,
    parse_graph_document,
    parse_graph_file,
    parse_tree_file,
)
from search_trees.graph import Graph, SpanningTree
from search_trees.reductions import CnfFormula

FIXTURE_PREFIX = "fixture:"

GRAPHS = (
    "p4",
    "c4",
    "c5",
    "k3",
    "k4",
    "k3p",
    "apex22",
    "split2",
    "star",
    "bfs-not-lbfs",
    "mns-not-lbfs",
    "lbfs-not-mcs",
    "dfs-not-ldfs",
)
TREES = (
    "c4_path",
    "k4_star",
    "apex22",
    "split2_caterpillar",
    "split2_path",
    "split2_bfs",
    "bfs-not-lbfs",
    "mns-not-lbfs",
    "lbfs-not-mcs",
    "dfs-not-ldfs",
)
FORMULAS = ("lbfs-gadget", "mns-gadget", "mns-gadget-alt", "sat1", "unsat2")


def _resource(filename: str) -> Traversable:
    path = resources.files("search_trees") / "data" / filename
    if not path.is_file():
        raise FileNotFoundError(f"no fixture named {filename}")
    return path


def read_fixture_text(filename: str) -> str:
    """Return the text of a fixture file such as 'c4.graph'."""
    return _resource(filename).read_text(encoding="utf-8")


def load_graph(name: str) -> Graph:
    return parse_graph_file(read_fixture_text(f"{name}.graph"))


def load_tree(name: str, g: Graph | None = None) -> SpanningTree:
    """Load a tree fixture against g, or against the graph its name starts with."""
    if g is None:
        g = load_graph(name.split("_")[0])
    return parse_tree_file(read_fixture_text(f"{name}.tree"), g)


def load_cnf(name: str) -> CnfFormula:
    return parse_dimacs_cnf(read_fixture_text(f"{name}.cnf"))


def vertex_names(name: str) -> dict[int, str]:
    """Display names declared in a graph fixture, or {} if it has none."""
    return dict(parse_graph_document(read_fixture_text(f"{name}.graph")).names)
