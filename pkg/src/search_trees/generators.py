"""Random and exhaustive instance generators for tests and the CLI."""

from __future__ import annotations

from collections.abc import Iterator
from itertools import combinations, combinations_with_replacement, product

import networkx as nx
import numpy as np

from search_trees.graph import Graph, SpanningTree, normalize_edge
from search_trees.reductions import Clause, CnfFormula

Seed = int | np.random.Generator | None


def random_connected_graph(
    n: int, m: int | None = None, p: float | None = None, seed: Seed = None
) -> Graph:
    """Random connected graph on 1..n.

    A random tree (each vertex i > 1 attached to a uniform earlier vertex after a
    shuffle) guarantees connectivity; extra edges come either as exactly m - (n - 1)
    uniform non-edges or independently with probability p.
    """
    rng = np.random.default_rng(seed)
    if n < 1:
        raise ValueError(f"vertex count must be positive, got {n}")
    max_edges = n * (n - 1) // 2
    if m is not None and not n - 1 <= m <= max_edges:
        raise ValueError(f"edge count {m} out of range {n - 1}..{max_edges}")
    labels = rng.permutation(n) + 1
    edges = {
        normalize_edge(int(labels[i]), int(labels[rng.integers(i)])) for i in range(1, n)
    }
    missing = [e for e in combinations(range(1, n + 1), 2) if e not in edges]
    if m is not None:
        extra = m - len(edges)
        picks = rng.choice(len(missing), size=extra, replace=False) if extra else []
        edges |= {missing[i] for i in picks}
    elif p is not None:
        edges |= {e for e, keep in zip(missing, rng.random(len(missing)) < p) if keep}
    return Graph.from_edges(n, edges)


def random_spanning_tree(g: Graph, seed: Seed = None) -> SpanningTree:
    """Uniform random spanning tree via loop-erased random walks (Wilson)."""
    g.require_connected()
    rng = np.random.default_rng(seed)
    vertices = g.vertices
    root = vertices[int(rng.integers(g.n))]
    in_tree = {root}
    successor: dict[int, int] = {}
    for start in rng.permutation(vertices):
        v = int(start)
        u = v
        while u not in in_tree:
            ns = g.neighbors(u)
            successor[u] = ns[int(rng.integers(len(ns)))]
            u = successor[u]
        u = v
        while u not in in_tree:
            in_tree.add(u)
            u = successor[u]
    return SpanningTree(vertices, ((v, successor[v]) for v in vertices if v != root))


def random_split_graph(
    clique_size: int, independent_size: int, p: float = 0.5, seed: Seed = None
) -> Graph:
    """Random connected split graph: clique 1..c, independent c+1..c+i.

    Each independent vertex keeps every clique edge with probability p and at
    least one clique neighbour.
    """
    if clique_size < 1:
        raise ValueError("a connected split graph needs a non-empty clique")
    rng = np.random.default_rng(seed)
    clique = list(range(1, clique_size + 1))
    edges = set(combinations(clique, 2))
    for v in range(clique_size + 1, clique_size + independent_size + 1):
        chosen = [u for u, keep in zip(clique, rng.random(clique_size) < p) if keep]
        if not chosen:
            chosen = [clique[int(rng.integers(clique_size))]]
        edges |= {(u, v) for u in chosen}
    return Graph.from_edges(clique_size + independent_size, edges)


def random_cnf(variable_count: int, clause_count: int, seed: Seed = None) -> CnfFormula:
    """Random 3-CNF; variables are drawn with replacement, signs uniformly."""
    rng = np.random.default_rng(seed)
    variables = rng.integers(1, variable_count + 1, size=(clause_count, 3))
    signs = np.where(rng.random((clause_count, 3)) < 0.5, -1, 1)
    return CnfFormula.of(variable_count, (variables * signs).tolist())


def all_connected_graphs(n: int) -> list[Graph]:
    """All connected graphs on 1..n up to isomorphism (n <= 7, from the graph atlas)."""
    if not 1 <= n <= 7:
        raise ValueError(f"the graph atlas covers 1..7 vertices, got {n}")
    graphs = []
    for atlas_graph in nx.graph_atlas_g():
        if atlas_graph.number_of_nodes() != n or not nx.is_connected(atlas_graph):
            continue
        relabeled = nx.relabel_nodes(atlas_graph, {v: v + 1 for v in atlas_graph.nodes})
        graphs.append(Graph.from_networkx(relabeled))
    return graphs


def all_labeled_connected_graphs(n: int) -> Iterator[Graph]:
    """Every connected graph on the labeled vertex set 1..n (n <= 6)."""
    if not 1 <= n <= 6:
        raise ValueError(f"labeled enumeration covers 1..6 vertices, got {n}")
    pairs = list(combinations(range(1, n + 1), 2))
    for mask in product((False, True), repeat=len(pairs)):
        g = Graph.from_edges(n, (e for e, keep in zip(pairs, mask) if keep))
        if g.is_connected():
            yield g


def _flip(clause: Clause, flips: tuple[int, ...]) -> Clause:
    a, b, c = sorted(lit * flips[abs(lit) - 1] for lit in clause)
    return (a, b, c)


def _canonical(clauses: tuple[Clause, ...], k: int) -> tuple[Clause, ...]:
    return min(
        tuple(sorted(_flip(c, flips) for c in clauses)) for flips in product((1, -1), repeat=k)
    )


def all_3cnf(variable_count: int, clause_count: int) -> Iterator[CnfFormula]:
    """Every 3-CNF with the given sizes, once per class of variable sign flips.

    Clauses are multisets of literals and formulas are multisets of clauses.
    """
    k = variable_count
    literals = [lit for v in range(1, k + 1) for lit in (v, -v)]
    clauses: list[Clause] = list(combinations_with_replacement(sorted(literals), 3))
    seen: set[tuple[Clause, ...]] = set()
    for formula in combinations_with_replacement(clauses, clause_count):
        key = _canonical(formula, k)
        if key in seen:
            continue
        seen.add(key)
        yield CnfFormula(k, key)
