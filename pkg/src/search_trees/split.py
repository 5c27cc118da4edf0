"""Search-tree recognition on split graphs.

On a split graph the F-tree question is the same for BFS, LBFS, LDFS, MCS and
MNS, so it is answered once by the BFS layers engine. The L-tree question for
LBFS, LDFS, MCS and MNS reduces to checking three conditions on the spine of a
caterpillar.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass

from search_trees.errors import NotSplitError, UnsupportedQueryError
from search_trees.graph import (
    Graph,
    SpanningTree,
    VertexOrdering,
    require_spanning_tree,
)
from search_trees.recognizers import (
    Budget,
    Outcome,
    RecognitionResult,
    certify_witness,
    recognize_backtracking,
    recognize_bfs_f_tree,
)
from search_trees.searches import SearchKind
from search_trees.trees import CaterpillarDecomposition, Side, caterpillar_decompositions

logger = logging.getLogger(__name__)

SPLIT_F_KINDS = frozenset(
    {SearchKind.BFS, SearchKind.LBFS, SearchKind.LDFS, SearchKind.MCS, SearchKind.MNS}
)
SPLIT_L_KINDS = frozenset({SearchKind.LBFS, SearchKind.LDFS, SearchKind.MCS, SearchKind.MNS})


@dataclass(frozen=True)
class SplitPartition:
    """Vertex partition into a clique and an independent set."""

    clique: frozenset[int]
    independent: frozenset[int]

    def is_valid_for(self, g: Graph) -> bool:
        if self.clique | self.independent != set(g.vertices) or self.clique & self.independent:
            return False
        members = sorted(self.clique)
        for i, u in enumerate(members):
            if any(not g.has_edge(u, v) for v in members[i + 1 :]):
                return False
        return all(
            not any(w in self.independent for w in g.neighbors(v)) for v in self.independent
        )


def split_partition(g: Graph) -> SplitPartition | None:
    """Return a clique/independent-set partition of g, or None if g is not split.

    Uses the degree-sequence test: with degrees d_1 >= ... >= d_n and
    m = max{i : d_i >= i - 1}, g is split iff
    sum(d_1..d_m) = m(m - 1) + sum(d_{m+1}..d_n), and then the m highest-degree
    vertices form a clique.
    """
    ranked = sorted(g.vertices, key=lambda v: (-g.degree(v), v))
    degrees = [g.degree(v) for v in ranked]
    m = max(i for i, d in enumerate(degrees, start=1) if d >= i - 1)
    if sum(degrees[:m]) != m * (m - 1) + sum(degrees[m:]):
        return None
    partition = SplitPartition(frozenset(ranked[:m]), frozenset(ranked[m:]))
    return partition if partition.is_valid_for(g) else None


def _require_partition(g: Graph, partition: SplitPartition | None) -> SplitPartition:
    partition = partition or split_partition(g)
    if partition is None:
        raise NotSplitError("graph is not a split graph")
    return partition


def split_f_witness(
    g: Graph, partition: SplitPartition, tau: VertexOrdering, kind: SearchKind
) -> VertexOrdering:
    """Turn a BFS ordering of a split graph into a kind ordering with the same F-tree.

    The result keeps the root of tau, then visits the clique in tau's order and
    finishes with the remaining independent vertices, best frozen label first.
    Clique vertices see every visited clique vertex, so they are always step
    candidates while the clique lasts, and the first visited neighbour of every
    vertex is the same as in tau.
    """
    root = tau.at(1)
    head = [root, *(v for v in tau.order if v in partition.clique and v != root)]
    position = {v: i for i, v in enumerate(head, start=1)}
    rest = sorted(v for v in g.vertices if v not in position)
    keys = {
        w: _leaf_key(kind, g.n, sorted(position[u] for u in g.neighbors(w))) for w in rest
    }
    rest.sort(key=keys.__getitem__, reverse=True)
    return VertexOrdering(head + rest)


def recognize_split_f_tree(
    g: Graph,
    t: SpanningTree,
    kind: SearchKind,
    *,
    partition: SplitPartition | None = None,
    root: int | None = None,
    budget: Budget | None = None,
    verify: bool = True,
) -> RecognitionResult:
    """Decide whether t is an F-tree of kind on the split graph g.

    The answer is computed once with the BFS layers engine, and the witness for
    kind is rebuilt from the BFS witness by split_f_witness. Runs in near-linear
    time when verify is off; verify replays the witness through the search rules.

    Raises:
        UnsupportedQueryError: If kind is GEN or DFS.
        NotSplitError: If g is not split.
    """
    if kind not in SPLIT_F_KINDS:
        raise UnsupportedQueryError(f"split F-tree recognition does not cover {kind.value}")
    partition = _require_partition(g, partition)
    require_spanning_tree(g, t)
    bfs = recognize_bfs_f_tree(g, t, root=root, verify=verify and kind is SearchKind.BFS)
    if bfs.witness is None or kind is SearchKind.BFS:
        return bfs

    sigma = split_f_witness(g, partition, bfs.witness, kind)
    if verify and not certify_witness(g, t, kind, Side.F, sigma):
        logger.error("Rebuilt %s witness %s fails replay; searching all roots", kind.value, sigma)
        return recognize_backtracking(g, t, kind, Side.F, root=root, budget=budget)
    return RecognitionResult(Outcome.YES, sigma, bfs.roots_tried, bfs.nodes_expanded)


def _end_rank(g: Graph, partition: SplitPartition) -> Callable[[int], int]:
    def rank(v: int) -> int:
        if v in partition.clique:
            return 0
        return 1 if g.degree(v) >= 2 else 2

    return rank


def satisfies_caterpillar_conditions(
    g: Graph, partition: SplitPartition, dec: CaterpillarDecomposition
) -> bool:
    """Check the three spine conditions for an L-tree of the MNS family.

    1. The spine holds every clique vertex.
    2. No leaf attached at v_i has a graph edge to a later spine vertex v_j, j > i.
    3. Every independent spine vertex v_i is adjacent to the l clique vertices
       before it, and its other deg(v_i) - l neighbours are v_{i+1}, v_{i+2}, ...
    """
    index = dec.spine_index()
    if not partition.clique <= index.keys():
        return False
    for leaf, attachment in dec.leaves:
        at = index[attachment]
        if any(index.get(w, 0) > at for w in g.neighbors(leaf)):
            return False
    spine = dec.spine
    earlier_clique: list[int] = []
    for i, v in enumerate(spine):
        if v in partition.clique:
            earlier_clique.append(v)
            continue
        if not all(g.has_edge(u, v) for u in earlier_clique):
            return False
        rest = g.degree(v) - len(earlier_clique)
        following = spine[i + 1 : i + 1 + rest]
        if len(following) < rest or not all(g.has_edge(v, u) for u in following):
            return False
    return True


def _leaf_key(kind: SearchKind, n: int, positions: list[int]) -> tuple[int, ...]:
    if kind is SearchKind.LBFS:
        return tuple(n - p for p in positions)
    if kind is SearchKind.LDFS:
        return tuple(reversed(positions))
    return (len(positions),)


def caterpillar_witness(
    g: Graph, dec: CaterpillarDecomposition, kind: SearchKind
) -> VertexOrdering:
    """Return the spine followed by the leaves, best frozen label first (MIN_ID ties)."""
    index = dec.spine_index()
    leaves = sorted(leaf for leaf, _ in dec.leaves)
    keys = {
        w: _leaf_key(kind, g.n, sorted(index[u] for u in g.neighbors(w) if u in index))
        for w in leaves
    }
    leaves.sort(key=keys.__getitem__, reverse=True)
    return VertexOrdering(dec.spine + tuple(leaves))


def recognize_split_l_tree(
    g: Graph,
    t: SpanningTree,
    kind: SearchKind = SearchKind.MNS,
    *,
    partition: SplitPartition | None = None,
    verify: bool = True,
) -> RecognitionResult:
    """Decide whether t is an L-tree of LBFS, LDFS, MCS or MNS on the split graph g.

    The answer is the same for all four kinds; kind only selects the witness.
    t must be a caterpillar, and one of its spine variants must satisfy
    satisfies_caterpillar_conditions.

    Raises:
        UnsupportedQueryError: If kind is GEN, BFS or DFS.
        NotSplitError: If g is not split.
    """
    if kind not in SPLIT_L_KINDS:
        raise UnsupportedQueryError(f"split L-tree recognition does not cover {kind.value}")
    partition = _require_partition(g, partition)
    require_spanning_tree(g, t)
    variants = caterpillar_decompositions(t, end_preference=_end_rank(g, partition))
    if not variants:
        logger.debug("Tree is not a caterpillar")
    for tried, dec in enumerate(variants, start=1):
        if not satisfies_caterpillar_conditions(g, partition, dec):
            continue
        sigma = caterpillar_witness(g, dec, kind)
        if verify and not certify_witness(g, t, kind, Side.L, sigma):
            logger.info("Spine %s passes the conditions but its witness fails replay", dec.spine)
            continue
        return RecognitionResult(Outcome.YES, sigma, tried, 0)
    return RecognitionResult(Outcome.NO, None, len(variants), 0)
