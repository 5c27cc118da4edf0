"""Exhaustive ground truth for small graphs.

Everything here is exponential and meant for graphs with about ten vertices:
enumeration of every valid search order, definitional tree recognition,
spanning-tree enumeration and brute-force graph-class checks.
"""

from __future__ import annotations

from collections.abc import Callable, Iterator

from search_trees.graph import (
    Graph,
    SpanningTree,
    VertexOrdering,
    complement,
    normalize_edge,
    require_spanning_tree,
    root_tree,
)
from search_trees.searches import LabelState, SearchKind, run_search, step_candidates
from search_trees.trees import Side

# Called with the state and the vertex about to be visited; False cuts the branch.
BranchFilter = Callable[[LabelState, int], bool]


def _branches(
    g: Graph, kind: SearchKind, st: LabelState, accept: BranchFilter | None
) -> Iterator[VertexOrdering]:
    if st.done:
        yield VertexOrdering(st.visited)
        return
    for v in sorted(step_candidates(g, st)):
        if accept is not None and not accept(st, v):
            continue
        st.visit(v)
        yield from _branches(g, kind, st, accept)
        st.undo()


def enumerate_search_orders(
    g: Graph, kind: SearchKind, start: int | None = None
) -> Iterator[VertexOrdering]:
    """Yield every ordering the given search can produce on g, each once.

    Orderings come out in lexicographic order of their vertex sequences. When
    start is given only orderings beginning with it are produced.
    """
    g.require_connected()
    starts = [start] if start is not None else list(g.vertices)
    for s in starts:
        st = LabelState(g, kind)
        st.visit(s)
        yield from _branches(g, kind, st, None)


def oracle_recognize(
    g: Graph,
    t: SpanningTree,
    kind: SearchKind,
    side: Side,
    root: int | None = None,
) -> VertexOrdering | None:
    """Return an ordering of kind whose tree on side is t, or None if none exists.

    Branches are cut as soon as a vertex would be visited with a parent other than
    its parent in t rooted at the first vertex; that parent can never change later.
    """
    require_spanning_tree(g, t)
    starts = [root] if root is not None else list(g.vertices)
    for s in starts:
        parent = root_tree(t, s).parent

        def accept(st: LabelState, v: int) -> bool:
            pred = st.earliest_neighbor(v) if side is Side.F else st.latest_neighbor(v)
            return pred == parent.get(v)

        st = LabelState(g, kind)
        st.visit(s)
        for sigma in _branches(g, kind, st, accept):
            return sigma
    return None


def enumerate_spanning_trees(g: Graph) -> Iterator[SpanningTree]:
    """Yield every spanning tree of g once (include/exclude over sorted edges)."""
    edges = sorted(g.edges)
    need = g.n - 1
    leader = {v: v for v in g.vertices}
    chosen: list[tuple[int, int]] = []

    def find(x: int) -> int:
        while leader[x] != x:
            x = leader[x]
        return x

    def extend(i: int) -> Iterator[SpanningTree]:
        if len(chosen) == need:
            yield SpanningTree(g.vertices, chosen)
            return
        if len(edges) - i < need - len(chosen):
            return
        u, v = edges[i]
        ru, rv = find(u), find(v)
        if ru != rv:
            leader[rv] = ru
            chosen.append(edges[i])
            yield from extend(i + 1)
            chosen.pop()
            leader[rv] = rv
        yield from extend(i + 1)

    yield from extend(0)


def is_simplicial(g: Graph, v: int) -> bool:
    """True iff the neighbours of v are pairwise adjacent."""
    ns = g.neighbors(v)
    return all(g.has_edge(a, b) for i, a in enumerate(ns) for b in ns[i + 1 :])


def is_perfect_elimination_order(g: Graph, order: VertexOrdering) -> bool:
    """True iff every vertex's later neighbours in order form a clique.

    Checks only that each vertex's earliest later neighbour is adjacent to the
    other later neighbours, which suffices by induction along the order.
    """
    position = order.position
    for v in order:
        later = [w for w in g.neighbors(v) if position[w] > position[v]]
        if len(later) < 2:
            continue
        first = min(later, key=position.__getitem__)
        if any(w != first and not g.has_edge(first, w) for w in later):
            return False
    return True


def is_chordal(g: Graph) -> bool:
    """Chordality via the reverse of an LBFS ordering."""
    sigma = run_search(g, SearchKind.LBFS, g.vertices[0])
    return is_perfect_elimination_order(g, VertexOrdering(reversed(sigma.order)))


def _has_long_induced_cycle(g: Graph, min_length: int = 5) -> bool:
    # Grows induced paths from each start s over vertices greater than s; a cycle
    # closes when the new vertex is adjacent to s and to the path end only.
    for s in g.vertices:
        path = [s]
        on_path = {s}

        def grow() -> bool:
            last = path[-1]
            for x in g.neighbors(last):
                if x <= s or x in on_path:
                    continue
                inner = path[1:-1]
                if any(g.has_edge(x, y) for y in inner):
                    continue
                if len(path) > 1 and g.has_edge(x, s):
                    if len(path) + 1 >= min_length:
                        return True
                    continue
                path.append(x)
                on_path.add(x)
                found = grow()
                path.pop()
                on_path.discard(x)
                if found:
                    return True
            return False

        if grow():
            return True
    return False


def is_weakly_chordal_bruteforce(g: Graph) -> bool:
    """True iff neither g nor its complement has an induced cycle of length >= 5."""
    return not _has_long_induced_cycle(g) and not _has_long_induced_cycle(complement(g))


def is_two_pair(g: Graph, x: int, y: int) -> bool:
    """True iff x, y are non-adjacent and every induced x-y path has exactly two edges."""
    if x == y or g.has_edge(x, y):
        return False
    path = [x]
    on_path = {x}

    def only_short_paths() -> bool:
        last = path[-1]
        for w in g.neighbors(last):
            if w in on_path or any(g.has_edge(w, u) for u in path[:-1]):
                continue
            if w == y:
                if len(path) != 2:
                    return False
                continue
            path.append(w)
            on_path.add(w)
            ok = only_short_paths()
            path.pop()
            on_path.discard(w)
            if not ok:
                return False
        return True

    return only_short_paths()


def is_deletable_for_weak_chordality(g: Graph, v: int) -> bool:
    """True iff v is simplicial or adjacent to at least n - 2 other vertices."""
    return is_simplicial(g, v) or g.degree(v) >= g.n - 2


def add_edge(g: Graph, u: int, v: int) -> Graph:
    """Return g with the edge uv added."""
    return Graph(g.vertices, set(g.edges) | {normalize_edge(u, v)})
