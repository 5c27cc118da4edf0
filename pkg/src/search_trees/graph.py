"""Graph, spanning tree, rooted tree and vertex ordering types."""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field

import networkx as nx
import numpy as np
from networkx.utils import UnionFind

from search_trees.errors import InvalidOrderError, StructuralError

Edge = tuple[int, int]


def normalize_edge(u: int, v: int) -> Edge:
    """Return the unordered pair {u, v} as a sorted tuple."""
    return (u, v) if u < v else (v, u)


def _edge_set(vertices: Sequence[int], edges: Iterable[tuple[int, int]]) -> frozenset[Edge]:
    universe = set(vertices)
    seen: set[Edge] = set()
    for u, v in edges:
        if u == v:
            raise StructuralError(f"self-loop at vertex {u}")
        if u not in universe or v not in universe:
            raise StructuralError(f"edge {u}-{v} leaves the vertex set")
        e = normalize_edge(u, v)
        if e in seen:
            raise StructuralError(f"parallel edge {u}-{v}")
        seen.add(e)
    return frozenset(seen)


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph.

    Vertices are integer ids (1..n for graphs read from files; induced subgraphs
    keep the ids of their parent graph). Adjacency lists are sorted by id and
    edge membership is a set lookup.
    """

    vertices: tuple[int, ...]
    edges: frozenset[Edge]
    _adjacency: Mapping[int, tuple[int, ...]] = field(init=False, repr=False, compare=False)

    def __init__(self, vertices: Iterable[int], edges: Iterable[tuple[int, int]]) -> None:
        verts = tuple(sorted(set(vertices)))
        if not verts:
            raise StructuralError("a graph needs at least one vertex")
        edge_set = _edge_set(verts, edges)
        adjacency: dict[int, list[int]] = {v: [] for v in verts}
        for u, v in edge_set:
            adjacency[u].append(v)
            adjacency[v].append(u)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", edge_set)
        object.__setattr__(
            self, "_adjacency", {v: tuple(sorted(ns)) for v, ns in adjacency.items()}
        )

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        """Build a graph on the dense vertex range 1..n."""
        if n < 1:
            raise StructuralError(f"vertex count must be positive, got {n}")
        return cls(range(1, n + 1), edges)

    @classmethod
    def from_networkx(cls, nx_graph: nx.Graph) -> Graph:
        """Convert a networkx graph with integer nodes."""
        return cls(nx_graph.nodes, nx_graph.edges)

    def to_networkx(self) -> nx.Graph:
        """Return an equivalent networkx graph."""
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edges)
        return g

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    def __contains__(self, v: object) -> bool:
        return v in self._adjacency

    def __iter__(self) -> Iterator[int]:
        return iter(self.vertices)

    def neighbors(self, v: int) -> tuple[int, ...]:
        """Return N(v) sorted by vertex id."""
        try:
            return self._adjacency[v]
        except KeyError:
            raise StructuralError(f"vertex {v} is not in the graph") from None

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: int, v: int) -> bool:
        return normalize_edge(u, v) in self.edges

    def is_connected(self) -> bool:
        return len(bfs_distances(self, self.vertices[0])) == self.n

    def require_connected(self) -> None:
        """Raise StructuralError unless the graph is connected."""
        if not self.is_connected():
            raise StructuralError("graph is not connected")


@dataclass(frozen=True)
class SpanningTree:
    """Edge-set view of a (candidate) spanning tree.

    Construction only checks that the edges live on the given vertex universe;
    whether the edges really form a spanning tree of some graph is answered by
    validate_spanning_tree.
    """

    vertices: tuple[int, ...]
    edges: frozenset[Edge]

    def __init__(self, vertices: Iterable[int], edges: Iterable[tuple[int, int]]) -> None:
        verts = tuple(sorted(set(vertices)))
        if not verts:
            raise StructuralError("a tree needs at least one vertex")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", _edge_set(verts, edges))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> SpanningTree:
        """Build a tree on the dense vertex range 1..n."""
        return cls(range(1, n + 1), edges)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def adjacency(self) -> dict[int, list[int]]:
        """Return the tree adjacency lists, sorted by vertex id."""
        adj: dict[int, list[int]] = {v: [] for v in self.vertices}
        for u, v in sorted(self.edges):
            adj[u].append(v)
            adj[v].append(u)
        for ns in adj.values():
            ns.sort()
        return adj

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def is_tree(self) -> bool:
        """True iff the edges form a tree spanning all vertices."""
        if len(self.edges) != self.n - 1:
            return False
        components = UnionFind(self.vertices)
        for u, v in self.edges:
            if components[u] == components[v]:
                return False
            components.union(u, v)
        return True


@dataclass(frozen=True)
class RootedTree:
    """A spanning tree oriented toward a root, with Euler tour intervals."""

    root: int
    parent: Mapping[int, int]
    children: Mapping[int, tuple[int, ...]]
    depth: Mapping[int, int]
    euler_in: Mapping[int, int]
    euler_out: Mapping[int, int]

    def path_to_root(self, v: int) -> list[int]:
        path = [v]
        while path[-1] != self.root:
            path.append(self.parent[path[-1]])
        return path


@dataclass(frozen=True)
class VertexOrdering:
    """A permutation of vertices with its 1-based inverse."""

    order: tuple[int, ...]
    position: Mapping[int, int] = field(repr=False, compare=False)

    def __init__(self, order: Iterable[int]) -> None:
        seq = tuple(order)
        position = {v: i for i, v in enumerate(seq, start=1)}
        if len(position) != len(seq):
            raise InvalidOrderError(f"ordering repeats a vertex: {seq}")
        object.__setattr__(self, "order", seq)
        object.__setattr__(self, "position", position)

    @classmethod
    def for_graph(cls, g: Graph, order: Iterable[int]) -> VertexOrdering:
        """Build an ordering and check that it is a permutation of V(g)."""
        sigma = cls(order)
        if sorted(sigma.order) != list(g.vertices):
            raise InvalidOrderError(
                f"ordering {sigma.order} is not a permutation of the graph's vertices"
            )
        return sigma

    def __len__(self) -> int:
        return len(self.order)

    def __iter__(self) -> Iterator[int]:
        return iter(self.order)

    def at(self, i: int) -> int:
        """Return sigma(i) for a 1-based position i."""
        return self.order[i - 1]

    def precedes(self, u: int, v: int) -> bool:
        return self.position[u] < self.position[v]

    def __str__(self) -> str:
        return " ".join(str(v) for v in self.order)


def validate_spanning_tree(g: Graph, t: SpanningTree) -> bool:
    """Check that t is a spanning tree of g.

    Args:
        g: The host graph.
        t: Candidate tree over the same vertex universe.

    Returns:
        True iff t has n-1 edges, every edge is an edge of g, and t is connected.

    Raises:
        StructuralError: If t and g are defined over different vertex sets.
    """
    if t.vertices != g.vertices:
        raise StructuralError("tree and graph have different vertex sets")
    if not t.edges <= g.edges:
        return False
    return t.is_tree()


def require_spanning_tree(g: Graph, t: SpanningTree) -> None:
    """Raise StructuralError unless g is connected and t is a spanning tree of g."""
    g.require_connected()
    if not validate_spanning_tree(g, t):
        raise StructuralError("tree is not a spanning tree of the graph")


def root_tree(t: SpanningTree, r: int) -> RootedTree:
    """Orient t toward r and compute Euler intervals in one traversal.

    Raises:
        StructuralError: If r is not a vertex of t or t is not a tree.
    """
    if r not in set(t.vertices):
        raise StructuralError(f"root {r} is not a vertex of the tree")
    adj = t.adjacency()
    parent: dict[int, int] = {}
    children: dict[int, list[int]] = {v: [] for v in t.vertices}
    depth = {r: 0}
    euler_in: dict[int, int] = {}
    euler_out: dict[int, int] = {}
    clock = 0
    # Iterative DFS; each stack entry is (vertex, iterator over tree neighbours)
    stack: list[tuple[int, Iterator[int]]] = [(r, iter(adj[r]))]
    euler_in[r] = clock
    while stack:
        v, it = stack[-1]
        for w in it:
            if w == parent.get(v):
                continue
            if w in depth:
                raise StructuralError("tree edges contain a cycle")
            parent[w] = v
            children[v].append(w)
            depth[w] = depth[v] + 1
            clock += 1
            euler_in[w] = clock
            stack.append((w, iter(adj[w])))
            break
        else:
            clock += 1
            euler_out[v] = clock
            stack.pop()
    if len(depth) != t.n:
        raise StructuralError("tree edges do not connect every vertex")
    return RootedTree(
        root=r,
        parent=parent,
        children={v: tuple(cs) for v, cs in children.items()},
        depth=depth,
        euler_in=euler_in,
        euler_out=euler_out,
    )


def is_ancestor(rt: RootedTree, u: int, v: int) -> bool:
    """True iff u lies on the path from v to the root (u == v counts)."""
    if u not in rt.euler_in or v not in rt.euler_in:
        raise StructuralError(f"vertex {u if u not in rt.euler_in else v} is not in the tree")
    return rt.euler_in[u] <= rt.euler_in[v] and rt.euler_out[v] <= rt.euler_out[u]


def bfs_distances(g: Graph, r: int) -> dict[int, int]:
    """Return shortest-path edge counts from r to every vertex reachable from it."""
    dist = {r: 0}
    queue = deque([r])
    while queue:
        v = queue.popleft()
        for w in g.neighbors(v):
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def complement(g: Graph) -> Graph:
    """Return the complement on the same vertex set (possibly disconnected)."""
    verts = g.vertices
    edges = [
        (u, v)
        for i, u in enumerate(verts)
        for v in verts[i + 1 :]
        if (u, v) not in g.edges
    ]
    return Graph(verts, edges)


def induced_subgraph(g: Graph, s: Iterable[int]) -> Graph:
    """Return G[S], keeping the original vertex ids.

    Raises:
        StructuralError: If s is empty or contains vertices outside g.
    """
    subset = set(s)
    if not subset:
        raise StructuralError("induced subgraph needs a non-empty vertex set")
    missing = subset.difference(g.vertices)
    if missing:
        raise StructuralError(f"vertices {sorted(missing)} are not in the graph")
    return Graph(subset, (e for e in g.edges if e[0] in subset and e[1] in subset))


def restrict_tree(t: SpanningTree, s: Iterable[int]) -> SpanningTree | None:
    """Return the restriction of t to s if it is itself a tree on s, else None."""
    subset = set(s)
    if not subset:
        return None
    restricted = SpanningTree(
        subset, (e for e in t.edges if e[0] in subset and e[1] in subset)
    )
    return restricted if restricted.is_tree() else None


def spanning_tree_count(g: Graph) -> int:
    """Count spanning trees with Kirchhoff's matrix-tree theorem."""
    if g.n == 1:
        return 1
    index = {v: i for i, v in enumerate(g.vertices)}
    laplacian = np.zeros((g.n, g.n), dtype=np.float64)
    for u, v in g.edges:
        i, j = index[u], index[v]
        laplacian[i, i] += 1
        laplacian[j, j] += 1
        laplacian[i, j] -= 1
        laplacian[j, i] -= 1
    return int(round(np.linalg.det(laplacian[1:, 1:])))
