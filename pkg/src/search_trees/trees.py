"""F-tree / L-tree construction and caterpillar decomposition."""

from __future__ import annotations

from collections import deque
from collections.abc import Callable
from dataclasses import dataclass
from enum import Enum

from search_trees.errors import InvalidOrderError, StructuralError
from search_trees.graph import Graph, SpanningTree, VertexOrdering


class Side(Enum):
    """Which earlier neighbour a vertex is attached to."""

    F = "f"  # first-in: leftmost earlier neighbour
    L = "l"  # last-in: rightmost earlier neighbour

    @classmethod
    def parse(cls, name: str) -> Side:
        try:
            return cls(name.lower().strip())
        except ValueError:
            raise ValueError(f"Unknown tree side: {name}. Valid options: f, l") from None


def tree_parents(g: Graph, sigma: VertexOrdering, side: Side) -> dict[int, int]:
    """Map every non-first vertex of sigma to its F- or L-parent.

    Raises:
        InvalidOrderError: If some vertex after the first has no earlier neighbour.
    """
    position = sigma.position
    parents: dict[int, int] = {}
    for v in sigma.order[1:]:
        earlier = [w for w in g.neighbors(v) if position[w] < position[v]]
        if not earlier:
            raise InvalidOrderError(
                f"vertex {v} has no earlier neighbour; not a connected search order"
            )
        pick = min if side is Side.F else max
        parents[v] = pick(earlier, key=position.__getitem__)
    return parents


def build_tree(g: Graph, sigma: VertexOrdering, side: Side) -> SpanningTree:
    """Build the F- or L-tree of sigma on g."""
    if sorted(sigma.order) != list(g.vertices):
        raise InvalidOrderError("ordering is not a permutation of the graph's vertices")
    return SpanningTree(g.vertices, tree_parents(g, sigma, side).items())


def build_f_tree(g: Graph, sigma: VertexOrdering) -> SpanningTree:
    """Attach each vertex to its leftmost neighbour in sigma."""
    return build_tree(g, sigma, Side.F)


def build_l_tree(g: Graph, sigma: VertexOrdering) -> SpanningTree:
    """Attach each vertex to its rightmost earlier neighbour in sigma."""
    return build_tree(g, sigma, Side.L)


@dataclass(frozen=True)
class CaterpillarDecomposition:
    """A dominating path (spine) of a tree plus the leaves hanging off it.

    `leaves` holds (leaf, attachment) pairs where the attachment is a spine vertex.
    """

    spine: tuple[int, ...]
    leaves: frozenset[tuple[int, int]]

    def reversed(self) -> CaterpillarDecomposition:
        return CaterpillarDecomposition(tuple(reversed(self.spine)), self.leaves)

    def spine_index(self) -> dict[int, int]:
        """Return the 1-based spine position of every spine vertex."""
        return {v: i for i, v in enumerate(self.spine, start=1)}


def _farthest(adj: dict[int, list[int]], source: int) -> tuple[int, dict[int, int]]:
    dist = {source: 0}
    parent: dict[int, int] = {}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                parent[w] = v
                queue.append(w)
    far = max(dist.values())
    end = min(v for v, d in dist.items() if d == far)
    return end, parent


def _diameter_path(adj: dict[int, list[int]], start: int) -> list[int]:
    a, _ = _farthest(adj, start)
    b, parent = _farthest(adj, a)
    path = [b]
    while path[-1] != a:
        path.append(parent[path[-1]])
    path.reverse()
    return path


def _decomposition(
    spine: list[int], adj: dict[int, list[int]]
) -> CaterpillarDecomposition:
    on_spine = set(spine)
    leaves = set()
    for v in spine:
        for w in adj[v]:
            if w not in on_spine:
                leaves.add((w, v))
    return CaterpillarDecomposition(tuple(spine), frozenset(leaves))


def caterpillar_decompositions(
    t: SpanningTree,
    end_preference: Callable[[int], int] | None = None,
) -> list[CaterpillarDecomposition]:
    """Enumerate the spine variants of a caterpillar tree.

    The base spine is a diameter path found by a double sweep (MIN_ID ties). Each
    end of tree-degree 1 may additionally be reclassified as a leaf, and every
    variant is listed in both orientations.

    Args:
        t: A tree.
        end_preference: Optional ranking (lower is better) used to pick which leaf
            ends the diameter path at each side; ties and the default use MIN_ID.

    Returns:
        The variants without duplicates, or an empty list if t is not a caterpillar.
    """
    if not t.is_tree():
        raise StructuralError("caterpillar decomposition needs a tree")
    adj = t.adjacency()
    if t.n == 1:
        return [CaterpillarDecomposition(t.vertices, frozenset())]

    path = _diameter_path(adj, t.vertices[0])
    on_path = set(path)
    if any(v not in on_path and not any(w in on_path for w in adj[v]) for v in t.vertices):
        return []

    if end_preference is not None and len(path) >= 3:
        rank = lambda v: (end_preference(v), v)  # noqa: E731
        first_options = [w for w in adj[path[1]] if len(adj[w]) == 1]
        path[0] = min(first_options, key=rank)
        last_options = [w for w in adj[path[-2]] if len(adj[w]) == 1 and w != path[0]]
        path[-1] = min(last_options, key=rank)

    variants: list[CaterpillarDecomposition] = []
    seen: set[tuple[int, ...]] = set()
    for trim_start in (False, True):
        for trim_end in (False, True):
            spine = list(path)
            if trim_start and len(adj[spine[0]]) == 1:
                spine = spine[1:]
            elif trim_start:
                continue
            if trim_end and spine and len(adj[spine[-1]]) == 1 and len(spine) > 1:
                spine = spine[:-1]
            elif trim_end:
                continue
            if not spine:
                continue
            for oriented in (spine, spine[::-1]):
                key = tuple(oriented)
                if key not in seen:
                    seen.add(key)
                    variants.append(_decomposition(oriented, adj))
    return variants


def is_dominating_path(t: SpanningTree, spine: tuple[int, ...]) -> bool:
    """True iff spine is a path in t and every vertex is on it or adjacent to it."""
    adj = t.adjacency()
    if any(b not in adj[a] for a, b in zip(spine, spine[1:])):
        return False
    on_spine = set(spine)
    if len(on_spine) != len(spine):
        return False
    return all(v in on_spine or any(w in on_spine for w in adj[v]) for v in t.vertices)
