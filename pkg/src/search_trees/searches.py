"""Labeled graph searches: candidate sets, deterministic runs and order replay."""

from __future__ import annotations

from collections.abc import Callable, Collection, Iterable, Sequence
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING

from search_trees.errors import InvalidOrderError, StructuralError
from search_trees.graph import Graph, VertexOrdering

if TYPE_CHECKING:
    from search_trees.split import SplitPartition


class SearchKind(Enum):
    """The searches this package can run, replay and recognize."""

    GEN = "gen"
    BFS = "bfs"
    DFS = "dfs"
    LBFS = "lbfs"
    LDFS = "ldfs"
    MCS = "mcs"
    MNS = "mns"

    @classmethod
    def parse(cls, name: str) -> SearchKind:
        try:
            return cls(name.lower().strip())
        except ValueError:
            valid = ", ".join(k.value for k in cls)
            raise ValueError(f"Unknown search kind: {name}. Valid options: {valid}") from None


# Searches whose orderings are also orderings of the key search (proper inclusions).
SEARCH_HIERARCHY: dict[SearchKind, tuple[SearchKind, ...]] = {
    SearchKind.LBFS: (SearchKind.BFS, SearchKind.MNS, SearchKind.GEN),
    SearchKind.LDFS: (SearchKind.DFS, SearchKind.MNS, SearchKind.GEN),
    SearchKind.MCS: (SearchKind.MNS, SearchKind.GEN),
    SearchKind.BFS: (SearchKind.GEN,),
    SearchKind.DFS: (SearchKind.GEN,),
    SearchKind.MNS: (SearchKind.GEN,),
    SearchKind.GEN: (),
}


class TieBreakPolicy(Enum):
    MIN_ID = "min_id"
    MAX_ID = "max_id"
    EXPLICIT = "explicit"


@dataclass(frozen=True)
class TieBreak:
    """How run_search picks among equally good candidates.

    EXPLICIT uses `priority` as a ranking: the candidate appearing first wins.
    """

    policy: TieBreakPolicy = TieBreakPolicy.MIN_ID
    priority: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.policy is TieBreakPolicy.EXPLICIT and len(set(self.priority)) != len(
            self.priority
        ):
            raise ValueError("explicit tie-break priority must be a permutation")

    @classmethod
    def min_id(cls) -> TieBreak:
        return cls(TieBreakPolicy.MIN_ID)

    @classmethod
    def max_id(cls) -> TieBreak:
        return cls(TieBreakPolicy.MAX_ID)

    @classmethod
    def explicit(cls, priority: Iterable[int]) -> TieBreak:
        return cls(TieBreakPolicy.EXPLICIT, tuple(priority))

    @classmethod
    def parse(cls, name: str) -> TieBreak:
        return cls(TieBreakPolicy(name.lower().strip()))

    def choose(self, candidates: Collection[int]) -> int:
        """Pick one vertex from a non-empty candidate set."""
        if not candidates:
            raise InvalidOrderError("no candidate to choose from")
        if self.policy is TieBreakPolicy.MIN_ID:
            return min(candidates)
        if self.policy is TieBreakPolicy.MAX_ID:
            return max(candidates)
        rank = {v: i for i, v in enumerate(self.priority)}
        missing = [v for v in candidates if v not in rank]
        if missing:
            raise ValueError(f"explicit tie-break priority does not rank vertices {missing}")
        return min(candidates, key=rank.__getitem__)

    def sort(self, candidates: Iterable[int]) -> list[int]:
        """Return candidates in the order this policy would prefer them."""
        if self.policy is TieBreakPolicy.MIN_ID:
            return sorted(candidates)
        if self.policy is TieBreakPolicy.MAX_ID:
            return sorted(candidates, reverse=True)
        rank = {v: i for i, v in enumerate(self.priority)}
        return sorted(candidates, key=rank.__getitem__)


class LabelState:
    """Per-run search state with incrementally maintained labels.

    Every kind keeps the same raw label per unvisited vertex: the ascending list of
    positions of its visited neighbours. The kind-specific label is a view of it:

    - GEN: reachable iff the list is non-empty
    - BFS: first entry (earliest visited neighbour), smaller is better
    - DFS: last entry (latest visited neighbour), larger is better
    - LBFS: the sequence (n - p) over the list, compared lexicographically
    - LDFS: the list read backwards (most recent step first), compared lexicographically
    - MCS: length of the list
    - MNS: the set of entries, compared by inclusion

    Labels of visited vertices are frozen at visit time. `visit` and `undo` cost
    O(deg(v)), which is what the backtracking engine relies on.
    """

    def __init__(self, g: Graph, kind: SearchKind) -> None:
        self.graph = g
        self.kind = kind
        self.visited: list[int] = []
        self.position: dict[int, int] = {}
        self.raw: dict[int, list[int]] = {v: [] for v in g.vertices}
        self.frontier: set[int] = set()

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def done(self) -> bool:
        return len(self.visited) == self.graph.n

    def is_visited(self, v: int) -> bool:
        return v in self.position

    def visit(self, v: int) -> None:
        """Append v to the visited prefix and update its neighbours' labels."""
        if v in self.position:
            raise InvalidOrderError(f"vertex {v} visited twice")
        i = len(self.visited) + 1
        self.visited.append(v)
        self.position[v] = i
        self.frontier.discard(v)
        for w in self.graph.neighbors(v):
            if w not in self.position:
                self.raw[w].append(i)
                self.frontier.add(w)

    def undo(self) -> int:
        """Remove the last visited vertex and restore the labels it touched."""
        v = self.visited.pop()
        del self.position[v]
        for w in self.graph.neighbors(v):
            if w not in self.position:
                self.raw[w].pop()
                if not self.raw[w]:
                    self.frontier.discard(w)
        if self.raw[v]:
            self.frontier.add(v)
        return v

    def earliest_neighbor(self, v: int) -> int | None:
        """Visited neighbour of v that was visited first (the F-tree parent)."""
        labels = self.raw[v]
        return self.visited[labels[0] - 1] if labels else None

    def latest_neighbor(self, v: int) -> int | None:
        """Visited neighbour of v that was visited last (the L-tree parent)."""
        labels = self.raw[v]
        return self.visited[labels[-1] - 1] if labels else None


def _lex_max(group: list[int], key: Callable[[int], tuple[int, ...]]) -> set[int]:
    if len(group) == 1:
        return set(group)
    keys = {w: key(w) for w in group}
    best = max(keys.values())
    return {w for w, k in keys.items() if k == best}


def _inclusion_maximal(labels: dict[int, frozenset[int]]) -> set[int]:
    by_size = sorted(labels, key=lambda w: len(labels[w]), reverse=True)
    maximal: set[int] = set()
    for idx, w in enumerate(by_size):
        lw = labels[w]
        dominated = False
        for u in by_size[:idx]:
            lu = labels[u]
            if len(lu) > len(lw) and lw < lu:
                dominated = True
                break
        if not dominated:
            maximal.add(w)
    return maximal


def step_candidates(g: Graph, st: LabelState) -> set[int]:
    """Return the vertices a valid next step of st.kind may choose.

    Raises:
        InvalidOrderError: If every vertex is already visited.
    """
    if st.done:
        raise InvalidOrderError("all vertices are visited")
    if not st.visited:
        return set(g.vertices)
    frontier = st.frontier
    if not frontier:
        raise StructuralError("visited prefix has no unvisited neighbour; graph is disconnected")
    raw = st.raw
    kind = st.kind
    if kind is SearchKind.GEN:
        return set(frontier)
    if kind is SearchKind.BFS:
        best = min(raw[w][0] for w in frontier)
        return {w for w in frontier if raw[w][0] == best}
    if kind is SearchKind.DFS:
        best = max(raw[w][-1] for w in frontier)
        return {w for w in frontier if raw[w][-1] == best}
    if kind is SearchKind.MCS:
        best = max(len(raw[w]) for w in frontier)
        return {w for w in frontier if len(raw[w]) == best}
    if kind is SearchKind.LBFS:
        # First component n - p is largest for the smallest first position
        first = min(raw[w][0] for w in frontier)
        group = [w for w in frontier if raw[w][0] == first]
        return _lex_max(group, lambda w: tuple(st.n - p for p in raw[w]))
    if kind is SearchKind.LDFS:
        last = max(raw[w][-1] for w in frontier)
        group = [w for w in frontier if raw[w][-1] == last]
        return _lex_max(group, lambda w: tuple(reversed(raw[w])))
    return _inclusion_maximal({w: frozenset(raw[w]) for w in frontier})


def run_search(
    g: Graph,
    kind: SearchKind,
    start: int,
    tb: TieBreak | None = None,
) -> VertexOrdering:
    """Run a search of the given kind from start.

    Args:
        g: Connected graph.
        kind: Which search to run.
        start: First vertex of the ordering.
        tb: Tie-break policy among step candidates (default MIN_ID).

    Returns:
        The visit order; every step picks a vertex from step_candidates.
    """
    g.require_connected()
    if start not in g:
        raise StructuralError(f"start vertex {start} is not in the graph")
    tb = tb or TieBreak.min_id()
    st = LabelState(g, kind)
    st.visit(start)
    while not st.done:
        st.visit(tb.choose(step_candidates(g, st)))
    return VertexOrdering(st.visited)


def _mns_allows(g: Graph, st: LabelState, v: int) -> bool:
    # v is an MNS candidate unless some frontier vertex sees a strict superset of its
    # visited neighbours; such a vertex is a neighbour of each of them
    label = st.raw[v]
    if not label:
        return not st.visited
    seen = [st.visited[p - 1] for p in label]
    anchor = min(seen, key=g.degree)
    size = len(label)
    for w in g.neighbors(anchor):
        if w == v or st.is_visited(w) or len(st.raw[w]) <= size:
            continue
        if all(g.has_edge(w, u) for u in seen):
            return False
    return True


def first_violation(g: Graph, kind: SearchKind, sigma: VertexOrdering) -> int | None:
    """Return the first 1-based step whose vertex is not a candidate, or None.

    Raises:
        InvalidOrderError: If sigma is not a permutation of V(g).
    """
    if sorted(sigma.order) != list(g.vertices):
        raise InvalidOrderError("ordering is not a permutation of the graph's vertices")
    st = LabelState(g, kind)
    for i, v in enumerate(sigma.order, start=1):
        if kind is SearchKind.MNS:
            allowed = _mns_allows(g, st, v)
        else:
            allowed = v in step_candidates(g, st)
        if not allowed:
            return i
        st.visit(v)
    return None


def validate_order(g: Graph, kind: SearchKind, sigma: VertexOrdering) -> bool:
    """True iff sigma is an ordering the given search can produce on g."""
    return first_violation(g, kind, sigma) is None


def mns_three_point_violations(
    g: Graph, sigma: VertexOrdering
) -> list[tuple[int, int, int]]:
    """Return triples breaking the MNS three-point condition.

    For a < b < c in sigma with ac an edge and ab a non-edge there must be some
    d < b adjacent to b but not to c. Each returned (a, b, c) has no such d.
    """
    order = sigma.order
    violations = []
    for bi, b in enumerate(order):
        prefix = order[:bi]
        for c in order[bi + 1 :]:
            witness_a = next(
                (a for a in prefix if g.has_edge(a, c) and not g.has_edge(a, b)), None
            )
            if witness_a is None:
                continue
            if not any(g.has_edge(d, b) and not g.has_edge(d, c) for d in prefix):
                violations.append((witness_a, b, c))
    return violations


def split_order_violations(
    g: Graph, sigma: VertexOrdering, partition: SplitPartition
) -> list[int]:
    """Return independent vertices breaking the split-order conditions.

    For every independent vertex v_i that precedes some clique vertex: all clique
    vertices before v_i must be neighbours of v_i (say l of them), and the next
    deg(v_i) - l vertices after v_i must all be neighbours of v_i.
    """
    order = sigma.order
    clique = partition.clique
    last_clique = max((i for i, v in enumerate(order) if v in clique), default=-1)
    violations = []
    for i, v in enumerate(order):
        if v in clique or i > last_clique:
            continue
        earlier_clique = [u for u in order[:i] if u in clique]
        if not all(g.has_edge(u, v) for u in earlier_clique):
            violations.append(v)
            continue
        rest = g.degree(v) - len(earlier_clique)
        following = order[i + 1 : i + 1 + rest]
        if len(following) < rest or not all(g.has_edge(v, u) for u in following):
            violations.append(v)
    return violations


def complete_order(
    g: Graph, kind: SearchKind, prefix: Sequence[int], tb: TieBreak | None = None
) -> VertexOrdering | None:
    """Extend a valid prefix to a full ordering, or return None if the prefix is invalid."""
    tb = tb or TieBreak.min_id()
    st = LabelState(g, kind)
    for v in prefix:
        if st.done or v not in step_candidates(g, st):
            return None
        st.visit(v)
    while not st.done:
        st.visit(tb.choose(step_candidates(g, st)))
    return VertexOrdering(st.visited)


def candidates_after(g: Graph, kind: SearchKind, prefix: Sequence[int]) -> set[int]:
    """Return step_candidates after visiting prefix, which must itself be valid.

    Raises:
        InvalidOrderError: If some vertex of prefix is not a candidate at its step.
    """
    st = LabelState(g, kind)
    for i, v in enumerate(prefix, start=1):
        if st.done or v not in step_candidates(g, st):
            raise InvalidOrderError(f"prefix breaks the {kind.value} rule at step {i}")
        st.visit(v)
    return step_candidates(g, st)
