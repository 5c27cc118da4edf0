"""Search-tree recognition on general graphs.

Every recognizer answers the same question: is the spanning tree `t` the F-tree
or L-tree of some run of a given search on `g`? Positive answers always carry a
witness ordering; negative answers from the backtracking engine are exact only
when it finishes inside its node budget, otherwise the outcome is INCONCLUSIVE.
"""

from __future__ import annotations

import heapq
import logging
from collections.abc import Callable, Iterator
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum

from search_trees.errors import SearchTreeError, StructuralError
from search_trees.graph import (
    Graph,
    RootedTree,
    SpanningTree,
    VertexOrdering,
    bfs_distances,
    is_ancestor,
    require_spanning_tree,
    root_tree,
)
from search_trees.searches import LabelState, SearchKind, TieBreak, step_candidates, validate_order
from search_trees.trees import Side, build_tree

logger = logging.getLogger(__name__)

# Kinds whose step candidates depend only on the visited set, not on its order
_VISITED_SET_KINDS = frozenset({SearchKind.GEN, SearchKind.MCS, SearchKind.MNS})

AVAILABLE_BFS_ENGINES = ["layers", "backtrack"]


class Outcome(Enum):
    YES = "yes"
    NO = "no"
    INCONCLUSIVE = "inconclusive"


class SearchMode(Enum):
    """How constrained_search picks among admissible vertices."""

    GREEDY = "greedy"  # commit to the MIN_ID admissible vertex, never revisit
    BACKTRACK = "backtrack"  # depth-first over every admissible vertex


@dataclass(frozen=True)
class Budget:
    """Cap on node expansions for one root attempt; None means unlimited."""

    max_nodes: int | None = None

    def __post_init__(self) -> None:
        if self.max_nodes is not None and self.max_nodes <= 0:
            raise ValueError(f"budget must be positive, got {self.max_nodes}")

    @classmethod
    def unlimited(cls) -> Budget:
        return cls()

    @property
    def is_unlimited(self) -> bool:
        return self.max_nodes is None


@dataclass(frozen=True)
class EngineRun:
    """Result of one constrained search from a fixed root."""

    ordering: VertexOrdering | None
    nodes_expanded: int = 0
    exhausted: bool = False

    @property
    def outcome(self) -> Outcome:
        if self.ordering is not None:
            return Outcome.YES
        return Outcome.INCONCLUSIVE if self.exhausted else Outcome.NO


@dataclass(frozen=True)
class RecognitionResult:
    """Answer of a recognizer.

    Attributes:
        outcome: YES, NO or INCONCLUSIVE (budget exhausted before a decision).
        witness: On YES, an ordering of the queried search whose tree is the query tree.
        roots_tried: Number of start vertices that were actually attempted.
        nodes_expanded: Backtracking statistics summed over all attempts.
    """

    outcome: Outcome
    witness: VertexOrdering | None = None
    roots_tried: int = 0
    nodes_expanded: int = 0

    def __post_init__(self) -> None:
        if self.outcome is Outcome.YES and self.witness is None:
            raise ValueError("a positive recognition result needs a witness")

    @property
    def recognized(self) -> bool:
        return self.outcome is Outcome.YES

    @property
    def inconclusive(self) -> bool:
        return self.outcome is Outcome.INCONCLUSIVE

    @property
    def root(self) -> int | None:
        """Start vertex of the witness."""
        return self.witness.at(1) if self.witness is not None else None

    def to_dict(self) -> dict[str, object]:
        return {
            "outcome": self.outcome.value,
            "root": self.root,
            "witness": list(self.witness.order) if self.witness is not None else None,
            "roots_tried": self.roots_tried,
            "nodes_expanded": self.nodes_expanded,
        }


class _BudgetExhausted(Exception):
    pass


class _ConstrainedRun:
    """One simulation of a search that must reproduce a rooted tree.

    A vertex v is admissible when it is a step candidate and the parent it would
    receive right now (earliest visited neighbour for F, latest for L) is its
    parent in the rooted tree.
    """

    def __init__(
        self, g: Graph, rt: RootedTree, kind: SearchKind, side: Side, budget: Budget
    ) -> None:
        self.graph = g
        self.parent = rt.parent
        self.side = side
        self.budget = budget
        self.state = LabelState(g, kind)
        self.nodes = 0
        self.tie_break = TieBreak.min_id()
        self._bit = {v: 1 << i for i, v in enumerate(g.vertices)}
        self._mask = 0
        # Failed visited sets; only sound for F with kinds driven by the visited set
        self._failed: set[int] | None = (
            set() if side is Side.F and kind in _VISITED_SET_KINDS else None
        )

    def _tick(self) -> None:
        self.nodes += 1
        if self.budget.max_nodes is not None and self.nodes > self.budget.max_nodes:
            raise _BudgetExhausted

    def _pred(self, v: int) -> int | None:
        if self.side is Side.F:
            return self.state.earliest_neighbor(v)
        return self.state.latest_neighbor(v)

    def _visit(self, v: int) -> None:
        self.state.visit(v)
        self._mask |= self._bit[v]

    def _undo(self) -> None:
        v = self.state.undo()
        self._mask &= ~self._bit[v]

    def admissible(self) -> list[int]:
        candidates = step_candidates(self.graph, self.state)
        return sorted(v for v in candidates if self._pred(v) == self.parent.get(v))

    def _dead(self, v: int) -> bool:
        """True if visiting v left some unvisited vertex unable to get its tree parent."""
        st = self.state
        for w in self.graph.neighbors(v):
            if st.is_visited(w):
                continue
            p = self.parent[w]
            if p == v:
                continue
            if self.side is Side.F:
                # v just became w's earliest visited neighbour
                if len(st.raw[w]) == 1:
                    return True
            elif st.is_visited(p):
                return True
        return False

    def greedy(self, root: int) -> VertexOrdering | None:
        st = self.state
        self._visit(root)
        while not st.done:
            self._tick()
            options = self.admissible()
            if not options:
                return None
            self._visit(self.tie_break.choose(options))
        return VertexOrdering(st.visited)

    def backtrack(self, root: int) -> VertexOrdering | None:
        st = self.state
        self._visit(root)
        if self._dead(root):
            return None
        if st.done:
            return VertexOrdering(st.visited)
        stack: list[Iterator[int]] = [iter(self.admissible())]
        while stack:
            v = next(stack[-1], None)
            if v is None:
                stack.pop()
                if self._failed is not None:
                    self._failed.add(self._mask)
                if stack:
                    self._undo()
                continue
            self._visit(v)
            if self._dead(v) or (self._failed is not None and self._mask in self._failed):
                self._undo()
                continue
            self._tick()
            if st.done:
                return VertexOrdering(st.visited)
            stack.append(iter(self.admissible()))
        return None


def _run_engine(
    g: Graph,
    t: SpanningTree,
    kind: SearchKind,
    side: Side,
    root: int,
    mode: SearchMode,
    budget: Budget,
) -> EngineRun:
    run = _ConstrainedRun(g, root_tree(t, root), kind, side, budget)
    try:
        ordering = run.greedy(root) if mode is SearchMode.GREEDY else run.backtrack(root)
    except _BudgetExhausted:
        logger.debug(
            "Budget of %s nodes exhausted for %s %s-tree at root %d",
            budget.max_nodes,
            kind.value,
            side.value,
            root,
        )
        return EngineRun(None, run.nodes, exhausted=True)
    return EngineRun(ordering, run.nodes)


def constrained_search(
    g: Graph,
    t: SpanningTree,
    kind: SearchKind,
    side: Side,
    root: int,
    mode: SearchMode = SearchMode.BACKTRACK,
    budget: Budget | None = None,
) -> EngineRun:
    """Simulate a search from root that must grow exactly the tree t.

    Args:
        g: Connected graph.
        t: Spanning tree of g.
        kind: Search to simulate.
        side: Whether t is to be the F-tree or the L-tree.
        root: First vertex of the search.
        mode: GREEDY stops at the first empty admissible set; BACKTRACK is exhaustive
            and also prunes states in which some unvisited vertex can no longer
            receive its tree parent.
        budget: Node budget; exhausting it yields an inconclusive run.

    Returns:
        The run; any ordering it carries is valid for kind and builds t on side.

    Raises:
        StructuralError: If t is not a spanning tree of g or root is not a vertex.
    """
    require_spanning_tree(g, t)
    if root not in g:
        raise StructuralError(f"root {root} is not in the graph")
    return _run_engine(g, t, kind, side, root, mode, budget or Budget())


def certify_witness(
    g: Graph, t: SpanningTree, kind: SearchKind, side: Side, sigma: VertexOrdering
) -> bool:
    """True iff sigma is an ordering of kind on g and its tree on side is t."""
    return validate_order(g, kind, sigma) and build_tree(g, sigma, side).edges == t.edges


def _require_certified(
    g: Graph, t: SpanningTree, kind: SearchKind, side: Side, sigma: VertexOrdering
) -> None:
    if not certify_witness(g, t, kind, side, sigma):
        logger.error("Witness %s failed replay for %s %s-tree", sigma, kind.value, side.value)
        raise SearchTreeError(f"witness {sigma} does not certify the {kind.value} tree")


def candidate_roots(
    g: Graph, t: SpanningTree, side: Side, root: int | None = None
) -> list[int]:
    """Return the start vertices worth trying, in MIN_ID order.

    An F-tree root is the earliest visited neighbour of all its neighbours, so its
    tree degree equals its graph degree; roots failing that are dropped for side F.
    """
    if root is not None:
        if root not in g:
            raise StructuralError(f"root {root} is not in the graph")
        roots = [root]
    else:
        roots = list(g.vertices)
    if side is Side.L:
        return roots
    tree_degree = {v: len(ns) for v, ns in t.adjacency().items()}
    kept = [r for r in roots if tree_degree[r] == g.degree(r)]
    logger.debug("Root filter kept %d of %d roots", len(kept), len(roots))
    return kept


def try_roots(
    roots: list[int],
    attempt: Callable[[int], EngineRun],
    workers: int = 1,
) -> RecognitionResult:
    """Run attempt on each root and report the smallest succeeding one.

    With workers > 1 the attempts run on a thread pool; the answer is the same as
    the sequential one.
    """
    tried = 0
    nodes = 0
    exhausted = False
    if workers <= 1 or len(roots) <= 1:
        for r in roots:
            run = attempt(r)
            tried += 1
            nodes += run.nodes_expanded
            if run.ordering is not None:
                return RecognitionResult(Outcome.YES, run.ordering, tried, nodes)
            exhausted = exhausted or run.exhausted
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(attempt, r) for r in roots]
            for i, future in enumerate(futures):
                run = future.result()
                tried += 1
                nodes += run.nodes_expanded
                if run.ordering is not None:
                    for pending in futures[i + 1 :]:
                        pending.cancel()
                    return RecognitionResult(Outcome.YES, run.ordering, tried, nodes)
                exhausted = exhausted or run.exhausted
    outcome = Outcome.INCONCLUSIVE if exhausted else Outcome.NO
    return RecognitionResult(outcome, None, tried, nodes)


def _certified(
    result: RecognitionResult,
    g: Graph,
    t: SpanningTree,
    kind: SearchKind,
    side: Side,
    verify: bool,
) -> RecognitionResult:
    if verify and result.witness is not None:
        _require_certified(g, t, kind, side, result.witness)
    return result


def recognize_ldfs_l_tree(
    g: Graph,
    t: SpanningTree,
    *,
    root: int | None = None,
    workers: int = 1,
    verify: bool = True,
) -> RecognitionResult:
    """Decide whether t is an L-tree of LDFS with the greedy simulation.

    Each root runs the greedy: the next vertex is a maximal-label vertex whose
    latest visited neighbour is its tree parent, and a step without one rules out
    that root. Polynomial in the size of g.
    """
    require_spanning_tree(g, t)

    def attempt(r: int) -> EngineRun:
        return _run_engine(g, t, SearchKind.LDFS, Side.L, r, SearchMode.GREEDY, Budget())

    result = try_roots(candidate_roots(g, t, Side.L, root), attempt, workers)
    return _certified(result, g, t, SearchKind.LDFS, Side.L, verify)


def is_palm_tree(g: Graph, rt: RootedTree) -> bool:
    """True iff every non-tree edge of g joins an ancestor and a descendant in rt."""
    for u, v in g.edges:
        if rt.parent.get(u) == v or rt.parent.get(v) == u:
            continue
        if not (is_ancestor(rt, u, v) or is_ancestor(rt, v, u)):
            return False
    return True


def recognize_dfs_l_tree(
    g: Graph,
    t: SpanningTree,
    *,
    root: int | None = None,
    verify: bool = True,
) -> RecognitionResult:
    """Decide whether t is an L-tree of DFS via the palm-tree condition.

    A root qualifies iff every non-tree edge connects an ancestor-descendant pair
    of t rooted there; the witness is then produced by the constrained engine.
    """
    require_spanning_tree(g, t)
    tried = 0
    for r in candidate_roots(g, t, Side.L, root):
        tried += 1
        if not is_palm_tree(g, root_tree(t, r)):
            continue
        run = _run_engine(g, t, SearchKind.DFS, Side.L, r, SearchMode.BACKTRACK, Budget())
        if run.ordering is None:
            raise SearchTreeError(f"palm tree rooted at {r} produced no DFS witness")
        result = RecognitionResult(Outcome.YES, run.ordering, tried, run.nodes_expanded)
        return _certified(result, g, t, SearchKind.DFS, Side.L, verify)
    return RecognitionResult(Outcome.NO, None, tried, 0)


def passes_distance_filter(g: Graph, rt: RootedTree) -> bool:
    """True iff every tree depth equals the graph distance from the root."""
    dist = bfs_distances(g, rt.root)
    return all(rt.depth[v] == dist.get(v) for v in g.vertices)


def bfs_layers_witness(g: Graph, rt: RootedTree) -> VertexOrdering | None:
    """Return a BFS ordering whose F-tree is rt, or None if none exists.

    Within a layer, a BFS visits vertices in the lexicographic order of their
    tree paths, so each requirement "the tree parent of v comes before every other
    neighbour of v one layer up" becomes an order constraint between two siblings:
    the children of the lowest common ancestor on the two paths. A witness exists
    iff the sibling constraints are acyclic at every node.
    """
    if not passes_distance_filter(g, rt):
        return None
    depth = rt.depth
    parent = rt.parent
    before: dict[int, set[int]] = {}
    for v in g.vertices:
        if v == rt.root:
            continue
        p = parent[v]
        for u in g.neighbors(v):
            if u == p or depth[u] != depth[v] - 1:
                continue
            a, b = p, u
            while parent[a] != parent[b]:
                a, b = parent[a], parent[b]
            before.setdefault(a, set()).add(b)

    child_order: dict[int, list[int]] = {}
    for x, children in rt.children.items():
        if len(children) <= 1:
            child_order[x] = list(children)
            continue
        indegree = {c: 0 for c in children}
        for a in children:
            for b in before.get(a, ()):
                indegree[b] += 1
        ready = [c for c in children if indegree[c] == 0]
        heapq.heapify(ready)
        ordered: list[int] = []
        while ready:
            a = heapq.heappop(ready)
            ordered.append(a)
            for b in before.get(a, ()):
                indegree[b] -= 1
                if indegree[b] == 0:
                    heapq.heappush(ready, b)
        if len(ordered) != len(children):
            logger.debug("Sibling constraints under %d are cyclic", x)
            return None
        child_order[x] = ordered

    order = [rt.root]
    for v in order:
        order.extend(child_order[v])
    return VertexOrdering(order)


def recognize_bfs_f_tree(
    g: Graph,
    t: SpanningTree,
    *,
    engine: str = "layers",
    root: int | None = None,
    budget: Budget | None = None,
    workers: int = 1,
    verify: bool = True,
) -> RecognitionResult:
    """Decide whether t is an F-tree of BFS.

    Args:
        g: Connected graph.
        t: Spanning tree of g.
        engine: "layers" solves each root exactly from sibling constraints;
            "backtrack" runs the constrained engine on roots passing the distance
            filter.
        root: Restrict to searches starting at this vertex.
        budget: Node budget per root for the backtrack engine.
        workers: Thread pool size for per-root attempts.
        verify: Replay the witness before reporting it.

    Returns:
        The recognition result.
    """
    if engine not in AVAILABLE_BFS_ENGINES:
        raise ValueError(
            f"Unknown BFS engine: {engine}. Valid options: {', '.join(AVAILABLE_BFS_ENGINES)}"
        )
    require_spanning_tree(g, t)
    budget = budget or Budget()

    def attempt(r: int) -> EngineRun:
        rt = root_tree(t, r)
        if engine == "layers":
            return EngineRun(bfs_layers_witness(g, rt))
        if not passes_distance_filter(g, rt):
            logger.debug("Root %d rejected by the distance filter", r)
            return EngineRun(None)
        return _run_engine(g, t, SearchKind.BFS, Side.F, r, SearchMode.BACKTRACK, budget)

    result = try_roots(candidate_roots(g, t, Side.F, root), attempt, workers)
    return _certified(result, g, t, SearchKind.BFS, Side.F, verify)


def recognize_backtracking(
    g: Graph,
    t: SpanningTree,
    kind: SearchKind,
    side: Side,
    *,
    root: int | None = None,
    budget: Budget | None = None,
    workers: int = 1,
    verify: bool = True,
) -> RecognitionResult:
    """Exact per-root backtracking for any (kind, side); exponential in the worst case."""
    require_spanning_tree(g, t)
    budget = budget or Budget()

    def attempt(r: int) -> EngineRun:
        return _run_engine(g, t, kind, side, r, SearchMode.BACKTRACK, budget)

    result = try_roots(candidate_roots(g, t, side, root), attempt, workers)
    if result.inconclusive:
        logger.info(
            "%s %s-tree recognition inconclusive after %d nodes",
            kind.value,
            side.value,
            result.nodes_expanded,
        )
    return _certified(result, g, t, kind, side, verify)


def recognize(
    g: Graph,
    t: SpanningTree,
    kind: SearchKind,
    side: Side,
    budget: Budget | None = None,
    *,
    root: int | None = None,
    workers: int = 1,
    verify: bool = True,
) -> RecognitionResult:
    """Decide whether t is the F- or L-tree of some search of the given kind.

    Split graphs go to the split recognizers wherever those apply; otherwise BFS
    F-trees, DFS L-trees and LDFS L-trees use their dedicated algorithms and every
    other combination runs the backtracking engine under the budget.

    Args:
        g: Connected graph.
        t: Spanning tree of g.
        kind: Search kind.
        side: F or L.
        budget: Node budget per root for the backtracking engine.
        root: Restrict to searches starting at this vertex.
        workers: Thread pool size for per-root attempts.
        verify: Replay every witness before reporting it.

    Returns:
        The recognition result.
    """
    from search_trees.split import (
        SPLIT_F_KINDS,
        SPLIT_L_KINDS,
        recognize_split_f_tree,
        recognize_split_l_tree,
        split_partition,
    )

    require_spanning_tree(g, t)
    partition = split_partition(g)
    if partition is not None:
        if side is Side.F and kind in SPLIT_F_KINDS:
            logger.debug("Split graph: %s F-tree via the BFS equivalence", kind.value)
            return recognize_split_f_tree(
                g, t, kind, partition=partition, root=root, budget=budget, verify=verify
            )
        if side is Side.L and kind in SPLIT_L_KINDS and root is None:
            logger.debug("Split graph: %s L-tree via caterpillar conditions", kind.value)
            return recognize_split_l_tree(g, t, kind, partition=partition, verify=verify)
    if kind is SearchKind.BFS and side is Side.F:
        return recognize_bfs_f_tree(g, t, root=root, workers=workers, verify=verify)
    if kind is SearchKind.DFS and side is Side.L:
        return recognize_dfs_l_tree(g, t, root=root, verify=verify)
    if kind is SearchKind.LDFS and side is Side.L:
        return recognize_ldfs_l_tree(g, t, root=root, workers=workers, verify=verify)
    logger.debug("%s %s-tree via the backtracking engine", kind.value, side.value)
    return recognize_backtracking(
        g, t, kind, side, root=root, budget=budget, workers=workers, verify=verify
    )
