"""Gadget instances turning 3-SAT into F-tree recognition.

Vertex numbering is fixed so instances are reproducible byte for byte: literal
vertices first (x_i is 2i - 1, its negation 2i), then the clause gadgets in
clause order, then the special vertices.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from search_trees.errors import StructuralError
from search_trees.graph import Edge, Graph, SpanningTree, normalize_edge

Clause = tuple[int, int, int]


def _as_clause(literals: Iterable[int]) -> Clause:
    lits = tuple(literals)
    if len(lits) != 3:
        raise StructuralError(f"malformed clause: expected 3 literals, got {lits}")
    return (lits[0], lits[1], lits[2])


@dataclass(frozen=True)
class CnfFormula:
    """A 3-CNF formula; literals are signed 1-based variable indices."""

    variable_count: int
    clauses: tuple[Clause, ...]

    def __post_init__(self) -> None:
        if self.variable_count < 1:
            raise StructuralError(
                f"formula needs at least one variable, got {self.variable_count}"
            )
        for i, clause in enumerate(self.clauses, start=1):
            if len(clause) != 3:
                raise StructuralError(f"malformed clause {i}: expected 3 literals, got {clause}")
            for lit in clause:
                if lit == 0 or abs(lit) > self.variable_count:
                    raise StructuralError(f"malformed clause {i}: literal {lit} out of range")

    @classmethod
    def of(cls, variable_count: int, clauses: Iterable[Iterable[int]]) -> CnfFormula:
        return cls(variable_count, tuple(_as_clause(c) for c in clauses))

    @property
    def clause_count(self) -> int:
        return len(self.clauses)

    def satisfied_by(self, assignment: Mapping[int, bool]) -> bool:
        return all(any(assignment[abs(lit)] == (lit > 0) for lit in c) for c in self.clauses)

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.variable_count} {self.clause_count}"]
        lines.extend(" ".join(str(lit) for lit in c) + " 0" for c in self.clauses)
        return "\n".join(lines) + "\n"

    def __str__(self) -> str:
        def lit(v: int) -> str:
            return f"x{v}" if v > 0 else f"~x{-v}"

        return " & ".join("(" + " | ".join(lit(v) for v in c) + ")" for c in self.clauses)


@dataclass(frozen=True)
class ReductionInstance:
    """Graph, spanning tree and a role tag for every vertex."""

    graph: Graph
    tree: SpanningTree
    vertex_roles: Mapping[int, str]
    _by_role: Mapping[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_by_role", {r: v for v, r in self.vertex_roles.items()})

    def vertex(self, role: str) -> int:
        """Return the vertex carrying the given role tag."""
        try:
            return self._by_role[role]
        except KeyError:
            raise KeyError(f"no vertex has role {role}") from None

    def roles_table(self) -> str:
        return "".join(f"{v} {self.vertex_roles[v]}\n" for v in self.graph.vertices)


def literal_vertex(lit: int) -> int:
    """Vertex id of a signed literal."""
    return 2 * lit - 1 if lit > 0 else 2 * (-lit)


def _literal_roles(k: int) -> dict[int, str]:
    roles = {}
    for i in range(1, k + 1):
        roles[literal_vertex(i)] = f"x{i}"
        roles[literal_vertex(-i)] = f"~x{i}"
    return roles


def _literal_edges(k: int) -> set[Edge]:
    # Complement of the perfect matching {x_i, ~x_i}
    literals = range(1, 2 * k + 1)
    return {
        (u, v)
        for u, v in combinations(literals, 2)
        if not (u % 2 == 1 and v == u + 1)
    }


def _clause_literals(clause: Clause) -> set[int]:
    return {literal_vertex(lit) for lit in clause}


def build_lbfs_instance(f: CnfFormula) -> ReductionInstance:
    """Build the instance whose tree is an LBFS F-tree iff f is satisfiable.

    Clause j contributes a_j, c_j, t_j; the specials are r, p, q, u. The graph
    has 2k + 3l + 4 vertices and the tree is the star at r plus up and every c_j t_j.
    """
    k, lc = f.variable_count, f.clause_count
    roles = _literal_roles(k)
    literals = list(range(1, 2 * k + 1))
    base = 2 * k
    a = [base + 3 * j + 1 for j in range(lc)]
    c = [base + 3 * j + 2 for j in range(lc)]
    t = [base + 3 * j + 3 for j in range(lc)]
    for j in range(lc):
        roles[a[j]] = f"a{j + 1}"
        roles[c[j]] = f"c{j + 1}"
        roles[t[j]] = f"t{j + 1}"
    r, p, q, u = (base + 3 * lc + i for i in range(1, 5))
    roles.update({r: "r", p: "p", q: "q", u: "u"})

    edges = _literal_edges(k)
    for j, clause in enumerate(f.clauses):
        edges |= {normalize_edge(a[j], c[j]), normalize_edge(a[j], t[j])}
        edges.add(normalize_edge(c[j], t[j]))
        edges |= {normalize_edge(c[j], x) for x in _clause_literals(clause)}
    hub_targets = literals + a + c + [p, q]
    edges |= {normalize_edge(r, v) for v in hub_targets}
    edges |= {normalize_edge(u, v) for v in hub_targets}
    edges |= {normalize_edge(p, v) for v in literals + [q]}
    edges |= {normalize_edge(q, v) for v in literals + a}

    tree = {normalize_edge(r, v) for v in hub_targets}
    tree.add(normalize_edge(u, p))
    tree |= {normalize_edge(c[j], t[j]) for j in range(lc)}

    n = 2 * k + 3 * lc + 4
    return ReductionInstance(
        Graph.from_edges(n, edges), SpanningTree.from_edges(n, tree), roles
    )


def build_mns_instance(f: CnfFormula) -> ReductionInstance:
    """Build the instance whose tree is an MNS (and MCS) F-tree iff f is satisfiable.

    Clause j contributes one vertex c_j adjacent to every literal outside the
    clause; the specials are r, p, q, a, b, t. The graph has 2k + l + 6 vertices
    and the tree is the star at r plus pa and bt.
    """
    k, lc = f.variable_count, f.clause_count
    roles = _literal_roles(k)
    literals = list(range(1, 2 * k + 1))
    c = [2 * k + j + 1 for j in range(lc)]
    for j in range(lc):
        roles[c[j]] = f"c{j + 1}"
    r, p, q, a, b, t = (2 * k + lc + i for i in range(1, 7))
    roles.update({r: "r", p: "p", q: "q", a: "a", b: "b", t: "t"})

    edges = _literal_edges(k)
    for j, clause in enumerate(f.clauses):
        inside = _clause_literals(clause)
        edges |= {normalize_edge(c[j], x) for x in literals if x not in inside}
    for hub in (r, p, q, a):
        edges |= {normalize_edge(hub, v) for v in literals + c}
    edges |= {normalize_edge(b, x) for x in literals}
    extras = [(a, b), (a, p), (a, q), (b, q), (b, r), (b, t), (p, r), (q, r), (q, t)]
    edges |= {normalize_edge(x, y) for x, y in extras}

    n = 2 * k + lc + 6
    g = Graph.from_edges(n, edges)
    tree = {normalize_edge(r, v) for v in g.neighbors(r)}
    tree |= {normalize_edge(p, a), normalize_edge(b, t)}
    return ReductionInstance(g, SpanningTree.from_edges(n, tree), roles)


def sat_bruteforce(f: CnfFormula) -> dict[int, bool] | None:
    """Return a satisfying assignment, trying assignments in binary counting order.

    Assignment number m sets variable i to bit i - 1 of m, so the all-false
    assignment is tried first. All 2^k assignments are evaluated at once.
    """
    k = f.variable_count
    if not f.clauses:
        return {i: False for i in range(1, k + 1)}
    bits = (np.arange(2**k, dtype=np.int64)[:, None] >> np.arange(k)) & 1
    values = bits.astype(bool)
    satisfied = np.ones(2**k, dtype=bool)
    for clause in f.clauses:
        clause_ok = np.zeros(2**k, dtype=bool)
        for lit in clause:
            column = values[:, abs(lit) - 1]
            clause_ok |= column if lit > 0 else ~column
        satisfied &= clause_ok
    hits = np.flatnonzero(satisfied)
    if hits.size == 0:
        return None
    row = values[hits[0]]
    return {i: bool(row[i - 1]) for i in range(1, k + 1)}
