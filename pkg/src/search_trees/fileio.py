"""Plain-text graph, tree, role and DIMACS CNF formats.

Graph files start with "n m" followed by m lines "u v"; tree files start with
"n" followed by n - 1 lines "u v". Ids are 1-based. Lines starting with '#' are
comments, and "# name <id> <label>" comments attach display names to vertices.
"""

from __future__ import annotations

from collections.abc import Iterator, Mapping
from dataclasses import dataclass, field

from search_trees.errors import ParseError, StructuralError
from search_trees.graph import Graph, SpanningTree, normalize_edge
from search_trees.reductions import CnfFormula, ReductionInstance


@dataclass(frozen=True)
class GraphFile:
    """A parsed graph file with its optional vertex names."""

    graph: Graph
    names: Mapping[int, str] = field(default_factory=dict)


def _content_lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line.split()


def _names(text: str) -> dict[int, str]:
    names = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.strip().lstrip("#").split()
        if raw.strip().startswith("#") and len(parts) == 3 and parts[0] == "name":
            try:
                names[int(parts[1])] = parts[2]
            except ValueError:
                raise ParseError(f"bad vertex id in name comment: {parts[1]}", lineno) from None
    return names


def _ints(tokens: list[str], count: int, lineno: int, what: str) -> list[int]:
    if len(tokens) != count:
        raise ParseError(f"expected {what}, got {' '.join(tokens)!r}", lineno)
    try:
        return [int(tok) for tok in tokens]
    except ValueError:
        joined = " ".join(tokens)
        raise ParseError(f"expected integers for {what}, got {joined!r}", lineno) from None


def _read_edges(
    lines: Iterator[tuple[int, list[str]]], n: int, count: int, header_line: int
) -> list[tuple[int, int]]:
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, tokens in lines:
        u, v = _ints(tokens, 2, lineno, "an edge 'u v'")
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", lineno)
        for x in (u, v):
            if not 1 <= x <= n:
                raise ParseError(f"vertex id {x} out of range 1..{n}", lineno)
        e = normalize_edge(u, v)
        if e in seen:
            raise ParseError(f"duplicate edge {u} {v}", lineno)
        seen.add(e)
        edges.append(e)
    if len(edges) != count:
        raise ParseError(f"header announces {count} edges, found {len(edges)}", header_line)
    return edges


def parse_graph_document(text: str) -> GraphFile:
    """Parse a graph file together with its vertex-name comments."""
    lines = _content_lines(text)
    try:
        header_line, tokens = next(lines)
    except StopIteration:
        raise ParseError("empty graph file") from None
    n, m = _ints(tokens, 2, header_line, "a header 'n m'")
    if n < 1 or m < 0:
        raise ParseError(f"invalid header: n={n}, m={m}", header_line)
    g = Graph.from_edges(n, _read_edges(lines, n, m, header_line))
    if not g.is_connected():
        raise ParseError("graph is not connected", header_line)
    return GraphFile(g, _names(text))


def parse_graph_file(text: str) -> Graph:
    """Parse the graph format into a simple connected graph.

    Raises:
        ParseError: On malformed lines, self-loops, duplicate edges, ids out of
            range, a wrong edge count or a disconnected graph.
    """
    return parse_graph_document(text).graph


def parse_tree_file(text: str, g: Graph) -> SpanningTree:
    """Parse the tree format and check it is a spanning tree of g.

    Raises:
        ParseError: On malformed lines, edges missing from g or a non-tree edge set.
    """
    lines = _content_lines(text)
    try:
        header_line, tokens = next(lines)
    except StopIteration:
        raise ParseError("empty tree file") from None
    (n,) = _ints(tokens, 1, header_line, "a header 'n'")
    if n != g.n:
        raise ParseError(f"tree has {n} vertices but the graph has {g.n}", header_line)
    edges: list[tuple[int, int]] = []
    for lineno, tokens in lines:
        u, v = _ints(tokens, 2, lineno, "an edge 'u v'")
        if u not in g or v not in g or not g.has_edge(u, v):
            raise ParseError(f"edge {u} {v} is not an edge of the graph", lineno)
        edges.append((u, v))
    try:
        t = SpanningTree(g.vertices, edges)
    except StructuralError as e:
        raise ParseError(str(e)) from None
    if not t.is_tree():
        raise ParseError(f"{len(edges)} edges do not form a spanning tree on {n} vertices")
    return t


def parse_dimacs_cnf(text: str, strict: bool = False) -> CnfFormula:
    """Parse DIMACS CNF into a 3-CNF formula.

    Clauses may span lines and end with 0. Clauses with fewer than three literals
    are padded by repeating their literals unless strict is set.

    Raises:
        ParseError: On a missing or malformed header, bad literals, clauses with
            more than three literals, short clauses in strict mode, or a clause
            count that differs from the header.
    """
    header: tuple[int, int] | None = None
    header_line = 0
    clauses: list[tuple[int, int, int]] = []
    current: list[int] = []
    start_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            parts = line.split()
            if header is not None or len(parts) != 4 or parts[1] != "cnf":
                raise ParseError(f"invalid problem line: {line}", lineno)
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise ParseError(f"invalid problem line: {line}", lineno) from None
            header_line = lineno
            continue
        if header is None:
            raise ParseError("clause before the problem line", lineno)
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise ParseError(f"bad literal {tok!r}", lineno) from None
            if not current:
                start_line = lineno
            if lit != 0:
                if abs(lit) > header[0]:
                    raise ParseError(f"literal {lit} exceeds {header[0]} variables", lineno)
                current.append(lit)
                continue
            clauses.append(_three_literals(current, start_line or lineno, strict))
            current = []
    if header is None:
        raise ParseError("missing problem line 'p cnf <vars> <clauses>'")
    if current:
        raise ParseError("last clause is not terminated by 0", start_line)
    if len(clauses) != header[1]:
        raise ParseError(
            f"header announces {header[1]} clauses, found {len(clauses)}", header_line
        )
    try:
        return CnfFormula(header[0], tuple(clauses))
    except StructuralError as e:
        raise ParseError(str(e), header_line) from None


def _three_literals(literals: list[int], lineno: int, strict: bool) -> tuple[int, int, int]:
    if not literals:
        raise ParseError("empty clause", lineno)
    if len(literals) > 3:
        raise ParseError(f"clause has {len(literals)} literals, expected 3", lineno)
    if len(literals) < 3:
        if strict:
            raise ParseError(f"clause has {len(literals)} literals, expected 3", lineno)
        literals = [literals[i % len(literals)] for i in range(3)]
    return (literals[0], literals[1], literals[2])


def format_graph(g: Graph, names: Mapping[int, str] | None = None) -> str:
    """Write g in the graph format; vertices must be 1..n."""
    lines = _name_comments(names)
    lines.append(f"{g.n} {g.m}")
    lines.extend(f"{u} {v}" for u, v in sorted(g.edges))
    return "\n".join(lines) + "\n"


def _name_comments(names: Mapping[int, str] | None) -> list[str]:
    if not names:
        return []
    return [f"# name {v} {label}" for v, label in sorted(names.items())]


def format_tree(t: SpanningTree) -> str:
    lines = [str(t.n)]
    lines.extend(f"{u} {v}" for u, v in sorted(t.edges))
    return "\n".join(lines) + "\n"


def format_roles(instance: ReductionInstance) -> str:
    """One line "id role" per vertex."""
    return instance.roles_table()


def parse_roles(text: str) -> dict[int, str]:
    roles = {}
    for lineno, tokens in _content_lines(text):
        if len(tokens) != 2:
            raise ParseError(f"expected 'id role', got {' '.join(tokens)!r}", lineno)
        try:
            roles[int(tokens[0])] = tokens[1]
        except ValueError:
            raise ParseError(f"bad vertex id {tokens[0]!r}", lineno) from None
    return roles
