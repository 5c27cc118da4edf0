"""Tests for the plain-text file formats."""

from __future__ import annotations

import pytest
from hypothesis import given, settings

from search_trees.errors import ParseError
from search_trees.fileio import (
    format_graph,
    format_roles,
    format_tree,
    parse_dimacs_cnf,
    parse_graph_document,
    parse_graph_file,
    parse_roles,
    parse_tree_file,
)
from search_trees.reductions import CnfFormula, build_lbfs_instance

from .strategies import graphs_with_trees


class TestGraphFiles:
    def test_parse_c4(self, c4):
        g = parse_graph_file("# four-cycle\n4 4\n1 2\n2 3\n\n3 4\n4 1\n")
        assert g == c4
        assert g.neighbors(1) == (2, 4)

    def test_names(self):
        doc = parse_graph_document("# name 1 r\n# name 2 x1\n2 1\n1 2\n")
        assert doc.names == {1: "r", 2: "x1"}

    def test_format(self, c4):
        assert format_graph(c4) == "4 4\n1 2\n1 4\n2 3\n3 4\n"
        assert format_graph(c4, {2: "p"}).startswith("# name 2 p\n4 4\n")

    @pytest.mark.parametrize(
        ("text", "line", "message"),
        [
            ("3 2\n1 2\n2 2\n", 3, "self-loop"),
            ("3 3\n1 2\n2 3\n2 1\n", 4, "duplicate edge"),
            ("3 2\n1 2\n2 4\n", 3, "out of range"),
            ("3 3\n1 2\n2 3\n", 1, "announces 3 edges"),
            ("3 2\n1 2\n2 x\n", 3, "expected integers"),
            ("3\n", 1, "header"),
            ("3 2\n1 2 3\n2 3\n", 2, "an edge"),
        ],
    )
    def test_errors_carry_line_numbers(self, text, line, message):
        with pytest.raises(ParseError, match=message) as excinfo:
            parse_graph_file(text)
        assert excinfo.value.line == line

    def test_disconnected(self):
        with pytest.raises(ParseError, match="line 2: graph is not connected") as excinfo:
            parse_graph_file("# two pieces\n3 1\n1 2\n")
        assert excinfo.value.line == 2

    def test_empty(self):
        with pytest.raises(ParseError, match="empty"):
            parse_graph_file("# nothing here\n")

    def test_bad_name_comment(self):
        with pytest.raises(ParseError) as excinfo:
            parse_graph_document("2 1\n1 2\n# name one r\n")
        assert excinfo.value.line == 3


class TestTreeFiles:
    def test_parse_path(self, c4, c4_path):
        assert parse_tree_file("4\n1 2\n2 3\n3 4\n", c4) == c4_path
        assert format_tree(c4_path) == "4\n1 2\n2 3\n3 4\n"

    def test_edge_missing_from_graph(self, c4):
        with pytest.raises(ParseError, match="not an edge") as excinfo:
            parse_tree_file("4\n1 2\n1 3\n3 4\n", c4)
        assert excinfo.value.line == 3

    def test_vertex_count_mismatch(self, c4):
        with pytest.raises(ParseError, match="vertices"):
            parse_tree_file("5\n1 2\n", c4)

    @pytest.mark.parametrize("text", ["4\n1 2\n2 3\n1 3\n", "4\n1 2\n2 3\n"])
    def test_not_a_spanning_tree(self, k4, text):
        with pytest.raises(ParseError):
            parse_tree_file(text, k4)

    @settings(max_examples=40)
    @given(graphs_with_trees())
    def test_written_files_parse_back(self, instance):
        g, t = instance
        parsed = parse_graph_file(format_graph(g))
        assert parsed == g
        assert parse_tree_file(format_tree(t), parsed) == t


class TestDimacs:
    def test_clauses_may_span_lines(self):
        f = parse_dimacs_cnf("c comment\np cnf 3 1\n1 2\n-3 0\n")
        assert f == CnfFormula.of(3, [(1, 2, -3)])

    def test_short_clauses_are_padded(self):
        f = parse_dimacs_cnf("p cnf 2 2\n1 -2 0\n2 0\n")
        assert f.clauses == ((1, -2, 1), (2, 2, 2))

    def test_strict_rejects_short_clauses(self):
        with pytest.raises(ParseError, match="expected 3") as excinfo:
            parse_dimacs_cnf("p cnf 2 2\n1 -2 2 0\n2 0\n", strict=True)
        assert excinfo.value.line == 3

    def test_percent_ends_the_clauses(self):
        f = parse_dimacs_cnf("p cnf 1 1\n1 1 1 0\n%\n0\n")
        assert f.clause_count == 1

    @pytest.mark.parametrize(
        ("text", "message"),
        [
            ("1 2 3 0\n", "before the problem line"),
            ("c only a comment\n", "missing problem line"),
            ("p cnf 1 2\n1 1 1 0\n", "announces 2 clauses"),
            ("p cnf 1 1\n1 2 1 0\n", "exceeds 1 variables"),
            ("p cnf 2 1\n1 2 -1 2 0\n", "4 literals"),
            ("p cnf 1 1\n1 1 1\n", "not terminated"),
            ("p cnf 1 1\n1 x 1 0\n", "bad literal"),
            ("p dnf 1 1\n1 1 1 0\n", "invalid problem line"),
            ("p cnf 1 1\n0\n", "empty clause"),
        ],
    )
    def test_errors(self, text, message):
        with pytest.raises(ParseError, match=message):
            parse_dimacs_cnf(text)

    def test_to_dimacs_parses_back(self):
        f = CnfFormula.of(4, [(-1, 2, -3), (1, -3, 4)])
        assert parse_dimacs_cnf(f.to_dimacs(), strict=True) == f


class TestRoles:
    def test_roles_file(self):
        instance = build_lbfs_instance(CnfFormula.of(1, [(1, 1, 1)]))
        assert parse_roles(format_roles(instance)) == dict(instance.vertex_roles)

    def test_bad_roles_line(self):
        with pytest.raises(ParseError) as excinfo:
            parse_roles("1 x1\nr 2\n")
        assert excinfo.value.line == 2
