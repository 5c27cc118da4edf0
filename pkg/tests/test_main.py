"""Tests for the command-line interface."""

from __future__ import annotations

import json

import pytest

from search_trees.config import CONFIG_ENV_VAR
from search_trees.fileio import parse_dimacs_cnf, parse_graph_file, parse_tree_file
from search_trees.main import EXIT_ERROR, EXIT_NO, EXIT_YES, run_cli

C4 = ["--graph", "fixture:c4"]
C4_PATH = [*C4, "--tree", "fixture:c4_path"]


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    monkeypatch.setenv(CONFIG_ENV_VAR, str(tmp_path / "absent.toml"))


def run(capsys, *argv):
    code = run_cli(list(argv))
    return code, capsys.readouterr().out


class TestRecognize:
    def test_ldfs_path_in_c4(self, capsys):
        code, out = run(capsys, "recognize", "--kind", "ldfs", "--side", "l", *C4_PATH)
        assert code == EXIT_YES
        assert out.splitlines() == ["yes", "root 1: 1 2 3 4"]

    def test_split_path_is_not_an_mns_l_tree(self, capsys):
        code, out = run(
            capsys,
            "recognize",
            "--kind", "mns",
            "--side", "l",
            "--graph", "fixture:split2",
            "--tree", "fixture:split2_path",
        )
        assert code == EXIT_NO
        assert out.strip() == "no"

    def test_json_witness_validates(self, capsys):
        code, out = run(capsys, "recognize", "--kind", "lbfs", "--side", "f", *C4_PATH, "--json")
        assert code == EXIT_YES
        payload = json.loads(out)
        assert payload["outcome"] == "yes"
        order = " ".join(str(v) for v in payload["witness"])
        code, out = run(capsys, "validate-order", "--kind", "lbfs", *C4, "--order", order)
        assert code == EXIT_YES
        assert out.strip() == "true"

    def test_backtracking_bfs_engine(self, capsys):
        code, out = run(
            capsys, "recognize", "--kind", "bfs", "--side", "f", *C4_PATH, "--engine", "backtrack"
        )
        assert code == EXIT_YES
        assert out.splitlines()[1] == "root 2: 2 3 1 4"

    def test_root_restriction(self, capsys):
        code, _ = run(capsys, "recognize", "--kind", "ldfs", "--side", "l", *C4_PATH, "--root", "2")
        assert code == EXIT_NO

    def test_invalid_budget(self, capsys):
        argv = ["recognize", "--kind", "dfs", "--side", "l", *C4_PATH, "--budget", "0"]
        code, _ = run(capsys, *argv)
        assert code == EXIT_ERROR

    def test_oracle_rejects_apex22(self, capsys):
        code, out = run(
            capsys,
            "oracle",
            "--kind", "bfs",
            "--side", "f",
            "--graph", "fixture:apex22",
            "--tree", "fixture:apex22",
        )
        assert code == EXIT_NO
        assert out.strip() == "no"


class TestReduce:
    def test_reduce_then_recognize(self, tmp_path, capsys):
        prefix = tmp_path / "sat1"
        code, out = run(
            capsys, "reduce", "--target", "lbfs", "--cnf", "fixture:sat1",
            "--out-prefix", str(prefix),
        )
        assert code == EXIT_YES
        assert len(out.splitlines()) == 3
        graph, tree = tmp_path / "sat1.graph", tmp_path / "sat1.tree"
        assert parse_graph_file(graph.read_text()).n == 9
        assert (tmp_path / "sat1.roles").read_text().splitlines()[5] == "6 r"
        code, out = run(
            capsys,
            "recognize",
            "--kind", "lbfs",
            "--side", "f",
            "--graph", str(graph),
            "--tree", str(tree),
        )
        assert code == EXIT_YES
        assert out.splitlines()[1].startswith("root 6: 6 ")

    def test_strict_rejects_short_clauses(self, tmp_path, capsys):
        cnf = tmp_path / "short.cnf"
        cnf.write_text("p cnf 2 1\n1 -2 0\n")
        argv = ["reduce", "--target", "mns", "--cnf", str(cnf), "--out-prefix", str(tmp_path / "x")]
        assert run(capsys, *argv, "--strict")[0] == EXIT_ERROR
        assert run(capsys, *argv)[0] == EXIT_YES
        assert parse_graph_file((tmp_path / "x.graph").read_text()).n == 2 * 2 + 1 + 6


class TestOtherCommands:
    def test_search_with_names_and_tree(self, capsys):
        code, out = run(
            capsys, "search", "--graph", "fixture:apex22", "--kind", "bfs", "--start", "1",
            "--side", "f",
        )
        assert code == EXIT_YES
        lines = out.splitlines()
        assert lines[0] == "1(r) 2(a) 3(b) 4(x) 5(y)"
        assert lines[1:] == ["5", "1 2", "1 3", "2 4", "2 5"]

    def test_search_tie_break(self, capsys):
        code, out = run(
            capsys, "search", *C4, "--kind", "bfs", "--start", "1", "--tie-break", "max_id"
        )
        assert code == EXIT_YES
        assert out.strip() == "1 4 2 3"

    def test_validate_order_explains(self, capsys):
        code, out = run(
            capsys, "validate-order", *C4, "--kind", "bfs", "--order", "1 2 3 4", "--explain"
        )
        assert code == EXIT_NO
        assert out.splitlines() == [
            "false",
            "step 3: vertex 3 is not a bfs candidate; allowed: 4",
        ]

    def test_validate_order_rejects_non_integers(self, capsys):
        code, _ = run(capsys, "validate-order", *C4, "--kind", "gen", "--order", "1 b")
        assert code == EXIT_ERROR

    def test_build_tree(self, tmp_path, capsys, c4):
        out_file = tmp_path / "t.tree"
        code, out = run(
            capsys, "build-tree", *C4, "--order", "1 2 3 4", "--side", "l", "--out", str(out_file)
        )
        assert code == EXIT_YES
        assert out.splitlines() == ["4", "1 2", "2 3", "3 4"]
        assert parse_tree_file(out_file.read_text(), c4).edges == {(1, 2), (2, 3), (3, 4)}

    @pytest.mark.parametrize(
        ("graph_class", "graph", "expected"),
        [
            ("split", "split2", EXIT_YES),
            ("split", "c4", EXIT_NO),
            ("chordal", "k3p", EXIT_YES),
            ("chordal", "c4", EXIT_NO),
            ("weakly-chordal", "c4", EXIT_YES),
            ("weakly-chordal", "c5", EXIT_NO),
        ],
    )
    def test_check_class(self, capsys, graph_class, graph, expected):
        code, _ = run(capsys, "check-class", "--class", graph_class, "--graph", f"fixture:{graph}")
        assert code == expected

    def test_check_class_prints_partition(self, capsys):
        _, out = run(capsys, "check-class", "--class", "split", "--graph", "fixture:split2")
        assert out.splitlines() == ["true", "clique: 1 2 3", "independent: 4 5"]

    def test_generate_cnf(self, capsys):
        code, out = run(
            capsys, "generate", "--what", "cnf", "--variables", "2", "--clauses", "4", "--seed", "1"
        )
        assert code == EXIT_YES
        assert parse_dimacs_cnf(out, strict=True).clause_count == 4

    def test_generate_split_files(self, tmp_path, capsys):
        prefix = tmp_path / "inst"
        code, _ = run(
            capsys, "generate", "--what", "split", "--clique", "3", "--independent", "2",
            "--seed", "4", "--out-prefix", str(prefix),
        )
        assert code == EXIT_YES
        g = parse_graph_file((tmp_path / "inst.graph").read_text())
        assert g.n == 5
        parse_tree_file((tmp_path / "inst.tree").read_text(), g)


class TestErrors:
    def test_missing_file(self, tmp_path, capsys):
        code = run_cli(["search", "--graph", str(tmp_path / "nope.graph"), "--kind", "bfs",
                        "--start", "1"])
        assert code == EXIT_ERROR
        assert "error:" in capsys.readouterr().err

    def test_malformed_graph(self, tmp_path, capsys):
        bad = tmp_path / "bad.graph"
        bad.write_text("3 2\n1 2\n2 2\n")
        code = run_cli(["search", "--graph", str(bad), "--kind", "bfs", "--start", "1"])
        assert code == EXIT_ERROR
        assert "line 3" in capsys.readouterr().err

    def test_usage_error(self):
        assert run_cli(["recognize", "--kind", "bfs"]) == EXIT_ERROR

    def test_help(self):
        assert run_cli(["--help"]) == EXIT_YES
