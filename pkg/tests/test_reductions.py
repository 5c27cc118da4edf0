"""Tests for the 3-SAT gadget instances."""

from __future__ import annotations

import pytest

from search_trees.errors import StructuralError
from search_trees.fixtures import load_cnf
from search_trees.generators import all_3cnf, random_cnf
from search_trees.graph import validate_spanning_tree
from search_trees.oracle import is_weakly_chordal_bruteforce, oracle_recognize
from search_trees.reductions import (
    CnfFormula,
    build_lbfs_instance,
    build_mns_instance,
    literal_vertex,
    sat_bruteforce,
)
from search_trees.searches import SearchKind, validate_order
from search_trees.trees import Side

SAT1 = CnfFormula.of(1, [(1, 1, 1)])
UNSAT2 = CnfFormula.of(1, [(1, 1, 1), (-1, -1, -1)])


class TestCnfFormula:
    def test_fixtures_match_inline_formulas(self):
        assert load_cnf("sat1") == SAT1
        assert load_cnf("unsat2") == UNSAT2

    def test_literal_out_of_range(self):
        with pytest.raises(StructuralError, match="out of range"):
            CnfFormula.of(1, [(1, 2, 1)])

    def test_clause_needs_three_literals(self):
        with pytest.raises(StructuralError, match="malformed clause"):
            CnfFormula.of(2, [(1, 2)])

    def test_needs_a_variable(self):
        with pytest.raises(StructuralError):
            CnfFormula(0, ())

    def test_str_and_dimacs(self):
        f = CnfFormula.of(2, [(1, -2, 1)])
        assert str(f) == "(x1 | ~x2 | x1)"
        assert f.to_dimacs() == "p cnf 2 1\n1 -2 1 0\n"

    def test_literal_vertices(self):
        assert [literal_vertex(lit) for lit in (1, -1, 3, -3)] == [1, 2, 5, 6]


class TestSatBruteforce:
    def test_small_formulas(self):
        assert sat_bruteforce(SAT1) == {1: True}
        assert sat_bruteforce(UNSAT2) is None

    def test_lbfs_gadget_formula_sets_x1_false(self):
        assignment = sat_bruteforce(load_cnf("lbfs-gadget"))
        assert assignment is not None
        assert assignment[1] is False

    def test_assignments_satisfy(self):
        for seed in range(20):
            f = random_cnf(4, 6, seed=seed)
            assignment = sat_bruteforce(f)
            if assignment is not None:
                assert f.satisfied_by(assignment)


class TestLbfsInstance:
    def test_lbfs_gadget_sizes(self):
        instance = build_lbfs_instance(load_cnf("lbfs-gadget"))
        assert instance.graph.n == 21
        assert len(instance.tree.edges) == 20
        assert validate_spanning_tree(instance.graph, instance.tree)

    def test_roles(self):
        instance = build_lbfs_instance(SAT1)
        assert instance.vertex_roles == {
            1: "x1",
            2: "~x1",
            3: "a1",
            4: "c1",
            5: "t1",
            6: "r",
            7: "p",
            8: "q",
            9: "u",
        }
        assert instance.roles_table().splitlines()[5] == "6 r"
        with pytest.raises(KeyError):
            instance.vertex("b")

    def test_repeated_literals_give_one_edge(self):
        g = build_lbfs_instance(SAT1).graph
        assert g.has_edge(4, 1)
        assert not g.has_edge(4, 2)

    def test_satisfiable_instance_is_recognized(self):
        instance = build_lbfs_instance(SAT1)
        assert instance.graph.n == 9
        sigma = oracle_recognize(instance.graph, instance.tree, SearchKind.LBFS, Side.F)
        assert sigma is not None
        assert sigma.at(1) == instance.vertex("r")
        assert validate_order(instance.graph, SearchKind.LBFS, sigma)

    def test_unsatisfiable_instance_is_rejected(self):
        instance = build_lbfs_instance(UNSAT2)
        assert instance.graph.n == 12
        assert oracle_recognize(instance.graph, instance.tree, SearchKind.LBFS, Side.F) is None

    @pytest.mark.parametrize("f", [SAT1, UNSAT2], ids=["sat1", "unsat2"])
    def test_weakly_chordal(self, f):
        assert is_weakly_chordal_bruteforce(build_lbfs_instance(f).graph)


class TestMnsInstance:
    @pytest.mark.parametrize("name", ["mns-gadget", "mns-gadget-alt"])
    def test_mns_gadget_sizes(self, name):
        instance = build_mns_instance(load_cnf(name))
        assert instance.graph.n == 17
        assert len(instance.tree.edges) == 16
        assert validate_spanning_tree(instance.graph, instance.tree)

    def test_clause_vertex_avoids_its_literals(self):
        instance = build_mns_instance(CnfFormula.of(2, [(1, -2, 1)]))
        c1 = instance.vertex("c1")
        assert set(instance.graph.neighbors(c1)) & {1, 2, 3, 4} == {2, 3}

    @pytest.mark.parametrize("kind", [SearchKind.MCS, SearchKind.MNS])
    def test_satisfiable_instance_is_recognized(self, kind):
        instance = build_mns_instance(SAT1)
        assert instance.graph.n == 9
        sigma = oracle_recognize(instance.graph, instance.tree, kind, Side.F)
        assert sigma is not None
        b = instance.vertex("b")
        clause_vertices = [v for v, role in instance.vertex_roles.items() if role[0] == "c"]
        assert all(sigma.precedes(b, c) for c in clause_vertices)
        assert sigma.order[:2] == (instance.vertex("r"), instance.vertex("p"))
        assert sigma.at(3) in {1, 2}

    @pytest.mark.parametrize("kind", [SearchKind.MCS, SearchKind.MNS])
    def test_unsatisfiable_instance_is_rejected(self, kind):
        instance = build_mns_instance(UNSAT2)
        assert instance.graph.n == 10
        assert oracle_recognize(instance.graph, instance.tree, kind, Side.F) is None

    @pytest.mark.parametrize("f", [SAT1, UNSAT2], ids=["sat1", "unsat2"])
    def test_weakly_chordal(self, f):
        assert is_weakly_chordal_bruteforce(build_mns_instance(f).graph)


def _equivalence_holds(f: CnfFormula) -> bool:
    satisfiable = sat_bruteforce(f) is not None
    lbfs = build_lbfs_instance(f)
    mns = build_mns_instance(f)
    answers = [
        oracle_recognize(lbfs.graph, lbfs.tree, SearchKind.LBFS, Side.F) is not None,
        oracle_recognize(mns.graph, mns.tree, SearchKind.MNS, Side.F) is not None,
        oracle_recognize(mns.graph, mns.tree, SearchKind.MCS, Side.F) is not None,
    ]
    return all(answer == satisfiable for answer in answers)


@pytest.mark.parametrize("clause_count", [1, 2])
def test_single_variable_sweep(clause_count):
    for f in all_3cnf(1, clause_count):
        assert _equivalence_holds(f), str(f)


@pytest.mark.slow
@pytest.mark.parametrize("clause_count", [1, 2])
def test_two_variable_sweep(clause_count):
    for f in all_3cnf(2, clause_count):
        assert _equivalence_holds(f), str(f)
        assert is_weakly_chordal_bruteforce(build_lbfs_instance(f).graph)
        assert is_weakly_chordal_bruteforce(build_mns_instance(f).graph)


@pytest.mark.slow
def test_sampled_three_variable_formulas():
    for seed in range(20):
        f = random_cnf(3, 1 + seed % 3, seed=seed)
        assert _equivalence_holds(f), str(f)
