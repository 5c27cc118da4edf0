"""Tests for the instance generators."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from search_trees.generators import (
    all_3cnf,
    all_connected_graphs,
    all_labeled_connected_graphs,
    random_cnf,
    random_connected_graph,
    random_spanning_tree,
    random_split_graph,
)
from search_trees.graph import validate_spanning_tree
from search_trees.split import split_partition

from .strategies import seeds


class TestRandomGraphs:
    @settings(max_examples=50)
    @given(st.integers(1, 12), st.data(), seeds)
    def test_exact_edge_count(self, n, data, seed):
        m = data.draw(st.integers(n - 1, n * (n - 1) // 2))
        g = random_connected_graph(n, m=m, seed=seed)
        assert g.vertices == tuple(range(1, n + 1))
        assert g.m == m
        assert g.is_connected()

    def test_probability_one_gives_complete_graph(self):
        assert random_connected_graph(5, p=1.0, seed=1).m == 10

    def test_reproducible(self):
        first = random_connected_graph(9, p=0.3, seed=5)
        assert first == random_connected_graph(9, p=0.3, seed=5)

    def test_edge_count_out_of_range(self):
        with pytest.raises(ValueError):
            random_connected_graph(4, m=2)
        with pytest.raises(ValueError):
            random_connected_graph(0)

    @settings(max_examples=50)
    @given(st.integers(1, 10), seeds)
    def test_spanning_trees_are_valid(self, n, seed):
        g = random_connected_graph(n, p=0.4, seed=seed)
        assert validate_spanning_tree(g, random_spanning_tree(g, seed=seed))


class TestRandomSplitGraphs:
    @settings(max_examples=50)
    @given(st.integers(1, 6), st.integers(0, 6), seeds)
    def test_split_and_connected(self, clique, independent, seed):
        g = random_split_graph(clique, independent, p=0.3, seed=seed)
        assert g.n == clique + independent
        assert g.is_connected()
        assert split_partition(g) is not None

    def test_needs_a_clique(self):
        with pytest.raises(ValueError):
            random_split_graph(0, 3)


class TestFormulas:
    @settings(max_examples=30)
    @given(st.integers(1, 6), st.integers(1, 8), seeds)
    def test_random_cnf_shape(self, k, clause_count, seed):
        f = random_cnf(k, clause_count, seed=seed)
        assert f.variable_count == k
        assert f.clause_count == clause_count
        assert all(1 <= abs(lit) <= k for clause in f.clauses for lit in clause)

    def test_single_variable_classes(self):
        assert len(list(all_3cnf(1, 1))) == 2
        assert len(list(all_3cnf(1, 2))) == 6

    def test_formulas_are_distinct(self):
        formulas = [f.clauses for f in all_3cnf(2, 2)]
        assert len(formulas) == len(set(formulas))


class TestAtlas:
    @pytest.mark.parametrize(("n", "count"), [(1, 1), (2, 1), (3, 2), (4, 6), (5, 21)])
    def test_connected_graph_counts(self, n, count):
        graphs = all_connected_graphs(n)
        assert len(graphs) == count
        assert all(g.vertices == tuple(range(1, n + 1)) and g.is_connected() for g in graphs)

    def test_atlas_range(self):
        with pytest.raises(ValueError, match="atlas"):
            all_connected_graphs(8)

    @pytest.mark.parametrize(("n", "count"), [(1, 1), (2, 1), (3, 4), (4, 38), (5, 728)])
    def test_labeled_connected_graph_counts(self, n, count):
        graphs = list(all_labeled_connected_graphs(n))
        assert len(graphs) == count
        assert len({g.edges for g in graphs}) == count
        assert all(g.is_connected() for g in graphs)
