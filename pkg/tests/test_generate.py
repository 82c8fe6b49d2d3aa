"""Random instance generators: properness, determinism, feasibility limits."""

from __future__ import annotations

import pytest

from recolor.errors import InfeasibleError
from recolor.generate import (bipartite_proper_coloring, random_bipartite,
                              random_lists, random_proper_coloring,
                              random_subcubic, random_walk)
from recolor.graphs import (build_complete, build_cycle, build_path,
                            is_proper, is_proper_list, random_tree)


class TestRandomProperColoring:
    def test_output_is_proper(self):
        g = build_cycle(7)
        for seed in range(5):
            x = random_proper_coloring(g, 3, seed)
            assert is_proper(g, x)
            assert x.palette_size == 3

    def test_deterministic(self):
        g = random_tree(30, 4)
        a = random_proper_coloring(g, 3, 99)
        b = random_proper_coloring(g, 3, 99)
        assert a.colors == b.colors

    def test_walk_keeps_properness(self):
        g = build_cycle(9)
        x = random_proper_coloring(g, 3, 1, walk=200)
        assert is_proper(g, x)

    def test_k4_with_three_colors_infeasible(self):
        with pytest.raises(InfeasibleError):
            random_proper_coloring(build_complete(4), 3, 0)

    def test_odd_cycle_with_two_colors_infeasible(self):
        with pytest.raises(InfeasibleError):
            random_proper_coloring(build_cycle(5), 2, 0)

    def test_even_cycle_with_two_colors(self):
        g = build_cycle(6)
        x = random_proper_coloring(g, 2, 0)
        assert is_proper(g, x) and x.palette_size == 2


class TestRandomSubcubic:
    def test_degree_bound_and_connectivity(self):
        for seed in range(8):
            g = random_subcubic(24, seed)
            assert g.max_degree() <= 3
            assert len(g.connected_components()) == 1

    def test_deterministic(self):
        a = random_subcubic(40, 7)
        b = random_subcubic(40, 7)
        assert a.adjacency == b.adjacency

    def test_three_regular(self):
        g = random_subcubic(10, 3)
        assert all(len(adj) == 3 for adj in g.adjacency)

    def test_odd_or_tiny_sizes_rejected(self):
        from recolor.errors import PreconditionError
        for n in (1, 2, 3, 5, 7):
            with pytest.raises(PreconditionError):
                random_subcubic(n, 0)


class TestRandomBipartite:
    def test_edges_cross_the_parts(self):
        g, part1 = random_bipartite(6, 5, 0.5, 3)
        for v in range(g.n):
            for u in g.adjacency[v]:
                assert (v in part1) != (u in part1)

    def test_deterministic(self):
        a, p_a = random_bipartite(8, 8, 0.4, 11)
        b, p_b = random_bipartite(8, 8, 0.4, 11)
        assert a.adjacency == b.adjacency and p_a == p_b

    def test_two_coloring_exists(self):
        g, part1 = random_bipartite(7, 6, 0.6, 2)
        x = bipartite_proper_coloring(g, part1, 2, 0)
        assert is_proper(g, x)


class TestRandomLists:
    def test_sizes_and_range(self):
        g = build_path(10)
        lists = random_lists(g, 3, 6, seed=5)
        assert lists.min_size() >= 3
        for v in range(g.n):
            assert all(1 <= c <= 6 for c in lists[v])

    def test_deterministic(self):
        g = build_path(6)
        a = random_lists(g, 3, 5, seed=8)
        b = random_lists(g, 3, 5, seed=8)
        assert all(a[v] == b[v] for v in range(g.n))


class TestRandomWalk:
    def test_stays_proper(self):
        g = build_cycle(8)
        x = random_proper_coloring(g, 3, 0)
        for seed in range(5):
            y = random_walk(g, x, 300, seed)
            assert is_proper(g, y)
            assert y.palette_size == x.palette_size

    def test_zero_steps_is_identity(self):
        g = build_path(5)
        x = random_proper_coloring(g, 3, 1)
        assert random_walk(g, x, 0, 0).colors == x.colors


def test_list_respecting_coloring_checker_integration():
    g = build_path(4)
    lists = random_lists(g, 4, 4, seed=0)
    # size-4 lists over a palette of 4 force every list to be {1,2,3,4}
    x = random_proper_coloring(g, 4, 3)
    assert is_proper_list(g, x, lists)
