"""Graph/coloring data model: builders, predicates, MIS sweep, text I/O."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from recolor.errors import PreconditionError
from recolor.graphs import (Coloring, Graph, ListAssignment, ToroidalGrid,
                            build_balanced_3regular_tree, build_complete,
                            build_complete_bipartite, build_cycle, build_path,
                            build_prism, build_star, build_toroidal_grid,
                            format_coloring, format_graph,
                            greedy_mis_from_coloring, is_independent_set,
                            is_maximal_independent_set, is_proper,
                            is_proper_list, parse_coloring, parse_graph,
                            random_tree)

PROPERTY_SETTINGS = settings(max_examples=200, deadline=None)


def _assert_well_formed(g: Graph) -> None:
    seen = set()
    for v in range(g.n):
        nbrs = g.adjacency[v]
        assert list(nbrs) == sorted(nbrs)
        assert v not in nbrs
        assert len(set(nbrs)) == len(nbrs)
        for u in nbrs:
            assert v in g.adjacency[u]
            seen.add((min(u, v), max(u, v)))
    assert len(seen) == g.m
    assert len(set(g.ids)) == g.n


def _is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    reach = {0}
    stack = [0]
    while stack:
        for u in g.adjacency[stack.pop()]:
            if u not in reach:
                reach.add(u)
                stack.append(u)
    return len(reach) == g.n


class TestBuilders:
    def test_cycle4(self):
        g = build_cycle(4)
        assert g.n == 4 and g.m == 4
        assert all(g.degree(v) == 2 for v in range(4))
        _assert_well_formed(g)

    def test_torus_3x3(self):
        g = build_toroidal_grid(3, 3)
        assert g.n == 9 and g.m == 18
        assert all(g.degree(v) == 4 for v in range(9))
        _assert_well_formed(g)

    def test_torus_regularity_various(self):
        for h, w in [(3, 4), (4, 4), (5, 3), (6, 7)]:
            g = build_toroidal_grid(h, w)
            assert all(g.degree(v) == 4 for v in range(g.n)), (h, w)
            assert len(set(g.adjacency[0])) == 4

    def test_torus_rejects_small_sides(self):
        for h, w in [(2, 5), (5, 2), (1, 3), (3, 0)]:
            with pytest.raises(PreconditionError):
                build_toroidal_grid(h, w)

    def test_torus_indexing(self):
        g = build_toroidal_grid(4, 6)
        assert g.node(1, 2) == 1 * 6 + 2
        assert g.cell(g.node(3, 5)) == (3, 5)
        assert g.node(-1, 6) == g.node(3, 0)

    def test_torus_transposed(self):
        g = build_toroidal_grid(3, 5)
        t = g.transposed()
        assert isinstance(t, ToroidalGrid)
        assert (t.h, t.w) == (5, 3)
        assert t.m == g.m

    def test_prism(self):
        g = build_prism()
        assert g.n == 6 and g.m == 9
        assert all(g.degree(v) == 3 for v in range(6))
        _assert_well_formed(g)

    def test_path_and_star_and_complete(self):
        assert build_path(1).m == 0
        assert build_path(5).m == 4
        assert build_star(3).n == 4 and build_star(3).degree(0) == 3
        k4 = build_complete(4)
        assert k4.m == 6
        kab = build_complete_bipartite(3, 4)
        assert kab.n == 7 and kab.m == 12
        for g in (build_path(5), build_star(3), k4, kab):
            _assert_well_formed(g)

    def test_cycle_too_small(self):
        with pytest.raises(PreconditionError):
            build_cycle(2)

    def test_balanced_3regular_tree_sizes(self):
        assert build_balanced_3regular_tree(1).n == 4
        assert build_balanced_3regular_tree(2).n == 10
        for depth in range(1, 11):
            g = build_balanced_3regular_tree(depth)
            assert g.n == 1 + 3 * (2 ** depth - 1)
            assert g.m == g.n - 1
            internal_degrees = {g.degree(v) for v in range(g.n)
                                if g.degree(v) != 1}
            assert internal_degrees == {3}

    def test_random_tree_tiny(self):
        assert random_tree(1, 0).m == 0
        assert random_tree(2, 0).m == 1

    def test_random_tree_n8_seed42(self):
        g = random_tree(8, 42)
        assert g.m == 7
        assert _is_connected(g)
        _assert_well_formed(g)

    def test_random_tree_deterministic(self):
        a, b = random_tree(50, 7), random_tree(50, 7)
        assert list(a.edges()) == list(b.edges())
        c = random_tree(50, 8)
        assert list(a.edges()) != list(c.edges())


class TestColoring:
    def test_validation(self):
        with pytest.raises(PreconditionError):
            Coloring.of([0, 1], 2)
        with pytest.raises(PreconditionError):
            Coloring.of([1, 3], 2)
        with pytest.raises(PreconditionError):
            Coloring((1,), 0)

    def test_of_infers_palette(self):
        x = Coloring.of([2, 3, 1])
        assert x.palette_size == 3

    def test_with_palette(self):
        x = Coloring.of([1, 2], 2).with_palette(4)
        assert x.palette_size == 4 and x.colors == (1, 2)

    def test_is_proper(self):
        c4 = build_cycle(4)
        assert is_proper(c4, Coloring.of([1, 2, 1, 2]))
        assert not is_proper(c4, Coloring.of([1, 1, 2, 2]))

    def test_is_proper_size_mismatch(self):
        with pytest.raises(PreconditionError):
            is_proper(build_cycle(4), Coloring.of([1, 2, 1]))

    def test_lists(self):
        lists = ListAssignment.of([[1, 2], [2, 3]])
        g = build_path(2)
        assert is_proper_list(g, Coloring.of([1, 2], 3), lists)
        assert not is_proper_list(g, Coloring.of([2, 1], 3), lists)  # not in list
        assert not is_proper_list(g, Coloring.of([2, 2], 3), lists)  # improper
        with pytest.raises(PreconditionError):
            ListAssignment.of([[1], []])


class TestGreedyMIS:
    def test_c4_takes_class_one(self):
        g = build_cycle(4)
        assert greedy_mis_from_coloring(g, Coloring.of([1, 2, 1, 2])) == {0, 2}

    def test_single_node(self):
        g = build_path(1)
        assert greedy_mis_from_coloring(g, Coloring.of([1])) == {0}

    def test_p5(self):
        g = build_path(5)
        mis = greedy_mis_from_coloring(g, Coloring.of([1, 2, 3, 1, 2]))
        assert {0, 3} <= mis
        assert is_independent_set(g, mis)
        assert is_maximal_independent_set(g, mis)

    def test_rejects_improper(self):
        with pytest.raises(PreconditionError):
            greedy_mis_from_coloring(build_path(2), Coloring.of([1, 1]))

    @PROPERTY_SETTINGS
    @given(st.integers(2, 40), st.randoms(use_true_random=False))
    def test_random_pairs_independent_and_maximal(self, n, rnd):
        g = random_tree(n, rnd.randrange(10 ** 6))
        palette = g.max_degree() + 1
        colors = [0] * n
        for v in range(n):
            used = {colors[u] for u in g.adjacency[v] if colors[u]}
            options = [c for c in range(1, palette + 1) if c not in used]
            colors[v] = rnd.choice(options)
        mis = greedy_mis_from_coloring(g, Coloring.of(colors, palette))
        assert is_independent_set(g, mis)
        assert is_maximal_independent_set(g, mis)


class TestTextFormats:
    def test_graph_round_trip(self):
        g = build_toroidal_grid(3, 4)
        assert list(parse_graph(format_graph(g)).edges()) == list(g.edges())

    def test_graph_comments_and_whitespace(self):
        g = parse_graph("# a triangle\n3 3\n0 1\n1 2  # last two\n0 2\n")
        assert g.n == 3 and g.m == 3

    def test_graph_bad_header(self):
        with pytest.raises(ValueError):
            parse_graph("3\n0 1\n")
        with pytest.raises(ValueError):
            parse_graph("3 2\n0 1\n")

    def test_coloring_round_trip(self):
        x = Coloring.of([3, 1, 2])
        assert parse_coloring(format_coloring(x)).colors == x.colors

    @PROPERTY_SETTINGS
    @given(st.lists(st.integers(1, 9), min_size=1, max_size=30))
    def test_coloring_text_identity(self, colors):
        x = Coloring.of(colors)
        assert parse_coloring(format_coloring(x), 9).colors == tuple(colors)

    @PROPERTY_SETTINGS
    @given(st.integers(2, 25), st.integers(0, 10 ** 6))
    def test_graph_text_identity_random_trees(self, n, seed):
        g = random_tree(n, seed)
        h = parse_graph(format_graph(g))
        assert h.n == g.n and list(h.edges()) == list(g.edges())
