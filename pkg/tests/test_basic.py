"""Zero/low-round recoloring routines and the frozen example family."""

from __future__ import annotations

import random

import pytest

from recolor import oracle
from recolor.basic import (GRID_4PLUS2_LENGTH_BOUND, GRID_5PLUS1_LENGTH_BOUND,
                           PATH_CYCLE_LENGTH_BOUND,
                           SUBCUBIC_4PLUS1_LENGTH_BOUND, eliminate_top_color,
                           fixture_3pathslb, fixture_4treelb,
                           fixtures_needsextra, recolor_bipartite,
                           recolor_grid_4plus2, recolor_grid_5plus1,
                           recolor_path_cycle_3plus1, recolor_subcubic_4plus1,
                           recolor_trivial)
from recolor.errors import PreconditionError
from recolor.generate import (bipartite_proper_coloring,
                              random_proper_coloring, random_subcubic,
                              random_walk)
from recolor.graphs import (Coloring, build_cycle, build_path, build_prism,
                            build_toroidal_grid, is_independent_set, is_proper)
from recolor.schedule import (RecoloringInstance, verify_strong, verify_weak)


def _check(inst, run, max_len=None):
    report = verify_strong(inst, run.schedule)
    assert report.ok, report.violation
    if max_len is not None:
        assert run.schedule.length <= max_len
    return run


class TestTrivial:
    def test_zero_rounds(self):
        g = build_cycle(6)
        s = Coloring.of([1, 2, 1, 2, 1, 2], 4)
        t = Coloring.of([2, 1, 2, 1, 2, 1], 4)
        inst = RecoloringInstance(g, s, t, 2, 2)
        run = recolor_trivial(inst)
        assert run.rounds == 0
        _check(inst, run, max_len=2 * inst.k)

    def test_needs_k_minus_1_extra(self):
        g = build_path(2)
        inst = RecoloringInstance(g, Coloring.of([1, 2], 3),
                                  Coloring.of([2, 1], 3), 3, 0)
        with pytest.raises(PreconditionError):
            recolor_trivial(inst)

    def test_random_instances(self):
        rng = random.Random(0)
        for _ in range(15):
            g = random_subcubic(12, rng.randrange(10 ** 6))
            k = 4
            s = random_proper_coloring(g, k, rng.randrange(10 ** 6))
            t = random_walk(g, s, 60, rng.randrange(10 ** 6))
            inst = RecoloringInstance(g, s.with_palette(2 * k - 1),
                                      t.with_palette(2 * k - 1), k, k - 1)
            _check(inst, recolor_trivial(inst), max_len=2 * k)


class TestBipartite:
    def test_p2_exact_rows(self):
        g = build_path(2)
        inst = RecoloringInstance(g, Coloring.of([1, 2], 3),
                                  Coloring.of([2, 1], 3), 2, 1)
        run = recolor_bipartite(inst, [0])
        assert run.schedule.per_node == ((1, 3, 3, 2), (2, 2, 1, 1))
        assert run.rounds == 0

    def test_length_exactly_three(self):
        from recolor.generate import random_bipartite
        rng = random.Random(1)
        for _ in range(10):
            g, part1 = random_bipartite(6, 6, 0.5, rng.randrange(10 ** 6))
            s = bipartite_proper_coloring(g, part1, 2, rng.randrange(10 ** 6))
            t = bipartite_proper_coloring(g, part1, 2, rng.randrange(10 ** 6))
            inst = RecoloringInstance(g, s.with_palette(3),
                                      t.with_palette(3), 2, 1)
            run = recolor_bipartite(inst, part1)
            _check(inst, run)
            assert run.schedule.length <= 3

    def test_invalid_bipartition_rejected(self):
        g = build_path(3)
        inst = RecoloringInstance(g, Coloring.of([1, 2, 1], 3),
                                  Coloring.of([2, 1, 2], 3), 2, 1)
        with pytest.raises(PreconditionError):
            recolor_bipartite(inst, [0, 1])

    def test_needs_extra_color(self):
        g = build_path(2)
        inst = RecoloringInstance(g, Coloring.of([1, 2], 2),
                                  Coloring.of([2, 1], 2), 2, 0)
        with pytest.raises(PreconditionError):
            recolor_bipartite(inst, [0])


class TestPathCycle3Plus1:
    def test_even_cycle(self):
        g = build_cycle(4)
        inst = RecoloringInstance(g, Coloring.of([1, 2, 1, 2], 4),
                                  Coloring.of([2, 1, 2, 1], 4), 3, 1)
        run = recolor_path_cycle_3plus1(inst)
        _check(inst, run, max_len=PATH_CYCLE_LENGTH_BOUND)

    def test_single_node(self):
        g = build_path(1)
        inst = RecoloringInstance(g, Coloring.of([1], 4),
                                  Coloring.of([3], 4), 3, 1)
        run = recolor_path_cycle_3plus1(inst)
        _check(inst, run, max_len=1)
        assert run.rounds == 0

    def test_odd_cycle(self):
        g = build_cycle(9)
        s = random_proper_coloring(g, 3, 2).with_palette(4)
        t = random_walk(g, s.with_palette(3), 80, 5).with_palette(4)
        inst = RecoloringInstance(g, s, t, 3, 1)
        _check(inst, recolor_path_cycle_3plus1(inst),
               max_len=PATH_CYCLE_LENGTH_BOUND)

    def test_long_paths_same_bound(self):
        rng = random.Random(9)
        for n in (50, 200):
            g = build_path(n)
            s = random_proper_coloring(g, 3, rng.randrange(10 ** 6))
            t = random_walk(g, s, 5 * n, rng.randrange(10 ** 6))
            inst = RecoloringInstance(g, s.with_palette(4),
                                      t.with_palette(4), 3, 1)
            _check(inst, recolor_path_cycle_3plus1(inst),
                   max_len=PATH_CYCLE_LENGTH_BOUND)

    def test_rejects_higher_degree(self):
        g = build_prism()
        s = Coloring.of([1, 2, 3, 2, 3, 1], 4)
        inst = RecoloringInstance(g, s, s, 3, 1)
        with pytest.raises(PreconditionError):
            recolor_path_cycle_3plus1(inst)


class TestEliminateTopColor:
    def test_no_top_color_is_identity(self):
        g = build_path(3)
        x = Coloring.of([1, 2, 1], 4)
        y, frag = eliminate_top_color(g, x)
        assert y.colors == (1, 2, 1) and y.palette_size == 3
        assert frag.length == 0

    def test_smallest_free_choice(self):
        g = build_cycle(4)
        x = Coloring.of([1, 2, 1, 4], 4)
        y, frag = eliminate_top_color(g, x)
        # node 3 sees colors {1, 1}; the smallest free color below 4 is 2
        assert y.colors == (1, 2, 1, 2)
        assert frag.length == 1

    def test_interior_node_skips_neighbor_colors(self):
        g = build_path(3)
        x = Coloring.of([1, 4, 2], 4)
        y, _ = eliminate_top_color(g, x, max_degree=2)
        assert y.colors == (1, 3, 2)

    def test_palette_guard(self):
        g = build_cycle(4)  # max degree 2 needs palette >= 4
        with pytest.raises(PreconditionError):
            eliminate_top_color(g, Coloring.of([1, 2, 1, 3], 3))

    def test_top_class_moves_in_one_independent_step(self):
        rng = random.Random(3)
        for _ in range(10):
            g = random_subcubic(14, rng.randrange(10 ** 6))
            x = random_proper_coloring(g, 5, rng.randrange(10 ** 6))
            top = [v for v in range(g.n) if x[v] == 5]
            y, frag = eliminate_top_color(g, x)
            assert is_proper(g, y)
            assert all(y[v] < 5 for v in range(g.n))
            assert is_independent_set(g, top)
            assert frag.length == (1 if top else 0)

    def test_fragment_connects_the_two_colorings(self):
        g = build_cycle(6)
        x = random_proper_coloring(g, 4, 7)
        y, frag = eliminate_top_color(g, x)
        assert frag.initial() == x.colors
        assert frag.final() == y.colors


class TestSubcubic4Plus1:
    def test_prism_shift(self):
        g = build_prism()
        s = Coloring.of([1, 2, 3, 2, 3, 1], 5)
        t = Coloring.of([2, 3, 1, 3, 1, 2], 5)
        inst = RecoloringInstance(g, s, t, 4, 1)
        _check(inst, recolor_subcubic_4plus1(inst),
               max_len=SUBCUBIC_4PLUS1_LENGTH_BOUND)

    def test_random_cubic_graphs(self):
        rng = random.Random(21)
        for _ in range(8):
            g = random_subcubic(20, rng.randrange(10 ** 6))
            s = random_proper_coloring(g, 4, rng.randrange(10 ** 6))
            t = random_walk(g, s, 100, rng.randrange(10 ** 6))
            inst = RecoloringInstance(g, s.with_palette(5),
                                      t.with_palette(5), 4, 1)
            run = recolor_subcubic_4plus1(inst)
            _check(inst, run, max_len=SUBCUBIC_4PLUS1_LENGTH_BOUND)
            assert run.rounds <= 10  # constant, independent of n

    def test_degree_guard(self):
        from recolor.graphs import build_star
        g = build_star(5)
        s = Coloring.of([1, 2, 2, 2, 2, 2], 5)
        inst = RecoloringInstance(g, s, s, 4, 1)
        with pytest.raises(PreconditionError):
            recolor_subcubic_4plus1(inst)


class TestGridConstantLength:
    def _grid_instance(self, h, w, k, c, seed):
        g = build_toroidal_grid(h, w)
        s = random_proper_coloring(g, k, seed)
        t = random_walk(g, s, 10 * g.n, seed + 1)
        return RecoloringInstance(g, s.with_palette(k + c),
                                  t.with_palette(k + c), k, c)

    def test_4plus2(self):
        rounds = set()
        for h, w, seed in [(3, 3, 0), (4, 5, 1), (6, 7, 2)]:
            inst = self._grid_instance(h, w, 4, 2, seed)
            run = recolor_grid_4plus2(inst)
            _check(inst, run, max_len=GRID_4PLUS2_LENGTH_BOUND)
            rounds.add(run.rounds)
        assert len(rounds) == 1  # constant, independent of grid size

    def test_5plus1(self):
        rounds = set()
        for h, w, seed in [(3, 3, 3), (4, 5, 4), (6, 7, 5)]:
            inst = self._grid_instance(h, w, 5, 1, seed)
            run = recolor_grid_5plus1(inst)
            _check(inst, run, max_len=GRID_5PLUS1_LENGTH_BOUND)
            rounds.add(run.rounds)
        assert len(rounds) == 1

    def test_degree_guard(self):
        from recolor.graphs import build_star
        g = build_star(5)  # center has degree 5
        s = Coloring.of([1, 2, 2, 2, 2, 2], 6)
        inst = RecoloringInstance(g, s, s, 4, 2)
        with pytest.raises(PreconditionError):
            recolor_grid_4plus2(inst)


class TestFrozenFixtures:
    def test_catalog_integrity(self):
        fixtures = fixtures_needsextra()
        assert [f.name for f in fixtures] == list("abcdefghij")
        for f in fixtures:
            assert is_proper(f.g, f.s), f.name
            assert is_proper(f.g, f.t), f.name
            assert f.s.colors != f.t.colors, f.name

    def test_both_endpoints_frozen(self):
        for f in fixtures_needsextra():
            assert oracle.is_frozen(f.g, f.s, f.k, 0), f.name
            assert oracle.is_frozen(f.g, f.t, f.k, 0), f.name

    def test_instance_materializer(self):
        f = fixtures_needsextra()[0]
        inst = f.instance(1)
        assert inst.k == f.k and inst.c == 1
        assert inst.s.palette_size == f.k + 1


class TestLowerBoundFamilies:
    def test_3paths_shape(self):
        inst = fixture_3pathslb(9)
        assert inst.g.n == 9 and inst.k == 3
        assert inst.g.max_degree() <= 2

    def test_3paths_needs_multiple_of_three(self):
        with pytest.raises(PreconditionError):
            fixture_3pathslb(7)

    def test_3paths_distance_scales(self):
        d6 = oracle.search(fixture_3pathslb(6)).dist
        d9 = oracle.search(fixture_3pathslb(9)).dist
        assert d9 > d6 >= 6

    def test_4tree_shape_and_reachability(self):
        inst = fixture_4treelb(2)
        assert inst.k == 4
        assert len(inst.g.connected_components()) == 1
        assert oracle.reachable(inst)
