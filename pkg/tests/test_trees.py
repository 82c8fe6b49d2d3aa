"""Tree recoloring: labeling, decompositions, plain/list/3+1/4-list routes."""

from __future__ import annotations

import math
import random

import pytest

from recolor.errors import PreconditionError
from recolor.generate import (random_lists, random_proper_coloring,
                              random_walk)
from recolor.graphs import (Coloring, Graph, ListAssignment, build_cycle,
                            build_path, build_star, is_proper, random_tree)
from recolor.schedule import RecoloringInstance, verify_strong
from recolor.trees import (TREE3PLUS1_LENGTH_BOUND, LightLabeling,
                           check_decomposition, decompose_for_lists,
                           decompose_small_components, is_light,
                           light_labeling, recolor_tree_3plus1,
                           recolor_tree_list, recolor_tree_list4,
                           recolor_tree_plain, same_color_wrt, tree_3coloring)

# length-to-log ratios measured over randomized corpora; generous margins
LIST4_LOG_FACTOR = 24
ROUNDS_LOG_FACTOR = 20


def _lg(n: int) -> float:
    return max(1.0, math.log2(n))


def _center_ecc(g) -> int:
    far = max(range(g.n), key=lambda v: g.bfs_distances([0])[v])
    diameter = max(g.bfs_distances([far]))
    return (diameter + 1) // 2


def _verified(g, a, b, run, k, c=0):
    inst = RecoloringInstance(g, a.with_palette(k + c),
                              b.with_palette(k + c), k, c)
    report = verify_strong(inst, run.schedule)
    assert report.ok, report.violation
    return run


def _respects(run, lists):
    sch = run.schedule
    for i in range(1, sch.length + 1):
        for v in sch.change_set(i):
            assert sch.color_at(v, i) in lists[v]


class TestLightLabeling:
    def test_path_collapses_in_one_wave(self):
        lab = light_labeling(build_path(7))
        assert lab.labels == (1,) * 7
        assert lab.h == 1
        assert is_light(build_path(7), lab)

    def test_star_center_outlives_leaves(self):
        lab = light_labeling(build_star(3))
        assert lab.labels == (2, 1, 1, 1)
        assert lab.h == 2

    def test_all_ones_on_star_is_not_light(self):
        g = build_star(3)
        assert not is_light(g, LightLabeling((1, 1, 1, 1), rounds=0))

    def test_level_accessor(self):
        lab = light_labeling(build_star(3))
        assert lab.level(2) == [0]
        assert lab.level(1) == [1, 2, 3]

    def test_height_logarithmic(self):
        rng = random.Random(2)
        for _ in range(25):
            n = rng.randrange(2, 5000)
            g = random_tree(n, rng.randrange(10 ** 6))
            lab = light_labeling(g)
            assert is_light(g, lab)
            assert lab.h <= math.ceil(math.log2(n))

    def test_single_node(self):
        lab = light_labeling(build_path(1))
        assert lab.h <= 1 and is_light(build_path(1), lab)


class TestTree3Coloring:
    def test_path_alternates(self):
        assert tree_3coloring(build_path(7)).colors == (1, 2, 1, 2, 1, 2, 1)

    def test_proper_with_three_colors(self):
        rng = random.Random(3)
        for _ in range(20):
            g = random_tree(rng.randrange(1, 800), rng.randrange(10 ** 6))
            x = tree_3coloring(g)
            assert is_proper(g, x)
            assert x.palette_size == 3
            assert max(x.colors) <= 3


class TestDecompositions:
    def test_small_components_invariants(self):
        rng = random.Random(4)
        for _ in range(20):
            g = random_tree(rng.randrange(2, 2000), rng.randrange(10 ** 6))
            lab = light_labeling(g)
            dec = decompose_small_components(g, lab, tree_3coloring(g, lab))
            assert dec.variant == "A"
            check_decomposition(g, dec)
            assert all(len(comp) <= 2 for comp in dec.components)

    def test_list_decomposition_invariants(self):
        rng = random.Random(5)
        for _ in range(20):
            g = random_tree(rng.randrange(2, 2000), rng.randrange(10 ** 6))
            lab = light_labeling(g)
            dec = decompose_for_lists(g, lab)
            assert dec.variant == "B"
            check_decomposition(g, dec)
            # components have radius linear in the labeling height
            if lab.h and dec.radius is not None:
                assert dec.radius <= 2 * lab.h

    def test_checker_rejects_dependent_set(self):
        g = build_path(3)
        from recolor.errors import RecolorError
        from recolor.trees import TreeDecomposition
        bad = TreeDecomposition(frozenset({0, 1}), ((2,),), "A", 0)
        with pytest.raises(RecolorError):
            check_decomposition(g, bad)


class TestSameColorWrt:
    def test_distinct_lists_take_constant_color(self):
        lists = ListAssignment(({1, 5}, {1, 2, 3}, {1, 2, 3}))
        # L(0) has 5 outside L(2): constant regardless of current colors
        assert same_color_wrt(0, 1, 2, lists, [1, 2, 3]) == 5
        assert same_color_wrt(0, 1, 2, lists, [5, 3, 1]) == 5

    def test_equal_lists_copy_representative(self):
        lists = ListAssignment(({1, 2, 3}, {1, 2, 3}, {1, 2, 3}))
        assert same_color_wrt(0, 1, 2, lists, [1, 2, 3]) == 2

    def test_fallback_avoids_witness(self):
        lists = ListAssignment(({1, 2, 3}, {1, 2, 3, 4}, {1, 2, 3}))
        # representative sits on 4, unavailable to node 0
        got = same_color_wrt(0, 1, 2, lists, {0: 1, 1: 4, 2: 3})
        assert got != 3 and got in {1, 2}


class TestPlainRecoloring:
    def test_p6_swap(self):
        g = build_path(6)
        a = Coloring.of([1, 2, 1, 2, 1, 2], 3)
        b = Coloring.of([2, 1, 2, 1, 2, 1], 3)
        run = _verified(g, a, b, recolor_tree_plain(g, a, b), 3)
        assert run.schedule.length == 3

    def test_rejects_colors_beyond_three(self):
        g = build_path(2)
        with pytest.raises(PreconditionError):
            recolor_tree_plain(g, Coloring.of([1, 4], 4),
                               Coloring.of([4, 1], 4))

    def test_rejects_cycles(self):
        g = build_cycle(4)
        x = Coloring.of([1, 2, 1, 2], 3)
        with pytest.raises(PreconditionError):
            recolor_tree_plain(g, x, x)

    def test_random_corpus_eccentricity_length(self):
        # contract: length and rounds are linear in the center eccentricity
        rng = random.Random(6)
        for _ in range(15):
            n = rng.randrange(4, 3000)
            g = random_tree(n, rng.randrange(10 ** 6))
            a = random_proper_coloring(g, 3, rng.randrange(10 ** 6))
            b = random_walk(g, a, 3 * n, rng.randrange(10 ** 6))
            run = _verified(g, a, b, recolor_tree_plain(g, a, b), 3)
            ecc = _center_ecc(g)
            assert run.schedule.length <= 6 * ecc + 24
            assert run.rounds <= 2 * ecc + 10


class TestListRecoloring:
    def test_star_with_distinct_lists(self):
        g = build_star(3)
        lists = ListAssignment(({1, 2, 3}, {2, 3, 4}, {3, 4, 5}, {4, 5, 6}))
        a = Coloring.of([1, 2, 3, 4], 6)
        b = Coloring.of([3, 4, 5, 6], 6)
        run = recolor_tree_list(g, a, b, lists)
        _verified(g, a, b, run, 6)
        _respects(run, lists)
        assert run.schedule.length == 4

    def test_random_lists_corpus(self):
        rng = random.Random(8)
        done = 0
        while done < 12:
            n = rng.randrange(4, 1500)
            g = random_tree(n, rng.randrange(10 ** 6))
            lists = random_lists(g, 3, 6, rng.randrange(10 ** 6))

            def greedy(seed):
                r = random.Random(seed)
                out = [0] * g.n
                for v in range(g.n):
                    used = {out[u] for u in g.adjacency[v] if out[u]}
                    opts = [c for c in lists[v] if c not in used]
                    if not opts:
                        return None
                    out[v] = r.choice(opts)
                return Coloring.of(out, 6)

            a, b = greedy(rng.randrange(10 ** 6)), greedy(rng.randrange(10 ** 6))
            if a is None or b is None:
                continue
            run = recolor_tree_list(g, a, b, lists)
            _verified(g, a, b, run, 6)
            _respects(run, lists)
            assert run.schedule.length <= 6 * _center_ecc(g) + 24
            done += 1

    def test_small_lists_rejected(self):
        g = build_path(2)
        lists = ListAssignment(({1, 2}, {1, 2}))
        with pytest.raises(PreconditionError):
            recolor_tree_list(g, Coloring.of([1, 2], 2),
                              Coloring.of([2, 1], 2), lists)


class TestTree3Plus1:
    def test_p6_constant_length(self):
        g = build_path(6)
        inst = RecoloringInstance(g, Coloring.of([1, 2, 1, 2, 1, 2], 4),
                                  Coloring.of([2, 1, 2, 1, 2, 1], 4), 3, 1)
        run = recolor_tree_3plus1(inst)
        assert verify_strong(inst, run.schedule).ok
        assert run.schedule.length == 5

    def test_single_node(self):
        g = build_path(1)
        inst = RecoloringInstance(g, Coloring.of([1], 4),
                                  Coloring.of([2], 4), 3, 1)
        run = recolor_tree_3plus1(inst)
        assert verify_strong(inst, run.schedule).ok
        assert run.schedule.length <= 2

    def test_constant_length_bound_over_corpus(self):
        rng = random.Random(10)
        for _ in range(12):
            n = rng.randrange(2, 3000)
            g = random_tree(n, rng.randrange(10 ** 6))
            a = random_proper_coloring(g, 3, rng.randrange(10 ** 6))
            b = random_walk(g, a, 2 * n, rng.randrange(10 ** 6))
            inst = RecoloringInstance(g, a.with_palette(4),
                                      b.with_palette(4), 3, 1)
            run = recolor_tree_3plus1(inst)
            assert verify_strong(inst, run.schedule).ok
            assert run.schedule.length <= TREE3PLUS1_LENGTH_BOUND
            assert run.rounds <= ROUNDS_LOG_FACTOR * _lg(n)

    def test_preconditions(self):
        g = build_path(3)
        a = Coloring.of([1, 2, 1], 3)
        with pytest.raises(PreconditionError):
            recolor_tree_3plus1(RecoloringInstance(g, a, a, 3, 0))


class TestTreeList4:
    def test_p4_uniform_lists(self):
        g = build_path(4)
        lists = ListAssignment.uniform(4, (1, 2, 3, 4))
        a = Coloring.of([1, 2, 1, 2], 4)
        b = Coloring.of([2, 1, 2, 1], 4)
        run = recolor_tree_list4(g, a, b, lists)
        _verified(g, a, b, run, 4)
        _respects(run, lists)
        assert run.schedule.length == 4

    def test_blocked_shift_chain_regression(self):
        # a 7-node path whose mixed lists once wedged the settlement in
        # an endless parking cycle; the exact residual search solves it
        edges = [(0, 3), (0, 5), (1, 6), (2, 3), (2, 4), (5, 6)]
        g = Graph.from_edges(7, edges)
        lists = ListAssignment((frozenset({1, 2, 3, 4}), frozenset({1, 2, 4}),
                                frozenset({1, 2, 3, 4}), frozenset({1, 3, 4}),
                                frozenset({1, 2, 3, 4}), frozenset({1, 2, 4}),
                                frozenset({1, 2, 4})))
        a = Coloring.of([3, 2, 2, 1, 1, 2, 4], 4)
        b = Coloring.of([1, 2, 1, 3, 2, 2, 1], 4)
        run = recolor_tree_list(g, a, b, lists)
        _verified(g, a, b, run, 4)
        _respects(run, lists)

    def test_random_corpus(self):
        rng = random.Random(12)
        for _ in range(10):
            n = rng.randrange(4, 2000)
            g = random_tree(n, rng.randrange(10 ** 6))
            lists = ListAssignment.uniform(n, (1, 2, 3, 4))
            a = random_proper_coloring(g, 4, rng.randrange(10 ** 6))
            b = random_walk(g, a, 3 * n, rng.randrange(10 ** 6))
            run = recolor_tree_list4(g, a, b, lists)
            _verified(g, a, b, run, 4)
            _respects(run, lists)
            assert run.schedule.length <= LIST4_LOG_FACTOR * _lg(n)

    def test_requires_four_wide_lists(self):
        g = build_path(2)
        lists = ListAssignment(({1, 2, 3}, {1, 2, 3}))
        with pytest.raises(PreconditionError):
            recolor_tree_list4(g, Coloring.of([1, 2], 3),
                               Coloring.of([2, 1], 3), lists)
