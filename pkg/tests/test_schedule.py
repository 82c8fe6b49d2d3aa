"""Schedule data model, strong/weak verifiers, weak-to-strong expansion."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from recolor.errors import PreconditionError, VerificationError
from recolor.graphs import Coloring, build_cycle, build_path, build_star, random_tree
from recolor.schedule import (RecoloringInstance, Schedule, ScheduleBuilder,
                              concat, format_schedule, parse_schedule,
                              reverse, verify_strong, verify_weak,
                              weak_to_strong)

PROPERTY_SETTINGS = settings(max_examples=150, deadline=None)


def _p2_instance(k=2, c=1):
    g = build_path(2)
    return RecoloringInstance(g, Coloring.of([1, 2], k + c),
                              Coloring.of([2, 1], k + c), k, c)


class TestScheduleType:
    def test_padding_accessor(self):
        sch = Schedule.of([[1, 3, 2], [2]])
        assert sch.length == 2
        assert sch.color_at(0, 2) == 2
        assert sch.color_at(1, 2) == 2  # padded with the last entry
        assert sch.initial() == (1, 2)
        assert sch.final() == (2, 2)

    def test_change_sets(self):
        sch = Schedule.of([[1, 3, 2], [2, 2, 1]])
        assert sch.change_set(1) == [0]
        assert sch.change_set(2) == [0, 1]

    def test_normalized_strips_trailing_repeats(self):
        sch = Schedule.of([[1, 2, 2, 2], [3, 3, 3, 3]])
        norm = sch.normalized()
        assert norm.per_node == ((1, 2), (3,))
        assert norm.length == 1

    def test_empty_sequence_rejected(self):
        with pytest.raises(PreconditionError):
            Schedule.of([[1], []])

    def test_instance_validation(self):
        g = build_path(2)
        with pytest.raises(PreconditionError):
            RecoloringInstance(g, Coloring.of([1, 1], 2),
                               Coloring.of([1, 2], 2), 2, 0)
        with pytest.raises(PreconditionError):
            RecoloringInstance(g, Coloring.of([1, 3], 3),
                               Coloring.of([3, 1], 3), 2, 0)


class TestVerifyStrong:
    def test_identity_schedule_ok(self):
        g = build_cycle(4)
        s = Coloring.of([1, 2, 1, 2], 2)
        inst = RecoloringInstance(g, s, s, 2, 0)
        sch = Schedule.of([[c] for c in s.colors])
        assert verify_strong(inst, sch).ok

    def test_adjacent_change_detected(self):
        inst = _p2_instance(k=2, c=0)
        sch = Schedule.of([[1, 2], [2, 1]])
        report = verify_strong(inst, sch)
        assert not report.ok
        assert report.violation.step == 1
        assert report.violation.kind == "adjacent-change"
        assert report.violation.nodes == (0, 1)

    def test_bipartite_length3_ok(self):
        inst = _p2_instance()
        sch = Schedule.of([[1, 3, 3, 2], [2, 2, 1, 1]])
        assert verify_strong(inst, sch).ok

    def test_wrong_endpoints(self):
        inst = _p2_instance()
        bad_start = Schedule.of([[2, 3, 3, 2], [2, 2, 1, 1]])
        assert verify_strong(inst, bad_start).violation.kind == "endpoint-s"
        bad_end = Schedule.of([[1, 3, 3, 1], [2, 2, 2, 2]])
        assert verify_strong(inst, bad_end).violation.kind == "endpoint-t"

    def test_palette_violation(self):
        inst = _p2_instance()
        sch = Schedule.of([[1, 4, 4, 2], [2, 2, 1, 1]])
        report = verify_strong(inst, sch)
        assert not report.ok and report.violation.kind == "palette"

    def test_improper_step(self):
        g = build_path(3)
        inst = RecoloringInstance(g, Coloring.of([1, 2, 1], 3),
                                  Coloring.of([2, 3, 2], 3), 3, 0)
        sch = Schedule.of([[1, 2, 2], [2, 2, 3], [1, 1, 2]])
        report = verify_strong(inst, sch)
        assert not report.ok and report.violation.kind == "improper"

    def test_first_violation_is_lexicographic(self):
        g = build_path(4)
        inst = RecoloringInstance(g, Coloring.of([1, 2, 1, 2], 3),
                                  Coloring.of([2, 1, 2, 1], 3), 3, 0)
        # both edges (0,1) and (2,3) change simultaneously at step 1
        sch = Schedule.of([[1, 2], [2, 1], [1, 2], [2, 1]])
        report = verify_strong(inst, sch)
        assert report.violation.step == 1
        assert report.violation.nodes == (0, 1)

    def test_size_mismatch(self):
        inst = _p2_instance()
        with pytest.raises(PreconditionError):
            verify_strong(inst, Schedule.of([[1]]))


class TestVerifyWeak:
    def test_strong_implies_weak(self):
        inst = _p2_instance()
        sch = Schedule.of([[1, 3, 3, 2], [2, 2, 1, 1]])
        assert verify_weak(inst, sch).ok

    def test_intersecting_pairs_rejected(self):
        inst = _p2_instance(k=2, c=0)
        # node0 1->2 and node1 2->1 simultaneously: {1,2} meets {2,1}
        sch = Schedule.of([[1, 2], [2, 1]])
        report = verify_weak(inst, sch)
        assert not report.ok and report.violation.kind == "adjacent-change"
        assert report.violation.step == 1

    def test_disjoint_pairs_accepted(self):
        g = build_cycle(4)
        inst = RecoloringInstance(g, Coloring.of([1, 2, 1, 2], 4),
                                  Coloring.of([3, 4, 1, 2], 4), 4, 0)
        # node0 1->3 and node1 2->4 simultaneously: {1,3} and {2,4} disjoint
        sch = Schedule.of([[1, 3], [2, 4], [1, 1], [2, 2]])
        assert verify_weak(inst, sch).ok
        assert not verify_strong(inst, sch).ok

    def test_properness_still_required(self):
        # single-node moves only, so pair disjointness is vacuous; the
        # improper intermediate state must still be flagged
        g = build_cycle(4)
        s = Coloring.of([1, 2, 1, 2], 3)
        inst = RecoloringInstance(g, s, s, 3, 0)
        sch = Schedule.of([[1, 2, 1], [2, 2, 2], [1, 1, 1], [2, 2, 2]])
        report = verify_weak(inst, sch)
        assert not report.ok and report.violation.kind == "improper"


class TestWeakToStrong:
    def test_weak_input_becomes_strong(self):
        g = build_cycle(4)
        inst = RecoloringInstance(g, Coloring.of([1, 2, 1, 2], 4),
                                  Coloring.of([3, 4, 1, 2], 4), 4, 0)
        weak = Schedule.of([[1, 3], [2, 4], [1, 1], [2, 2]])
        strong = weak_to_strong(inst, weak)
        assert verify_strong(inst, strong).ok
        assert strong.length <= inst.k * weak.length

    def test_strong_input_stays_feasible(self):
        inst = _p2_instance()
        sch = Schedule.of([[1, 3, 3, 2], [2, 2, 1, 1]])
        out = weak_to_strong(inst, sch)
        assert verify_strong(inst, out).ok
        assert out.length <= inst.k * sch.length

    def test_rejects_infeasible_input(self):
        inst = _p2_instance(k=2, c=0)
        sch = Schedule.of([[1, 2], [2, 1]])
        with pytest.raises(VerificationError):
            weak_to_strong(inst, sch)


class TestConcatReverse:
    def test_concat_identity(self):
        sch = Schedule.of([[1, 3, 3, 2], [2, 2, 1, 1]])
        empty = Schedule.of([[2], [1]])
        joined = concat(sch, empty)
        assert joined.final() == sch.final()
        assert joined.length == sch.normalized().length

    def test_concat_seam_mismatch(self):
        a = Schedule.of([[1, 2]])
        b = Schedule.of([[3, 1]])
        with pytest.raises(PreconditionError):
            concat(a, b)

    def test_reverse_involution(self):
        inst = _p2_instance()
        sch = Schedule.of([[1, 3, 3, 2], [2, 2, 1, 1]])
        back = reverse(inst, sch)
        assert verify_strong(inst.swapped(), back).ok
        again = reverse(inst.swapped(), back)
        assert again.per_node == sch.normalized().per_node

    def test_reverse_requires_feasible(self):
        inst = _p2_instance(k=2, c=0)
        with pytest.raises(VerificationError):
            reverse(inst, Schedule.of([[1, 2], [2, 1]]))


class TestBuilder:
    def test_apply_and_build(self):
        b = ScheduleBuilder([1, 2])
        b.apply({0: 3})
        b.apply({0: 2, 1: 1})
        sch = b.build()
        assert sch.per_node == ((1, 3, 2), (2, 2, 1))

    def test_noop_steps_are_skipped(self):
        b = ScheduleBuilder([1, 2])
        b.apply({})
        b.apply({0: 1})
        assert b.build().length == 0

    def test_extend_states(self):
        b = ScheduleBuilder([1, 2, 1])
        b.extend_states([[1, 3, 1], [2, 3, 1]])
        assert b.current() == (2, 3, 1)


class TestTextFormat:
    def test_round_trip(self):
        sch = Schedule.of([[1, 3, 3, 2], [2, 2, 1, 1]])
        assert parse_schedule(format_schedule(sch)).per_node == sch.per_node

    def test_duplicate_node_rejected(self):
        with pytest.raises(ValueError):
            parse_schedule("0: 1 2\n0: 2 1\n")

    def test_gap_in_nodes_rejected(self):
        with pytest.raises(ValueError):
            parse_schedule("0: 1\n2: 1\n")


def _random_strong_schedule(rng: random.Random):
    """A random tree, a random proper coloring, and a few random legal
    single-node moves — strong-feasible by construction."""
    n = rng.randrange(2, 12)
    g = random_tree(n, rng.randrange(10 ** 6))
    palette = g.max_degree() + 2
    colors = [0] * n
    for v in range(n):
        used = {colors[u] for u in g.adjacency[v] if colors[u]}
        colors[v] = rng.choice([c for c in range(1, palette + 1)
                                if c not in used])
    b = ScheduleBuilder(colors)
    cur = list(colors)
    for _ in range(rng.randrange(0, 8)):
        v = rng.randrange(n)
        used = {cur[u] for u in g.adjacency[v]}
        options = [c for c in range(1, palette + 1)
                   if c not in used and c != cur[v]]
        if options:
            c = rng.choice(options)
            b.apply({v: c})
            cur[v] = c
    s = Coloring.of(colors, palette)
    t = Coloring.of(cur, palette)
    return RecoloringInstance(g, s, t, palette, 0), b.build()


@PROPERTY_SETTINGS
@given(st.integers(0, 10 ** 9))
def test_random_strong_schedules_verify_both_modes(seed):
    inst, sch = _random_strong_schedule(random.Random(seed))
    assert verify_strong(inst, sch).ok
    assert verify_weak(inst, sch).ok


@PROPERTY_SETTINGS
@given(st.integers(0, 10 ** 9))
def test_reverse_swaps_instances(seed):
    inst, sch = _random_strong_schedule(random.Random(seed))
    assert verify_strong(inst.swapped(), reverse(inst, sch)).ok
