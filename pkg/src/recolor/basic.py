"""Warm-up recoloring algorithms and the frozen lower-bound fixtures.

All entry points return a RecolorRun: the strong-feasible schedule plus
the number of simulated communication rounds charged for building it.
Round accounting: a maximal-independent-set sweep over p color classes
costs p rounds (measured through the simulator), learning the colors of
a radius-r neighborhood costs r rounds, and decisions from (s(v), t(v))
alone are free.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import oracle
from .errors import InfeasibleError, PreconditionError
from .graphs import (Coloring, Graph, build_complete,
                     build_complete_bipartite, build_cycle, build_path,
                     build_prism, build_toroidal_grid,
                     greedy_mis_from_coloring, is_proper)
from .localsim import ColorClassMISProgram, run as sim_run
from .schedule import (RecolorRun, RecoloringInstance, Schedule,
                       ScheduleBuilder)

__all__ = [
    "FrozenFixture",
    "fixtures_needsextra",
    "fixture_3pathslb",
    "fixture_4treelb",
    "recolor_trivial",
    "recolor_bipartite",
    "recolor_path_cycle_3plus1",
    "eliminate_top_color",
    "recolor_subcubic_4plus1",
    "recolor_grid_4plus2",
    "recolor_grid_5plus1",
    "PATH_CYCLE_LENGTH_BOUND",
    "SUBCUBIC_4PLUS1_LENGTH_BOUND",
    "GRID_4PLUS2_LENGTH_BOUND",
    "GRID_5PLUS1_LENGTH_BOUND",
]

# measured schedule-length ceilings (n-independent); tests pin these
PATH_CYCLE_LENGTH_BOUND = 5
SUBCUBIC_4PLUS1_LENGTH_BOUND = 9
GRID_4PLUS2_LENGTH_BOUND = 11
GRID_5PLUS1_LENGTH_BOUND = 13

# extra rounds charged for radius-2 component discovery after a sweep
_GATHER_ROUNDS = 2


def _mis_with_rounds(g: Graph, x: Coloring) -> tuple[set[int], int]:
    """Maximal independent set via the color-class sweep, executed through
    the simulator so the round count is measured, not assumed."""
    if g.n == 0:
        return set(), 0
    stats = sim_run(g, ColorClassMISProgram(x.palette_size),
                    inputs=x.as_list())
    mis = {v for v in range(g.n) if stats.outputs[v]}
    assert mis == greedy_mis_from_coloring(g, x)
    return mis, stats.rounds


def _merge_parallel(builder: ScheduleBuilder,
                    parts: Sequence[tuple[Schedule, Sequence[int]]]) -> None:
    """Interleave local schedules over pairwise non-adjacent node sets,
    one step of every part per global step."""
    depth = max((sch.length for sch, _ in parts), default=0)
    for i in range(1, depth + 1):
        changes: dict[int, int] = {}
        for sch, to_global in parts:
            for v in sch.change_set(i):
                changes[to_global[v]] = sch.color_at(v, i)
        if changes:
            builder.apply(changes)


# ---------------------------------------------------------------------------
# trivial and bipartite
# ---------------------------------------------------------------------------

def recolor_trivial(inst: RecoloringInstance) -> RecolorRun:
    """Zero-round recoloring with c >= k-1 extra colors.

    Phase j < k parks input class j at auxiliary color k+j; phase k sends
    class k straight to its targets (all its neighbors are parked above
    k by then); phase k+j unparks the nodes with target color j.  Every
    phase's movers share an input or target color, hence independent.
    """
    k = inst.k
    if inst.c < k - 1:
        raise PreconditionError(f"need c >= k-1 = {k - 1}, got {inst.c}")
    b = ScheduleBuilder(inst.s.colors)
    for j in range(1, k):
        b.apply({v: k + j for v in range(inst.g.n) if inst.s[v] == j})
    b.apply({v: inst.t[v] for v in range(inst.g.n) if inst.s[v] == k})
    for j in range(1, k + 1):
        b.apply({v: j for v in range(inst.g.n)
                 if inst.t[v] == j and inst.s[v] != k})
    return RecolorRun(b.build(), 0)


def recolor_bipartite(inst: RecoloringInstance,
                      part1: Iterable[int]) -> RecolorRun:
    """Length-3 schedule given one side of a bipartition: part 1 parks at
    k+1, part 2 jumps to target, part 1 follows."""
    if inst.c < 1:
        raise PreconditionError("need at least one extra color")
    v1 = set(part1)
    for u, v in inst.g.edges():
        if (u in v1) == (v in v1):
            raise PreconditionError(f"edge ({u},{v}) does not cross the "
                                    f"given bipartition")
    aux = inst.k + 1
    rows = []
    for v in range(inst.g.n):
        if v in v1:
            rows.append((inst.s[v], aux, aux, inst.t[v]))
        else:
            rows.append((inst.s[v], inst.s[v], inst.t[v], inst.t[v]))
    return RecolorRun(Schedule.of(rows), 0)


# ---------------------------------------------------------------------------
# paths and cycles with 3+1 colors
# ---------------------------------------------------------------------------

def recolor_path_cycle_3plus1(inst: RecoloringInstance) -> RecolorRun:
    """3+1 recoloring on disjoint unions of paths and cycles.

    An MIS from the input coloring parks at color 4; what remains are
    components of at most 2 nodes, each solved exactly by the search
    oracle within {1,2,3}; the MIS then lands on its targets.  Length is
    at most PATH_CYCLE_LENGTH_BOUND regardless of n.
    """
    g = inst.g
    if inst.k != 3 or inst.c < 1:
        raise PreconditionError("need k = 3 with c >= 1")
    if g.max_degree() > 2:
        raise PreconditionError("graph must be a union of paths and cycles")
    if g.n == 1:
        b = ScheduleBuilder(inst.s.colors)
        if inst.s[0] != inst.t[0]:
            b.apply({0: inst.t[0]})
        return RecolorRun(b.build(), 0)

    mis, rounds = _mis_with_rounds(g, inst.s.with_palette(3))
    b = ScheduleBuilder(inst.s.colors)
    b.apply({v: 4 for v in mis})

    rest = sorted(set(range(g.n)) - mis)
    sub, _ = g.induced(rest)
    parts = []
    for comp in sub.connected_components():
        nodes = [rest[v] for v in comp]
        if len(nodes) > 8:
            raise InfeasibleError("unexpectedly large component next to "
                                  "a maximal independent set")
        comp_g, _ = sub.induced(comp)
        s_c = Coloring(tuple(inst.s[v] for v in nodes), 3)
        t_c = Coloring(tuple(inst.t[v] for v in nodes), 3)
        moves = oracle.shortest(RecoloringInstance(comp_g, s_c, t_c, 3, 0))
        assert moves is not None
        parts.append((oracle.schedule_from_moves(s_c, moves), nodes))
    _merge_parallel(b, parts)

    b.apply({v: inst.t[v] for v in mis})
    return RecolorRun(b.build(), rounds + _GATHER_ROUNDS)


def eliminate_top_color(g: Graph, x: Coloring,
                        max_degree: int | None = None
                        ) -> tuple[Coloring, Schedule]:
    """Drop the top color k of a proper coloring when k >= max degree + 2.

    Color-k nodes form an independent set; each takes the smallest color
    below k unused in its neighborhood.  Returns the (k-1)-coloring and
    the one-step schedule fragment x -> x'; reversing the fragment gives
    the inverse step.
    """
    k = x.palette_size
    delta = g.max_degree() if max_degree is None else max_degree
    if k < delta + 2:
        raise PreconditionError(f"need palette >= max degree + 2 "
                                f"(palette {k}, max degree {delta})")
    if not is_proper(g, x):
        raise PreconditionError("coloring must be proper")
    colors = list(x.colors)
    changes = {}
    for v in range(g.n):
        if colors[v] == k:
            taken = {colors[u] for u in g.adjacency[v]}
            changes[v] = min(col for col in range(1, k) if col not in taken)
    b = ScheduleBuilder(x.colors)
    if changes:
        b.apply(changes)
        for v, col in changes.items():
            colors[v] = col
    return Coloring(tuple(colors), k - 1), b.build()


# ---------------------------------------------------------------------------
# subcubic graphs with 4+1 colors, grids with 4+2 / 5+1
# ---------------------------------------------------------------------------

def _four_plus_one_core(g: Graph, s: Coloring, t: Coloring,
                        b: ScheduleBuilder, offset: Sequence[int]) -> int:
    """4+1 recoloring of a subcubic graph spliced into a host builder via
    the offset map; returns the rounds charged."""
    mis, rounds = _mis_with_rounds(g, s.with_palette(4))
    b.apply({offset[v]: 5 for v in mis})

    rest = sorted(set(range(g.n)) - mis)
    sub, _ = g.induced(rest)
    if rest:
        s_r = Coloring(tuple(s[v] for v in rest), 4)
        t_r = Coloring(tuple(t[v] for v in rest), 4)
        s3, frag_s = eliminate_top_color(sub, s_r)
        t3, frag_t = eliminate_top_color(sub, t_r)
        inner = recolor_path_cycle_3plus1(
            RecoloringInstance(sub, s3.with_palette(3), t3.with_palette(3),
                               3, 1))
        rounds += 1 + inner.rounds
        glob = [offset[rest[v]] for v in range(sub.n)]
        for frag in (frag_s, inner.schedule):
            for i in range(1, frag.length + 1):
                b.apply({glob[v]: frag.color_at(v, i)
                         for v in frag.change_set(i)})
        for i in range(frag_t.length, 0, -1):
            b.apply({glob[v]: frag_t.color_at(v, i - 1)
                     for v in frag_t.change_set(i)})

    b.apply({offset[v]: t[v] for v in mis})
    return rounds


def recolor_subcubic_4plus1(inst: RecoloringInstance) -> RecolorRun:
    """4+1 recoloring on graphs of maximum degree 3: park an MIS at color
    5, solve the leftover paths/cycles with 4+0 colors by eliminating
    color 4 and running the 3+1 path routine, then land the MIS."""
    if inst.g.max_degree() > 3:
        raise PreconditionError("graph must have maximum degree at most 3")
    if inst.k != 4 or inst.c < 1:
        raise PreconditionError("need k = 4 with c >= 1")
    b = ScheduleBuilder(inst.s.colors)
    rounds = _four_plus_one_core(inst.g, inst.s, inst.t, b,
                                 list(range(inst.g.n)))
    return RecolorRun(b.build(), rounds)


def _grid_mis_park(inst: RecoloringInstance, park_color: int
                   ) -> tuple[ScheduleBuilder, set[int], list[int], Graph, int]:
    mis, rounds = _mis_with_rounds(inst.g, inst.s.with_palette(inst.k))
    b = ScheduleBuilder(inst.s.colors)
    b.apply({v: park_color for v in mis})
    rest = sorted(set(range(inst.g.n)) - mis)
    sub, _ = inst.g.induced(rest)
    return b, mis, rest, sub, rounds


def recolor_grid_4plus2(inst: RecoloringInstance) -> RecolorRun:
    """4+2 recoloring on toroidal grids (any graph of max degree 4): park
    an MIS at color 6; the remainder is subcubic, solve it with 4+1."""
    if inst.g.max_degree() > 4:
        raise PreconditionError("graph must have maximum degree at most 4")
    if inst.k != 4 or inst.c < 2:
        raise PreconditionError("need k = 4 with c >= 2")
    b, mis, rest, sub, rounds = _grid_mis_park(inst, 6)
    if rest:
        s_r = Coloring(tuple(inst.s[v] for v in rest), 4)
        t_r = Coloring(tuple(inst.t[v] for v in rest), 4)
        rounds += _four_plus_one_core(sub, s_r, t_r, b, rest)
    b.apply({v: inst.t[v] for v in mis})
    return RecolorRun(b.build(), rounds)


def recolor_grid_5plus1(inst: RecoloringInstance) -> RecolorRun:
    """5+1 recoloring on toroidal grids (any graph of max degree 4): park
    an MIS at color 6, eliminate color 5 on the subcubic remainder, and
    finish with the 4+1 subcubic routine."""
    if inst.g.max_degree() > 4:
        raise PreconditionError("graph must have maximum degree at most 4")
    if inst.k != 5 or inst.c < 1:
        raise PreconditionError("need k = 5 with c >= 1")
    b, mis, rest, sub, rounds = _grid_mis_park(inst, 6)
    if rest:
        s_r = Coloring(tuple(inst.s[v] for v in rest), 5)
        t_r = Coloring(tuple(inst.t[v] for v in rest), 5)
        s4, frag_s = eliminate_top_color(sub, s_r)
        t4, frag_t = eliminate_top_color(sub, t_r)
        rounds += 1
        for i in range(1, frag_s.length + 1):
            b.apply({rest[v]: frag_s.color_at(v, i)
                     for v in frag_s.change_set(i)})
        rounds += _four_plus_one_core(sub, s4.with_palette(4),
                                      t4.with_palette(4), b, rest)
        for i in range(frag_t.length, 0, -1):
            b.apply({rest[v]: frag_t.color_at(v, i - 1)
                     for v in frag_t.change_set(i)})
    b.apply({v: inst.t[v] for v in mis})
    return RecolorRun(b.build(), rounds)


# ---------------------------------------------------------------------------
# fixtures: frozen colorings and lower-bound witnesses
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FrozenFixture:
    """A graph and proper k-coloring from which no single node can move,
    paired with the shifted target t(v) = (s(v) mod k) + 1."""

    name: str
    g: Graph
    s: Coloring
    t: Coloring
    k: int

    def instance(self, c: int = 0) -> RecoloringInstance:
        return RecoloringInstance(self.g, self.s.with_palette(self.k + c),
                                  self.t.with_palette(self.k + c),
                                  self.k, c)


def _shifted(s: Sequence[int], k: int) -> tuple[int, ...]:
    return tuple(col % k + 1 for col in s)


def _fixture(name: str, g: Graph, s: Sequence[int], k: int) -> FrozenFixture:
    return FrozenFixture(name, g, Coloring(tuple(s), k),
                         Coloring(_shifted(s, k), k), k)


def _grid_fixture(name: str, rows: Sequence[Sequence[int]],
                  k: int) -> FrozenFixture:
    grid = build_toroidal_grid(len(rows), len(rows[0]))
    flat = [col for row in rows for col in row]
    return _fixture(name, grid, flat, k)


def fixtures_needsextra() -> tuple[FrozenFixture, ...]:
    """The ten frozen instances (one per family/palette combination).

    Fixture (c) is nominally a 4-cycle with a 3-entry coloring, which is
    inconsistent; it is realized here as a 3-cycle colored 1,2,3, the
    smallest cycle frozen with 3 colors.
    """
    return (
        _fixture("a", build_path(2), [1, 2], 2),
        _fixture("b", build_cycle(4), [1, 2, 1, 2], 2),
        _fixture("c", build_cycle(3), [1, 2, 3], 3),
        _grid_fixture("d", [[1, 2, 1, 2], [2, 1, 2, 1],
                            [1, 2, 1, 2], [2, 1, 2, 1]], 2),
        _grid_fixture("e", [[1, 2, 3], [2, 3, 1], [3, 1, 2]], 3),
        _grid_fixture("f", [[1, 2, 3, 4], [3, 4, 1, 2],
                            [1, 2, 3, 4], [3, 4, 1, 2]], 4),
        _grid_fixture("g", [[1, 2, 3, 4, 5], [3, 4, 5, 1, 2],
                            [5, 1, 2, 3, 4], [2, 3, 4, 5, 1],
                            [4, 5, 1, 2, 3]], 5),
        _fixture("h", build_complete_bipartite(3, 3), [1, 1, 1, 2, 2, 2], 2),
        _fixture("i", build_prism(), [1, 2, 3, 2, 3, 1], 3),
        _fixture("j", build_complete(4), [1, 2, 3, 4], 4),
    )


def fixture_3pathslb(n: int) -> RecoloringInstance:
    """Path colored 1,2,3,1,2,3,...: with 3+0 colors every interior node
    must wait for a neighbor, forcing schedules of length Omega(n)."""
    if n < 3 or n % 3:
        raise PreconditionError("need n a positive multiple of 3")
    s = tuple((v % 3) + 1 for v in range(n))
    return RecoloringInstance(build_path(n), Coloring(s, 3),
                              Coloring(_shifted(s, 3), 3), 3, 0)


def fixture_4treelb(depth: int) -> RecoloringInstance:
    """Tree where every internal node sees all three other colors, so
    4+0 recoloring must cascade from the leaves: depth Omega(log n)."""
    if depth < 1:
        raise PreconditionError("need depth >= 1")
    colors = [1]
    edges = []
    frontier = [(0, 1, None)]
    for level in range(depth):
        nxt = []
        for v, col, parent_col in frontier:
            if parent_col is None:
                child_cols = [2, 3, 4]
            else:
                child_cols = sorted({1, 2, 3, 4} - {col, parent_col})
            for ccol in child_cols:
                u = len(colors)
                colors.append(ccol)
                edges.append((v, u))
                nxt.append((u, ccol, col))
        frontier = nxt
    g = Graph.from_edges(len(colors), edges)
    s = Coloring(tuple(colors), 4)
    return RecoloringInstance(g, s, Coloring(_shifted(colors, 4), 4), 4, 0)
