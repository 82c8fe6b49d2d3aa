"""Toroidal-grid 3+1 recoloring and its parity obstruction.

Feasibility on an h x w torus with three colors plus one spare is
characterized by the dimensions: always possible when both are even
(bipartite parking) or when either equals four (column-pair algorithm),
and impossible in general otherwise.  The obstruction is a conserved
parity: two special 2x2 tile patterns ("type A") whose count mod 2 no
single legal recoloring move can change without also flipping the count
of a companion family ("type B") that vanishes on 3-colorings.  The
module implements the tile census, an exhaustive machine check of the
single-move conservation law, the positive algorithms, and explicit
coloring pairs witnessing infeasibility for every remaining shape.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import oracle
from .errors import InfeasibleError, PreconditionError, RecolorError
from .graphs import Coloring, ToroidalGrid, build_toroidal_grid, is_proper
from .schedule import (RecoloringInstance, RecolorRun, Schedule,
                       ScheduleBuilder, verify_strong)

__all__ = [
    "TileCensus",
    "ParityCheckReport",
    "tile_type_a",
    "tile_type_b",
    "census",
    "check_ab_parity_lemma",
    "feasibility_3plus1",
    "construct_counterexample",
    "recolor_grid_4xw",
    "recolor_grid_3plus1",
]

# The two type-A tiles and the fourteen type-B tiles, row-major and
# orientation-sensitive: no rotations or reflections are implied.
TYPE_A_TILES = frozenset({
    ((2, 3), (3, 1)),
    ((1, 3), (3, 2)),
})

TYPE_B_TILES = frozenset({
    ((2, 1), (1, 4)),
    ((3, 1), (1, 4)),
    ((2, 1), (3, 4)),
    ((2, 3), (1, 4)),
    ((1, 3), (4, 2)),
    ((3, 2), (1, 4)),
    ((2, 3), (3, 4)),
    ((4, 1), (1, 2)),
    ((4, 1), (1, 3)),
    ((4, 1), (3, 2)),
    ((4, 3), (1, 2)),
    ((2, 3), (4, 1)),
    ((4, 2), (1, 3)),
    ((4, 3), (3, 2)),
})

# Every component left after parking the independent set in the 4xw
# algorithm is a vertical 4-cycle with at most one pendant leaf per
# node, or a single node; the exact solver caps there (3^8 states).
_MAX_LEFTOVER = 8

# Round charge for the column-pair selection: a sweep over the finitely
# many column patterns (lexicographic tie-break), the per-pair local
# choice, and the bounded outward extension.
_COLUMN_ROUNDS = 3 ** 4 + 2 + 8 + 3


def _tile_tuple(tile: Sequence[Sequence[int]]) -> tuple[tuple[int, int],
                                                         tuple[int, int]]:
    if len(tile) != 2 or any(len(row) != 2 for row in tile):
        raise PreconditionError("a tile is a 2x2 color matrix")
    out = tuple(tuple(int(c) for c in row) for row in tile)
    if any(not 1 <= c <= 4 for row in out for c in row):
        raise PreconditionError("tile entries must be colors in [1, 4]")
    return out


def tile_type_a(tile: Sequence[Sequence[int]]) -> bool:
    """Exact membership in the two type-A patterns."""
    return _tile_tuple(tile) in TYPE_A_TILES


def tile_type_b(tile: Sequence[Sequence[int]]) -> bool:
    """Exact membership in the fourteen type-B patterns."""
    return _tile_tuple(tile) in TYPE_B_TILES


@dataclass(frozen=True)
class TileCensus:
    """Counts of the special 2x2 tiles over all h*w wrap-around
    positions, with their parities."""

    a_count: int
    b_count: int
    a_parity: int
    b_parity: int


def census(grid: ToroidalGrid, x: Coloring) -> TileCensus:
    """Count type-A and type-B tiles of a proper coloring, anchored at
    every cell with wrap-around."""
    if x.palette_size > 4:
        raise PreconditionError("tile census is defined for up to 4 colors")
    if not is_proper(grid, x):
        raise PreconditionError("coloring is not proper on the grid")
    rows = grid.rows_from_coloring(x)
    h, w = grid.h, grid.w
    a = b = 0
    for r in range(h):
        r1 = (r + 1) % h
        for c in range(w):
            c1 = (c + 1) % w
            tile = ((rows[r][c], rows[r][c1]), (rows[r1][c], rows[r1][c1]))
            if tile in TYPE_A_TILES:
                a += 1
            elif tile in TYPE_B_TILES:
                b += 1
    return TileCensus(a, b, a % 2, b % 2)


@dataclass(frozen=True)
class ParityCheckReport:
    """Exhaustive single-move check outcome: how many proper patch
    colorings and legal center moves were enumerated, and how many moves
    flipped the type-A parity (each also flipped type-B parity)."""

    palette: int
    colorings: int
    moves: int
    a_changing_moves: int


def _patch_counts(patch: list[list[int]]) -> tuple[int, int]:
    """Type-A/B counts over the four tiles containing a 3x3 patch's
    center (anchored at the four upper-left cells)."""
    a = b = 0
    for r in (0, 1):
        for c in (0, 1):
            tile = ((patch[r][c], patch[r][c + 1]),
                    (patch[r + 1][c], patch[r + 1][c + 1]))
            if tile in TYPE_A_TILES:
                a += 1
            elif tile in TYPE_B_TILES:
                b += 1
    return a, b


def check_ab_parity_lemma(palette: int = 4) -> ParityCheckReport:
    """Verify by exhaustion that recoloring one node of a properly
    colored grid flips the type-A tile parity exactly when it flips the
    type-B tile parity.

    Enumerates every proper coloring of a 3x3 patch (grid edges only:
    the four tiles containing the center are precisely the torus tiles a
    center move can affect) and every legal center recolor, comparing
    tile counts before and after.  A counterexample raises immediately;
    the report carries the enumeration sizes.  With ``palette=3`` the
    center can never take or leave color 4, so no move may flip the
    type-A parity at all (type-B tiles all contain a 4).
    """
    if not 1 <= palette <= 4:
        raise PreconditionError("palette must be between 1 and 4")
    colors = range(1, palette + 1)
    cells = [(r, c) for r in range(3) for c in range(3)]
    patch = [[0] * 3 for _ in range(3)]
    colorings = moves = a_changing = 0

    def center_moves() -> None:
        nonlocal colorings, moves, a_changing
        colorings += 1
        old = patch[1][1]
        blocked = {patch[0][1], patch[1][0], patch[1][2], patch[2][1]}
        a_old, b_old = _patch_counts(patch)
        for nc in colors:
            if nc == old or nc in blocked:
                continue
            patch[1][1] = nc
            a_new, b_new = _patch_counts(patch)
            if (a_new - a_old) % 2 != (b_new - b_old) % 2:
                patch[1][1] = old
                raise RecolorError(
                    f"parity conservation fails for patch {patch} with "
                    f"center {old} -> {nc}")
            moves += 1
            if (a_new - a_old) % 2:
                a_changing += 1
        patch[1][1] = old

    def fill(i: int) -> None:
        if i == len(cells):
            center_moves()
            return
        r, c = cells[i]
        for col in colors:
            if c > 0 and patch[r][c - 1] == col:
                continue
            if r > 0 and patch[r - 1][c] == col:
                continue
            patch[r][c] = col
            fill(i + 1)
        patch[r][c] = 0

    fill(0)
    return ParityCheckReport(palette, colorings, moves, a_changing)


def feasibility_3plus1(h: int, w: int) -> bool:
    """Is 3+1 recoloring possible on the h x w torus for every source
    and target?  True exactly when both sides are even or either is 4."""
    if h < 3 or w < 3:
        raise PreconditionError("torus needs h >= 3 and w >= 3")
    return (h % 2 == 0 and w % 2 == 0) or h == 4 or w == 4


# ---------------------------------------------------------------------------
# Impossibility witnesses.
# ---------------------------------------------------------------------------

def _rot_left(row: list[int]) -> list[int]:
    return row[1:] + row[:1]


def _odd_odd_rows(h: int, w: int) -> tuple[list[list[int]], list[list[int]]]:
    """Witness pair for odd h <= odd w: an anti-diagonal of 3s on a 1/2
    checkerboard (h type-A tiles) against the diagonal version (none),
    padded by repeating the two rightmost columns."""
    pad = (w - h) // 2
    s_base = [1 if i % 2 == 0 else 2 for i in range(h - 1)] + [3]
    t_base = [3] + [2 if i % 2 == 0 else 1 for i in range(1, h)]
    s_rows = [[s_base[(c + r) % h] for c in range(h)] for r in range(h)]
    t_rows = [[t_base[(c - r) % h] for c in range(h)] for r in range(h)]
    s_rows = [row + row[-2:] * pad for row in s_rows]
    t_rows = [row + row[-2:] * pad for row in t_rows]
    return s_rows, t_rows


def _odd_even_rows(h: int, w: int) -> tuple[list[list[int]], list[list[int]]]:
    """Witness pair for odd h, even w >= 6: diagonal stripes whose 3s
    wrap around vertically twice (even type-A count) against horizontal
    stripes wrapping zero times (odd count); the two leftmost columns
    are duplicated to widen, and copies of the top row, alternated with
    its left rotation, to heighten."""
    col_pad = (w - 6) // 2
    row_pad = (h - 3) // 2
    s_rows = [[1, 2, 3, 1, 2, 3], [2, 3, 1, 2, 3, 1], [3, 1, 2, 3, 1, 2]]
    t_rows = [[1, 2, 1, 2, 1, 2], [3, 1, 3, 1, 3, 1], [2, 3, 2, 3, 2, 3]]
    s_rows = [row[:2] * col_pad + row for row in s_rows]
    t_rows = [row[:2] * col_pad + row for row in t_rows]
    s_rows = [s_rows[0], _rot_left(s_rows[0])] * row_pad + s_rows
    t_rows = [t_rows[0], _rot_left(t_rows[0])] * row_pad + t_rows
    return s_rows, t_rows


def construct_counterexample(h: int, w: int) -> tuple[Coloring, Coloring]:
    """Proper 3-colorings of the h x w torus with different type-A
    parities — hence no 3+1 recoloring connects them.

    Only defined for the infeasible shapes (both odd, or one odd with
    the even side at least 6); feasible dimensions are rejected.
    """
    if feasibility_3plus1(h, w):
        raise PreconditionError(
            f"a {h}x{w} torus is always 3+1 recolorable")
    if h % 2 == 1 and w % 2 == 1:
        if h <= w:
            s_rows, t_rows = _odd_odd_rows(h, w)
        else:
            s_rows, t_rows = _odd_odd_rows(w, h)
            s_rows = [list(col) for col in zip(*s_rows)]
            t_rows = [list(col) for col in zip(*t_rows)]
    else:
        if h % 2 == 1:
            s_rows, t_rows = _odd_even_rows(h, w)
        else:
            s_rows, t_rows = _odd_even_rows(w, h)
            s_rows = [list(col) for col in zip(*s_rows)]
            t_rows = [list(col) for col in zip(*t_rows)]
    grid = build_toroidal_grid(h, w)
    s = grid.coloring_from_rows(s_rows, 3)
    t = grid.coloring_from_rows(t_rows, 3)
    if not (is_proper(grid, s) and is_proper(grid, t)):
        raise RecolorError("witness construction produced improper colorings")
    if census(grid, s).a_parity == census(grid, t).a_parity:
        raise RecolorError("witness construction produced equal parities")
    return s, t


# ---------------------------------------------------------------------------
# Positive algorithms.
# ---------------------------------------------------------------------------

def _require_torus(inst: RecoloringInstance) -> ToroidalGrid:
    if not isinstance(inst.g, ToroidalGrid):
        raise PreconditionError("expected an instance on a toroidal grid")
    return inst.g


def _transpose_instance(inst: RecoloringInstance,
                        grid: ToroidalGrid) -> RecoloringInstance:
    flipped = grid.transposed()
    perm = [0] * grid.n
    for r in range(grid.h):
        for c in range(grid.w):
            perm[flipped.node(c, r)] = grid.node(r, c)
    s = Coloring(tuple(inst.s[perm[v]] for v in range(grid.n)), inst.k)
    t = Coloring(tuple(inst.t[perm[v]] for v in range(grid.n)), inst.k)
    return RecoloringInstance(flipped, s, t, inst.k, inst.c)


def _transpose_schedule_back(sch: Schedule, grid: ToroidalGrid) -> Schedule:
    flipped = grid.transposed()
    rows = [sch.per_node[flipped.node(c, r)]
            for r in range(grid.h) for c in range(grid.w)]
    return Schedule.of(rows)


def _column_pairs(w: int) -> list[int]:
    """Starts of the chosen consecutive-column pairs: a maximal set of
    disjoint, cyclically non-adjacent pairs (i, i+1) on the column
    ring, picked left to right."""
    return list(range(0, w - 2, 3))


def recolor_grid_4xw(inst: RecoloringInstance) -> RecolorRun:
    """3+1 recoloring on a torus with one side equal to 4, in constant
    schedule length.

    Pairs of consecutive columns are chosen maximally far apart; each
    chosen pair contributes a maximal independent set of its eight
    nodes, and the union is greedily extended column by column outward.
    Parking that set on the spare color cuts the rest into single nodes
    and vertical 4-cycles carrying pendant leaves (never more than
    eight nodes), each of which the exact solver walks to its target
    within the base palette; the parked set then lands on its targets.
    """
    grid = _require_torus(inst)
    if inst.k != 3 or inst.c < 1:
        raise PreconditionError("the column algorithm needs k = 3, c >= 1")
    if grid.h != 4:
        if grid.w != 4:
            raise PreconditionError("one dimension must equal 4")
        flipped = _transpose_instance(inst, grid)
        run = recolor_grid_4xw(flipped)
        sch = _transpose_schedule_back(run.schedule, grid)
        report = verify_strong(inst, sch)
        if not report.ok:
            raise RecolorError(f"transposed schedule invalid: "
                               f"{report.violation}")
        return RecolorRun(sch, run.rounds)

    h, w = grid.h, grid.w
    starts = _column_pairs(w)
    selected = {j for i in starts for j in (i, (i + 1) % w)}

    park: set[int] = set()
    for i in starts:
        for j in (i, i + 1):
            for r in range(h):
                v = grid.node(r, j)
                if not any(u in park for u in grid.adjacency[v]):
                    park.add(v)
    rest_cols = sorted(
        (j for j in range(w) if j not in selected),
        key=lambda j: (min(min((j - i) % w, (i - j) % w) for i in selected),
                       j))
    for j in rest_cols:
        for r in range(h):
            v = grid.node(r, j)
            if not any(u in park for u in grid.adjacency[v]):
                park.add(v)

    builder = ScheduleBuilder(inst.s.colors)
    builder.apply({v: inst.k + 1 for v in park})
    rest = sorted(set(range(grid.n)) - park)
    sub, _ = grid.induced(rest)
    parts = []
    for comp in sub.connected_components():
        nodes = [rest[i] for i in comp]
        if len(nodes) > _MAX_LEFTOVER:
            raise RecolorError(
                f"unexpected {len(nodes)}-node piece after parking")
        comp_g, _ = sub.induced(comp)
        s_c = Coloring(tuple(inst.s[v] for v in nodes), 3)
        t_c = Coloring(tuple(inst.t[v] for v in nodes), 3)
        moves = oracle.shortest(RecoloringInstance(comp_g, s_c, t_c, 3, 0))
        if moves is None:
            raise RecolorError("a leftover piece cannot reach its target "
                               "within three colors")
        parts.append((oracle.schedule_from_moves(s_c, moves), nodes))
    from .basic import _merge_parallel
    _merge_parallel(builder, parts)
    builder.apply({v: inst.t[v] for v in park})
    sch = builder.build()
    report = verify_strong(inst, sch)
    if not report.ok:
        raise RecolorError(f"column schedule invalid: {report.violation}")
    return RecolorRun(sch, _COLUMN_ROUNDS + sch.length)


def recolor_grid_3plus1(inst: RecoloringInstance) -> RecolorRun:
    """3+1 recoloring on any feasible torus: even-by-even shapes park a
    checkerboard side (length 3), shapes with a side of 4 use the
    column-pair algorithm, and everything else is provably impossible
    in general and rejected."""
    grid = _require_torus(inst)
    if inst.k != 3 or inst.c < 1:
        raise PreconditionError("needs k = 3 with c >= 1")
    if not feasibility_3plus1(grid.h, grid.w):
        raise InfeasibleError(
            f"3+1 recoloring on a {grid.h}x{grid.w} torus is not always "
            f"possible")
    if grid.h % 2 == 0 and grid.w % 2 == 0:
        from .basic import recolor_bipartite
        part1 = [grid.node(r, c) for r in range(grid.h)
                 for c in range(grid.w) if (r + c) % 2 == 0]
        run = recolor_bipartite(inst, part1)
        report = verify_strong(inst, run.schedule)
        if not report.ok:
            raise RecolorError(f"checkerboard schedule invalid: "
                               f"{report.violation}")
        return run
    return recolor_grid_4xw(inst)
