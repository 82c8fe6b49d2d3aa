"""Exact ground truth by search over the configuration graph.

States are all proper colorings with colors in [k+c]; moves recolor one
node.  The move relation is symmetric, so reachability is too.  Spaces
whose nominal size fits in 26 bits (configurable) use a flat-bitmap BFS,
with a compiled kernel when available; larger spaces fall back to a
hash-set BFS that refuses to explore past a cap rather than thrash.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass

from . import _kernels
from .errors import PreconditionError, StateSpaceError, VerificationError
from .graphs import Coloring, Graph, is_proper
from .schedule import (RecoloringInstance, Schedule, ScheduleBuilder,
                       verify_strong)

__all__ = [
    "ConfigSpace",
    "SearchResult",
    "search",
    "reachable",
    "shortest",
    "is_frozen",
    "legal_moves",
    "schedule_from_moves",
    "moves_from_schedule",
    "DEFAULT_MAX_DENSE_BITS",
    "DEFAULT_SPARSE_CAP",
]

DEFAULT_MAX_DENSE_BITS = 26
DEFAULT_SPARSE_CAP = 2_000_000


class ConfigSpace:
    """The state space of one instance, with mixed-radix encoding."""

    def __init__(self, g: Graph, k: int, c: int = 0,
                 max_dense_bits: int = DEFAULT_MAX_DENSE_BITS):
        if k < 1 or c < 0:
            raise PreconditionError("need k >= 1 and c >= 0")
        self.g = g
        self.k = k
        self.c = c
        self.palette = k + c
        self.nominal = self.palette ** g.n
        self.dense = self.nominal <= (1 << max_dense_bits)
        indptr = [0]
        indices: list[int] = []
        for v in range(g.n):
            indices.extend(g.adjacency[v])
            indptr.append(len(indices))
        self.indptr = array("l", indptr)
        self.indices = array("l", indices) if indices else array("l")

    def encode(self, colors) -> int:
        code = 0
        for col in reversed(list(colors)):
            code = code * self.palette + (col - 1)
        return code

    def decode(self, code: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.g.n):
            out.append(code % self.palette + 1)
            code //= self.palette
        return tuple(out)

    def legal_moves(self, colors):
        """Yield (node, new_color) pairs legal from the given coloring."""
        for v in range(self.g.n):
            taken = {colors[u] for u in self.g.adjacency[v]}
            for col in range(1, self.palette + 1):
                if col != colors[v] and col not in taken:
                    yield v, col


@dataclass(frozen=True)
class SearchResult:
    found: bool
    explored: int
    dist: int
    moves: tuple[tuple[int, int], ...] | None = None


def _digits(x: Coloring) -> list[int]:
    return [col - 1 for col in x.colors]


def search(inst: RecoloringInstance, *, want_moves: bool = False,
           max_dense_bits: int = DEFAULT_MAX_DENSE_BITS,
           sparse_cap: int = DEFAULT_SPARSE_CAP) -> SearchResult:
    space = ConfigSpace(inst.g, inst.k, inst.c, max_dense_bits)
    if inst.s.colors == inst.t.colors:
        return SearchResult(True, 1, 0, () if want_moves else None)
    if want_moves:
        return _search_with_parents(space, inst, sparse_cap)
    args = (space.indptr, space.indices, space.palette,
            _digits(inst.s), _digits(inst.t))
    if space.dense:
        status, explored, dist = _kernels.bfs_reach_dense(*args)
    else:
        status, explored, dist = _kernels.bfs_reach_sparse(*args, sparse_cap)
        if status == _kernels.STATUS_CAP:
            raise StateSpaceError(
                f"explored {explored} states without exhausting the space "
                f"(cap {sparse_cap}); raise sparse_cap to continue")
    return SearchResult(status == _kernels.STATUS_FOUND, explored, dist)


def _search_with_parents(space: ConfigSpace, inst: RecoloringInstance,
                         cap: int) -> SearchResult:
    palette = space.palette
    weights = [palette ** v for v in range(inst.g.n)]
    start = space.encode(inst.s.colors)
    target = space.encode(inst.t.colors)
    parents: dict[int, tuple[int, int]] = {start: (-1, -1)}
    frontier = [start]
    dist = 0

    def rebuild(code: int) -> SearchResult:
        moves = []
        while code != start:
            v, old = parents[code]
            cur = code // weights[v] % palette
            moves.append((v, cur + 1))
            code += (old - cur) * weights[v]
        moves.reverse()
        return SearchResult(True, len(parents), len(moves), tuple(moves))

    while frontier:
        dist += 1
        nxt = []
        for code in frontier:
            digits = [code // weights[v] % palette for v in range(inst.g.n)]
            for v in range(inst.g.n):
                old = digits[v]
                base = code - old * weights[v]
                nbr = {digits[u] for u in space.g.adjacency[v]}
                for nd in range(palette):
                    if nd == old or nd in nbr:
                        continue
                    new_code = base + nd * weights[v]
                    if new_code in parents:
                        continue
                    parents[new_code] = (v, old)
                    if new_code == target:
                        return rebuild(new_code)
                    if len(parents) > cap:
                        raise StateSpaceError(
                            f"explored {len(parents)} states without "
                            f"exhausting the space (cap {cap})")
                    nxt.append(new_code)
        frontier = nxt
    return SearchResult(False, len(parents), -1)


def reachable(inst: RecoloringInstance, **kwargs) -> bool:
    return search(inst, **kwargs).found


def shortest(inst: RecoloringInstance,
             **kwargs) -> tuple[tuple[int, int], ...] | None:
    result = search(inst, want_moves=True, **kwargs)
    return result.moves if result.found else None


def is_frozen(g: Graph, s: Coloring, k: int, c: int = 0) -> bool:
    """True iff no single node can legally change color within [k+c]."""
    if not is_proper(g, s):
        raise PreconditionError("coloring must be proper")
    space = ConfigSpace(g, k, c)
    return next(space.legal_moves(s.colors), None) is None


def schedule_from_moves(start, moves) -> Schedule:
    """Pack single-node moves into a schedule with one change per step."""
    start_colors = start.colors if isinstance(start, Coloring) else tuple(start)
    builder = ScheduleBuilder(start_colors)
    builder.apply_serial(moves)
    return builder.build()


def moves_from_schedule(inst: RecoloringInstance,
                        sch: Schedule) -> list[tuple[int, int]]:
    """Expand a strong-feasible schedule into single moves, ascending node
    index within each step (any order works since change sets are
    independent)."""
    report = verify_strong(inst, sch)
    if not report.ok:
        raise VerificationError(f"schedule not strong-feasible: "
                                f"{report.violation}")
    moves = []
    for i in range(1, sch.length + 1):
        for v in sch.change_set(i):
            moves.append((v, sch.color_at(v, i)))
    return moves
