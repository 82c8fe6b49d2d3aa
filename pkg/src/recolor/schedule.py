"""Recoloring schedules and their verifiers.

A schedule assigns every node a color sequence ``x_0(v), ..., x_l(v)``;
sequences may have different lengths and are padded with their last
entry, so the schedule length L is the longest individual length.

Strong feasibility (the default notion):
  1. ``x_0 = s`` and ``x_L = t``,
  2. every intermediate coloring ``x_i`` is proper,
  3. every change set ``C_i = {v : x_{i-1}(v) != x_i(v)}`` is independent.

Weak feasibility replaces (3) by a per-edge condition: whenever two
adjacent nodes change in the same step, the pair of colors each touches
must be disjoint from the pair the other touches.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import PreconditionError, VerificationError
from .graphs import Coloring, Graph, is_proper

__all__ = [
    "Schedule",
    "RecoloringInstance",
    "Violation",
    "VerifyReport",
    "RecolorRun",
    "ScheduleBuilder",
    "verify_strong",
    "verify_weak",
    "weak_to_strong",
    "concat",
    "reverse",
    "parse_schedule",
    "format_schedule",
    "load_schedule",
    "save_schedule",
]

KIND_ENDPOINT_S = "endpoint-s"
KIND_PALETTE = "palette"
KIND_IMPROPER = "improper"
KIND_ADJACENT_CHANGE = "adjacent-change"
KIND_ENDPOINT_T = "endpoint-t"

# tie-break between kinds sharing the same witness within a step
_KIND_ORDER = (KIND_ENDPOINT_S, KIND_PALETTE, KIND_IMPROPER,
               KIND_ADJACENT_CHANGE, KIND_ENDPOINT_T)


@dataclass(frozen=True)
class Schedule:
    """Per-node color sequences; entry i of node v is ``x_i(v)`` with
    padding ``x_i(v) = x_l(v)`` for i beyond the stored length."""

    per_node: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if any(len(seq) == 0 for seq in self.per_node):
            raise PreconditionError("every node needs at least one entry")

    @classmethod
    def of(cls, seqs: Sequence[Sequence[int]]) -> "Schedule":
        return cls(tuple(tuple(seq) for seq in seqs))

    @property
    def n(self) -> int:
        return len(self.per_node)

    @property
    def length(self) -> int:
        """Number of steps L (one less than the longest sequence)."""
        return max((len(seq) for seq in self.per_node), default=1) - 1

    def color_at(self, v: int, i: int) -> int:
        seq = self.per_node[v]
        return seq[i] if i < len(seq) else seq[-1]

    def coloring_at(self, i: int, palette_size: int) -> Coloring:
        return Coloring(tuple(self.color_at(v, i) for v in range(self.n)),
                        palette_size)

    def initial(self) -> tuple[int, ...]:
        return tuple(seq[0] for seq in self.per_node)

    def final(self) -> tuple[int, ...]:
        return tuple(seq[-1] for seq in self.per_node)

    def change_set(self, i: int) -> list[int]:
        return [v for v in range(self.n)
                if self.color_at(v, i - 1) != self.color_at(v, i)]

    def normalized(self) -> "Schedule":
        """Trim trailing repeated entries (padding makes them redundant)."""
        out = []
        for seq in self.per_node:
            j = len(seq)
            while j > 1 and seq[j - 1] == seq[j - 2]:
                j -= 1
            out.append(seq[:j])
        return Schedule.of(out)

    def max_color(self) -> int:
        return max(max(seq) for seq in self.per_node)


@dataclass(frozen=True)
class RecoloringInstance:
    """A graph with source/target proper k-colorings and c extra colors."""

    g: Graph
    s: Coloring
    t: Coloring
    k: int
    c: int

    def __post_init__(self):
        if self.k < 1 or self.c < 0:
            raise PreconditionError("need k >= 1 and c >= 0")
        for name, x in (("s", self.s), ("t", self.t)):
            if len(x) != self.g.n:
                raise PreconditionError(f"{name} has wrong size")
            if any(col > self.k for col in x.colors):
                raise PreconditionError(f"{name} uses colors beyond k={self.k}")
            if not is_proper(self.g, x):
                raise PreconditionError(f"{name} is not proper")

    @property
    def palette(self) -> int:
        return self.k + self.c

    def swapped(self) -> "RecoloringInstance":
        return RecoloringInstance(self.g, self.t, self.s, self.k, self.c)


@dataclass(frozen=True)
class Violation:
    step: int
    kind: str
    nodes: tuple[int, ...]

    def __str__(self) -> str:
        where = ",".join(str(v) for v in self.nodes)
        return f"{self.kind} at step {self.step} (nodes {where})"


@dataclass(frozen=True)
class VerifyReport:
    ok: bool
    violation: Violation | None = None

    @classmethod
    def passed(cls) -> "VerifyReport":
        return cls(True, None)

    @classmethod
    def failed(cls, step: int, kind: str, nodes: Iterable[int]) -> "VerifyReport":
        return cls(False, Violation(step, kind, tuple(nodes)))


@dataclass(frozen=True)
class RecolorRun:
    """Output of a recoloring algorithm: the schedule plus the number of
    synchronous communication rounds the distributed construction takes."""

    schedule: Schedule
    rounds: int


def _verify_common(inst: RecoloringInstance, sch: Schedule, weak: bool) -> VerifyReport:
    g = inst.g
    if sch.n != g.n:
        raise PreconditionError("schedule size does not match graph")
    palette = inst.palette
    length = sch.length
    edges = list(g.edges())
    prev = [sch.color_at(v, 0) for v in range(g.n)]
    for i in range(length + 1):
        cur = prev if i == 0 else [sch.color_at(v, i) for v in range(g.n)]
        # lexicographically first within the step: smallest witness tuple
        found: list[tuple[tuple[int, ...], int, str]] = []

        def note(kind: str, nodes: tuple[int, ...]):
            found.append((nodes, _KIND_ORDER.index(kind), kind))

        if i == 0:
            for v in range(g.n):
                if cur[v] != inst.s[v]:
                    note(KIND_ENDPOINT_S, (v,))
        for v in range(g.n):
            seq = sch.per_node[v]
            if i < len(seq) and not 1 <= seq[i] <= palette:
                note(KIND_PALETTE, (v,))
        for u, v in edges:
            if cur[u] == cur[v]:
                note(KIND_IMPROPER, (u, v))
        if i > 0:
            for u, v in edges:
                if prev[u] != cur[u] and prev[v] != cur[v]:
                    if not weak or {prev[u], cur[u]} & {prev[v], cur[v]}:
                        note(KIND_ADJACENT_CHANGE, (u, v))
        if i == length:
            for v in range(g.n):
                if cur[v] != inst.t[v]:
                    note(KIND_ENDPOINT_T, (v,))
        if found:
            nodes, _, kind = min(found)
            return VerifyReport.failed(i, kind, nodes)
        prev = cur
    return VerifyReport.passed()


def verify_strong(inst: RecoloringInstance, sch: Schedule) -> VerifyReport:
    """Check strong feasibility; reports the first violation, scanning
    steps in order and, within a step, endpoint / palette / properness /
    independence in that order, each over sorted nodes or edges."""
    return _verify_common(inst, sch, weak=False)


def verify_weak(inst: RecoloringInstance, sch: Schedule) -> VerifyReport:
    """Check weak feasibility: adjacent simultaneous changers are fine as
    long as their before/after color pairs are disjoint."""
    return _verify_common(inst, sch, weak=True)


def weak_to_strong(inst: RecoloringInstance, sch: Schedule) -> Schedule:
    """Expand every weak step into k substeps keyed on the input color.

    In substep j of weak step i exactly the nodes with ``s(v) = j`` that
    change at step i apply their change, so each substep's change set is
    a subset of an independent color class of s.  Output length is at
    most ``k * L``.
    """
    report = verify_weak(inst, sch)
    if not report.ok:
        raise VerificationError(f"input schedule is not weak-feasible: "
                                f"{report.violation}")
    builder = ScheduleBuilder(inst.s.colors)
    for i in range(1, sch.length + 1):
        changed = {v: sch.color_at(v, i) for v in sch.change_set(i)}
        for j in range(1, inst.k + 1):
            builder.apply({v: c for v, c in changed.items() if inst.s[v] == j})
    out = builder.build()
    assert out.final() == inst.t.colors
    return out


def concat(a: Schedule, b: Schedule) -> Schedule:
    """Join two schedules; the final coloring of ``a`` must equal the
    initial coloring of ``b``."""
    if a.n != b.n:
        raise PreconditionError("schedules cover different node sets")
    if a.final() != b.initial():
        raise PreconditionError("schedules do not meet at a common coloring")
    la = a.length
    out = []
    for v in range(a.n):
        head = [a.color_at(v, i) for i in range(la + 1)]
        out.append(head + list(b.per_node[v][1:]))
    return Schedule.of(out).normalized()


def reverse(inst: RecoloringInstance, sch: Schedule) -> Schedule:
    """Reverse a strong-feasible schedule; the result is strong-feasible
    for the swapped instance."""
    report = verify_strong(inst, sch)
    if not report.ok:
        raise VerificationError(f"cannot reverse infeasible schedule: "
                                f"{report.violation}")
    length = sch.length
    out = []
    for v in range(sch.n):
        out.append([sch.color_at(v, length - i) for i in range(length + 1)])
    return Schedule.of(out).normalized()


class ScheduleBuilder:
    """Accumulates simultaneous steps; sequences stay trimmed because a
    node's sequence is only extended when its color actually changes."""

    def __init__(self, start: Sequence[int]):
        self.cur = list(start)
        self.seqs: list[list[int]] = [[c] for c in start]
        self.steps = 0

    def apply(self, changes: Mapping[int, int]) -> None:
        """One simultaneous step; entries equal to the current color are
        ignored.  Steps with no real change still advance the counter."""
        self.steps += 1
        for v, c in changes.items():
            if c == self.cur[v]:
                continue
            seq = self.seqs[v]
            while len(seq) < self.steps:
                seq.append(self.cur[v])
            seq.append(c)
            self.cur[v] = c

    def apply_serial(self, moves: Iterable[tuple[int, int]]) -> None:
        for v, c in moves:
            self.apply({v: c})

    def extend_states(self, states: Iterable[Sequence[int]]) -> None:
        """Apply a chain of full colorings, diffing consecutive states."""
        for state in states:
            self.apply({v: c for v, c in enumerate(state) if c != self.cur[v]})

    def current(self) -> tuple[int, ...]:
        return tuple(self.cur)

    def build(self) -> Schedule:
        return Schedule.of([list(seq) for seq in self.seqs])


# ---------------------------------------------------------------------------
# text format: one line per node, "v: c0 c1 ... cl"
# ---------------------------------------------------------------------------

def parse_schedule(text: str) -> Schedule:
    rows: dict[int, tuple[int, ...]] = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(":")
        if not rest:
            raise ValueError(f"bad schedule line {raw!r}")
        v = int(head)
        if v in rows:
            raise ValueError(f"duplicate node {v} in schedule")
        rows[v] = tuple(int(tok) for tok in rest.split())
    if sorted(rows) != list(range(len(rows))):
        raise ValueError("schedule must cover nodes 0..n-1 exactly once")
    return Schedule.of([rows[v] for v in range(len(rows))])


def format_schedule(sch: Schedule) -> str:
    return "\n".join(
        f"{v}: " + " ".join(str(c) for c in seq)
        for v, seq in enumerate(sch.per_node)) + "\n"


def load_schedule(path) -> Schedule:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_schedule(fh.read())


def save_schedule(path, sch: Schedule) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_schedule(sch))
