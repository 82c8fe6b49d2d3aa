"""Synchronous message-passing simulator.

Nodes run one shared program object; per-node state lives on the node's
context.  A round delivers every message sent in the previous round, then
invokes ``receive`` on each live node.  The reported round count is the
number of delivery rounds executed before all nodes halt, so a program
that halts in ``start`` costs 0 rounds and one that gathers a radius-r
ball costs r.

Ports: node v's port p corresponds to its p-th neighbor in adjacency
order.  Messages are arbitrary Python values; the model places no bound
on their size.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from math import ceil, log2
from typing import Any, Sequence

from .errors import PreconditionError, RoundLimitError
from .graphs import Graph

__all__ = [
    "NodeProgram",
    "NodeContext",
    "RunStats",
    "Ball",
    "run",
    "default_round_cap",
    "gather_ball",
    "ColorClassMISProgram",
    "FloodBallProgram",
    "HaltWithIdProgram",
]


class NodeContext:
    """Per-node view handed to program callbacks."""

    def __init__(self, node: int, ident: int, degree: int, input: Any):
        self.node = node
        self.ident = ident
        self.degree = degree
        self.input = input
        self.state: dict[str, Any] = {}
        self.halted = False
        self.output: Any = None
        self._outbox: list[tuple[int, Any]] = []

    def send(self, port: int, msg: Any) -> None:
        if not 0 <= port < self.degree:
            raise PreconditionError(f"port {port} out of range")
        self._outbox.append((port, msg))

    def send_all(self, msg: Any) -> None:
        for port in range(self.degree):
            self._outbox.append((port, msg))

    def halt(self, output: Any) -> None:
        self.halted = True
        self.output = output


class NodeProgram(ABC):
    """Deterministic node behavior; keep per-node state in ctx.state."""

    @abstractmethod
    def start(self, ctx: NodeContext) -> None:
        ...

    def receive(self, ctx: NodeContext, inbox: tuple[Any, ...]) -> None:
        raise NotImplementedError("program received a message it cannot handle")


@dataclass(frozen=True)
class RunStats:
    rounds: int
    outputs: tuple[Any, ...]


def default_round_cap(n: int) -> int:
    return 64 * (ceil(log2(n)) + 1 if n > 1 else 1) * 8


def run(g: Graph, program: NodeProgram, inputs: Sequence[Any] | None = None,
        *, order: Sequence[int] | None = None,
        round_cap: int | None = None) -> RunStats:
    """Execute the program on every node until all halt.

    ``order`` permutes within-round execution; outputs must not depend on
    it (messages sent in a round are only delivered in the next one).
    """
    if inputs is not None and len(inputs) != g.n:
        raise PreconditionError("inputs length does not match graph")
    if order is None:
        order = range(g.n)
    elif sorted(order) != list(range(g.n)):
        raise PreconditionError("order must be a permutation of the nodes")
    cap = default_round_cap(g.n) if round_cap is None else round_cap

    ctxs = [NodeContext(v, g.ids[v], g.degree(v),
                        None if inputs is None else inputs[v])
            for v in range(g.n)]
    # port of u on the edge to v, per neighbor of v
    back_port = [tuple(g.adjacency[u].index(v) for u in g.adjacency[v])
                 for v in range(g.n)]

    for v in order:
        program.start(ctxs[v])

    rounds = 0
    while not all(ctx.halted for ctx in ctxs):
        if rounds >= cap:
            raise RoundLimitError(f"round cap {cap} exceeded")
        inboxes: list[list[Any]] = [[None] * g.degree(v) for v in range(g.n)]
        for v in range(g.n):
            ctx = ctxs[v]
            for port, msg in ctx._outbox:
                u = g.adjacency[v][port]
                inboxes[u][back_port[v][port]] = msg
            ctx._outbox = []
        rounds += 1
        for v in order:
            ctx = ctxs[v]
            if not ctx.halted:
                program.receive(ctx, tuple(inboxes[v]))
    return RunStats(rounds, tuple(ctx.output for ctx in ctxs))


@dataclass(frozen=True)
class Ball:
    """Radius-r neighborhood of a center node, as an induced subgraph.

    to_global maps local indices back to the host graph; acquiring the
    ball costs ``radius`` communication rounds.
    """

    graph: Graph
    center: int
    to_global: tuple[int, ...]
    inputs: tuple[Any, ...] | None
    radius: int

    def to_local(self, v: int) -> int:
        return self.to_global.index(v)


def gather_ball(g: Graph, v: int, r: int,
                inputs: Sequence[Any] | None = None) -> Ball:
    if r < 0:
        raise PreconditionError("radius must be nonnegative")
    dist = g.bfs_distances([v])
    members = sorted(u for u in range(g.n) if dist[u] >= 0 and dist[u] <= r)
    sub, to_local = g.induced(members)
    ball_inputs = None if inputs is None else tuple(inputs[u] for u in members)
    return Ball(sub, to_local[v], tuple(members), ball_inputs, r)


class HaltWithIdProgram(NodeProgram):
    def start(self, ctx: NodeContext) -> None:
        ctx.halt(ctx.ident)


class FloodBallProgram(NodeProgram):
    """Flood ids for r rounds; output the set of ids within distance r."""

    def __init__(self, r: int):
        self.r = r

    def start(self, ctx: NodeContext) -> None:
        ctx.state["known"] = {ctx.ident}
        ctx.state["seen"] = 0
        if self.r == 0:
            ctx.halt(frozenset(ctx.state["known"]))
        else:
            ctx.send_all(frozenset(ctx.state["known"]))

    def receive(self, ctx: NodeContext, inbox: tuple[Any, ...]) -> None:
        for msg in inbox:
            if msg is not None:
                ctx.state["known"] |= msg
        ctx.state["seen"] += 1
        if ctx.state["seen"] == self.r:
            ctx.halt(frozenset(ctx.state["known"]))
        else:
            ctx.send_all(frozenset(ctx.state["known"]))


class ColorClassMISProgram(NodeProgram):
    """Greedy MIS by sweeping the color classes of a proper coloring.

    Input per node: its color in [1, palette].  Phase j (the j-th
    delivery round) adds every color-j node with no selected neighbor,
    so the run costs exactly ``palette`` rounds and the output matches
    the sequential color-class sweep.
    """

    def __init__(self, palette: int):
        self.palette = palette

    def start(self, ctx: NodeContext) -> None:
        ctx.state["selected"] = False
        ctx.state["near"] = False
        ctx.state["phase"] = 0
        ctx.send_all("U")

    def receive(self, ctx: NodeContext, inbox: tuple[Any, ...]) -> None:
        if any(msg == "S" for msg in inbox):
            ctx.state["near"] = True
        ctx.state["phase"] += 1
        if ctx.state["phase"] == ctx.input and not ctx.state["near"]:
            ctx.state["selected"] = True
        if ctx.state["phase"] == self.palette:
            ctx.halt(ctx.state["selected"])
        else:
            ctx.send_all("S" if ctx.state["selected"] else "U")
