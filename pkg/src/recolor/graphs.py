"""Graphs, colorings, list assignments, and the text formats.

Conventions used throughout the package:

* nodes are ``0 .. n-1``; identifiers default to the index but can be
  remapped for symmetry-breaking experiments,
* colors are 1-based: a proper ``k``-coloring uses colors in ``[1, k]``,
* adjacency lists are sorted and the graph is simple and undirected.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import PreconditionError

__all__ = [
    "Graph",
    "Coloring",
    "ListAssignment",
    "ToroidalGrid",
    "build_path",
    "build_cycle",
    "build_complete",
    "build_complete_bipartite",
    "build_prism",
    "build_star",
    "build_balanced_3regular_tree",
    "build_toroidal_grid",
    "random_tree",
    "is_proper",
    "is_proper_list",
    "greedy_mis_from_coloring",
    "is_independent_set",
    "is_maximal_independent_set",
    "parse_graph",
    "format_graph",
    "load_graph",
    "save_graph",
    "parse_coloring",
    "format_coloring",
    "load_coloring",
    "save_coloring",
]


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with sorted adjacency lists."""

    n: int
    adjacency: tuple[tuple[int, ...], ...]
    ids: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if self.n < 0:
            raise PreconditionError("node count must be non-negative")
        if len(self.adjacency) != self.n:
            raise PreconditionError("adjacency size does not match n")
        if not self.ids:
            object.__setattr__(self, "ids", tuple(range(self.n)))
        if len(self.ids) != self.n or len(set(self.ids)) != self.n:
            raise PreconditionError("identifiers must be distinct, one per node")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]],
                   ids: Sequence[int] | None = None) -> "Graph":
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise PreconditionError(f"edge ({u},{v}) out of range")
            if u == v:
                raise PreconditionError(f"self-loop at node {u}")
            if v in adj[u]:
                raise PreconditionError(f"duplicate edge ({u},{v})")
            adj[u].add(v)
            adj[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in adj),
                   tuple(ids) if ids is not None else ())

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield each edge once as (u, v) with u < v, in sorted order."""
        for u in range(self.n):
            for v in self.adjacency[u]:
                if u < v:
                    yield (u, v)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def with_ids(self, ids: Sequence[int]) -> "Graph":
        return Graph(self.n, self.adjacency, tuple(ids))

    def induced(self, nodes: Sequence[int]) -> tuple["Graph", dict[int, int]]:
        """Induced subgraph on ``nodes`` plus the global->local index map."""
        order = sorted(nodes)
        local = {g: i for i, g in enumerate(order)}
        edges = [(local[u], local[v]) for u in order for v in self.adjacency[u]
                 if v in local and u < v]
        return Graph.from_edges(len(order), edges,
                                ids=[self.ids[g] for g in order]), local

    def connected_components(self) -> list[list[int]]:
        seen = [False] * self.n
        out: list[list[int]] = []
        for s in range(self.n):
            if seen[s]:
                continue
            comp = [s]
            seen[s] = True
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for v in self.adjacency[u]:
                    if not seen[v]:
                        seen[v] = True
                        comp.append(v)
                        queue.append(v)
            out.append(sorted(comp))
        return out

    def bfs_distances(self, sources: Iterable[int]) -> list[int]:
        """Distance from the nearest source; -1 if unreachable."""
        dist = [-1] * self.n
        queue = deque()
        for s in sources:
            if dist[s] == -1:
                dist[s] = 0
                queue.append(s)
        while queue:
            u = queue.popleft()
            for v in self.adjacency[u]:
                if dist[v] == -1:
                    dist[v] = dist[u] + 1
                    queue.append(v)
        return dist

    def is_tree(self) -> bool:
        if self.n == 0:
            return False
        return self.m == self.n - 1 and len(self.connected_components()) == 1


@dataclass(frozen=True)
class Coloring:
    """Node -> color map.  Properness is a predicate, never an assumption."""

    colors: tuple[int, ...]
    palette_size: int

    def __post_init__(self):
        if self.palette_size < 1:
            raise PreconditionError("palette must contain at least one color")
        for v, c in enumerate(self.colors):
            if not 1 <= c <= self.palette_size:
                raise PreconditionError(
                    f"color {c} of node {v} outside [1, {self.palette_size}]")

    @classmethod
    def of(cls, colors: Sequence[int], palette_size: int | None = None) -> "Coloring":
        colors = tuple(colors)
        if palette_size is None:
            palette_size = max(colors, default=1)
        return cls(colors, palette_size)

    def __getitem__(self, v: int) -> int:
        return self.colors[v]

    def __len__(self) -> int:
        return len(self.colors)

    def __iter__(self) -> Iterator[int]:
        return iter(self.colors)

    def as_list(self) -> list[int]:
        return list(self.colors)

    def with_palette(self, palette_size: int) -> "Coloring":
        return Coloring(self.colors, palette_size)


@dataclass(frozen=True)
class ListAssignment:
    """Per-node allowed color sets."""

    lists: tuple[frozenset[int], ...]

    def __post_init__(self):
        for v, lst in enumerate(self.lists):
            if not lst:
                raise PreconditionError(f"empty color list at node {v}")

    @classmethod
    def of(cls, lists: Sequence[Iterable[int]]) -> "ListAssignment":
        return cls(tuple(frozenset(lst) for lst in lists))

    @classmethod
    def uniform(cls, n: int, colors: Iterable[int]) -> "ListAssignment":
        base = frozenset(colors)
        return cls(tuple(base for _ in range(n)))

    def __getitem__(self, v: int) -> frozenset[int]:
        return self.lists[v]

    def __len__(self) -> int:
        return len(self.lists)

    def min_size(self) -> int:
        return min(len(lst) for lst in self.lists)


# ---------------------------------------------------------------------------
# canonical constructions
# ---------------------------------------------------------------------------

def build_path(n: int) -> Graph:
    if n < 1:
        raise PreconditionError("path needs at least one node")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def build_cycle(n: int) -> Graph:
    if n < 3:
        raise PreconditionError("cycle needs at least three nodes")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def build_complete(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def build_complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def build_star(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i + 1) for i in range(leaves)])


def build_prism() -> Graph:
    """Two triangles 0-1-2 and 3-4-5 joined by the matching i -- i+3."""
    edges = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]
    return Graph.from_edges(6, edges)


def build_balanced_3regular_tree(depth: int) -> Graph:
    """Rooted tree: the root has 3 children, every other internal node 2,
    and all leaves sit at distance ``depth``.  Node count 1 + 3*(2^d - 1).
    """
    if depth < 0:
        raise PreconditionError("depth must be non-negative")
    edges: list[tuple[int, int]] = []
    frontier = [0]
    nxt = 1
    for d in range(depth):
        new_frontier = []
        for u in frontier:
            for _ in range(3 if d == 0 else 2):
                edges.append((u, nxt))
                new_frontier.append(nxt)
                nxt += 1
        frontier = new_frontier
    return Graph.from_edges(nxt, edges)


def random_tree(n: int, seed: int) -> Graph:
    """Uniform random labeled tree via a decoded random Pruefer sequence."""
    if n < 1:
        raise PreconditionError("tree needs at least one node")
    if n == 1:
        return Graph.from_edges(1, [])
    if n == 2:
        return Graph.from_edges(2, [(0, 1)])
    rng = random.Random(seed)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    ptr = degree.index(1)
    leaf = ptr
    for x in seq:
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1 and x < ptr:
            leaf = x
        else:
            ptr += 1
            while degree[ptr] != 1:
                ptr += 1
            leaf = ptr
    edges.append((leaf, n - 1))
    return Graph.from_edges(n, edges)


@dataclass(frozen=True)
class ToroidalGrid(Graph):
    """4-regular h x w torus; node (r, c) has index r*w + c."""

    h: int = 0
    w: int = 0

    def node(self, r: int, c: int) -> int:
        return (r % self.h) * self.w + (c % self.w)

    def cell(self, v: int) -> tuple[int, int]:
        return divmod(v, self.w)

    def coloring_from_rows(self, rows: Sequence[Sequence[int]],
                           palette_size: int | None = None) -> Coloring:
        if len(rows) != self.h or any(len(r) != self.w for r in rows):
            raise PreconditionError("row matrix does not match grid dimensions")
        flat = [c for row in rows for c in row]
        return Coloring.of(flat, palette_size)

    def rows_from_coloring(self, x: Coloring) -> list[list[int]]:
        if len(x) != self.n:
            raise PreconditionError("coloring size does not match grid")
        return [list(x.colors[r * self.w:(r + 1) * self.w]) for r in range(self.h)]

    def transposed(self) -> "ToroidalGrid":
        return build_toroidal_grid(self.w, self.h)


def build_toroidal_grid(h: int, w: int) -> ToroidalGrid:
    if h < 3 or w < 3:
        raise PreconditionError("torus needs h >= 3 and w >= 3")
    edges = set()
    for r in range(h):
        for c in range(w):
            v = r * w + c
            edges.add(tuple(sorted((v, r * w + (c + 1) % w))))
            edges.add(tuple(sorted((v, ((r + 1) % h) * w + c))))
    adj: list[set[int]] = [set() for _ in range(h * w)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return ToroidalGrid(h * w, tuple(tuple(sorted(s)) for s in adj), (), h, w)


# ---------------------------------------------------------------------------
# predicates
# ---------------------------------------------------------------------------

def _check_sizes(g: Graph, x: Coloring) -> None:
    if len(x) != g.n:
        raise PreconditionError(
            f"coloring has {len(x)} entries for a {g.n}-node graph")


def is_proper(g: Graph, x: Coloring) -> bool:
    _check_sizes(g, x)
    cols = x.colors
    return all(cols[u] != cols[v] for u, v in g.edges())


def is_proper_list(g: Graph, x: Coloring, lists: ListAssignment) -> bool:
    _check_sizes(g, x)
    if len(lists) != g.n:
        raise PreconditionError("list assignment size does not match graph")
    if any(x[v] not in lists[v] for v in range(g.n)):
        return False
    return is_proper(g, x)


def is_independent_set(g: Graph, s: Iterable[int]) -> bool:
    ss = set(s)
    return all(not (u in ss and v in ss) for u, v in g.edges())


def is_maximal_independent_set(g: Graph, s: Iterable[int]) -> bool:
    ss = set(s)
    if not is_independent_set(g, ss):
        return False
    return all(v in ss or any(u in ss for u in g.adjacency[v])
               for v in range(g.n))


def greedy_mis_from_coloring(g: Graph, x: Coloring) -> set[int]:
    """Maximal independent set by sweeping color classes 1..palette_size.

    Requires ``x`` proper, so each class is independent and the sweep
    order within a class does not matter.  Runs in palette_size rounds
    when driven as a message-passing program (see localsim).
    """
    if not is_proper(g, x):
        raise PreconditionError("greedy MIS sweep needs a proper coloring")
    selected: set[int] = set()
    for color in range(1, x.palette_size + 1):
        for v in range(g.n):
            if x[v] == color and not any(u in selected for u in g.adjacency[v]):
                selected.add(v)
    return selected


# ---------------------------------------------------------------------------
# text formats
# ---------------------------------------------------------------------------
# graph file: first non-comment line "n m", then m lines "u v" (0-based);
# coloring file: one integer per line; '#' starts a comment in both.

def _data_lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def parse_graph(text: str) -> Graph:
    lines = _data_lines(text)
    if not lines:
        raise ValueError("empty graph text")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError(f"bad header {lines[0]!r}, expected 'n m'")
    n, m = int(head[0]), int(head[1])
    if len(lines) - 1 != m:
        raise ValueError(f"expected {m} edge lines, found {len(lines) - 1}")
    edges = []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"bad edge line {line!r}")
        edges.append((int(parts[0]), int(parts[1])))
    try:
        return Graph.from_edges(n, edges)
    except PreconditionError as exc:
        raise ValueError(str(exc)) from exc


def format_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def parse_coloring(text: str, palette_size: int | None = None) -> Coloring:
    values = []
    for line in _data_lines(text):
        for tok in line.split():
            values.append(int(tok))
    if not values:
        raise ValueError("empty coloring text")
    return Coloring.of(values, palette_size)


def format_coloring(x: Coloring) -> str:
    return "\n".join(str(c) for c in x.colors) + "\n"


def load_graph(path) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read())


def save_graph(path, g: Graph) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_graph(g))


def load_coloring(path, palette_size: int | None = None) -> Coloring:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_coloring(fh.read(), palette_size)


def save_coloring(path, x: Coloring) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_coloring(x))
