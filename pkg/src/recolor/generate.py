"""Seeded random instance generation for tests, benchmarks and the CLI."""

from __future__ import annotations

import random
from typing import Iterable

from .errors import InfeasibleError, PreconditionError, RecolorError
from .graphs import (Coloring, Graph, ListAssignment, is_proper)

__all__ = [
    "rng_from",
    "random_proper_coloring",
    "random_walk",
    "random_bipartite",
    "bipartite_proper_coloring",
    "random_subcubic",
    "random_lists",
]


def rng_from(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_proper_coloring(g: Graph, k: int, seed, *,
                           tries: int = 400, walk: int = 0) -> Coloring:
    """Greedy coloring over a random node order with random color picks,
    retried until it fits; optional mixing walk afterwards.

    The first half of the attempts shuffles the node order freely; the
    rest walk the graph breadth-first from a random root, which keeps
    the number of already-colored neighbours small (on trees at most
    one) and succeeds wherever greedy can.

    When every degree is at most k with equality somewhere — where
    random orders are hopeless on large graphs — only a few attempts
    run before a constructive pass colors each component outward from a
    root of degree below k.  A k-regular component gets two non-adjacent
    neighbours of its root pre-colored alike so the root keeps a spare
    color; only genuinely uncolorable graphs (a complete graph on k+1
    nodes, an odd cycle at k=2) are rejected.
    """
    rng = rng_from(seed)
    nodes = list(range(g.n))
    constructive = g.n > 0 and g.max_degree() == k
    budget = min(tries, 24) if constructive else tries
    for attempt in range(budget):
        if attempt < budget // 2:
            rng.shuffle(nodes)
            order = nodes
        else:
            order = _bfs_shuffle_order(g, rng)
        colors = [0] * g.n
        ok = True
        for v in order:
            taken = {colors[u] for u in g.adjacency[v]}
            options = [col for col in range(1, k + 1) if col not in taken]
            if not options:
                ok = False
                break
            colors[v] = rng.choice(options)
        if ok:
            x = Coloring(tuple(colors), k)
            return random_walk(g, x, walk, rng) if walk else x
    if constructive:
        x = _degree_tight_coloring(g, k, rng)
        return random_walk(g, x, walk, rng) if walk else x
    raise InfeasibleError(f"could not find a proper {k}-coloring "
                          f"in {tries} attempts")


def _degree_tight_coloring(g: Graph, k: int, rng: random.Random) -> Coloring:
    """Proper k-coloring of a graph with maximum degree k, component by
    component (the bound of Brooks' theorem)."""
    colors = [0] * g.n
    for comp in g.connected_components():
        _color_tight_component(g, comp, k, colors, rng)
    x = Coloring(tuple(colors), k)
    if not is_proper(g, x):
        raise RecolorError("constructive coloring produced a conflict")
    return x


def _cycle_walk(g: Graph, comp: list[int]) -> list[int]:
    """Nodes of a cycle component in traversal order."""
    start = comp[0]
    order = [start]
    prev, cur = None, start
    while True:
        nxt = min(w for w in g.adjacency[cur] if w != prev)
        if nxt == start:
            return order
        order.append(nxt)
        prev, cur = cur, nxt


def _connected_without(g: Graph, comp_size: int, start: int,
                       x: int, y: int) -> bool:
    """Does the component stay connected after removing nodes x and y?"""
    seen = {start, x, y}
    queue = [start]
    for v in queue:
        for w in g.adjacency[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(queue) == comp_size - 2


def _brooks_triple(g: Graph, comp: list[int],
                   rng: random.Random) -> tuple[int, int, int] | None:
    """A root with two non-adjacent neighbours whose removal keeps the
    component connected, if one can be found."""
    roots = list(comp)
    rng.shuffle(roots)
    for root in roots[:50]:
        nbrs = sorted(g.adjacency[root])
        pairs = [(x, y) for i, x in enumerate(nbrs) for y in nbrs[i + 1:]
                 if y not in g.adjacency[x]]
        rng.shuffle(pairs)
        for x, y in pairs:
            if _connected_without(g, len(comp), root, x, y):
                return root, x, y
    return None


def _color_tight_component(g: Graph, comp: list[int], k: int,
                           colors: list[int], rng: random.Random) -> None:
    """Color one component whose maximum degree is at most k.

    Nodes are colored by decreasing distance from a root, so everyone
    but the root still has an uncolored neighbour (hence a free color)
    when its turn comes.  Roots of degree below k are free; in a
    k-regular component the root's spare color comes from two of its
    non-adjacent neighbours sharing one.
    """
    low = [v for v in comp if g.degree(v) < k]
    pre: set[int] = set()
    if low:
        root = rng.choice(low)
    elif k == 2:
        if len(comp) % 2:
            raise InfeasibleError("an odd cycle has no proper 2-coloring")
        first = rng.randrange(1, 3)
        for i, v in enumerate(_cycle_walk(g, comp)):
            colors[v] = first if i % 2 == 0 else 3 - first
        return
    elif k < 2:
        raise InfeasibleError("an edge has no proper 1-coloring")
    else:
        triple = _brooks_triple(g, comp, rng)
        if triple is None:
            if len(comp) == k + 1:
                raise InfeasibleError(f"the complete graph on {k + 1} nodes "
                                      f"has no proper {k}-coloring")
            raise RecolorError("no workable root for the constructive pass")
        root, x, y = triple
        shared = rng.randrange(1, k + 1)
        colors[x] = colors[y] = shared
        pre = {x, y}
    dist = {root: 0}
    seen = pre | {root}
    frontier = [root]
    while frontier:
        nxt = []
        for v in frontier:
            for w in g.adjacency[v]:
                if w not in seen:
                    seen.add(w)
                    dist[w] = dist[v] + 1
                    nxt.append(w)
        frontier = nxt
    if len(dist) != len(comp) - len(pre):
        raise RecolorError("constructive pass lost part of the component")
    groups: dict[int, list[int]] = {}
    for v, d in dist.items():
        groups.setdefault(d, []).append(v)
    for d in sorted(groups, reverse=True):
        batch = groups[d]
        rng.shuffle(batch)
        for v in batch:
            taken = {colors[u] for u in g.adjacency[v] if colors[u]}
            options = [col for col in range(1, k + 1) if col not in taken]
            if not options:
                raise RecolorError("constructive pass ran out of colors")
            colors[v] = rng.choice(options)


def _bfs_shuffle_order(g: Graph, rng: random.Random) -> list[int]:
    """Breadth-first order from a random root per component, with the
    frontier neighbours visited in random order."""
    order: list[int] = []
    seen = [False] * g.n
    starts = list(range(g.n))
    rng.shuffle(starts)
    for s in starts:
        if seen[s]:
            continue
        seen[s] = True
        queue = [s]
        for v in queue:
            order.append(v)
            nbrs = list(g.adjacency[v])
            rng.shuffle(nbrs)
            for u in nbrs:
                if not seen[u]:
                    seen[u] = True
                    queue.append(u)
    return order


def random_walk(g: Graph, x: Coloring, steps: int, seed) -> Coloring:
    """Apply random legal single-node recolorings within x's palette."""
    rng = rng_from(seed)
    colors = list(x.colors)
    palette = x.palette_size
    for _ in range(steps):
        v = rng.randrange(g.n)
        taken = {colors[u] for u in g.adjacency[v]}
        options = [col for col in range(1, palette + 1)
                   if col != colors[v] and col not in taken]
        if options:
            colors[v] = rng.choice(options)
    return Coloring(tuple(colors), palette)


def random_bipartite(n1: int, n2: int, p: float, seed) -> tuple[Graph, frozenset[int]]:
    """Random bipartite graph; returns it with the first part's node set."""
    if n1 < 1 or n2 < 1:
        raise PreconditionError("both parts need at least one node")
    rng = rng_from(seed)
    edges = [(u, n1 + w) for u in range(n1) for w in range(n2)
             if rng.random() < p]
    return Graph.from_edges(n1 + n2, edges), frozenset(range(n1))


def bipartite_proper_coloring(g: Graph, part1: Iterable[int], k: int,
                              seed, *, walk: int = 50) -> Coloring:
    """Proper k-coloring that respects a bipartition, then mixed by a walk
    (never fails, unlike greedy with small k)."""
    if k < 2:
        raise PreconditionError("need k >= 2")
    rng = rng_from(seed)
    part = set(part1)
    a, b = rng.sample(range(1, k + 1), 2)
    x = Coloring(tuple(a if v in part else b for v in range(g.n)), k)
    if not is_proper(g, x):
        raise PreconditionError("given part is not one side of a bipartition")
    return random_walk(g, x, walk, rng)


def random_subcubic(n: int, seed, *, swaps: int | None = None,
                    require_connected: bool = True) -> Graph:
    """Random 3-regular graph: a circulant start (cycle plus diameters)
    randomized by an edge-swap chain that rejects loops and multi-edges."""
    if n < 4 or n % 2:
        raise PreconditionError("3-regular graphs need even n >= 4")
    rng = rng_from(seed)
    if swaps is None:
        swaps = 10 * n
    for _ in range(50):
        edge_list = [(v, (v + 1) % n) for v in range(n)]
        edge_list += [(v, v + n // 2) for v in range(n // 2)]
        edge_set = {frozenset(e) for e in edge_list}
        done = 0
        attempts = 0
        while done < swaps and attempts < 30 * swaps:
            attempts += 1
            i, j = rng.randrange(len(edge_list)), rng.randrange(len(edge_list))
            if i == j:
                continue
            a, b = edge_list[i]
            c, d = edge_list[j]
            if rng.random() < 0.5:
                c, d = d, c
            if len({a, b, c, d}) < 4:
                continue
            new1, new2 = frozenset((a, c)), frozenset((b, d))
            if new1 in edge_set or new2 in edge_set:
                continue
            edge_set.discard(frozenset((a, b)))
            edge_set.discard(frozenset((c, d)))
            edge_set |= {new1, new2}
            edge_list[i] = (a, c)
            edge_list[j] = (b, d)
            done += 1
        g = Graph.from_edges(n, [tuple(sorted(e)) for e in edge_set])
        if not require_connected or len(g.connected_components()) == 1:
            return g
    raise InfeasibleError("edge-swap chain kept disconnecting the graph")


def random_lists(g: Graph, size: int, palette: int, seed) -> ListAssignment:
    """Per-node random color lists of the given size drawn from [palette]."""
    if size > palette:
        raise PreconditionError("list size exceeds palette")
    rng = rng_from(seed)
    return ListAssignment.of(
        [rng.sample(range(1, palette + 1), size) for _ in range(g.n)])
