"""Independent-set / shallow-forest splits of subcubic graphs, and the
3+1 recoloring built on top of them.

The split rests on a local fact: around every node of a connected
subcubic graph there is, within a logarithmic-radius ball, either a node
of degree at most two or a *theta* (two branch nodes joined by three
internally disjoint paths).  Well-separated centers each adopt one such
structure as an *anchor*; all remaining nodes are assigned by peeling
layers of equal distance to the anchor set, farthest first, and the
anchors themselves are absorbed last.  The result is an independent set
``S`` and a forest ``F`` whose components have logarithmic radius.

Recoloring then parks ``S`` on the spare color, recolors every
component of ``F`` within the base palette using the tree list engine,
and lands ``S`` on its targets.

Round figures follow the package convention: each phase charges the
number of synchronous rounds its distributed execution would take, with
per-ball and per-component work running in parallel.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InfeasibleError, PreconditionError, RecolorError
from .graphs import Coloring, Graph, is_independent_set
from .schedule import (RecoloringInstance, RecolorRun, ScheduleBuilder,
                       verify_strong)
from .trees import _color_path, _tree_radius, recolor_tree_plain

__all__ = [
    "ANCHOR_LOW_DEGREE",
    "ANCHOR_THETA",
    "Anchor",
    "ForestDecomposition",
    "find_anchor",
    "ruling_set",
    "extend_decomposition",
    "stable_forest_decomposition",
    "check_anchor",
    "check_forest_decomposition",
    "recolor_subcubic_3plus1",
]

log = logging.getLogger(__name__)

ANCHOR_LOW_DEGREE = "low-degree-node"
ANCHOR_THETA = "theta"

# Leftover pieces in one peeling layer are expected to stay tiny; a
# larger one means the layer structure broke down somewhere.
_LAYER_PIECE_CAP = 64

# Node budget for the exact per-anchor partition search (the fallback
# when the constructive absorption rules do not apply).
_SEARCH_CAP = 200_000


def _ceil_log2(n: int) -> int:
    return (n - 1).bit_length() if n >= 1 else 0


# ---------------------------------------------------------------------------
# Anchors: a low-degree node or a theta.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Anchor:
    """A locally found structure the decomposition absorbs last.

    Either a single node of degree at most two, or a theta: two branch
    nodes ``u < v`` joined by three internally disjoint paths, each
    stored as a node sequence from ``u`` to ``v`` inclusive.
    """

    kind: str
    node: int = -1
    u: int = -1
    v: int = -1
    paths: tuple[tuple[int, ...], ...] = ()

    def nodes(self) -> frozenset[int]:
        if self.kind == ANCHOR_LOW_DEGREE:
            return frozenset((self.node,))
        return frozenset(x for path in self.paths for x in path)


def _set_diameter(g: Graph, nodes: Iterable[int]) -> int:
    """Largest pairwise distance (in ``g``) within a node set."""
    nodes = sorted(nodes)
    diam = 0
    for a in nodes:
        dist = g.bfs_distances([a])
        diam = max(diam, max(dist[b] for b in nodes))
    return diam


def check_anchor(g: Graph, anchor: Anchor,
                 diameter_bound: int | None = None) -> None:
    """Validate an anchor's structure; raise ``RecolorError`` if broken."""
    if anchor.kind == ANCHOR_LOW_DEGREE:
        v = anchor.node
        if not 0 <= v < g.n:
            raise RecolorError("anchor node out of range")
        if g.degree(v) > 2:
            raise RecolorError("low-degree anchor has degree above two")
    elif anchor.kind == ANCHOR_THETA:
        u, v = anchor.u, anchor.v
        if u == v or len(anchor.paths) != 3:
            raise RecolorError("theta needs two endpoints and three paths")
        seen_internal: set[int] = set()
        for path in anchor.paths:
            if path[0] != u or path[-1] != v:
                raise RecolorError("theta path does not join the endpoints")
            if len(set(path)) != len(path):
                raise RecolorError("theta path repeats a node")
            for a, b in zip(path, path[1:]):
                if b not in g.adjacency[a]:
                    raise RecolorError(f"theta path uses non-edge ({a},{b})")
            inner = set(path[1:-1])
            if inner & seen_internal or u in inner or v in inner:
                raise RecolorError("theta paths share an internal node")
            seen_internal |= inner
    else:
        raise RecolorError(f"unknown anchor kind {anchor.kind!r}")
    if diameter_bound is not None:
        if _set_diameter(g, anchor.nodes()) > diameter_bound:
            raise RecolorError("anchor diameter exceeds its bound")


def _ball(g: Graph, u: int, radius: int
          ) -> tuple[dict[int, int], list[int], dict[int, int]]:
    """BFS ball: distances, discovery order, and parent pointers."""
    dist = {u: 0}
    parent: dict[int, int] = {}
    order = [u]
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if dist[x] == radius:
            continue
        for w in g.adjacency[x]:
            if w not in dist:
                dist[w] = dist[x] + 1
                parent[w] = x
                order.append(w)
                queue.append(w)
    return dist, order, parent


def _fundamental_cycle(parent: dict[int, int], a: int, b: int) -> list[int]:
    """Cycle closed by the non-tree edge (a, b), in cyclic node order."""
    chain_a = [a]
    while chain_a[-1] in parent:
        chain_a.append(parent[chain_a[-1]])
    pos = {x: i for i, x in enumerate(chain_a)}
    chain_b = [b]
    while chain_b[-1] not in pos:
        chain_b.append(parent[chain_b[-1]])
    lca = chain_b.pop()
    # lca .. a (down one branch), then b .. just-below-lca (up the other);
    # the wrap-around edge is the non-tree edge (a, b) itself.
    return list(reversed(chain_a[:pos[lca] + 1])) + chain_b


def _theta_paths(cycle: list[int], x: int, y: int,
                 mid: list[int]) -> Anchor:
    """Assemble a theta from a cycle and an x-y path avoiding it."""
    pos = {v: i for i, v in enumerate(cycle)}
    i, j = pos[x], pos[y]
    arc_a = cycle[i:j + 1] if i <= j else cycle[i:] + cycle[:j + 1]
    arc_b_rev = cycle[j:i + 1] if j <= i else cycle[j:] + cycle[:i + 1]
    arc_b = list(reversed(arc_b_rev))
    paths = [arc_a, arc_b, mid]
    if x > y:
        x, y = y, x
        paths = [list(reversed(p)) for p in paths]
    return Anchor(ANCHOR_THETA, u=x, v=y,
                  paths=tuple(sorted(tuple(p) for p in paths)))


def _theta_from_cycle(g: Graph, cycle: list[int],
                      ball: set[int]) -> Anchor | None:
    """Find a chord or an ear of the cycle inside the ball."""
    on_cycle = set(cycle)
    cycle_edges = {frozenset((a, b)) for a, b in zip(cycle, cycle[1:])}
    cycle_edges.add(frozenset((cycle[-1], cycle[0])))
    chords = [(a, b) for a in cycle for b in g.adjacency[a]
              if b in on_cycle and a < b
              and frozenset((a, b)) not in cycle_edges]
    if chords:
        a, b = min(chords)
        return _theta_paths(cycle, a, b, [a, b])
    # Multi-source BFS from the cycle through outside nodes; regions of
    # different cycle nodes meeting (or a region touching a foreign
    # cycle node) yield an ear.
    owner: dict[int, int] = {}
    prev: dict[int, int] = {}
    queue: deque[int] = deque()
    for x in sorted(on_cycle):
        for w in sorted(g.adjacency[x]):
            if w in ball and w not in on_cycle and w not in owner:
                owner[w] = x
                prev[w] = x
                queue.append(w)

    def chain(w: int) -> list[int]:
        out = [w]
        while out[-1] not in on_cycle:
            out.append(prev[out[-1]])
        return out

    while queue:
        w = queue.popleft()
        for y in sorted(g.adjacency[w]):
            if y in on_cycle:
                if y != owner[w]:
                    ear = list(reversed(chain(w))) + [y]
                    return _theta_paths(cycle, ear[0], ear[-1], ear)
            elif y not in ball:
                continue
            elif y not in owner:
                owner[y] = owner[w]
                prev[y] = w
                queue.append(y)
            elif owner[y] != owner[w]:
                ear = list(reversed(chain(w))) + chain(y)
                return _theta_paths(cycle, ear[0], ear[-1], ear)
    return None


def find_anchor(g: Graph, u: int, r: int) -> Anchor:
    """Within the radius-``r`` ball of ``u``: the nearest node of degree
    at most two if any, otherwise a theta.

    With ``r >= 2*ceil(log2 n)`` one of the two always exists in the
    ball; smaller radii are accepted and widened (doubling, logged) when
    the search comes up empty.  Exhausting a connected component without
    finding either is impossible in a subcubic graph and raises.
    """
    if g.max_degree() > 3:
        raise PreconditionError("graph is not subcubic")
    if not 0 <= u < g.n:
        raise PreconditionError(f"node {u} out of range")
    radius = max(0, r)
    while True:
        dist, order, parent = _ball(g, u, radius)
        low = [v for v in order if g.degree(v) <= 2]
        if low:
            best = min(low, key=lambda v: (dist[v], v))
            return Anchor(ANCHOR_LOW_DEGREE, node=best)
        ball = set(order)
        non_tree = sorted(
            ((a, b) for a in order for b in g.adjacency[a]
             if a < b and b in ball and parent.get(a) != b
             and parent.get(b) != a),
            key=lambda e: (dist[e[0]] + dist[e[1]], e))
        for a, b in non_tree:
            anchor = _theta_from_cycle(g, _fundamental_cycle(parent, a, b),
                                       ball)
            if anchor is not None:
                check_anchor(g, anchor)
                return anchor
        if max(dist.values()) < radius or len(ball) >= g.n:
            raise RecolorError(
                "component exhausted without a low-degree node or theta; "
                "impossible for a subcubic graph")
        log.warning("no anchor within radius %d of node %d; widening",
                    radius, u)
        radius = min(max(2 * radius, 2), g.n)


# ---------------------------------------------------------------------------
# Ruling sets.
# ---------------------------------------------------------------------------

def _within(g: Graph, sources: Sequence[int], cap: int) -> set[int]:
    """Nodes at distance <= cap from the sources."""
    seen = set(sources)
    frontier = list(sources)
    for _ in range(cap):
        nxt = []
        for x in frontier:
            for w in g.adjacency[x]:
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        if not nxt:
            break
        frontier = nxt
    return seen


def _relax_from(g: Graph, dist: list[int], source: int) -> None:
    """Lower the distance labels after adding one more source."""
    dist[source] = 0
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for w in g.adjacency[x]:
            nd = dist[x] + 1
            if dist[w] == -1 or nd < dist[w]:
                dist[w] = nd
                queue.append(w)


def ruling_set(g: Graph, alpha: int, beta: int) -> frozenset[int]:
    """Deterministic (alpha, beta)-ruling set: members pairwise at least
    ``alpha`` apart, every node within ``beta`` of a member.

    Recursive identifier-bit splitting: representatives of the low half
    survive, high-half representatives are kept only when at least
    ``alpha`` away from all of them.  A final sweep adds the smallest
    uncovered node until domination holds; an uncovered node is more
    than ``beta >= alpha - 1`` away from every member, so separation is
    preserved.
    """
    if alpha > beta:
        raise PreconditionError("need alpha <= beta")
    if g.n == 0:
        return frozenset()
    if alpha <= 1:
        members = set(range(g.n))
    else:
        ecc0 = max(g.bfs_distances([0]))
        if ecc0 >= 0 and 2 * ecc0 < alpha:
            # Every merge would drop the whole high half.
            members = {0}
        else:
            def rule(ids: list[int], bit: int) -> list[int]:
                if len(ids) <= 1 or bit < 0:
                    return list(ids)
                lo = [i for i in ids if not (i >> bit) & 1]
                hi = [i for i in ids if (i >> bit) & 1]
                r0 = rule(lo, bit - 1)
                r1 = rule(hi, bit - 1)
                if not r0:
                    return r1
                if not r1:
                    return r0
                near = _within(g, r0, alpha - 1)
                return r0 + [v for v in r1 if v not in near]

            members = set(rule(list(range(g.n)), (g.n - 1).bit_length() - 1))
    dist = g.bfs_distances(sorted(members))
    while True:
        bad = next((v for v in range(g.n)
                    if dist[v] == -1 or dist[v] > beta), None)
        if bad is None:
            return frozenset(members)
        members.add(bad)
        _relax_from(g, dist, bad)


# ---------------------------------------------------------------------------
# Absorbing anchors into a partial partition.
# ---------------------------------------------------------------------------

class _PieceState:
    """Union-find over one anchor's forest-side pieces.

    Units are the anchor's forest nodes plus identifiers of pre-existing
    forest components.  A union fails when it would close a cycle or put
    two pre-existing components into one piece; the latter restriction
    is what keeps the extended radius additive (every piece hangs off at
    most one old component).
    """

    def __init__(self):
        self.parent: dict = {}
        self.weight: dict = {}
        self.trail: list[tuple] = []

    def add(self, x, weight: int) -> None:
        if x not in self.parent:
            self.parent[x] = x
            self.weight[x] = weight
            self.trail.append(("add", x))

    def find(self, x):
        while self.parent[x] != x:
            x = self.parent[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.weight[ra] + self.weight[rb] > 1:
            return False
        self.trail.append(("join", ra, rb, self.weight[ra]))
        self.parent[rb] = ra
        self.weight[ra] += self.weight[rb]
        return True

    def mark(self) -> int:
        return len(self.trail)

    def rollback(self, mark: int) -> None:
        while len(self.trail) > mark:
            entry = self.trail.pop()
            if entry[0] == "add":
                del self.parent[entry[1]]
                del self.weight[entry[1]]
            else:
                _, ra, rb, w = entry
                self.parent[rb] = rb
                self.weight[ra] = w


def _attach_f_node(st: _PieceState, g: Graph, v: int,
                   assign: dict[int, str], comp_id: dict[int, int]) -> bool:
    """Register v on the forest side; False if a piece rule breaks."""
    st.add(v, 0)
    for w in sorted(g.adjacency[v]):
        if assign.get(w) == "F":
            if not st.union(v, w):
                return False
        elif w in comp_id:
            unit = ("comp", comp_id[w])
            st.add(unit, 1)
            if not st.union(v, unit):
                return False
    return True


def _assignment_ok(g: Graph, assign: dict[int, str], in_s: frozenset[int],
                   comp_id: dict[int, int]) -> bool:
    """Check one anchor's S/F assignment against both side conditions."""
    for v, side in assign.items():
        if side != "S":
            continue
        for w in g.adjacency[v]:
            if w in in_s or assign.get(w) == "S":
                return False
    st = _PieceState()
    done: dict[int, str] = {}
    for v in sorted(assign):
        if assign[v] == "F":
            if not _attach_f_node(st, g, v, done, comp_id):
                return False
            done[v] = "F"
    return True


def _recipe_assignment(g: Graph, anchor: Anchor, s_end: int, f_end: int,
                       in_f: frozenset[int]) -> dict[int, str]:
    """Constructive theta absorption: one endpoint to each side, paths
    split into forest segments at the earliest interior node (two or
    more hops in) holding an outside forest neighbor, which itself joins
    the independent side and restarts the walk."""
    assign = {s_end: "S", f_end: "F"}
    for stored in anchor.paths:
        path = list(stored) if stored[0] == s_end else list(reversed(stored))
        seg = 0
        while True:
            cut = next(
                (idx for idx in range(seg + 2, len(path) - 1)
                 if any(w in in_f for w in g.adjacency[path[idx]])),
                None)
            if cut is None:
                for idx in range(seg + 1, len(path) - 1):
                    assign[path[idx]] = "F"
                break
            for idx in range(seg + 1, cut):
                assign[path[idx]] = "F"
            assign[path[cut]] = "S"
            seg = cut
    return assign


def _search_assignment(g: Graph, nodes: frozenset[int], in_s: frozenset[int],
                       comp_id: dict[int, int]) -> dict[int, str] | None:
    """Exhaustive per-anchor split with pruning; first valid assignment
    in the fixed (node order, S-before-F) exploration order."""
    order = sorted(nodes)
    st = _PieceState()
    assign: dict[int, str] = {}
    budget = _SEARCH_CAP

    def dfs(i: int) -> bool:
        nonlocal budget
        if budget <= 0:
            raise RecolorError("anchor partition search ran out of budget")
        budget -= 1
        if i == len(order):
            return True
        v = order[i]
        if not any(w in in_s or assign.get(w) == "S"
                   for w in g.adjacency[v]):
            assign[v] = "S"
            if dfs(i + 1):
                return True
            del assign[v]
        mark = st.mark()
        if _attach_f_node(st, g, v, assign, comp_id):
            assign[v] = "F"
            if dfs(i + 1):
                return True
            del assign[v]
        st.rollback(mark)
        return False

    return dict(assign) if dfs(0) else None


def extend_decomposition(g: Graph, anchors: Sequence[Anchor],
                         s: Iterable[int], f: Iterable[int],
                         p: int, r: int) -> tuple[frozenset[int], frozenset[int]]:
    """Absorb the anchors into a partial split, returning their nodes'
    own partition (s_extra, f_extra).

    Preconditions: anchors pairwise at distance >= 2 with diameter at
    most r/2 each; (s, f) partitions the remaining nodes with ``s``
    independent and ``g[f]`` a forest of per-component radius <= p.  The
    combined partition keeps ``s`` independent and the forest acyclic
    with radius at most p + r.

    A low-degree anchor joins the forest side exactly when it has an
    independent-side neighbor.  A theta is absorbed by the constructive
    endpoint rule (tried in both orientations) and, failing that, by an
    exhaustive search; a theta whose every split leaves a cycle - the
    complete graph on four nodes is one - raises ``InfeasibleError``.
    """
    in_s = frozenset(s)
    in_f = frozenset(f)
    anchor_nodes: dict[int, int] = {}
    for idx, anchor in enumerate(anchors):
        check_anchor(g, anchor)
        if 2 * _set_diameter(g, anchor.nodes()) > r:
            raise PreconditionError("anchor diameter exceeds r/2")
        for v in anchor.nodes():
            if v in anchor_nodes:
                raise PreconditionError("anchors share a node")
            anchor_nodes[v] = idx
    for v, idx in anchor_nodes.items():
        for w in g.adjacency[v]:
            if anchor_nodes.get(w, idx) != idx:
                raise PreconditionError("anchors closer than distance two")
    if in_s & in_f:
        raise PreconditionError("s and f overlap")
    if in_s | in_f != set(range(g.n)) - set(anchor_nodes):
        raise PreconditionError("s and f must cover the non-anchor nodes")
    if not is_independent_set(g, in_s):
        raise PreconditionError("s is not independent")
    comp_id: dict[int, int] = {}
    comps = _forest_components(g, in_f)
    for cid, comp in enumerate(comps):
        sub, _ = g.induced(comp)
        if not sub.is_tree():
            raise PreconditionError("forest side contains a cycle")
        if _tree_radius(sub) > p:
            raise PreconditionError("forest component radius exceeds p")
        for v in comp:
            comp_id[v] = cid

    s_extra: set[int] = set()
    f_extra: set[int] = set()
    for anchor in anchors:
        if anchor.kind == ANCHOR_LOW_DEGREE:
            v = anchor.node
            if any(w in in_s for w in g.adjacency[v]):
                f_extra.add(v)
            else:
                s_extra.add(v)
            continue
        trials = (
            _recipe_assignment(g, anchor, anchor.u, anchor.v, in_f),
            _recipe_assignment(g, anchor, anchor.v, anchor.u, in_f),
        )
        assign = next((t for t in trials
                       if _assignment_ok(g, t, in_s, comp_id)), None)
        if assign is None:
            assign = _search_assignment(g, anchor.nodes(), in_s, comp_id)
        if assign is None:
            raise InfeasibleError(
                "theta admits no independent-set/forest split")
        for v, side in assign.items():
            (s_extra if side == "S" else f_extra).add(v)

    full_s = in_s | s_extra
    full_f = in_f | f_extra
    if not is_independent_set(g, full_s):
        raise RecolorError("extension broke independence")
    for comp in _forest_components(g, full_f):
        sub, _ = g.induced(comp)
        if not sub.is_tree():
            raise RecolorError("extension closed a forest cycle")
        if _tree_radius(sub) > p + r:
            raise RecolorError("extension exceeded the radius bound")
    return frozenset(s_extra), frozenset(f_extra)


# ---------------------------------------------------------------------------
# The full decomposition.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ForestDecomposition:
    """Partition into an independent set ``s`` and forest nodes ``f``;
    ``components`` lists the forest's trees, ``radius`` their largest
    radius, ``rounds`` the charged construction cost."""

    s: frozenset[int]
    f: frozenset[int]
    components: tuple[tuple[int, ...], ...]
    radius: int
    rounds: int


def _forest_components(g: Graph, f_nodes: Iterable[int]
                       ) -> tuple[tuple[int, ...], ...]:
    nodes = sorted(f_nodes)
    if not nodes:
        return ()
    sub, local = g.induced(nodes)
    back = {i: v for v, i in local.items()}
    return tuple(tuple(sorted(back[i] for i in comp))
                 for comp in sub.connected_components())


def check_forest_decomposition(g: Graph, dec: ForestDecomposition,
                               radius_bound: int | None = None) -> None:
    """Validate the decomposition invariants; raise on violation."""
    if dec.s & dec.f:
        raise RecolorError("s and f overlap")
    if dec.s | dec.f != set(range(g.n)):
        raise RecolorError("decomposition does not cover the graph")
    if not is_independent_set(g, dec.s):
        raise RecolorError("independent side has an internal edge")
    covered: set[int] = set()
    radius = 0
    for comp in dec.components:
        sub, _ = g.induced(comp)
        if not sub.is_tree():
            raise RecolorError("forest side contains a cycle")
        radius = max(radius, _tree_radius(sub))
        covered.update(comp)
    if covered != set(dec.f):
        raise RecolorError("components do not match the forest side")
    if radius != dec.radius:
        raise RecolorError("recorded radius does not match the forest")
    if radius_bound is not None and radius > radius_bound:
        raise RecolorError("forest radius exceeds the bound")


def _walk_path(sub: Graph, start: int, block: int | None) -> list[int]:
    """Walk a degree-<=2 component from ``start``, never entering
    ``block``; returns the node sequence."""
    path = [start]
    prev = block
    cur = start
    while True:
        nxt = [w for w in sub.adjacency[cur] if w != prev and w != block]
        if not nxt:
            return path
        prev, cur = cur, nxt[0]
        path.append(cur)


def _linear_three_color(sub: Graph) -> tuple[list[int], int]:
    """Proper 3-coloring of a union of paths and cycles, by identifier
    bit reduction along each piece; cycles break at their smallest node,
    which picks a free color afterwards."""
    colors = [0] * sub.n
    rounds = 0
    for comp in sub.connected_components():
        ends = [v for v in comp if sub.degree(v) <= 1]
        if ends:
            path = _walk_path(sub, min(ends), None)
            col, rr = _color_path(path, {})
        else:
            w = min(comp)
            path = _walk_path(sub, min(sub.adjacency[w]), w)
            col, rr = _color_path(path, {})
            col[w] = min(c for c in (1, 2, 3)
                         if c not in (col[path[0]], col[path[-1]]))
            rr += 1
        rounds = max(rounds, rr)
        for v, c in col.items():
            colors[v] = c
    return colors, rounds


def _linear_mis(g: Graph, nodes: Sequence[int]) -> tuple[set[int], int]:
    """Maximal independent set of an induced union of paths and cycles:
    3-color it, then sweep the color classes."""
    if not nodes:
        return set(), 0
    sub, local = g.induced(nodes)
    back = {i: v for v, i in local.items()}
    colors, rounds = _linear_three_color(sub)
    chosen: set[int] = set()
    for c in (1, 2, 3):
        for i in range(sub.n):
            if colors[i] == c and not any(j in chosen
                                          for j in sub.adjacency[i]):
                chosen.add(i)
    return {back[i] for i in chosen}, rounds + 3


def stable_forest_decomposition(g: Graph) -> ForestDecomposition:
    """Split a subcubic graph into an independent set and a forest of
    logarithmic radius.

    Centers from a (4*ceil(log2 n), 8*ceil(log2 n))-ruling set each
    adopt an anchor from their radius-2*ceil(log2 n) ball (anchors
    touching an earlier one are dropped; the separation makes that rare).
    Peeling layers of equal distance to the anchor set, farthest first:
    the unassigned nodes of a layer induce paths and cycles, a maximal
    independent set of their interior joins ``s``, and a bounded greedy
    sweep settles the leftovers (``s`` when possible, else ``f``).  The
    anchors are absorbed last via :func:`extend_decomposition`.
    """
    if g.max_degree() > 3:
        raise PreconditionError("graph is not subcubic")
    if g.n == 0:
        return ForestDecomposition(frozenset(), frozenset(), (), 0, 0)
    n = g.n
    lg = _ceil_log2(n)
    alpha = max(1, 4 * lg)
    beta = max(alpha, 8 * lg)
    centers = ruling_set(g, alpha, beta)
    ruling_rounds = alpha * max(1, (n - 1).bit_length()) + beta
    ball_r = 2 * lg

    anchors: list[Anchor] = []
    kept: set[int] = set()
    for u in sorted(centers):
        anchor = find_anchor(g, u, ball_r)
        nodes = anchor.nodes()
        if any(v in kept or any(w in kept for w in g.adjacency[v])
               for v in nodes):
            log.warning("anchor of center %d touches an earlier anchor; "
                        "dropped", u)
            continue
        anchors.append(anchor)
        kept |= nodes

    dist = g.bfs_distances(sorted(kept))
    if min(dist) < 0:
        raise RecolorError("a component ended up without an anchor")
    dmax = max(dist)
    layers: list[list[int]] = [[] for _ in range(dmax + 1)]
    for v, d in enumerate(dist):
        layers[d].append(v)

    # Interior MIS of every layer, computed up front (layers are
    # disjoint, so the phases run in parallel; charge the slowest).
    mis_sets: list[set[int]] = [set() for _ in range(dmax + 1)]
    mis_rounds = 0
    for i in range(1, dmax + 1):
        inside = set(layers[i])
        for v in layers[i]:
            if sum(w in inside for w in g.adjacency[v]) > 2:
                raise RecolorError("distance layer induces degree above two")
        interior = [v for v in layers[i]
                    if sum(w in inside for w in g.adjacency[v]) == 2]
        mis_sets[i], rr = _linear_mis(g, interior)
        mis_rounds = max(mis_rounds, rr)

    in_s: set[int] = set()
    in_f: set[int] = set()
    layer_rounds = 0
    for i in range(dmax, 0, -1):
        in_s |= mis_sets[i]
        rest = [v for v in layers[i] if v not in mis_sets[i]]
        piece = 0
        if rest:
            sub, _ = g.induced(rest)
            piece = max(len(c) for c in sub.connected_components())
            if piece > _LAYER_PIECE_CAP:
                raise RecolorError(
                    f"leftover layer piece of {piece} nodes; expected "
                    f"bounded pieces")
        for v in rest:
            if any(w in in_s for w in g.adjacency[v]):
                in_f.add(v)
            else:
                in_s.add(v)
        layer_rounds += 2 + piece

    pre_comps = _forest_components(g, in_f)
    p = 0
    for comp in pre_comps:
        sub, _ = g.induced(comp)
        if not sub.is_tree():
            raise RecolorError("layer peeling closed a forest cycle")
        p = max(p, _tree_radius(sub))
    r = max(4, 8 * lg,
            2 * max((_set_diameter(g, a.nodes()) for a in anchors),
                    default=0))
    s_extra, f_extra = extend_decomposition(
        g, anchors, frozenset(in_s), frozenset(in_f), p, r)
    in_s |= s_extra
    in_f |= f_extra

    components = _forest_components(g, in_f)
    radius = 0
    for comp in components:
        sub, _ = g.induced(comp)
        radius = max(radius, _tree_radius(sub))
    rounds = (2 * ball_r + ruling_rounds + dmax + mis_rounds
              + layer_rounds + r + 2)
    dec = ForestDecomposition(frozenset(in_s), frozenset(in_f),
                              components, radius, rounds)
    check_forest_decomposition(g, dec)
    return dec


# ---------------------------------------------------------------------------
# 3+1 recoloring.
# ---------------------------------------------------------------------------

def recolor_subcubic_3plus1(inst: RecoloringInstance) -> RecolorRun:
    """Recolor a subcubic graph between two proper 3-colorings with one
    spare color, in a schedule of logarithmic length.

    Split the nodes into an independent set and a shallow forest; park
    the independent set on the spare color, recolor every forest
    component to its target within the base palette (the parked
    neighbors cannot conflict), then land the parked nodes.
    """
    from .basic import _merge_parallel

    g = inst.g
    if g.max_degree() > 3:
        raise PreconditionError("graph is not subcubic")
    if inst.k != 3:
        raise PreconditionError("the forest split targets 3-colorings")
    if inst.c < 1:
        raise PreconditionError("one spare color is required")
    dec = stable_forest_decomposition(g)
    spare = inst.k + 1

    builder = ScheduleBuilder(inst.s.colors)
    if dec.s:
        builder.apply({v: spare for v in dec.s})
    parts = []
    comp_rounds = 0
    for comp in dec.components:
        sub, _ = g.induced(comp)
        a = Coloring.of([inst.s[v] for v in comp], 3)
        b = Coloring.of([inst.t[v] for v in comp], 3)
        run = recolor_tree_plain(sub, a, b)
        comp_rounds = max(comp_rounds, run.rounds)
        parts.append((run.schedule, comp))
    _merge_parallel(builder, parts)
    if dec.s:
        builder.apply({v: inst.t[v] for v in dec.s})
    sch = builder.build()
    report = verify_strong(inst, sch)
    if not report.ok:
        raise RecolorError(f"subcubic 3+1 schedule invalid: {report.violation}")
    return RecolorRun(sch, dec.rounds + comp_rounds + 4)
