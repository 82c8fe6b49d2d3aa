"""Tree recoloring via light labelings and leaf identification.

Two independent pieces of machinery live here.

* ``light_labeling`` iterates a rake-and-compress step -- remove every
  node of degree at most one, and every degree-2 node lying on a chain
  of at least three consecutive degree-2 nodes -- and records for each
  node the iteration at which it disappeared.  The result is *light*:
  every node labeled ``i`` has at most two neighbours of label >= i, at
  most one of which exceeds ``i``, and no two adjacent nodes of label
  ``i`` both have a neighbour of larger label.  The number of
  iterations grows logarithmically with the tree size.
  ``decompose_small_components`` and ``decompose_for_lists`` turn such
  a labeling into an independent set whose removal leaves only tiny,
  respectively shallow, components.

* ``recolor_tree_plain`` and ``recolor_tree_list`` recolor a shallow
  tree by repeatedly identifying the leaves that have a grandparent
  with that grandparent, until only one edge survives.  Each identified
  leaf keeps tracking the color of its representative ("mirroring"),
  so a schedule for the contracted edge expands to one for the whole
  tree.  Running the contraction from both endpoint colorings and
  gluing the halves yields a schedule whose length is linear in the
  tree radius.

``recolor_tree_3plus1`` and ``recolor_tree_list4`` combine the halves:
constant-length recoloring with one spare color, and logarithmic-length
list recoloring when every list has at least four colors.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PreconditionError, RecolorError
from .graphs import (
    Coloring,
    Graph,
    ListAssignment,
    is_independent_set,
    is_maximal_independent_set,
    is_proper,
    is_proper_list,
)
from .oracle import schedule_from_moves, shortest
from .schedule import (
    RecoloringInstance,
    RecolorRun,
    Schedule,
    ScheduleBuilder,
    verify_strong,
)

#: Frozen regression bound on the schedule length of
#: :func:`recolor_tree_3plus1` (one parking step, at most three moves
#: inside a two-node component, one landing step).
TREE3PLUS1_LENGTH_BOUND = 5

#: Runaway guard for the identification engine: each side spends one
#: step per contraction wave (at most the root eccentricity plus one)
#: and at most three contracted-edge moves, plus the occasional detour
#: when lists differ.  Anything beyond this bound is a bug, not a long
#: schedule; tests pin the much smaller measured constants.
_PLAIN_LENGTH_FACTOR = 6
_PLAIN_LENGTH_OFFSET = 24


def _require_tree(g: Graph) -> None:
    if not g.is_tree():
        raise PreconditionError("input graph is not a tree")


# ---------------------------------------------------------------------------
# Light labelings.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LightLabeling:
    """Per-node iteration indices of the rake-and-compress process."""

    labels: tuple[int, ...]
    rounds: int

    @property
    def h(self) -> int:
        return max(self.labels, default=0)

    def level(self, i: int) -> list[int]:
        return [v for v, lab in enumerate(self.labels) if lab == i]


def light_labeling(g: Graph) -> LightLabeling:
    """Label every node with the rake-and-compress iteration removing it.

    One iteration removes, simultaneously, all nodes of degree <= 1 and
    all degree-2 nodes that belong to a chain of at least three
    consecutive degree-2 nodes.  Iterating until the tree is empty
    takes O(log n) iterations; each needs radius-2 knowledge, so the
    round charge is twice the number of iterations.
    """
    _require_tree(g)
    n = g.n
    labels = [0] * n
    degree = [g.degree(v) for v in range(n)]
    alive = [True] * n
    remaining = n
    iteration = 0
    while remaining:
        iteration += 1
        doomed: list[int] = []
        is_two = [alive[v] and degree[v] == 2 for v in range(n)]
        seen = [False] * n
        for v in range(n):
            if alive[v] and degree[v] <= 1:
                doomed.append(v)
            elif is_two[v] and not seen[v]:
                # Walk the maximal chain of degree-2 nodes through v.
                chain = [v]
                seen[v] = True
                for start in g.neighbors(v):
                    prev, cur = v, start
                    while is_two[cur] and not seen[cur]:
                        seen[cur] = True
                        chain.append(cur)
                        nxt = [x for x in g.neighbors(cur)
                               if alive[x] and x != prev]
                        if not nxt:
                            break
                        prev, cur = cur, nxt[0]
                if len(chain) >= 3:
                    doomed.extend(chain)
        for v in doomed:
            alive[v] = False
            labels[v] = iteration
            for u in g.neighbors(v):
                degree[u] -= 1
        remaining -= len(doomed)
    return LightLabeling(tuple(labels), rounds=2 * iteration)


def is_light(g: Graph, labeling: LightLabeling) -> bool:
    """Check both lightness conditions of a labeling.

    1. every node labeled ``i`` has at most two neighbours with label
       >= i, at most one of which has label >= i + 1;
    2. no two adjacent nodes labeled ``i`` both have a neighbour with
       label >= i + 1.
    """
    lab = labeling.labels
    if len(lab) != g.n:
        raise PreconditionError("labeling size does not match the graph")
    higher = [False] * g.n
    for v in range(g.n):
        ge = [u for u in g.neighbors(v) if lab[u] >= lab[v]]
        if len(ge) > 2:
            return False
        above = [u for u in ge if lab[u] > lab[v]]
        if len(above) > 1:
            return False
        higher[v] = bool(above)
    for v in range(g.n):
        for u in g.neighbors(v):
            if u < v and lab[u] == lab[v] and higher[u] and higher[v]:
                return False
    return True


def _label_paths(g: Graph, labels: tuple[int, ...], level: list[int]) -> list[list[int]]:
    """Split one label class into its maximal same-label paths.

    Within a class, every node has at most two same-or-higher-label
    neighbours, so the class induces disjoint paths in the tree.
    """
    in_level = set(level)
    paths: list[list[int]] = []
    visited: set[int] = set()
    for v in sorted(level):
        if v in visited:
            continue
        nbrs = [u for u in g.neighbors(v) if u in in_level]
        if len(nbrs) > 2:
            raise RecolorError("label class with degree above two")
        if len(nbrs) == 2:
            continue  # interior node; the walk reaches it from an endpoint
        path = [v]
        visited.add(v)
        step = [u for u in nbrs if u not in visited]
        while step:
            cur = step[0]
            path.append(cur)
            visited.add(cur)
            step = [u for u in g.neighbors(cur)
                    if u in in_level and u not in visited]
        paths.append(path)
    # Any node not reached from an endpoint would lie on a same-label
    # cycle, impossible in a tree.
    for v in level:
        if v not in visited:
            raise RecolorError("same-label cycle in a tree labeling")
    return paths


def _color_path(path: list[int], forbid: dict[int, int]) -> tuple[dict[int, int], int]:
    """Properly 3-color one path, avoiding one forbidden color per node.

    Starts from the node identifiers, runs the bit-index color
    reduction along the path until at most six values remain, removes
    colors 4..6, then fixes the endpoints against their already-colored
    higher-label neighbour.  Returns the colors in {1,2,3} and the
    number of synchronous rounds charged.
    """
    m = len(path)
    color = {v: v for v in path}
    rounds = 0
    if m > 1:
        # Deterministic direction: walk from the smaller-id endpoint.
        if path[0] > path[-1]:
            path = list(reversed(path))
        while max(color.values()) > 5:
            new = {}
            for i, v in enumerate(path):
                if i + 1 < m:
                    succ = color[path[i + 1]]
                    own = color[v]
                    bit = 0
                    while (own >> bit) & 1 == (succ >> bit) & 1:
                        bit += 1
                    new[v] = 2 * bit + ((own >> bit) & 1)
                else:
                    new[v] = color[v] & 1
            color = new
            rounds += 1
        for drop in (5, 4, 3):
            for i, v in enumerate(path):
                if color[v] == drop:
                    used = {color[path[j]] for j in (i - 1, i + 1)
                            if 0 <= j < m}
                    color[v] = min(c for c in (0, 1, 2) if c not in used)
            rounds += 1
        for v in path:
            color[v] += 1
    else:
        color[path[0]] = 1
        rounds += 1
    # Endpoint fix: a node conflicting with its (unique) finished
    # higher-label neighbour switches to a free color.  Conflicting
    # nodes are never adjacent (second lightness condition).
    fixes = {}
    for i, v in enumerate(path):
        f = forbid.get(v)
        if f is not None and color[v] == f:
            used = {f} | {color[path[j]] for j in (i - 1, i + 1) if 0 <= j < m}
            fixes[v] = min(c for c in (1, 2, 3) if c not in used)
    color.update(fixes)
    rounds += 1
    return color, rounds


def _three_color(g: Graph, labeling: LightLabeling) -> tuple[list[int], int]:
    """Proper 3-coloring guided by a light labeling, with round charge."""
    labels = labeling.labels
    colors = [0] * g.n
    rounds = 0
    for i in range(labeling.h, 0, -1):
        level = labeling.level(i)
        if not level:
            continue
        level_rounds = 0
        for path in _label_paths(g, labels, level):
            forbid = {}
            for v in path:
                above = [u for u in g.neighbors(v) if labels[u] > labels[v]]
                if above:
                    forbid[v] = colors[above[0]]
            path_colors, r = _color_path(path, forbid)
            level_rounds = max(level_rounds, r)
            for v, c in path_colors.items():
                colors[v] = c
        rounds += level_rounds
    return colors, rounds


def tree_3coloring(g: Graph, labeling: LightLabeling | None = None) -> Coloring:
    """Proper 3-coloring of a tree in O(log n) simulated rounds."""
    _require_tree(g)
    if labeling is None:
        labeling = light_labeling(g)
    colors, _ = _three_color(g, labeling)
    x = Coloring.of(colors, palette_size=3)
    if not is_proper(g, x):
        raise RecolorError("tree 3-coloring failed properness check")
    return x


# ---------------------------------------------------------------------------
# Decompositions driven by a light labeling.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TreeDecomposition:
    """Independent set ``s`` plus the components it cuts the tree into.

    Variant "A": ``s`` is a maximal independent set and every component
    has at most two nodes.  Variant "B": no node has two neighbours in
    ``s`` and every component has radius at most a multiple of the
    labeling height (``radius`` records the measured maximum).
    """

    s: frozenset[int]
    components: tuple[tuple[int, ...], ...]
    variant: str
    rounds: int
    radius: int | None = None


def _components_of_rest(g: Graph, s: frozenset[int]) -> tuple[tuple[int, ...], ...]:
    rest = [v for v in range(g.n) if v not in s]
    if not rest:
        return ()
    sub, local = g.induced(rest)
    back = {i: v for v, i in local.items()}
    comps = sub.connected_components()
    return tuple(tuple(sorted(back[i] for i in comp)) for comp in comps)


def decompose_small_components(g: Graph, labeling: LightLabeling,
                               x3: Coloring) -> TreeDecomposition:
    """Maximal independent set leaving only components of size <= 2.

    Sweep the labels downward.  At label ``i``, first add every label-i
    node that still has an unselected higher-label neighbour, then for
    each of the three color classes add the label-i nodes of that color
    with no selected neighbour.  Lightness makes each addition wave an
    independent set, and the color sub-sweeps enforce maximality.
    """
    _require_tree(g)
    if not is_light(g, labeling):
        raise PreconditionError("labeling is not light")
    if x3.palette_size != 3 or not is_proper(g, x3):
        raise PreconditionError("x3 is not a proper 3-coloring")
    labels = labeling.labels
    selected = [False] * g.n
    rounds = 0
    for i in range(labeling.h, 0, -1):
        level = labeling.level(i)
        for v in level:
            if any(labels[u] > i and not selected[u] for u in g.neighbors(v)):
                selected[v] = True
        rounds += 2
        for j in (1, 2, 3):
            for v in level:
                if (not selected[v] and x3[v] == j
                        and not any(selected[u] for u in g.neighbors(v))):
                    selected[v] = True
            rounds += 2
    s = frozenset(v for v in range(g.n) if selected[v])
    components = _components_of_rest(g, s)
    dec = TreeDecomposition(s, components, "A", rounds)
    check_decomposition(g, dec)
    return dec


def decompose_for_lists(g: Graph, labeling: LightLabeling) -> TreeDecomposition:
    """Independent set with no node seeing it twice, shallow components.

    ``R`` collects the nodes with no strictly-higher-label neighbour;
    inside the tree, ``R`` induces disjoint paths.  Greedily add
    ``R``-nodes to ``s`` (ascending identifier), skipping any node that
    already has a selected neighbour or whose selection would give some
    ``R``-node two selected neighbours.  That keeps selection gaps
    along every ``R``-path short, which is what bounds the component
    radius.  A node *outside* ``R`` can still end up seeing two
    selected nodes (one same-label neighbour plus one higher-label
    neighbour, both legitimately in ``R``), so a repair pass then drops
    all but the smallest-id selected neighbour of any such node; each
    drop merges a constant amount of radius into one component.
    """
    _require_tree(g)
    if not is_light(g, labeling):
        raise PreconditionError("labeling is not light")
    labels = labeling.labels
    n = g.n
    in_r = [all(labels[u] <= labels[v] for u in g.neighbors(v))
            for v in range(n)]
    s_count = [0] * n
    selected = [False] * n
    for v in range(n):
        if not in_r[v]:
            continue
        if any(selected[u] for u in g.neighbors(v)):
            continue
        if any(in_r[u] and s_count[u] >= 1 for u in g.neighbors(v)):
            continue
        selected[v] = True
        for u in g.neighbors(v):
            s_count[u] += 1
    for w in range(n):
        owners = [u for u in g.neighbors(w) if selected[u]]
        for u in owners[1:]:
            selected[u] = False
    s = frozenset(v for v in range(n) if selected[v])
    components = _components_of_rest(g, s)
    radius = 0
    for comp in components:
        if len(comp) > 1:
            sub, _ = g.induced(comp)
            radius = max(radius, _tree_radius(sub))
    rounds = labeling.rounds + 8
    dec = TreeDecomposition(s, components, "B", rounds, radius=radius)
    check_decomposition(g, dec)
    return dec


def check_decomposition(g: Graph, dec: TreeDecomposition,
                        radius_bound: int | None = None) -> None:
    """Validate the variant invariants; raise ``RecolorError`` if broken."""
    if not is_independent_set(g, dec.s):
        raise RecolorError("decomposition set is not independent")
    covered = set(dec.s)
    for comp in dec.components:
        covered.update(comp)
    if covered != set(range(g.n)):
        raise RecolorError("decomposition does not cover the tree")
    if dec.variant == "A":
        if not is_maximal_independent_set(g, dec.s):
            raise RecolorError("variant-A set is not maximal")
        if any(len(comp) > 2 for comp in dec.components):
            raise RecolorError("variant-A component larger than two nodes")
    elif dec.variant == "B":
        for v in range(g.n):
            if sum(u in dec.s for u in g.neighbors(v)) > 1:
                raise RecolorError("a node has two selected neighbours")
        if radius_bound is not None and (dec.radius or 0) > radius_bound:
            raise RecolorError("variant-B component radius above bound")
    else:
        raise RecolorError(f"unknown decomposition variant {dec.variant!r}")


def _tree_radius(g: Graph) -> int:
    """Exact radius of a tree: half the diameter, rounded up."""
    far = g.bfs_distances([0])
    a = far.index(max(far))
    da = g.bfs_distances([a])
    return (max(da) + 1) // 2


def _tree_center(g: Graph) -> int:
    """A center node of a tree, found by double BFS along a diameter."""
    far = g.bfs_distances([0])
    a = far.index(max(far))
    da = g.bfs_distances([a])
    b = da.index(max(da))
    # Walk the a-b path halfway.
    db = g.bfs_distances([b])
    diam = da[b]
    on_path = [v for v in range(g.n) if da[v] + db[v] == diam]
    mid = diam // 2
    centers = [v for v in on_path if da[v] == mid]
    return min(centers)


# ---------------------------------------------------------------------------
# Identification engine.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Identification:
    """One contraction event: ``node`` starts mirroring ``rep``.

    ``witness`` is the shared neighbour that makes the mirrored color
    safe; it is always the parent of ``node`` in the rooted tree.
    """

    node: int
    rep: int
    witness: int


@dataclass(frozen=True)
class IdentificationForest:
    """Contraction history of a rooted tree down to one edge (or node)."""

    root: int
    survivors: tuple[int, ...]
    waves: tuple[tuple[Identification, ...], ...]


def build_identification(g: Graph, root: int) -> IdentificationForest:
    """Repeatedly identify the leaves that have a grandparent with it.

    When only the root and its children remain, the smallest child
    becomes the second survivor and absorbs its siblings (the root is
    the shared neighbour).  Representative chains always point from an
    earlier-removed node to a later-removed or surviving one, so the
    mirroring relation is acyclic.
    """
    _require_tree(g)
    n = g.n
    parent = [-1] * n
    order = [root]
    seen = [False] * n
    seen[root] = True
    for v in order:
        for u in g.neighbors(v):
            if not seen[u]:
                seen[u] = True
                parent[u] = v
                order.append(u)
    kids = [0] * n
    for v in range(n):
        if parent[v] >= 0:
            kids[parent[v]] += 1
    alive = [True] * n
    remaining = n
    leaves = {v for v in range(n) if v != root and kids[v] == 0}
    waves: list[tuple[Identification, ...]] = []
    while remaining > 2:
        batch = sorted(v for v in leaves if parent[v] != root)
        if batch:
            wave = tuple(Identification(v, parent[parent[v]], parent[v])
                         for v in batch)
        else:
            siblings = sorted(leaves)
            z = siblings[0]
            wave = tuple(Identification(v, z, root) for v in siblings[1:])
        for ident in wave:
            v = ident.node
            alive[v] = False
            leaves.discard(v)
            p = parent[v]
            kids[p] -= 1
            if kids[p] == 0 and p != root:
                leaves.add(p)
        remaining -= len(wave)
        waves.append(wave)
    survivors = tuple(v for v in range(n) if alive[v])
    return IdentificationForest(root, survivors, tuple(waves))


def _list_of(lists: ListAssignment, v: int) -> tuple[int, ...]:
    return tuple(sorted(lists[v]))


def same_color_wrt(u: int, v: int, w: int, lists: ListAssignment,
                   current) -> int:
    """Color an identified leaf ``u`` so it can stand in for ``v``.

    ``u`` and ``v`` share the neighbour ``w``.  If the lists of ``u``
    and ``w`` differ, ``u`` takes the smallest color of ``L(u)``
    outside ``L(w)`` (a constant choice).  Otherwise ``u`` copies the
    color of ``v`` when that color is available, and falls back to the
    smallest list color differing from the color of ``w``.  Every case
    returns a color different from the color of ``w``.
    """
    lu = _list_of(lists, u)
    lw = set(lists[w])
    if set(lu) != lw:
        diff = [c for c in lu if c not in lw]
        if diff:
            return diff[0]
    cv = current[v]
    if cv in lu:
        return cv
    cw = current[w]
    return min(c for c in lu if c != cw)


class _MirrorEngine:
    """Full-tree coloring tracker for one side of the contraction.

    The contracted schedule only ever moves surviving nodes; every
    identified node owes its color to ``same_color_wrt`` over its
    representative and witness.  After each contracted event the engine
    recomputes the owed colors (latest identification first, so all
    dependencies are already settled) and emits the difference as
    schedule steps: greedy maximal independent batches of moves that
    stay proper, falling back to an exact per-component search when a
    blocked shift chain leaves no batch (mixed lists can wedge the
    greedy order; the residual components are short identified chains,
    so the search space stays tiny).  With equal lists the owed color
    is a plain copy of the representative and every event settles in a
    single step.
    """

    _FORCE_CAP = 200_000

    def __init__(self, g: Graph, lists: ListAssignment,
                 forest: IdentificationForest, start: Coloring):
        self.g = g
        self.lists = lists
        self.forest = forest
        self.colors = list(start)
        self.steps: list[dict[int, int]] = []
        self.ident: dict[int, Identification] = {}
        self.dead_order: list[int] = []

    def _owed(self, ident: Identification, col) -> int:
        return same_color_wrt(ident.node, ident.rep, ident.witness,
                              self.lists, col)

    def _settle_targets(self, intents: dict[int, int]) -> dict[int, int]:
        """Fixpoint colors after the intended surviving-node moves.

        Identified nodes are recomputed newest-first, so the colors
        their rule reads (representative and witness, both removed
        later or never) are already settled.
        """
        target: dict[int, int] = dict(intents)
        colors = self.colors

        class _View:
            def __getitem__(self, x: int) -> int:
                return target.get(x, colors[x])

        view = _View()
        for v in reversed(self.dead_order):
            target[v] = self._owed(self.ident[v], view)
        return {v: c for v, c in target.items() if c != self.colors[v]}

    def commit(self, intents: dict[int, int] | None = None) -> None:
        """Apply surviving-node moves plus the mirror settlement."""
        intents = dict(intents or {})
        for v, c in intents.items():
            if c not in self.lists[v]:
                raise RecolorError("move outside the node's list")
        delta = self._settle_targets(intents)
        while delta:
            step: dict[int, int] = {}
            for v in sorted(delta):
                c = delta[v]
                if all(x not in step and self.colors[x] != c
                       for x in self.g.neighbors(v)):
                    step[v] = c
            if not step:
                self._force(delta)
                return
            self._emit(step)
            for v in list(delta):
                if self.colors[v] == delta[v]:
                    del delta[v]

    def _force(self, delta: dict[int, int]) -> None:
        """Exactly settle a blocked residual, one component at a time.

        Everything outside ``delta`` is frozen; within each connected
        piece of pending nodes a breadth-first search over list-proper
        single moves reaches the owed colors by the shortest route.
        """
        pending = set(delta)
        while pending:
            comp = [min(pending)]
            stack = [comp[0]]
            seen = {comp[0]}
            while stack:
                v = stack.pop()
                for u in self.g.neighbors(v):
                    if u in pending and u not in seen:
                        seen.add(u)
                        comp.append(u)
                        stack.append(u)
            pending -= seen
            for v, c in self._component_moves(sorted(comp), delta):
                self._emit({v: c})

    def _component_moves(self, comp: list[int],
                         delta: dict[int, int]) -> list[tuple[int, int]]:
        idx = {v: i for i, v in enumerate(comp)}
        allowed = {}
        for v in comp:
            frozen = {self.colors[x] for x in self.g.neighbors(v)
                      if x not in idx}
            allowed[v] = [c for c in _list_of(self.lists, v)
                          if c not in frozen]
        start = tuple(self.colors[v] for v in comp)
        goal = tuple(delta[v] for v in comp)
        parents: dict[tuple[int, ...],
                      tuple[tuple[int, ...], tuple[int, int]] | None] = {
            start: None}
        frontier = [start]
        while frontier:
            nxt: list[tuple[int, ...]] = []
            for state in frontier:
                for i, v in enumerate(comp):
                    taken = {state[idx[x]] for x in self.g.neighbors(v)
                             if x in idx}
                    for c in allowed[v]:
                        if c == state[i] or c in taken:
                            continue
                        child = state[:i] + (c,) + state[i + 1:]
                        if child in parents:
                            continue
                        parents[child] = (state, (v, c))
                        if child == goal:
                            moves = []
                            cur = child
                            while parents[cur] is not None:
                                cur, move = parents[cur]
                                moves.append(move)
                            return list(reversed(moves))
                        nxt.append(child)
                        if len(parents) > self._FORCE_CAP:
                            raise RecolorError(
                                "mirror settlement search exceeded its cap")
            frontier = nxt
        raise RecolorError("mirror settlement is infeasible")

    def _emit(self, step: dict[int, int]) -> None:
        for v, c in step.items():
            self.colors[v] = c
        self.steps.append(dict(step))

    def run_waves(self) -> None:
        for wave in self.forest.waves:
            for ident in wave:
                self.ident[ident.node] = ident
                self.dead_order.append(ident.node)
            self.commit()
            self._check_invariant()

    def _check_invariant(self) -> None:
        for v in self.dead_order:
            if self._owed(self.ident[v], self.colors) != self.colors[v]:
                raise RecolorError("mirror invariant broken")


def _edge_plan(lists: ListAssignment, survivors: tuple[int, ...],
               g: Graph) -> tuple[int, ...]:
    """Lexicographically smallest proper list coloring of the survivors."""
    if len(survivors) == 1:
        return (min(lists[survivors[0]]),)
    a, b = survivors
    adjacent = b in g.neighbors(a)
    for ca in _list_of(lists, a):
        for cb in _list_of(lists, b):
            if not adjacent or ca != cb:
                return (ca, cb)
    raise RecolorError("no proper coloring of the contracted edge")


def _edge_moves(lists: ListAssignment, survivors: tuple[int, ...],
                g: Graph, start: tuple[int, ...],
                goal: tuple[int, ...]) -> list[tuple[int, int]]:
    """Shortest single-move recoloring of the contracted survivors."""
    if start == goal:
        return []
    if len(survivors) == 1:
        return [(survivors[0], goal[0])]
    a, b = survivors
    adjacent = b in g.neighbors(a)
    frontier = [start]
    parents: dict[tuple[int, ...], tuple[tuple[int, ...], tuple[int, int]]] = {
        start: (start, (-1, -1))}
    while frontier:
        nxt: list[tuple[int, ...]] = []
        for state in frontier:
            for idx, node in enumerate(survivors):
                other = state[1 - idx]
                for c in _list_of(lists, node):
                    if c == state[idx] or (adjacent and c == other):
                        continue
                    child = (c, other) if idx == 0 else (state[0], c)
                    if child in parents:
                        continue
                    parents[child] = (state, (node, c))
                    if child == goal:
                        moves = []
                        cur = child
                        while cur != start:
                            cur, move = parents[cur]
                            moves.append(move)
                        return list(reversed(moves))
                    nxt.append(child)
        frontier = nxt
    raise RecolorError("contracted edge recoloring is infeasible")


def _identification_side(g: Graph, lists: ListAssignment,
                         forest: IdentificationForest,
                         start: Coloring) -> _MirrorEngine:
    engine = _MirrorEngine(g, lists, forest, start)
    engine.run_waves()
    goal = _edge_plan(lists, forest.survivors, g)
    current = tuple(engine.colors[v] for v in forest.survivors)
    for node, color in _edge_moves(lists, forest.survivors, g, current, goal):
        engine.commit({node: color})
        engine._check_invariant()
    return engine


def _recolor_by_identification(g: Graph, alpha: Coloring, beta: Coloring,
                               lists: ListAssignment,
                               root: int | None) -> RecolorRun:
    _require_tree(g)
    if lists.min_size() < 3:
        raise PreconditionError("every list needs at least three colors")
    for name, x in (("alpha", alpha), ("beta", beta)):
        if not is_proper_list(g, x, lists):
            raise PreconditionError(f"{name} is not a proper list coloring")
    if root is None:
        root = _tree_center(g)
    forest = build_identification(g, root)
    side_a = _identification_side(g, lists, forest, alpha)
    side_b = _identification_side(g, lists, forest, beta)
    if side_a.colors != side_b.colors:
        raise RecolorError("contraction sides disagree on the meet coloring")

    builder = ScheduleBuilder(alpha.colors)
    for step in side_a.steps:
        builder.apply(step)
    # Replay the second side backwards from the meet coloring.
    states = [tuple(beta.colors)]
    for step in side_b.steps:
        state = list(states[-1])
        for v, c in step.items():
            state[v] = c
        states.append(tuple(state))
    for i in range(len(side_b.steps), 0, -1):
        builder.apply({v: states[i - 1][v] for v in side_b.steps[i - 1]})
    sch = builder.build()

    palette = max(max(lists[v]) for v in range(g.n))
    inst = RecoloringInstance(g, alpha.with_palette(palette),
                              beta.with_palette(palette), palette, 0)
    report = verify_strong(inst, sch)
    if not report.ok:
        raise RecolorError(f"identification schedule invalid: {report.violation}")
    for i in range(1, sch.length + 1):
        for v in sch.change_set(i):
            if sch.color_at(v, i) not in lists[v]:
                raise RecolorError("schedule leaves a node's list")
    ecc = max(g.bfs_distances([root]))
    if sch.length > _PLAIN_LENGTH_FACTOR * ecc + _PLAIN_LENGTH_OFFSET:
        raise RecolorError("identification schedule is anomalously long")
    rounds = 2 * len(forest.waves) + 8
    return RecolorRun(sch, rounds)


def recolor_tree_plain(g: Graph, alpha: Coloring, beta: Coloring,
                       root: int | None = None) -> RecolorRun:
    """Recolor a tree between two proper 3-colorings within 3 colors.

    Schedule length is linear in the eccentricity of ``root`` (the tree
    center when omitted).
    """
    if alpha.palette_size < 3 or beta.palette_size < 3:
        alpha = alpha.with_palette(3)
        beta = beta.with_palette(3)
    if max(alpha.colors) > 3 or max(beta.colors) > 3:
        raise PreconditionError("plain tree recoloring expects 3-colorings")
    lists = ListAssignment.uniform(g.n, (1, 2, 3))
    return _recolor_by_identification(g, alpha, beta, lists, root)


def recolor_tree_list(g: Graph, alpha: Coloring, beta: Coloring,
                      lists: ListAssignment,
                      root: int | None = None) -> RecolorRun:
    """List version of :func:`recolor_tree_plain`; lists of size >= 3."""
    return _recolor_by_identification(g, alpha, beta, lists, root)


# ---------------------------------------------------------------------------
# Headline tree routines.
# ---------------------------------------------------------------------------

def _component_moves(g: Graph, comp: tuple[int, ...], s: Coloring,
                     t: Coloring, k: int,
                     memo: dict) -> Schedule:
    """Shortest recoloring of a <=2-node component within ``k`` colors."""
    sub, local = g.induced(comp)
    s_loc = tuple(s[v] for v in comp)
    t_loc = tuple(t[v] for v in comp)
    key = (k, sub.m, s_loc, t_loc)
    if key not in memo:
        inst = RecoloringInstance(sub, Coloring.of(s_loc, k),
                                  Coloring.of(t_loc, k), k, 0)
        moves = shortest(inst)
        if moves is None:
            raise RecolorError("small component is not recolorable")
        memo[key] = moves
    return schedule_from_moves(s_loc, memo[key])


def recolor_tree_3plus1(inst: RecoloringInstance) -> RecolorRun:
    """Constant-length recoloring of a tree with one spare color.

    Park a maximal independent set (chosen so the rest splits into
    components of at most two nodes) on color ``k+1``, recolor each
    component to its target within the first ``k`` colors, then land
    the parked nodes on their targets.  With at most two colors the
    spare-color budget already meets the parking scheme's needs, so
    that case is delegated to :func:`recolor_trivial`.
    """
    from .basic import _merge_parallel, recolor_trivial

    _require_tree(inst.g)
    if inst.c < 1:
        raise PreconditionError("one spare color is required")
    if inst.k <= 2:
        return recolor_trivial(inst)
    g = inst.g
    labeling = light_labeling(g)
    colors3, color_rounds = _three_color(g, labeling)
    x3 = Coloring.of(colors3, 3)
    if not is_proper(g, x3):
        raise RecolorError("tree 3-coloring failed properness check")
    dec = decompose_small_components(g, labeling, x3)

    builder = ScheduleBuilder(inst.s.colors)
    builder.apply({v: inst.k + 1 for v in dec.s})
    memo: dict = {}
    parts = [(_component_moves(g, comp, inst.s, inst.t, inst.k, memo), comp)
             for comp in dec.components]
    _merge_parallel(builder, parts)
    builder.apply({v: inst.t[v] for v in dec.s})
    sch = builder.build()
    report = verify_strong(inst, sch)
    if not report.ok:
        raise RecolorError(f"tree 3+1 schedule invalid: {report.violation}")
    if sch.length > TREE3PLUS1_LENGTH_BOUND:
        raise RecolorError("tree 3+1 schedule exceeded its length bound")
    rounds = labeling.rounds + color_rounds + dec.rounds + 4
    return RecolorRun(sch, rounds)


def recolor_tree_list4(g: Graph, alpha: Coloring, beta: Coloring,
                       lists: ListAssignment) -> RecolorRun:
    """List recoloring of a tree when every list has >= 4 colors.

    Choose an independent set ``S`` no node sees twice, whose removal
    leaves components of logarithmic radius.  Greedily build a helper
    coloring of the remainder avoiding, next to each ``S``-node, both
    its current and its target color.  Recolor every component to the
    helper coloring (lists shrunk by the neighbouring parked color),
    move ``S`` to its targets in one step, and recolor the components
    to their targets (lists shrunk by the new parked color).
    """
    from .basic import _merge_parallel

    _require_tree(g)
    if lists.min_size() < 4:
        raise PreconditionError("every list needs at least four colors")
    for name, x in (("alpha", alpha), ("beta", beta)):
        if not is_proper_list(g, x, lists):
            raise PreconditionError(f"{name} is not a proper list coloring")
    labeling = light_labeling(g)
    dec = decompose_for_lists(g, labeling)

    parked: dict[int, int] = {}
    for v in range(g.n):
        owners = [u for u in g.neighbors(v) if u in dec.s]
        if len(owners) > 1:
            raise RecolorError("a node has two parked neighbours")
        if owners:
            parked[v] = owners[0]

    gamma: dict[int, int] = {}
    for comp in dec.components:
        order = _bfs_order(g, comp)
        for v, par in order:
            banned = set()
            if v in parked:
                banned.update((alpha[parked[v]], beta[parked[v]]))
            if par is not None:
                banned.add(gamma[par])
            choice = [c for c in _list_of(lists, v) if c not in banned]
            if not choice:
                raise RecolorError("helper coloring ran out of colors")
            gamma[v] = choice[0]

    def shrunk(comp: tuple[int, ...], avoid) -> ListAssignment:
        return ListAssignment.of(
            [sorted(set(lists[v]) - ({avoid(v)} if v in parked else set()))
             for v in comp])

    def comp_run(comp, start, goal, sub_lists) -> RecolorRun:
        sub, local = g.induced(comp)
        a = Coloring.of([start[v] for v in comp])
        b = Coloring.of([goal[v] for v in comp])
        return recolor_tree_list(sub, a, b, sub_lists)

    builder = ScheduleBuilder(alpha.colors)
    alpha_map = {v: alpha[v] for v in range(g.n)}
    gamma_map = dict(gamma)
    rounds1 = 0
    parts = []
    for comp in dec.components:
        run = comp_run(comp, alpha_map, gamma_map,
                       shrunk(comp, lambda v: alpha[parked[v]]))
        rounds1 = max(rounds1, run.rounds)
        parts.append((run.schedule, comp))
    _merge_parallel(builder, parts)
    parked_moves = {v: beta[v] for v in dec.s if alpha[v] != beta[v]}
    if parked_moves:
        builder.apply(parked_moves)
    beta_map = {v: beta[v] for v in range(g.n)}
    rounds2 = 0
    parts = []
    for comp in dec.components:
        run = comp_run(comp, gamma_map, beta_map,
                       shrunk(comp, lambda v: beta[parked[v]]))
        rounds2 = max(rounds2, run.rounds)
        parts.append((run.schedule, comp))
    _merge_parallel(builder, parts)
    sch = builder.build()

    palette = max(max(lists[v]) for v in range(g.n))
    inst = RecoloringInstance(g, alpha.with_palette(palette),
                              beta.with_palette(palette), palette, 0)
    report = verify_strong(inst, sch)
    if not report.ok:
        raise RecolorError(f"tree list-4 schedule invalid: {report.violation}")
    for i in range(1, sch.length + 1):
        for v in sch.change_set(i):
            if sch.color_at(v, i) not in lists[v]:
                raise RecolorError("schedule leaves a node's list")
    rounds = dec.rounds + rounds1 + rounds2 + 2
    return RecolorRun(sch, rounds)


def _bfs_order(g: Graph, comp: tuple[int, ...]) -> list[tuple[int, int | None]]:
    """BFS order of a component as (node, parent) pairs, root first."""
    inside = set(comp)
    root = comp[0]
    order: list[tuple[int, int | None]] = [(root, None)]
    seen = {root}
    queue = [root]
    for v in queue:
        for u in g.neighbors(v):
            if u in inside and u not in seen:
                seen.add(u)
                order.append((u, v))
                queue.append(u)
    return order
