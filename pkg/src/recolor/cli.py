"""Batch command-line front end.

Subcommands generate instances, run the recoloring algorithms, verify
schedules, query the exact oracle, print tile-parity reports, run the
exhaustive parity-lemma check, and emit benchmark tables.  Exit codes:
0 success, 1 verification failure, 2 infeasible input or violated
precondition, 3 I/O or argument format trouble.  All output is
deterministic given the arguments and seed.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass

from . import basic, generate, grids, oracle, subcubic, trees
from .errors import PreconditionError, RecolorError
from .graphs import (Coloring, Graph, ListAssignment, ToroidalGrid,
                     build_complete, build_complete_bipartite, build_cycle,
                     build_balanced_3regular_tree, build_path, build_prism,
                     build_toroidal_grid, load_coloring, load_graph,
                     random_tree, save_coloring, save_graph)
from .schedule import (RecoloringInstance, RecolorRun, load_schedule,
                       save_schedule, verify_strong, verify_weak)

__all__ = ["main", "RunReport"]

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_INFEASIBLE = 2
EXIT_IO = 3


@dataclass(frozen=True)
class RunReport:
    """Outcome of one algorithm run."""

    algorithm: str
    n: int
    rounds: int
    length: int
    verified: bool
    wall_time: float

    def line(self) -> str:
        verdict = "ok" if self.verified else "fail"
        return f"rounds={self.rounds} length={self.length} verified={verdict}"


# ---------------------------------------------------------------------------
# graph specs: a file path, or an inline builder like "torus:4x7"
# ---------------------------------------------------------------------------

def _parse_spec(spec: str) -> Graph | None:
    kind, _, rest = spec.partition(":")
    if kind == "path" and rest.isdigit():
        return build_path(int(rest))
    if kind == "cycle" and rest.isdigit():
        return build_cycle(int(rest))
    if kind == "torus":
        dims = rest.split("x")
        if len(dims) == 2 and all(d.isdigit() for d in dims):
            return build_toroidal_grid(int(dims[0]), int(dims[1]))
    if kind == "kab":
        dims = rest.split("x")
        if len(dims) == 2 and all(d.isdigit() for d in dims):
            return build_complete_bipartite(int(dims[0]), int(dims[1]))
    if kind == "tree3reg" and rest.isdigit():
        return build_balanced_3regular_tree(int(rest))
    if spec == "prism":
        return build_prism()
    if spec == "k4":
        return build_complete(4)
    return None


def _load_graph_arg(spec: str) -> Graph:
    import os
    if os.path.exists(spec):
        return load_graph(spec)
    g = _parse_spec(spec)
    if g is None:
        raise ValueError(f"graph {spec!r} is neither a file nor an inline "
                         f"spec (path:N, cycle:N, torus:HxW, kab:AxB, "
                         f"tree3reg:D, prism, k4)")
    return g


def _as_torus(g: Graph) -> ToroidalGrid:
    """Recover toroidal structure from a plain labeled graph (node ids
    r*w + c), trying every dimension split."""
    if isinstance(g, ToroidalGrid):
        return g
    edges = set(g.edges())
    for h in range(3, g.n + 1):
        if g.n % h:
            continue
        w = g.n // h
        if w < 3:
            continue
        cand = build_toroidal_grid(h, w)
        if set(cand.edges()) == edges:
            return cand
    raise PreconditionError("graph is not a toroidal grid with h, w >= 3")


def _bipartition(g: Graph) -> list[int]:
    side = [-1] * g.n
    for root in range(g.n):
        if side[root] >= 0:
            continue
        side[root] = 0
        queue = [root]
        for v in queue:
            for u in g.adjacency[v]:
                if side[u] < 0:
                    side[u] = 1 - side[v]
                    queue.append(u)
                elif side[u] == side[v]:
                    raise PreconditionError("graph is not bipartite")
    return [v for v in range(g.n) if side[v] == 0]


def _parse_lists(spec: str, n: int) -> ListAssignment:
    import os
    if spec.startswith("uniform:") and spec[8:].isdigit():
        return ListAssignment.uniform(n, range(1, int(spec[8:]) + 1))
    if not os.path.exists(spec):
        raise ValueError(f"lists {spec!r} is neither a file nor uniform:SIZE")
    rows = []
    with open(spec, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if line:
                rows.append([int(tok) for tok in line.split()])
    if len(rows) != n:
        raise ValueError(f"expected {n} list lines, found {len(rows)}")
    return ListAssignment.of(rows)


def _respects_lists(sch, lists: ListAssignment) -> bool:
    return all(c in lists[v] for v, seq in enumerate(sch.per_node)
               for c in seq)


# ---------------------------------------------------------------------------
# gen
# ---------------------------------------------------------------------------

_FAMILY_PARAMS = {
    "path": 1, "cycle": 1, "tree": 1, "tree3reg": 1, "torus": 2,
    "prism": 0, "k4": 0, "kab": 2, "subcubic-random": 1,
    "fixture": 1, "counterexample": 2,
}

_FAMILY_DEFAULT_K = {
    "path": 3, "cycle": 3, "tree": 3, "tree3reg": 3, "torus": 3,
    "prism": 3, "k4": 4, "kab": 2, "subcubic-random": 3,
}


def _gen_graph(family: str, params: list[int], seed: int) -> Graph:
    if family == "path":
        return build_path(params[0])
    if family == "cycle":
        return build_cycle(params[0])
    if family == "tree":
        return random_tree(params[0], seed)
    if family == "tree3reg":
        return build_balanced_3regular_tree(params[0])
    if family == "torus":
        return build_toroidal_grid(params[0], params[1])
    if family == "prism":
        return build_prism()
    if family == "k4":
        return build_complete(4)
    if family == "kab":
        return build_complete_bipartite(params[0], params[1])
    if family == "subcubic-random":
        return generate.random_subcubic(params[0], seed)
    raise ValueError(f"unknown family {family!r}")


def cmd_gen(args: argparse.Namespace) -> int:
    family = args.family
    if family not in _FAMILY_PARAMS:
        raise ValueError(f"unknown family {family!r}; choose from "
                         f"{sorted(_FAMILY_PARAMS)}")
    if family == "fixture":
        if len(args.params) != 1:
            raise ValueError("fixture needs a name, e.g. needsextra-g")
        name = args.params[0]
        table = {f"needsextra-{f.name}": f
                 for f in basic.fixtures_needsextra()}
        if name not in table:
            raise ValueError(f"unknown fixture {name!r}; choose from "
                             f"{sorted(table)}")
        fix = table[name]
        g, s, t, k = fix.g, fix.s, fix.t, fix.k
        prefix = args.out or f"fixture-{name}"
    elif family == "counterexample":
        params = [int(p) for p in args.params]
        if len(params) != 2:
            raise ValueError("counterexample needs: h w")
        s, t = grids.construct_counterexample(*params)
        g, k = build_toroidal_grid(*params), 3
        prefix = args.out or f"counterexample-{params[0]}x{params[1]}"
    else:
        params = [int(p) for p in args.params]
        if len(params) != _FAMILY_PARAMS[family]:
            raise ValueError(f"family {family} needs "
                             f"{_FAMILY_PARAMS[family]} parameter(s)")
        g = _gen_graph(family, params, args.seed)
        k = args.k if args.k is not None else _FAMILY_DEFAULT_K[family]
        rng = generate.rng_from(args.seed)
        s = generate.random_proper_coloring(g, k, rng)
        t = generate.random_proper_coloring(g, k, rng)
        tag = "x".join(str(p) for p in params)
        prefix = args.out or (f"{family}-{tag}" if tag else family)
    save_graph(prefix + ".graph", g)
    save_coloring(prefix + ".s", s)
    save_coloring(prefix + ".t", t)
    for ext in (".graph", ".s", ".t"):
        print(f"wrote {prefix}{ext}")
    print(f"n={g.n} m={g.m} k={k}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# recolor
# ---------------------------------------------------------------------------

# algorithm -> (default k, default c, needs torus, needs lists)
_ALGORITHMS: dict[str, tuple[int, int, bool, bool]] = {
    "trivial": (3, 1, False, False),
    "bipartite": (2, 1, False, False),
    "pathcycle3plus1": (3, 1, False, False),
    "subcubic4plus1": (4, 1, False, False),
    "grid4plus2": (4, 2, True, False),
    "grid5plus1": (5, 1, True, False),
    "treeplain": (3, 0, False, False),
    "treelist": (3, 0, False, True),
    "tree3plus1": (3, 1, False, False),
    "treelist4": (4, 0, False, True),
    "subcubic3plus1": (3, 1, False, False),
    "grid4xw": (3, 1, True, False),
    "grid3plus1": (3, 1, True, False),
}


def _run_algorithm(name: str, g: Graph, s: Coloring, t: Coloring, k: int,
                   c: int, lists: ListAssignment | None) -> RecolorRun:
    if name == "treeplain":
        return trees.recolor_tree_plain(g, s, t)
    if name == "treelist":
        return trees.recolor_tree_list(g, s, t, lists)
    if name == "treelist4":
        return trees.recolor_tree_list4(g, s, t, lists)
    inst = RecoloringInstance(g, s.with_palette(k + c),
                              t.with_palette(k + c), k, c)
    if name == "trivial":
        return basic.recolor_trivial(inst)
    if name == "bipartite":
        return basic.recolor_bipartite(inst, _bipartition(g))
    if name == "pathcycle3plus1":
        return basic.recolor_path_cycle_3plus1(inst)
    if name == "subcubic4plus1":
        return basic.recolor_subcubic_4plus1(inst)
    if name == "grid4plus2":
        return basic.recolor_grid_4plus2(inst)
    if name == "grid5plus1":
        return basic.recolor_grid_5plus1(inst)
    if name == "tree3plus1":
        return trees.recolor_tree_3plus1(inst)
    if name == "subcubic3plus1":
        return subcubic.recolor_subcubic_3plus1(inst)
    if name == "grid4xw":
        return grids.recolor_grid_4xw(inst)
    if name == "grid3plus1":
        return grids.recolor_grid_3plus1(inst)
    raise ValueError(f"unknown algorithm {name!r}")


def cmd_recolor(args: argparse.Namespace) -> int:
    name = args.algorithm
    if name not in _ALGORITHMS:
        raise ValueError(f"unknown algorithm {name!r}; choose from "
                         f"{sorted(_ALGORITHMS)}")
    def_k, def_c, needs_torus, needs_lists = _ALGORITHMS[name]
    k = args.k if args.k is not None else def_k
    c = args.c if args.c is not None else def_c
    g = _load_graph_arg(args.graph)
    if needs_torus:
        g = _as_torus(g)
    lists = None
    if needs_lists:
        if args.lists is None:
            raise ValueError(f"algorithm {name} needs --lists")
        lists = _parse_lists(args.lists, g.n)
        palette = max(max(lst) for lst in lists.lists)
        k, c = palette, 0
    s = load_coloring(args.s, k + c)
    t = load_coloring(args.t, k + c)

    started = time.perf_counter()
    run = _run_algorithm(name, g, s, t, k, c, lists)
    elapsed = time.perf_counter() - started

    inst = RecoloringInstance(g, s, t, k, c)
    ok = verify_strong(inst, run.schedule).ok
    if ok and lists is not None:
        ok = _respects_lists(run.schedule, lists)
    report = RunReport(name, g.n, run.rounds, run.schedule.length, ok,
                       elapsed)
    print(report.line())
    if args.out:
        save_schedule(args.out, run.schedule)
    return EXIT_OK if ok else EXIT_VERIFY


# ---------------------------------------------------------------------------
# verify / oracle / parity / check-ab
# ---------------------------------------------------------------------------

def _load_instance(args: argparse.Namespace) -> RecoloringInstance:
    g = _load_graph_arg(args.graph)
    s = load_coloring(args.s, args.k + args.c)
    t = load_coloring(args.t, args.k + args.c)
    return RecoloringInstance(g, s, t, args.k, args.c)


def cmd_verify(args: argparse.Namespace) -> int:
    inst = _load_instance(args)
    sch = load_schedule(args.schedule)
    check = verify_strong if args.mode == "strong" else verify_weak
    report = check(inst, sch)
    if report.ok:
        print("verified=ok")
        return EXIT_OK
    v = report.violation
    print(f"verified=fail step={v.step} kind={v.kind} "
          f"nodes={','.join(str(u) for u in v.nodes)}")
    return EXIT_VERIFY


def cmd_oracle(args: argparse.Namespace) -> int:
    inst = _load_instance(args)
    result = oracle.search(inst)
    shortest = str(result.dist) if result.found else "inf"
    print(f"reachable={'true' if result.found else 'false'} "
          f"shortest={shortest} states_explored={result.explored}")
    return EXIT_OK


def cmd_parity(args: argparse.Namespace) -> int:
    grid = build_toroidal_grid(args.height, args.width)
    x = load_coloring(args.coloring)
    cen = grids.census(grid, x)
    names = {0: "even", 1: "odd"}
    print(f"a={cen.a_count} b={cen.b_count} "
          f"a_parity={names[cen.a_parity]} b_parity={names[cen.b_parity]}")
    return EXIT_OK


def cmd_check_ab(args: argparse.Namespace) -> int:
    report = grids.check_ab_parity_lemma(palette=args.palette)
    print(f"palette={report.palette} colorings={report.colorings} "
          f"moves={report.moves} a_changing={report.a_changing_moves} "
          f"counterexamples=0")
    return EXIT_OK


# ---------------------------------------------------------------------------
# bench
# ---------------------------------------------------------------------------

def _bench_instance(name: str, n: int,
                    seed: int) -> tuple[Graph, Coloring, Coloring, int, int]:
    def_k, def_c, _, _ = _ALGORITHMS[name]
    if name in ("treeplain", "tree3plus1"):
        g = random_tree(n, seed)
    elif name in ("subcubic3plus1", "subcubic4plus1"):
        g = generate.random_subcubic(n, seed)
    elif name == "pathcycle3plus1":
        g = build_cycle(n)
    elif name in ("grid4xw", "grid3plus1"):
        g = build_toroidal_grid(4, max(3, n // 4))
    else:
        raise ValueError(f"no benchmark family wired for {name!r}")
    rng = generate.rng_from(seed)
    s = generate.random_proper_coloring(g, def_k, rng)
    t = generate.random_proper_coloring(g, def_k, rng)
    return g, s, t, def_k, def_c


def cmd_bench(args: argparse.Namespace) -> int:
    sizes = [int(tok) for tok in args.sizes.split(",") if tok]
    if not sizes:
        raise ValueError("--sizes needs a comma-separated list of n")
    lines = ["n\trounds\tlength"]
    for n in sizes:
        g, s, t, k, c = _bench_instance(args.algorithm, n, args.seed)
        run = _run_algorithm(args.algorithm, g, s, t, k, c, None)
        inst = RecoloringInstance(g, s.with_palette(k + c),
                                  t.with_palette(k + c), k, c)
        if not verify_strong(inst, run.schedule).ok:
            print(f"verification failed at n={n}", file=sys.stderr)
            return EXIT_VERIFY
        lines.append(f"{g.n}\t{run.rounds}\t{run.schedule.length}")
    table = "\n".join(lines)
    print(table)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(table + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument wiring
# ---------------------------------------------------------------------------

def _instance_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--graph", required=True,
                     help="graph file or inline spec (torus:HxW, path:N, "
                          "cycle:N, kab:AxB, tree3reg:D, prism, k4)")
    sub.add_argument("--s", required=True, help="source coloring file")
    sub.add_argument("--t", required=True, help="target coloring file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="recolor",
        description="Generate, solve, verify, and measure distributed "
                    "recoloring instances.")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("gen", help="generate an instance")
    p.add_argument("family")
    p.add_argument("params", nargs="*")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="output file prefix")
    p.set_defaults(func=cmd_gen)

    p = subs.add_parser("recolor", help="run an algorithm on an instance")
    p.add_argument("algorithm")
    _instance_flags(p)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--c", type=int, default=None)
    p.add_argument("--lists", default=None,
                   help="list file (one line of colors per node) or "
                        "uniform:SIZE")
    p.add_argument("--out", default=None, help="schedule output file")
    p.set_defaults(func=cmd_recolor)

    p = subs.add_parser("verify", help="check a schedule against an instance")
    _instance_flags(p)
    p.add_argument("--schedule", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--mode", choices=("strong", "weak"), default="strong")
    p.set_defaults(func=cmd_verify)

    p = subs.add_parser("oracle", help="exact reachability and distance")
    _instance_flags(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--c", type=int, required=True)
    p.set_defaults(func=cmd_oracle)

    p = subs.add_parser("parity", help="tile census of a torus coloring")
    p.add_argument("height", type=int)
    p.add_argument("width", type=int)
    p.add_argument("coloring")
    p.set_defaults(func=cmd_parity)

    p = subs.add_parser("check-ab", help="exhaustive tile-parity lemma check")
    p.add_argument("--palette", type=int, default=4)
    p.set_defaults(func=cmd_check_ab)

    p = subs.add_parser("bench", help="deterministic size/rounds/length table")
    p.add_argument("algorithm")
    p.add_argument("--sizes", required=True,
                   help="comma-separated node counts")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="also write the TSV here")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except RecolorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
