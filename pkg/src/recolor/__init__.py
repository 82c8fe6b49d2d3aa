"""Distributed graph recoloring: schedules, verifiers, algorithms, and an
exact search oracle.

The package revolves around one object: a *recoloring schedule*, a per-node
sequence of colors turning a proper source coloring into a proper target
coloring so that every intermediate step stays proper and simultaneously
changing nodes are never adjacent.  Algorithms for trees, subcubic graphs,
and toroidal grids produce schedules of provably small length using a
bounded number of spare colors, a synchronous-network simulator charges
their communication rounds, and a brute-force oracle provides ground truth
on small instances.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .basic import (eliminate_top_color, fixture_3pathslb, fixture_4treelb,
                    fixtures_needsextra, recolor_bipartite,
                    recolor_grid_4plus2, recolor_grid_5plus1,
                    recolor_path_cycle_3plus1, recolor_subcubic_4plus1,
                    recolor_trivial)
from .errors import (InfeasibleError, PreconditionError, RecolorError,
                     RoundLimitError, StateSpaceError, VerificationError)
from .graphs import (Coloring, Graph, ListAssignment, ToroidalGrid,
                     build_balanced_3regular_tree, build_complete,
                     build_complete_bipartite, build_cycle, build_path,
                     build_prism, build_star, build_toroidal_grid,
                     is_independent_set, is_maximal_independent_set,
                     is_proper, is_proper_list, load_coloring, load_graph,
                     random_tree, save_coloring, save_graph)
from .grids import (TileCensus, census, check_ab_parity_lemma,
                    construct_counterexample, feasibility_3plus1,
                    recolor_grid_3plus1, recolor_grid_4xw, tile_type_a,
                    tile_type_b)
from .oracle import is_frozen, reachable, shortest
from .schedule import (RecoloringInstance, RecolorRun, Schedule,
                       ScheduleBuilder, load_schedule, save_schedule,
                       verify_strong, verify_weak, weak_to_strong)
from .subcubic import (recolor_subcubic_3plus1, ruling_set,
                       stable_forest_decomposition)
from .trees import (light_labeling, recolor_tree_3plus1, recolor_tree_list,
                    recolor_tree_list4, recolor_tree_plain, tree_3coloring)

__version__ = "0.1.0"

__all__ = [
    "KERNEL_BACKEND",
    "__version__",
    # errors
    "RecolorError", "PreconditionError", "InfeasibleError",
    "StateSpaceError", "RoundLimitError", "VerificationError",
    # graphs
    "Graph", "Coloring", "ListAssignment", "ToroidalGrid",
    "build_path", "build_cycle", "build_complete",
    "build_complete_bipartite", "build_star", "build_prism",
    "build_balanced_3regular_tree", "build_toroidal_grid", "random_tree",
    "is_proper", "is_proper_list", "is_independent_set",
    "is_maximal_independent_set",
    "load_graph", "save_graph", "load_coloring", "save_coloring",
    # schedules
    "Schedule", "ScheduleBuilder", "RecoloringInstance", "RecolorRun",
    "verify_strong", "verify_weak", "weak_to_strong",
    "load_schedule", "save_schedule",
    # algorithms
    "recolor_trivial", "recolor_bipartite", "recolor_path_cycle_3plus1",
    "recolor_subcubic_4plus1", "recolor_grid_4plus2", "recolor_grid_5plus1",
    "eliminate_top_color",
    "recolor_tree_plain", "recolor_tree_list", "recolor_tree_3plus1",
    "recolor_tree_list4", "tree_3coloring", "light_labeling",
    "recolor_subcubic_3plus1", "ruling_set", "stable_forest_decomposition",
    "recolor_grid_4xw", "recolor_grid_3plus1",
    # grids / parity
    "TileCensus", "census", "tile_type_a", "tile_type_b",
    "check_ab_parity_lemma", "feasibility_3plus1",
    "construct_counterexample",
    # fixtures
    "fixtures_needsextra", "fixture_3pathslb", "fixture_4treelb",
    # oracle
    "reachable", "shortest", "is_frozen",
]
