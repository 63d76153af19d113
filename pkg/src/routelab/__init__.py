"""routelab: compact-routing schemes and their stretch/table-size trade-offs.

Build a scheme on a graph, route packets through its tables, and measure
what the compression costs:

    >>> import routelab as rl
    >>> g = rl.gen_power_law(1000, 2, seed=1)
    >>> art = rl.build(rl.LandmarkConfig(), g, seed=1)
    >>> rl.route(art, g, 0, 500).stretch  # doctest: +SKIP
"""

__version__ = "0.1.0"

from .graphs import (DistanceVector, EdgeListParseError, Graph, GraphError,
                     Tree, bfs, bfs_distances, connected, is_tree, k_nearest,
                     largest_connected_component, min_port_parents,
                     parse_edge_list, shortest_path_tree)
from .generators import (gen_er, gen_full_mesh, gen_grid, gen_power_law,
                         gen_star, gen_tree, grid_coordinates)
from .routing import (BuildError, DELIVER, NodeLabel, PacketHeader,
                      RouteResult, RoutingFault, RoutingTable, SchemeArtifacts,
                      SizeContext, build, forward, header_from_label,
                      make_header, route, scheme_names, table_size)
from .baselines import GridConfig, HierConfig, TreeConfig, TrivialConfig
from .landmarks import (ClusterMap, LandmarkAssignment, LandmarkConfig,
                        compute_clusters, select_landmarks)
from .treecover import (HybridConfig, TreeCoverConfig, bc_table_bound_check,
                        fringe_scores)
from .treeroute import TreeRouting, build_tree_routing, tree_distance
from .dictrouting import NIConfig, color_count, color_of, mix64, ni_accounting
from .evaluation import (EvalReport, PairSampler, evaluate, naive_route,
                         neighbor_check, scaling_sweep)

__all__ = [
    "Graph", "GraphError", "EdgeListParseError", "DistanceVector", "Tree",
    "bfs", "bfs_distances", "connected", "is_tree", "k_nearest",
    "largest_connected_component", "min_port_parents", "parse_edge_list",
    "shortest_path_tree",
    "gen_er", "gen_full_mesh", "gen_grid", "gen_power_law", "gen_star",
    "gen_tree", "grid_coordinates",
    "BuildError", "DELIVER", "NodeLabel", "PacketHeader", "RouteResult",
    "RoutingFault", "RoutingTable", "SchemeArtifacts", "SizeContext",
    "build", "forward", "header_from_label", "make_header", "route",
    "scheme_names", "table_size",
    "TrivialConfig", "TreeConfig", "GridConfig", "HierConfig",
    "LandmarkConfig", "LandmarkAssignment", "ClusterMap",
    "compute_clusters", "select_landmarks",
    "TreeCoverConfig", "HybridConfig", "bc_table_bound_check", "fringe_scores",
    "TreeRouting", "build_tree_routing", "tree_distance",
    "NIConfig", "color_count", "color_of", "mix64", "ni_accounting",
    "EvalReport", "PairSampler", "evaluate", "naive_route", "neighbor_check",
    "scaling_sweep",
]
