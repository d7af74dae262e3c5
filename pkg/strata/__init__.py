from .graph import (
    Graph, GraphType, NumberedGraph, betti1, genus, graph_type, is_stable, stabilize,
    contract_edges, canonical_form, automorphism_count, leq, graph_from_dict,
)
from .trees import (
    AnnotatedTree, StratumClass, enumerate_trees, enumerate_trees_by_splitting,
    enumerate_orbit_classes, annotate, is_good, orbit_representatives, stratum_dimension, build_T_lg,
    good_tree_levels, max_good_edges,
)
from .pushforward import (
    admissible_cover_graph, pushforward, pushforward_trace, rational_component_count,
    in_filtration, node_bound_report, verify_injectivity,
)
