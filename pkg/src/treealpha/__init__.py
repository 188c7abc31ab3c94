"""Tree independence number tools for graphs without thetas, pyramids and prisms.

Detection of three-path configurations, pair and balanced separators of small
stability number, tree decompositions built from them, and maximum weight
independent set by dynamic programming over the bags.
"""

from .balance import (BreakabilityConfig, domination_to_stability, high_degree_stable_filter,
                      is_balanced_separator, search_d)
from .decompose import (TreeDecomposition, build_tree_decomposition, clique_tree, mwis_td,
                        td_independence_number, tree_alpha_pipeline, validate_tree_decomposition)
from .detect import find_3pc, find_useful_wheel, is_3pc_free
from .errors import InputError, InvariantViolation, ParseError, ResourceError, TreeAlphaError
from .graph import Graph, mwis_bruteforce, stability_number
from .io import emit_graph, parse_graph
from .separate import separate_cooperative_pair, separate_vertex_pair, wheel_separator

__version__ = "0.1.0"

__all__ = [
    "BreakabilityConfig", "Graph", "InputError", "InvariantViolation", "ParseError", "ResourceError",
    "TreeAlphaError", "TreeDecomposition", "build_tree_decomposition", "clique_tree",
    "domination_to_stability", "emit_graph", "find_3pc", "find_useful_wheel", "high_degree_stable_filter",
    "is_3pc_free", "is_balanced_separator", "mwis_bruteforce", "mwis_td", "parse_graph", "search_d",
    "separate_cooperative_pair", "separate_vertex_pair", "stability_number", "td_independence_number",
    "tree_alpha_pipeline", "validate_tree_decomposition", "wheel_separator",
]
