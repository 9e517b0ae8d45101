"""Spherical two-distance codes: graph certificates, realizations, bounds.

A code here is a set of unit vectors whose pairwise inner products take
two values alpha > beta; the edges of its alpha-graph mark the pairs at
the larger value.  The package certifies which graphs arise this way,
rebuilds unit vectors from certified graphs, evaluates the derived size
bounds, and searches all small graphs for maximum code sizes, with an
exact rational backend whenever the parameters are rational.
"""

from .bounds import (BoundReport, SandwichReport, check_clique_free,
                     check_independence, check_neighborhood,
                     check_subgraph_inequality, dgs_bound, power_bound,
                     recursion_bound, recursion_map, sandwich_bounds,
                     turan_bound)
from .certificates import (AlphaCertificate, BetaCertificate, CodeParameters,
                           SphericalCode, VerifyReport, alpha_graph,
                           beta_graph, certify_alpha, certify_beta,
                           certify_beta_zero, code_rank, dumps_code,
                           load_code, loads_code, realize_from_alpha,
                           realize_from_beta, save_code, verify_code)
from .graphs import (Graph, canonical_form, complete_bipartite,
                     complete_graph, cycle_graph, emit_graph6, empty_graph,
                     enumerate_graphs, parse_graph6, path_graph)
from .search import (OracleCrossCheck, SearchResult, capacity, max_code_size,
                     neighborhood_capacity_f, oracle_cross_check)

__version__ = "0.1.0"

__all__ = [
    "AlphaCertificate", "BetaCertificate", "BoundReport", "CodeParameters",
    "Graph", "OracleCrossCheck", "SandwichReport", "SearchResult",
    "SphericalCode", "VerifyReport", "alpha_graph", "beta_graph",
    "canonical_form", "capacity", "certify_alpha", "certify_beta",
    "certify_beta_zero", "check_clique_free", "check_independence",
    "check_neighborhood", "check_subgraph_inequality", "code_rank",
    "complete_bipartite", "complete_graph", "cycle_graph", "dgs_bound",
    "dumps_code", "emit_graph6", "empty_graph", "enumerate_graphs",
    "load_code", "loads_code", "max_code_size", "neighborhood_capacity_f",
    "oracle_cross_check", "parse_graph6", "path_graph", "power_bound",
    "realize_from_alpha", "realize_from_beta", "recursion_bound",
    "recursion_map", "sandwich_bounds", "save_code", "turan_bound",
    "verify_code",
]
