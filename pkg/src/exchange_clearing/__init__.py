"""Clearing kidney-exchange (barter) markets with short vertex-disjoint cycles."""

from .bounds import solve_2_exchange, solve_unbounded_exchange
from .cycles import ClearingSolution, cycle_weight, enumerate_cycles, validate_solution
from .greedy import solve_greedy_basic, solve_greedy_heuristic
from .instance import ExchangeInstance, SolverConfig, emit_instance, parse_instance, remove_nodes
from .matching import UndirectedGraph, max_cardinality_matching, max_weight_matching
from .matching_clearing import build_rewired_graph, solve_matching_based
from .oracle import solve_exact
from .simgen import CHINA, US, PopulationProfile, generate_instance

__all__ = [
    "CHINA",
    "ClearingSolution",
    "ExchangeInstance",
    "PopulationProfile",
    "SolverConfig",
    "US",
    "UndirectedGraph",
    "build_rewired_graph",
    "cycle_weight",
    "emit_instance",
    "enumerate_cycles",
    "generate_instance",
    "max_cardinality_matching",
    "max_weight_matching",
    "parse_instance",
    "remove_nodes",
    "solve_2_exchange",
    "solve_exact",
    "solve_greedy_basic",
    "solve_greedy_heuristic",
    "solve_matching_based",
    "solve_unbounded_exchange",
    "validate_solution",
]
