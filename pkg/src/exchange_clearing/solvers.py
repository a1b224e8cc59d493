"""Name -> solver registry shared by the CLI and the benchmark harness."""

from __future__ import annotations

from dataclasses import replace
from typing import Callable

from .bounds import solve_2_exchange, solve_unbounded_exchange
from .cycles import ClearingSolution
from .greedy import solve_greedy_basic, solve_greedy_heuristic
from .instance import ExchangeInstance, SolverConfig
from .matching_clearing import solve_matching_based
from .oracle import solve_exact

Solver = Callable[[ExchangeInstance, SolverConfig], ClearingSolution]

ALGORITHMS: dict[str, Solver] = {
    "greedy-basic": solve_greedy_basic,
    "greedy": solve_greedy_heuristic,
    "matching": solve_matching_based,
    "matching+cleanup": lambda inst, cfg: solve_matching_based(inst, replace(cfg, alg2_cleanup=True)),
    "exact": solve_exact,
    "lb2": lambda inst, cfg: solve_2_exchange(inst, cfg.objective),
    "ub-inf": lambda inst, cfg: solve_unbounded_exchange(inst, cfg.objective),
}

#: Heuristics whose objectives feed the synthetic "best" row.
HEURISTICS = ("greedy-basic", "greedy", "matching", "matching+cleanup")


def get_solver(name: str) -> Solver:
    try:
        return ALGORITHMS[name]
    except KeyError:
        raise ValueError(f"unknown algorithm {name!r}; choose from {', '.join(ALGORITHMS)}") from None
