import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from exchange_clearing.cycles import validate_solution
from exchange_clearing.instance import ExchangeInstance, SolverConfig
from exchange_clearing.oracle import InstanceTooLargeError, solve_exact

from oracles import brute_clearing, random_instance


def full(n):
    return ExchangeInstance(n, [(u, v, 1) for u in range(n) for v in range(n) if u != v])


def test_examples():
    tri = ExchangeInstance(3, [(0, 1, 1), (1, 2, 1), (2, 0, 1)])
    assert solve_exact(tri, SolverConfig(L=3)).objective == 3
    assert solve_exact(full(3), SolverConfig(L=2)).objective == 2
    assert solve_exact(full(4), SolverConfig(L=2)).objective == 4


def test_guard():
    with pytest.raises(InstanceTooLargeError):
        solve_exact(ExchangeInstance(25), SolverConfig())
    assert solve_exact(ExchangeInstance(25), SolverConfig(), max_nodes=None).objective == 0


def test_lexicographically_least_optimum():
    # 0<->1 and 0<->2 tie; the first in canonical order wins
    inst = ExchangeInstance(3, [(0, 1, 1), (1, 0, 1), (0, 2, 1), (2, 0, 1)])
    assert solve_exact(inst, SolverConfig(L=2)).cycles == ((0, 1),)


@pytest.mark.parametrize("objective", ["size", "weight"])
@pytest.mark.parametrize("L", [2, 3, None])
def test_matches_brute_force(objective, L):
    rng = random.Random(hash((objective, L)) & 0xFFFF)
    for _ in range(40):
        inst = random_instance(rng, rng.randint(0, 7), rng.choice([0.2, 0.35, 0.6]), weighted=True)
        sol = solve_exact(inst, SolverConfig(L=L, objective=objective))
        assert sol.objective == brute_clearing(inst, L, objective)
        assert validate_solution(inst, sol.cycles, SolverConfig(L=L, objective=objective)) == sol


@given(st.integers(0, 2**20), st.integers(2, 9), st.floats(0.1, 0.6))
def test_monotone_in_length_bound(seed, n, p):
    inst = random_instance(random.Random(seed), n, p)
    vals = [solve_exact(inst, SolverConfig(L=L)).objective for L in (2, 3, 4, None)]
    assert vals == sorted(vals)


def test_deterministic():
    inst = random_instance(random.Random(5), 10, 0.3, weighted=True)
    cfg = SolverConfig(objective="weight")
    assert solve_exact(inst, cfg) == solve_exact(inst, cfg)
