import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from exchange_clearing.cycles import validate_solution
from exchange_clearing.instance import ExchangeInstance, SolverConfig
from exchange_clearing.matching_clearing import build_rewired_graph, run_pipeline, solve_matching_based, triangle
from exchange_clearing.oracle import solve_exact

from oracles import random_instance

CFG = SolverConfig(L=3)


def arcs_of(*pairs):
    return [(u, v, 1) for u, v in pairs]


def test_rewired_single_helper():
    # u=0, v=1 mutual; helper a=2 with 1->2, 2->0
    inst = ExchangeInstance(3, arcs_of((0, 1), (1, 0), (1, 2), (2, 0)))
    g = build_rewired_graph(inst, {0, 1}, {2})
    assert len(g.edges) == 1
    e = g.edges[0]
    assert (e.u, e.v, e.has_2cycle, e.helpers, e.weight) == (0, 1, True, [2], 11)


def test_rewired_no_edge_without_pair_or_helpers():
    inst = ExchangeInstance(3, arcs_of((0, 1)))
    assert build_rewired_graph(inst, {0, 1}, {2}).edges == ()


def test_rewired_two_helpers():
    inst = ExchangeInstance(4, arcs_of((0, 1), (1, 0), (1, 2), (2, 0), (0, 3), (3, 1)))
    (e,) = build_rewired_graph(inst, {0, 1}, {2, 3}).edges
    assert e.helpers == [2, 3] and e.weight == 12
    (e,) = build_rewired_graph(inst, {0, 1}, {2, 3}, w=3).edges
    assert e.weight == 5


def test_rewired_partition_checked():
    inst = ExchangeInstance(3)
    with pytest.raises(ValueError):
        build_rewired_graph(inst, {0, 1}, {1, 2})
    with pytest.raises(ValueError):
        build_rewired_graph(inst, {0}, {1})


def test_pipeline_examples():
    pair = ExchangeInstance(2, arcs_of((0, 1), (1, 0)))
    assert solve_matching_based(pair, CFG).cycles == ((0, 1),)
    tri = ExchangeInstance(3, arcs_of((0, 1), (1, 0), (1, 2), (2, 0)))
    sol = solve_matching_based(tri, CFG)
    assert sol.objective == 3 and sol.cycles == ((0, 1, 2),)
    assert solve_exact(tri, CFG).objective == 3
    pairs = ExchangeInstance(4, arcs_of((0, 1), (1, 0), (2, 3), (3, 2)))
    assert solve_matching_based(pairs, CFG).objective == 4


def test_triangle_prefers_least_orientation():
    both = ExchangeInstance(3, arcs_of(*[(u, v) for u in range(3) for v in range(3) if u != v]))
    assert triangle(both, 2, 0, 1) == (0, 1, 2)
    assert triangle(ExchangeInstance(3, arcs_of((0, 1), (1, 0))), 2, 0, 1) is None


def brute_bipartite(pairs):
    left = sorted({a for a, _ in pairs})
    best = 0
    for k in range(len(left), 0, -1):
        for combo in itertools.combinations(pairs, k):
            if len({a for a, _ in combo}) == k and len({e for _, e in combo}) == k:
                return k
    return best


@given(st.integers(0, 2**20), st.integers(2, 10), st.floats(0.15, 0.7))
def test_pipeline_accounting(seed, n, p):
    inst = random_instance(random.Random(seed), n, p)
    sol, trace = run_pipeline(inst, CFG)
    assert sol.objective == 3 * len(trace.h_pairs) + 2 * len(trace.two_cycles)
    # helper recount from first principles
    for e in trace.rewired.edges:
        helpers = [a for a in range(n) if a not in trace.matched and triangle(inst, a, e.u, e.v)]
        assert e.helpers == helpers
        assert e.weight == 10 * e.has_2cycle + len(helpers)
    # H was matched to its maximum cardinality
    h_edges = [(a, key) for key in trace.m_edges for a in dict(((x.u, x.v), x) for x in trace.rewired.edges)[key].helpers]
    assert len(trace.h_pairs) == brute_bipartite(h_edges)
    assert validate_solution(inst, sol.cycles, CFG) == sol


@given(st.integers(0, 2**20), st.integers(2, 10), st.floats(0.15, 0.7))
def test_cleanup_never_hurts(seed, n, p):
    inst = random_instance(random.Random(seed), n, p)
    plain = solve_matching_based(inst, CFG)
    cleaned = solve_matching_based(inst, SolverConfig(alg2_cleanup=True))
    assert cleaned.objective >= plain.objective
    assert set(plain.cycles) <= set(cleaned.cycles)
    assert cleaned.objective <= solve_exact(inst, CFG).objective


def test_requires_three():
    with pytest.raises(ValueError):
        solve_matching_based(ExchangeInstance(2), SolverConfig(L=2))
