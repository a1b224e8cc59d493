"""Polynomial exact solvers bracketing the L=3 optimum.

``solve_2_exchange`` is optimal for L=2 (matching on mutual pairs) and
``solve_unbounded_exchange`` is optimal for unbounded L (maximum-weight
cycle cover via an assignment problem).
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import min_weight_full_bipartite_matching

from .cycles import ClearingSolution, canonical, validate_solution
from .instance import ExchangeInstance, Objective, SolverConfig
from .matching import (
    UndirectedGraph,
    max_cardinality_matching,
    max_weight_matching,
    scale_to_integers,
)


def mutual_pairs(inst: ExchangeInstance) -> list[tuple[int, int]]:
    """Unordered pairs u < v with arcs in both directions, sorted."""
    succ, pred = inst.succ_mask, inst.pred_mask
    out = []
    for u in range(inst.n):
        both = (succ[u] & pred[u]) >> (u + 1)
        base = u + 1
        while both:
            low = both & -both
            out.append((u, base + low.bit_length() - 1))
            both ^= low
    return out


def _add(a: Fraction, b: Fraction):
    # integral weights dominate simulated pools; skip Fraction normalisation there
    if a.denominator == 1 and b.denominator == 1:
        return a.numerator + b.numerator
    return a + b


def pair_graph(inst: ExchangeInstance) -> UndirectedGraph:
    """Mutual-pair graph; edge weight is the 2-cycle's arc-weight sum."""
    edges = tuple((u, v, _add(inst.weight(u, v), inst.weight(v, u))) for u, v in mutual_pairs(inst))
    return UndirectedGraph(inst.n, edges)


def solve_2_exchange(inst: ExchangeInstance, objective: Objective = "size") -> ClearingSolution:
    g = pair_graph(inst)
    if objective == "size":
        m = max_cardinality_matching(g)
    else:
        m = max_weight_matching(g)
    return validate_solution(inst, m, SolverConfig(L=2, objective=objective))


def solve_unbounded_exchange(
    inst: ExchangeInstance, objective: Objective = "size"
) -> ClearingSolution:
    """Maximum cycle cover on the donor/patient split graph.

    Left copy u is a donor, right copy v a patient; arc u->v is an edge with
    the arc's gain and every node has a zero-gain self edge, so a perfect
    matching always exists. Matched non-self edges form a permutation whose
    cycles are the exchange.
    """
    n = inst.n
    config = SolverConfig(L=None, objective=objective)
    if n == 0 or inst.m == 0:
        return validate_solution(inst, [], config)
    arcs = inst.arcs
    if objective == "size":
        gains = [1] * len(arcs)
    else:
        gains, _ = scale_to_integers([w for _, _, w in arcs])
    top = max(gains) + 1
    k = n + 1
    # cost = k*(top - gain) for arcs, k*top - 1 for self edges: minimising it
    # maximises total gain, then prefers self edges over zero-gain arcs
    rows = np.fromiter((u for u, _, _ in arcs), dtype=np.int64, count=len(arcs))
    cols = np.fromiter((v for _, v, _ in arcs), dtype=np.int64, count=len(arcs))
    cost = k * (top - np.asarray(gains, dtype=np.float64))
    diag = np.arange(n, dtype=np.int64)
    rows = np.concatenate([rows, diag])
    cols = np.concatenate([cols, diag])
    cost = np.concatenate([cost, np.full(n, float(k * top - 1))])
    if float(k * top) * n >= 2**52:
        raise OverflowError("assignment costs exceed exact float range")
    mat = csr_matrix((cost, (rows, cols)), shape=(n, n))
    row_ind, col_ind = min_weight_full_bipartite_matching(mat)
    mate = [0] * n
    for r, c in zip(row_ind.tolist(), col_ind.tolist()):
        mate[r] = c
    seen = [False] * n
    cycles = []
    for start in range(n):
        if seen[start] or mate[start] == start:
            continue
        cyc = []
        v = start
        while not seen[v]:
            seen[v] = True
            cyc.append(v)
            v = mate[v]
        cycles.append(canonical(cyc))
    return validate_solution(inst, cycles, config)
