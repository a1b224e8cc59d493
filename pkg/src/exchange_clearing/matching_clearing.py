"""Matching-based clearing for L=3.

Pipeline: a maximum matching on mutual pairs splits the nodes into matched
(B) and unmatched (A); a weighted graph over B rewards keeping 2-cycles
(weight ``w``) and each A-node that closes a triangle (+1); its maximum
weight matching M is then paired with A-nodes by a bipartite matching,
turning matched edges into 3-cycles and the rest into 2-cycles.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .bounds import pair_graph
from .cycles import ClearingSolution, canonical, validate_solution
from .greedy import solve_greedy_heuristic
from .instance import ExchangeInstance, SolverConfig, remove_nodes
from .matching import UndirectedGraph, max_cardinality_matching, max_weight_matching


@dataclass(frozen=True)
class RewiredEdge:
    u: int
    v: int
    has_2cycle: bool
    helper_mask: int
    weight: Fraction

    @property
    def helpers(self) -> list[int]:
        return _bits(self.helper_mask)


@dataclass(frozen=True)
class RewiredGraph:
    matched: frozenset[int]
    edges: tuple[RewiredEdge, ...]

    def as_undirected(self, n: int) -> UndirectedGraph:
        return UndirectedGraph(n, tuple((e.u, e.v, e.weight) for e in self.edges))


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def build_rewired_graph(
    inst: ExchangeInstance, matched, unmatched, w: Fraction = Fraction(10)
) -> RewiredGraph:
    """Weighted graph over matched nodes, annotated with the helpers of each pair.

    A helper of {u, v} is an unmatched node a such that {a, u, v} is a
    directed triangle in either orientation.
    """
    matched = frozenset(matched)
    unmatched = frozenset(unmatched)
    if matched & unmatched or (matched | unmatched) != frozenset(range(inst.n)):
        raise ValueError("matched and unmatched must partition the node set")
    w = Fraction(w)
    if w <= 0:
        raise ValueError("w must be positive")
    succ, pred = inst.succ_mask, inst.pred_mask
    a_mask = 0
    for a in unmatched:
        a_mask |= 1 << a
    succ_a = [s & a_mask for s in succ]
    pred_a = [p & a_mask for p in pred]
    bonus = w.numerator if w.denominator == 1 else w
    edges = []
    for u in sorted(matched):
        out = inst.successors(u)
        partners = {v for v in out if v > u and v in matched}
        partners.update(v for v in inst.predecessors(u) if v > u and v in matched)
        for v in sorted(partners):
            uv = succ[u] >> v & 1
            vu = pred[u] >> v & 1
            helpers = 0
            if uv:  # u -> v -> a -> u
                helpers |= succ_a[v] & pred_a[u]
            if vu:  # v -> u -> a -> v
                helpers |= succ_a[u] & pred_a[v]
            has2 = bool(uv and vu)
            if not (has2 or helpers):
                continue
            weight = (bonus if has2 else 0) + helpers.bit_count()
            edges.append(RewiredEdge(u, v, has2, helpers, weight))
    return RewiredGraph(matched, tuple(edges))


def triangle(inst: ExchangeInstance, a: int, u: int, v: int):
    """The lexicographically least directed 3-cycle on {a, u, v}, or None."""
    options = []
    for x, y, z in ((a, u, v), (a, v, u)):
        if inst.has_arc(x, y) and inst.has_arc(y, z) and inst.has_arc(z, x):
            options.append(canonical([x, y, z]))
    return min(options) if options else None


@dataclass(frozen=True)
class MatchingTrace:
    """Intermediate state of one pipeline run, kept for accounting checks."""

    matched: frozenset[int]
    rewired: RewiredGraph
    m_edges: tuple[tuple[int, int], ...]
    h_pairs: tuple[tuple[int, tuple[int, int]], ...]
    two_cycles: tuple[tuple[int, int], ...]


def run_pipeline(inst: ExchangeInstance, config: SolverConfig) -> tuple[ClearingSolution, MatchingTrace]:
    if config.L != 3:
        raise ValueError(f"matching-based clearing is defined for L=3, got L={config.L}")
    n = inst.n
    stage1 = max_cardinality_matching(pair_graph(inst))
    matched = frozenset(v for e in stage1 for v in e)
    unmatched = frozenset(range(n)) - matched
    rewired = build_rewired_graph(inst, matched, unmatched, config.alg2_w)
    by_pair = {(e.u, e.v): e for e in rewired.edges}
    m_edges = max_weight_matching(rewired.as_undirected(n))

    a_nodes = sorted(unmatched)
    a_index = {a: i for i, a in enumerate(a_nodes)}
    rows, cols = [], []
    for j, key in enumerate(m_edges):
        for a in by_pair[key].helpers:
            rows.append(a_index[a])
            cols.append(j)
    h_pairs = []
    if rows and m_edges:
        graph = csr_matrix(
            (np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(len(a_nodes), len(m_edges))
        )
        col_of_row = maximum_bipartite_matching(graph, perm_type="column")
        for i, j in enumerate(col_of_row.tolist()):
            if j >= 0:
                h_pairs.append((a_nodes[i], m_edges[j]))

    cycles = []
    used_edges = set()
    for a, (u, v) in h_pairs:
        cycles.append(triangle(inst, a, u, v))
        used_edges.add((u, v))
    two_cycles = tuple(e for e in m_edges if e not in used_edges and by_pair[e].has_2cycle)
    cycles.extend(two_cycles)

    if config.alg2_cleanup:
        covered = {x for c in cycles for x in c}
        residual, index = remove_nodes(inst, covered)
        back = {new: old for old, new in index.items()}
        extra = solve_greedy_heuristic(residual, config)
        cycles.extend(canonical([back[x] for x in c]) for c in extra.cycles)

    sol = validate_solution(inst, cycles, config)
    trace = MatchingTrace(matched, rewired, tuple(m_edges), tuple(h_pairs), two_cycles)
    return sol, trace


def solve_matching_based(inst: ExchangeInstance, config: SolverConfig) -> ClearingSolution:
    return run_pipeline(inst, config)[0]
