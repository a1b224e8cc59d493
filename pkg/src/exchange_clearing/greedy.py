"""Greedy clearing for L=3: the basic scan and the degree-ordered variant.

Both scans are equivalent to walking the lexicographically sorted list of
canonical cycles and keeping every cycle disjoint from those already kept,
but they generate candidates lazily from bitsets: once a cycle starting at
node ``a`` is kept, no other cycle starting at ``a`` can be, so the scan
moves straight to the next free start node. This keeps n=2000 instances,
which have tens of millions of 3-cycles, tractable.
"""

from __future__ import annotations

from typing import Sequence

from .cycles import ClearingSolution, canonical, validate_solution
from .instance import ExchangeInstance, SolverConfig


def _require_l3(config: SolverConfig) -> None:
    if config.L != 3:
        raise ValueError(f"greedy clearing is defined for L=3, got L={config.L}")


def _scan(
    succ: Sequence[int],
    pred: Sequence[int],
    free: int,
    n: int,
    two: bool,
    three: bool,
) -> tuple[list[tuple[int, ...]], int]:
    """Lexicographic greedy over 2- and/or 3-cycles in label space.

    ``free`` is the bitset of still-available labels; returns the picked
    cycles and the updated bitset.
    """
    picked = []
    for a in range(n):
        abit = 1 << a
        if not free & abit:
            continue
        higher = free & ~((abit << 1) - 1)
        into_a = pred[a] & higher
        cand = succ[a] & higher
        while cand:
            low = cand & -cand
            b = low.bit_length() - 1
            if two and into_a & low:
                picked.append((a, b))
                free &= ~(abit | low)
                break
            if three:
                close = succ[b] & into_a & ~low
                if close:
                    c = (close & -close).bit_length() - 1
                    picked.append((a, b, c))
                    free &= ~(abit | low | (1 << c))
                    break
            cand ^= low
    return picked, free


def solve_greedy_basic(inst: ExchangeInstance, config: SolverConfig) -> ClearingSolution:
    """Keep each 2- or 3-cycle, in canonical lexicographic order, if still disjoint."""
    _require_l3(config)
    n = inst.n
    picked, _ = _scan(inst.succ_mask, inst.pred_mask, (1 << n) - 1, n, True, True)
    return validate_solution(inst, picked, config)


def degree_order(inst: ExchangeInstance, alive: int) -> list[int]:
    """Alive nodes sorted by in-degree x out-degree within the alive subgraph, ties by index."""
    succ, pred = inst.succ_mask, inst.pred_mask
    nodes = [v for v in range(inst.n) if alive >> v & 1]
    keys = {v: (succ[v] & alive).bit_count() * (pred[v] & alive).bit_count() for v in nodes}
    return sorted(nodes, key=lambda v: (keys[v], v))


def _relabel(inst: ExchangeInstance, order: list[int], alive: int):
    """Bitsets of the alive subgraph under new labels (position in ``order``)."""
    pos = {v: i for i, v in enumerate(order)}
    succ_src = inst.succ_mask
    succ = [0] * len(order)
    pred = [0] * len(order)
    for i, u in enumerate(order):
        out = succ_src[u] & alive
        m = 0
        while out:
            low = out & -out
            j = pos[low.bit_length() - 1]
            m |= 1 << j
            pred[j] |= 1 << i
            out ^= low
        succ[i] = m
    return succ, pred


def solve_greedy_heuristic(inst: ExchangeInstance, config: SolverConfig) -> ClearingSolution:
    """Degree-ordered greedy: 3-cycles first, then 2-cycles on the residual graph.

    Each phase relabels the live nodes increasingly by indegree x outdegree
    (recomputed on the residual graph for the second phase) and scans
    cycles in lexicographic order of the new labels.
    """
    _require_l3(config)
    alive = (1 << inst.n) - 1
    cycles = []
    for two, three in ((False, True), (True, False)):
        order = degree_order(inst, alive)
        succ, pred = _relabel(inst, order, alive)
        k = len(order)
        picked, _ = _scan(succ, pred, (1 << k) - 1, k, two, three)
        for c in picked:
            orig = [order[i] for i in c]
            cycles.append(canonical(orig))
            for v in orig:
                alive &= ~(1 << v)
    return validate_solution(inst, cycles, config)
