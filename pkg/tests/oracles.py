"""Independent brute-force references used by the test suite.

Nothing here imports the solvers; only the instance container is shared.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from exchange_clearing.instance import ExchangeInstance


def random_instance(rng: random.Random, n: int, p: float, weighted: bool = False) -> ExchangeInstance:
    arcs = []
    for u in range(n):
        for v in range(n):
            if u != v and rng.random() < p:
                w = Fraction(rng.randint(0, 6), rng.randint(1, 3)) if weighted else Fraction(1)
                arcs.append((u, v, w))
    return ExchangeInstance(n, arcs)


def brute_cycles(inst: ExchangeInstance, max_len=None) -> list[tuple[int, ...]]:
    """All simple cycles as node sequences, rotated so the minimum comes first."""
    arcs = {(u, v) for u, v, _ in inst.arcs}
    top = inst.n if max_len is None else min(max_len, inst.n)
    found = set()
    for k in range(2, top + 1):
        for seq in itertools.permutations(range(inst.n), k):
            if seq[0] != min(seq):
                continue
            if all((seq[i], seq[(i + 1) % k]) in arcs for i in range(k)):
                found.add(seq)
    return sorted(found)


def brute_weight(inst: ExchangeInstance, c) -> Fraction:
    w = dict(((u, v), x) for u, v, x in inst.arcs)
    return sum((w[(c[i], c[(i + 1) % len(c)])] for i in range(len(c))), Fraction(0))


def brute_clearing(inst: ExchangeInstance, max_len=None, objective="size"):
    """Best objective over every vertex-disjoint set of cycles.

    Decides nodes in increasing order: the smallest free node is either left
    uncovered or covered by a cycle whose minimum it is.
    """
    by_min: dict[int, list] = {}
    for c in brute_cycles(inst, max_len):
        val = len(c) if objective == "size" else brute_weight(inst, c)
        by_min.setdefault(c[0], []).append((frozenset(c), val))

    def go(v, used):
        while v < inst.n and v in used:
            v += 1
        if v >= inst.n:
            return 0
        best = go(v + 1, used)
        for nodes, val in by_min.get(v, ()):
            if not nodes & used:
                best = max(best, val + go(v + 1, used | nodes))
        return best

    return go(0, frozenset())


def random_graph(rng: random.Random, n: int, p: float, weighted: bool):
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.append((u, v, Fraction(rng.randint(0, 9), rng.randint(1, 4)) if weighted else Fraction(1)))
    return edges


def brute_matching(edges, weighted: bool):
    """Maximum cardinality (or weight) over every subset of pairwise disjoint edges."""
    best = 0

    def go(i, used, total):
        nonlocal best
        if i == len(edges):
            best = max(best, total)
            return
        u, v, w = edges[i]
        if u not in used and v not in used:
            go(i + 1, used | {u, v}, total + (w if weighted else 1))
        go(i + 1, used, total)

    go(0, frozenset(), 0)
    return best


def truth_table_lin2(n_vars, equations) -> int:
    best = 0
    for bits in itertools.product((0, 1), repeat=n_vars):
        best = max(best, sum((bits[i] + bits[j] + bits[k]) % 2 == r for i, j, k, r in equations))
    return best


def subset_3dm(triples) -> int:
    best = 0
    for k in range(len(triples) + 1):
        for combo in itertools.combinations(triples, k):
            if all(len({t[a] for t in combo}) == k for a in range(3)):
                best = max(best, k)
    return best
