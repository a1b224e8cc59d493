"""Exact matching in general undirected graphs.

Both solvers delegate to rustworkx's Edmonds blossom implementation, which
works on integer weights; rational weights are scaled by the LCM of their
denominators first so optimality stays exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import rustworkx as rx

Matching = list[tuple[int, int]]

# rustworkx weights are i64; leave headroom for dual variables
_MAX_SCALED = 2**60


@dataclass(frozen=True)
class UndirectedGraph:
    n: int
    edges: tuple[tuple[int, int, Fraction], ...]

    def __post_init__(self):
        seen = set()
        for u, v, w in self.edges:
            if not u < v:
                raise ValueError(f"edge ({u}, {v}) must satisfy u < v")
            if not (0 <= u and v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))

    @classmethod
    def from_pairs(cls, n: int, edges: Iterable[tuple]) -> "UndirectedGraph":
        """Build from (u, v) or (u, v, w) tuples in any endpoint order; w defaults to 1."""
        out = []
        for e in edges:
            u, v = e[0], e[1]
            w = Fraction(e[2]) if len(e) > 2 else Fraction(1)
            if u > v:
                u, v = v, u
            out.append((u, v, w))
        out.sort()
        return cls(n, tuple(out))


def _build(g: UndirectedGraph, weights: Sequence[int]) -> rx.PyGraph:
    pg = rx.PyGraph(multigraph=False)
    pg.add_nodes_from(range(g.n))
    pg.add_edges_from([(u, v, w) for (u, v, _), w in zip(g.edges, weights)])
    return pg


def _normalise(pairs) -> Matching:
    return sorted((min(u, v), max(u, v)) for u, v in pairs)


def max_cardinality_matching(g: UndirectedGraph) -> Matching:
    if not g.edges:
        return []
    pg = _build(g, [1] * len(g.edges))
    return _normalise(rx.max_weight_matching(pg, max_cardinality=True, weight_fn=lambda w: w))


def scale_to_integers(weights: Sequence[Fraction]) -> tuple[list[int], int]:
    """Multiply rationals by the LCM of their denominators."""
    scale = 1
    for den in {w.denominator for w in weights}:
        scale = math.lcm(scale, den)
    ints = [w.numerator * (scale // w.denominator) for w in weights]
    if ints and max(ints) * 4 >= _MAX_SCALED // max(len(ints), 1):
        raise OverflowError("scaled matching weights exceed the integer range")
    return ints, scale


def max_weight_matching(g: UndirectedGraph) -> Matching:
    """A matching of maximum total weight (not necessarily maximum cardinality)."""
    if any(w < 0 for _, _, w in g.edges):
        raise ValueError("max_weight_matching requires non-negative weights")
    if not g.edges:
        return []
    ints, _ = scale_to_integers([w for _, _, w in g.edges])
    pg = _build(g, ints)
    return _normalise(rx.max_weight_matching(pg, max_cardinality=False, weight_fn=lambda w: w))


def matching_weight(g: UndirectedGraph, matching: Matching) -> Fraction:
    lookup = {(u, v): w for u, v, w in g.edges}
    return sum((lookup[e] for e in matching), Fraction(0))


def is_matching(g: UndirectedGraph, matching: Matching) -> bool:
    edges = {(u, v) for u, v, _ in g.edges}
    seen: set[int] = set()
    for u, v in matching:
        if (u, v) not in edges or u in seen or v in seen:
            return False
        seen.update((u, v))
    return True
