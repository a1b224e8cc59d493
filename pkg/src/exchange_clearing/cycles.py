"""Cycle enumeration, weighing and solution validation."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .instance import ExchangeInstance, Objective, SolverConfig

Cycle = tuple[int, ...]

#: Unbounded enumeration explodes combinatorially; refuse beyond this.
UNBOUNDED_ENUMERATION_MAX_NODES = 14


class InvalidSolutionError(ValueError):
    pass


class EnumerationTooLargeError(ValueError):
    pass


def canonical(nodes: Sequence[int]) -> Cycle:
    """Rotate so the smallest node comes first. Orientation is kept."""
    k = nodes.index(min(nodes))
    return tuple(nodes[k:]) + tuple(nodes[:k])


@dataclass(frozen=True)
class ClearingSolution:
    cycles: tuple[Cycle, ...]
    objective: Union[int, Fraction]
    mode: Objective = "size"

    @property
    def covered(self) -> frozenset[int]:
        return frozenset(v for c in self.cycles for v in c)

    @property
    def size(self) -> int:
        return sum(len(c) for c in self.cycles)

    def count_by_length(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for c in self.cycles:
            out[len(c)] = out.get(len(c), 0) + 1
        return out


def enumerate_cycles(inst: ExchangeInstance, max_len: Optional[int]) -> list[Cycle]:
    """All simple directed cycles of length <= ``max_len`` (None = any length).

    Each cycle appears once, min-node-first, and the list is sorted
    lexicographically.
    """
    n = inst.n
    if max_len is None:
        if n > UNBOUNDED_ENUMERATION_MAX_NODES:
            raise EnumerationTooLargeError(
                f"unbounded enumeration refused for n={n} > {UNBOUNDED_ENUMERATION_MAX_NODES}"
            )
        max_len = max(n, 2)
    if max_len < 2:
        raise ValueError("cycle length bound must be >= 2")
    succ = [sorted(inst.successors(u)) for u in range(n)]
    pred = inst.pred_mask
    out: list[Cycle] = []

    for s in range(n):
        back = pred[s]
        if not back >> (s + 1):
            continue
        path = [s]
        on_path = 1 << s

        def extend(u: int) -> None:
            nonlocal on_path
            for v in succ[u]:
                if v <= s or on_path >> v & 1:
                    continue
                path.append(v)
                if back >> v & 1:
                    out.append(tuple(path))
                if len(path) < max_len:
                    on_path |= 1 << v
                    extend(v)
                    on_path &= ~(1 << v)
                path.pop()

        extend(s)
    out.sort()
    return out


def cycle_weight(inst: ExchangeInstance, c: Sequence[int]) -> Fraction:
    total = Fraction(0)
    k = len(c)
    for i in range(k):
        u, v = c[i], c[(i + 1) % k]
        if not inst.has_arc(u, v):
            raise InvalidSolutionError(f"cycle {tuple(c)} uses missing arc ({u}, {v})")
        total += inst.weight(u, v)
    return total


def cycle_value(inst: ExchangeInstance, c: Sequence[int], objective: Objective):
    if objective == "size":
        cycle_weight(inst, c)  # arc check only
        return len(c)
    return cycle_weight(inst, c)


def validate_solution(
    inst: ExchangeInstance, cycles: Iterable[Sequence[int]], config: SolverConfig
) -> ClearingSolution:
    """Check feasibility and build a :class:`ClearingSolution`.

    Cycles are canonicalised and sorted; the objective is recomputed from
    scratch (arc-weight sum, or covered node count in size mode).
    """
    owner: dict[int, Cycle] = {}
    canon: list[Cycle] = []
    for raw in cycles:
        c = canonical(list(raw))
        if len(c) < 2:
            raise InvalidSolutionError(f"cycle {c} shorter than 2")
        if len(set(c)) != len(c):
            raise InvalidSolutionError(f"cycle {c} repeats a node")
        if config.L is not None and len(c) > config.L:
            raise InvalidSolutionError(f"cycle {c} over length bound L={config.L}")
        for v in c:
            if not 0 <= v < inst.n:
                raise InvalidSolutionError(f"node {v} out of range")
            if v in owner:
                raise InvalidSolutionError(f"node {v} shared by cycles {owner[v]} and {c}")
            owner[v] = c
        canon.append(c)
    canon.sort()
    if config.objective == "size":
        for c in canon:
            cycle_weight(inst, c)
        objective: Union[int, Fraction] = sum(len(c) for c in canon)
    else:
        objective = sum((cycle_weight(inst, c) for c in canon), Fraction(0))
    return ClearingSolution(tuple(canon), objective, config.objective)


def is_maximal(inst: ExchangeInstance, sol: ClearingSolution, max_len: int = 3) -> bool:
    """True if no cycle of length <= max_len avoids every covered node."""
    covered = sol.covered
    return not any(covered.isdisjoint(c) for c in enumerate_cycles(inst, max_len))
