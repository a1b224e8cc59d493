"""Exhaustive optimal clearing by branch-and-bound over the canonical cycle list."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .cycles import ClearingSolution, canonical, enumerate_cycles, validate_solution
from .instance import ExchangeInstance, SolverConfig

MAX_NODES = 24
MAX_CYCLES = 2**20


class InstanceTooLargeError(ValueError):
    pass


def solve_exact(
    inst: ExchangeInstance,
    config: SolverConfig,
    max_nodes: Optional[int] = MAX_NODES,
) -> ClearingSolution:
    """Optimal vertex-disjoint packing of cycles of length <= ``config.L``.

    Branches include-before-exclude on the first usable cycle of the sorted
    cycle list, so the first optimum found is the lexicographically least
    optimal cycle set; later candidates must be strictly better to replace it.

    ``max_nodes`` guards the search; pass None to lift the node guard when the
    instance is known to have few cycles (e.g. gadget instances).
    """
    if max_nodes is not None and inst.n > max_nodes:
        raise InstanceTooLargeError(f"n={inst.n} exceeds exact-oracle guard {max_nodes}")
    cycles = enumerate_cycles(inst, config.L)
    if len(cycles) > MAX_CYCLES:
        raise InstanceTooLargeError(f"{len(cycles)} cycles exceed guard {MAX_CYCLES}")
    size_mode = config.objective == "size"
    masks = []
    values = []
    for c in cycles:
        m = 0
        for v in c:
            m |= 1 << v
        masks.append(m)
        if size_mode:
            values.append(len(c))
        else:
            k = len(c)
            values.append(sum((inst.weight(c[i], c[(i + 1) % k]) for i in range(k)), Fraction(0)))
    zero = 0 if size_mode else Fraction(0)
    ncyc = len(cycles)

    # per-node share: a packing's value splits evenly over its cycles' nodes
    shares = [v / len(c) for v, c in zip(values, cycles)] if not size_mode else None

    best_value = None
    best_set: list[int] = []
    chosen: list[int] = []

    def bound(start: int, used: int):
        total = zero
        if size_mode:
            reach = 0
            for j in range(start, ncyc):
                if not masks[j] & used:
                    total += values[j]
                    reach |= masks[j]
            return min(total, reach.bit_count())
        per_node: dict[int, Fraction] = {}
        for j in range(start, ncyc):
            if not masks[j] & used:
                total += values[j]
                s = shares[j]
                for v in cycles[j]:
                    if per_node.get(v, -1) < s:
                        per_node[v] = s
        return min(total, sum(per_node.values(), zero))

    def search(j: int, used: int, value) -> None:
        # the exclude branch is the loop continuation; recursion depth stays <= n/2
        nonlocal best_value, best_set
        while True:
            while j < ncyc and masks[j] & used:
                j += 1
            if j == ncyc:
                if best_value is None or value > best_value:
                    best_value = value
                    best_set = list(chosen)
                return
            if best_value is not None and value + bound(j, used) <= best_value:
                return
            chosen.append(j)
            search(j + 1, used | masks[j], value + values[j])
            chosen.pop()
            j += 1

    search(0, 0, zero)
    return validate_solution(inst, [canonical(list(cycles[j])) for j in best_set], config)
