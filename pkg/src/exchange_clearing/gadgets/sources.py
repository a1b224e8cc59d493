"""Source problems for the reductions: Max-3Lin-2 systems and 3-dimensional matching."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

LIN2_MAX_VARS = 20
TDM_MAX_TRIPLES = 20


class GuardError(ValueError):
    pass


@dataclass(frozen=True)
class Lin2System:
    """Equations ``x_i + x_j + x_k = rhs (mod 2)`` over ``n_vars`` bits."""

    n_vars: int
    equations: tuple[tuple[int, int, int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "equations", tuple(tuple(e) for e in self.equations))
        for e in self.equations:
            i, j, k, rhs = e
            if len({i, j, k}) != 3:
                raise ValueError(f"equation {e} must use three distinct variables")
            if not all(0 <= x < self.n_vars for x in (i, j, k)):
                raise ValueError(f"equation {e} references a variable >= {self.n_vars}")
            if rhs not in (0, 1):
                raise ValueError(f"equation {e} has non-bit right-hand side")

    @property
    def m(self) -> int:
        return len(self.equations)

    def occurrences(self) -> list[int]:
        occ = [0] * self.n_vars
        for i, j, k, _ in self.equations:
            occ[i] += 1
            occ[j] += 1
            occ[k] += 1
        return occ

    def satisfied(self, assignment) -> int:
        return sum((assignment[i] ^ assignment[j] ^ assignment[k]) == rhs for i, j, k, rhs in self.equations)


@dataclass(frozen=True)
class TripleSystem:
    nx: int
    ny: int
    nz: int
    triples: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "triples", tuple(tuple(t) for t in self.triples))
        if len(set(self.triples)) != len(self.triples):
            raise ValueError("duplicate triple")
        for x, y, z in self.triples:
            if not (0 <= x < self.nx and 0 <= y < self.ny and 0 <= z < self.nz):
                raise ValueError(f"triple {(x, y, z)} out of range")

    def is_two_regular(self) -> bool:
        counts = [[0] * self.nx, [0] * self.ny, [0] * self.nz]
        for t in self.triples:
            for axis, e in enumerate(t):
                counts[axis][e] += 1
        return all(c == 2 for axis in counts for c in axis)


# -- exact solvers ---------------------------------------------------------


def solve_lin2_exact(sys: Lin2System) -> int:
    """Maximum number of simultaneously satisfiable equations (2^n scan)."""
    if sys.n_vars > LIN2_MAX_VARS:
        raise GuardError(f"{sys.n_vars} variables exceed guard {LIN2_MAX_VARS}")
    if not sys.equations:
        return 0
    # one bitmask per equation; the parity of assignment & mask is the lhs
    masks = [((1 << i) | (1 << j) | (1 << k), rhs) for i, j, k, rhs in sys.equations]
    best = 0
    for a in range(1 << sys.n_vars):
        sat = sum((a & mk).bit_count() & 1 == rhs for mk, rhs in masks)
        if sat > best:
            best = sat
            if best == len(masks):
                break
    return best


def solve_3dm_exact(sys: TripleSystem) -> int:
    """Maximum number of pairwise disjoint triples."""
    if len(sys.triples) > TDM_MAX_TRIPLES:
        raise GuardError(f"{len(sys.triples)} triples exceed guard {TDM_MAX_TRIPLES}")
    triples = sys.triples
    best = 0

    def search(i: int, used: frozenset, count: int) -> None:
        nonlocal best
        if count + (len(triples) - i) <= best:
            return
        if i == len(triples):
            best = count
            return
        x, y, z = triples[i]
        keys = (("x", x), ("y", y), ("z", z))
        if not any(k in used for k in keys):
            search(i + 1, used | set(keys), count + 1)
        search(i + 1, used, count)

    search(0, frozenset(), 0)
    return best


# -- random sources ----------------------------------------------------------


def generate_source(kind: str, params: dict, seed: int):
    """Deterministic random source instance.

    kinds and params:
      ``lin2``      n, m
      ``lin2-3occ`` n, m            (every variable in at most 3 equations)
      ``3dm``       nx, ny, nz, t   or  q, regime="exact2" (each element in 2 triples)
    """
    rng = random.Random(seed)
    if kind == "lin2":
        n, m = params["n"], params["m"]
        if n < 3:
            raise ValueError("lin2 needs at least 3 variables")
        eqs = [(*sorted(rng.sample(range(n), 3)), rng.randrange(2)) for _ in range(m)]
        return Lin2System(n, tuple(eqs))
    if kind == "lin2-3occ":
        n, m = params["n"], params["m"]
        if n < 3 or 3 * m > 3 * n:
            raise ValueError(f"occurrence budget exhausted: {m} equations need {3 * m} > {3 * n} slots")
        for _ in range(1000):
            left = [3] * n
            eqs = []
            for _ in range(m):
                avail = [v for v in range(n) if left[v] > 0]
                if len(avail) < 3:
                    break
                # favour variables with more budget left so the draw rarely dead-ends
                chosen: list[int] = []
                pool = list(avail)
                while len(chosen) < 3:
                    v = rng.choices(pool, weights=[left[p] for p in pool])[0]
                    chosen.append(v)
                    pool.remove(v)
                for v in chosen:
                    left[v] -= 1
                eqs.append((*sorted(chosen), rng.randrange(2)))
            else:
                return Lin2System(n, tuple(eqs))
        raise ValueError("could not place equations within the occurrence budget")
    if kind == "3dm":
        if params.get("regime") == "exact2":
            q = params["q"]
            if q < 2:
                raise ValueError("exact2 regime needs q >= 2")
            for _ in range(1000):
                layers = []
                for _ in range(2):
                    ys = list(range(q))
                    zs = list(range(q))
                    rng.shuffle(ys)
                    rng.shuffle(zs)
                    layers.extend(zip(range(q), ys, zs))
                if len(set(layers)) == len(layers):
                    return TripleSystem(q, q, q, tuple(sorted(layers)))
            raise ValueError("could not draw duplicate-free 2-regular triples")
        nx, ny, nz, t = params["nx"], params["ny"], params["nz"], params["t"]
        if t > nx * ny * nz:
            raise ValueError("more triples requested than distinct triples exist")
        chosen = set()
        while len(chosen) < t:
            chosen.add((rng.randrange(nx), rng.randrange(ny), rng.randrange(nz)))
        return TripleSystem(nx, ny, nz, tuple(sorted(chosen)))
    raise ValueError(f"unknown source kind {kind!r}")


# -- text formats ----------------------------------------------------------


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line.split()


def parse_lin2(text: str) -> Lin2System:
    """Header ``n_vars m`` then ``m`` lines ``i j k rhs``."""
    lines = list(_content_lines(text))
    if not lines or len(lines[0][1]) != 2:
        raise ValueError("lin2 header must be 'n_vars m'")
    n, m = map(int, lines[0][1])
    eqs = []
    for lineno, parts in lines[1:]:
        if len(parts) != 4:
            raise ValueError(f"line {lineno}: expected 'i j k rhs'")
        eqs.append(tuple(map(int, parts)))
    if len(eqs) != m:
        raise ValueError(f"header declares {m} equations, found {len(eqs)}")
    return Lin2System(n, tuple(eqs))


def emit_lin2(sys: Lin2System) -> str:
    return "\n".join([f"{sys.n_vars} {sys.m}"] + [" ".join(map(str, e)) for e in sys.equations])


def parse_3dm(text: str) -> TripleSystem:
    """Header ``nx ny nz t`` then ``t`` lines ``x y z``."""
    lines = list(_content_lines(text))
    if not lines or len(lines[0][1]) != 4:
        raise ValueError("3dm header must be 'nx ny nz t'")
    nx, ny, nz, t = map(int, lines[0][1])
    triples = []
    for lineno, parts in lines[1:]:
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected 'x y z'")
        triples.append(tuple(map(int, parts)))
    if len(triples) != t:
        raise ValueError(f"header declares {t} triples, found {len(triples)}")
    return TripleSystem(nx, ny, nz, tuple(triples))


def emit_3dm(sys: TripleSystem) -> str:
    head = f"{sys.nx} {sys.ny} {sys.nz} {len(sys.triples)}"
    return "\n".join([head] + [" ".join(map(str, t)) for t in sys.triples])


def satisfying_assignments(rhs: int) -> list[tuple[int, int, int]]:
    return [a for a in itertools.product((0, 1), repeat=3) if sum(a) % 2 == rhs]
