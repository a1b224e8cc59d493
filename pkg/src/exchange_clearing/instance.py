"""Exchange instances: a directed compatibility graph with exact rational arc weights."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Literal, Mapping, Optional

Weight = Fraction
Objective = Literal["size", "weight"]

ONE = Fraction(1)


class InstanceError(ValueError):
    """Raised for structurally invalid instances (self-loops, bad indices, duplicates)."""


class InstanceFormatError(InstanceError):
    """Raised by :func:`parse_instance`; carries the 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def parse_weight(token: str) -> Fraction:
    """Parse ``"3"`` or ``"num/den"`` into a reduced non-negative Fraction."""
    if "/" in token:
        num_s, den_s = token.split("/", 1)
        num, den = int(num_s), int(den_s)
        if den <= 0:
            raise ValueError(f"non-positive denominator in {token!r}")
        w = Fraction(num, den)
    else:
        w = Fraction(int(token))
    if w < 0:
        raise ValueError(f"negative weight {token!r}")
    return w


def format_weight(w: Fraction) -> str:
    if w.denominator == 1:
        return str(w.numerator)
    return f"{w.numerator}/{w.denominator}"


class ExchangeInstance:
    """Immutable directed graph on nodes ``0..n-1``.

    Arcs are stored as per-node successor dicts; :attr:`arcs` returns them in
    canonical (src, dst) order. Bitset views (``succ_mask``/``pred_mask``,
    Python ints with bit ``v`` set for neighbour ``v``) are built lazily and
    used by the fast solvers.
    """

    __slots__ = ("n", "_succ", "labels", "_succ_mask", "_pred_mask", "_pred", "_arcs")

    def __init__(
        self,
        n: int,
        arcs: Iterable[tuple[int, int, Fraction | int]] = (),
        labels: Optional[Mapping[int, str]] = None,
    ):
        if n < 0:
            raise InstanceError("node count must be non-negative")
        succ: list[dict[int, Fraction]] = [{} for _ in range(n)]
        for src, dst, w in arcs:
            if not (0 <= src < n and 0 <= dst < n):
                raise InstanceError(f"arc ({src}, {dst}) out of range for n={n}")
            if src == dst:
                raise InstanceError(f"self-loop at node {src}")
            if dst in succ[src]:
                raise InstanceError(f"duplicate arc ({src}, {dst})")
            w = w if isinstance(w, Fraction) else Fraction(w)
            if w < 0:
                raise InstanceError(f"negative weight on arc ({src}, {dst})")
            succ[src][dst] = w
        for d in succ:
            if list(d) != sorted(d):
                items = sorted(d.items())
                d.clear()
                d.update(items)
        self.n = n
        self._succ = succ
        self.labels: dict[int, str] = {}
        for idx, text in sorted((labels or {}).items()):
            if not 0 <= idx < n:
                raise InstanceError(f"label index {idx} out of range")
            self.labels[idx] = text
        self._succ_mask: Optional[list[int]] = None
        self._pred_mask: Optional[list[int]] = None
        self._pred: Optional[list[list[int]]] = None
        self._arcs: Optional[tuple[tuple[int, int, Fraction], ...]] = None

    # -- queries -------------------------------------------------------

    @property
    def arcs(self) -> tuple[tuple[int, int, Fraction], ...]:
        if self._arcs is None:
            self._arcs = tuple(
                (u, v, w) for u in range(self.n) for v, w in self._succ[u].items()
            )
        return self._arcs

    @property
    def m(self) -> int:
        return sum(len(d) for d in self._succ)

    def successors(self, u: int) -> Mapping[int, Fraction]:
        return self._succ[u]

    def predecessors(self, u: int) -> list[int]:
        if self._pred is None:
            pred: list[list[int]] = [[] for _ in range(self.n)]
            for src, d in enumerate(self._succ):
                for v in d:
                    pred[v].append(src)
            self._pred = pred
        return self._pred[u]

    def has_arc(self, u: int, v: int) -> bool:
        return v in self._succ[u]

    def weight(self, u: int, v: int) -> Fraction:
        return self._succ[u][v]

    @property
    def succ_mask(self) -> list[int]:
        if self._succ_mask is None:
            self._succ_mask = [_mask(d) for d in self._succ]
        return self._succ_mask

    @property
    def pred_mask(self) -> list[int]:
        if self._pred_mask is None:
            pred = [0] * self.n
            for u, d in enumerate(self._succ):
                bit = 1 << u
                for v in d:
                    pred[v] |= bit
            self._pred_mask = pred
        return self._pred_mask

    def out_degree(self, u: int) -> int:
        return len(self._succ[u])

    def in_degree(self, u: int) -> int:
        return self.pred_mask[u].bit_count()

    def density(self) -> float:
        if self.n < 2:
            return 0.0
        return self.m / (self.n * (self.n - 1))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExchangeInstance):
            return NotImplemented
        return self.n == other.n and self._succ == other._succ and self.labels == other.labels

    def __hash__(self):
        return hash((self.n, self.arcs))

    def __repr__(self) -> str:
        return f"ExchangeInstance(n={self.n}, m={self.m})"


def _mask(nodes: Iterable[int]) -> int:
    m = 0
    for v in nodes:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class SolverConfig:
    """Solver knobs. ``L=None`` means unbounded cycle length."""

    L: Optional[int] = 3
    objective: Objective = "size"
    seed: int = 0
    alg2_w: Fraction = field(default_factory=lambda: Fraction(10))
    alg2_cleanup: bool = False

    def __post_init__(self):
        if self.L is not None and self.L < 2:
            raise ValueError(f"cycle length bound must be >= 2, got {self.L}")
        if self.objective not in ("size", "weight"):
            raise ValueError(f"unknown objective {self.objective!r}")
        if not isinstance(self.alg2_w, Fraction):
            object.__setattr__(self, "alg2_w", Fraction(self.alg2_w))
        if self.alg2_w <= 0:
            raise ValueError("alg2_w must be positive")


# -- text format ---------------------------------------------------------


def parse_instance(text: str) -> ExchangeInstance:
    """Parse the flat instance format.

    Line 1 is ``n m``, followed by ``m`` arc lines ``src dst weight`` and
    optional ``label idx text`` lines. ``#`` lines and blank lines are skipped.
    """
    header: Optional[tuple[int, int]] = None
    arcs: list[tuple[int, int, Fraction]] = []
    labels: dict[int, str] = {}
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            parts = line.split()
            if len(parts) != 2:
                raise InstanceFormatError(lineno, "header must be 'n m'")
            try:
                header = (int(parts[0]), int(parts[1]))
            except ValueError:
                raise InstanceFormatError(lineno, "header must be two integers") from None
            if header[0] < 0 or header[1] < 0:
                raise InstanceFormatError(lineno, "negative count in header")
            continue
        n = header[0]
        if line.startswith("label"):
            parts = line.split(maxsplit=2)
            if len(parts) < 2:
                raise InstanceFormatError(lineno, "label line must be 'label idx text'")
            try:
                idx = int(parts[1])
            except ValueError:
                raise InstanceFormatError(lineno, "label index must be an integer") from None
            if not 0 <= idx < n:
                raise InstanceFormatError(lineno, f"label index {idx} out of range")
            labels[idx] = parts[2] if len(parts) == 3 else ""
            continue
        if labels:
            raise InstanceFormatError(lineno, "arc line after label lines")
        parts = line.split()
        if len(parts) != 3:
            raise InstanceFormatError(lineno, "arc line must be 'src dst weight'")
        try:
            src, dst = int(parts[0]), int(parts[1])
        except ValueError:
            raise InstanceFormatError(lineno, "arc endpoints must be integers") from None
        try:
            w = parse_weight(parts[2])
        except (ValueError, ZeroDivisionError) as exc:
            raise InstanceFormatError(lineno, str(exc)) from None
        if not (0 <= src < n and 0 <= dst < n):
            raise InstanceFormatError(lineno, f"arc ({src}, {dst}) out of range for n={n}")
        if src == dst:
            raise InstanceFormatError(lineno, f"self-loop at node {src}")
        if (src, dst) in seen:
            raise InstanceFormatError(lineno, f"duplicate arc ({src}, {dst})")
        seen.add((src, dst))
        arcs.append((src, dst, w))
    if header is None:
        raise InstanceFormatError(1, "missing header")
    if len(arcs) != header[1]:
        raise InstanceFormatError(
            len(text.splitlines()), f"header declares {header[1]} arcs, found {len(arcs)}"
        )
    return ExchangeInstance(header[0], arcs, labels)


def emit_instance(inst: ExchangeInstance) -> str:
    lines = [f"{inst.n} {inst.m}"]
    lines.extend(f"{u} {v} {format_weight(w)}" for u, v, w in inst.arcs)
    lines.extend(f"label {i} {t}" for i, t in inst.labels.items())
    return "\n".join(lines)


def read_instance(path) -> ExchangeInstance:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())


def write_instance(inst: ExchangeInstance, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(emit_instance(inst))


def remove_nodes(
    inst: ExchangeInstance, nodes: Iterable[int]
) -> tuple[ExchangeInstance, dict[int, int]]:
    """Induced subgraph on the surviving nodes.

    Returns the new instance and the old->new index map (survivors keep
    their relative order). Labels travel with their nodes.
    """
    drop = set(nodes)
    for v in drop:
        if not 0 <= v < inst.n:
            raise InstanceError(f"node {v} out of range for n={inst.n}")
    keep = [v for v in range(inst.n) if v not in drop]
    index = {old: new for new, old in enumerate(keep)}
    arcs = [
        (index[u], index[v], w)
        for u in keep
        for v, w in inst.successors(u).items()
        if v in index
    ]
    labels = {index[i]: t for i, t in inst.labels.items() if i in index}
    return ExchangeInstance(len(keep), arcs, labels), index
