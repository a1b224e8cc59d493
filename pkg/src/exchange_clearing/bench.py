"""Benchmark harness: simulated pools, heuristics against the L=2 / unbounded bounds.

Copy ``k`` of a (profile, n) cell uses seed ``seed + k``, so any single run
can be recreated in isolation with ``gen``.
"""

from __future__ import annotations

import csv
import io
import logging
import os
import time
import warnings
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from statistics import fmean
from typing import Sequence, Union

from .instance import SolverConfig, format_weight
from .oracle import MAX_NODES
from .simgen import PopulationProfile, generate_instance
from .solvers import HEURISTICS, get_solver

log = logging.getLogger(__name__)

CSV_HEADER = ("profile", "n", "seed", "algorithm", "objective", "lb2", "ub_inf", "wall_millis")
QUALITY_SLACK = 0.02


@dataclass(frozen=True)
class BenchRow:
    profile: str
    n: int
    seed: int
    algorithm: str
    objective: Union[int, Fraction]
    lb2: Union[int, Fraction]
    ub_inf: Union[int, Fraction]
    wall_millis: float

    @property
    def quality(self) -> float:
        return float(self.objective / self.ub_inf) if self.ub_inf else 1.0


@dataclass
class BenchReport:
    rows: list[BenchRow] = field(default_factory=list)

    def averages(self) -> list[dict]:
        """Per (profile, n, algorithm) means, in first-seen order."""
        groups: dict[tuple, list[BenchRow]] = defaultdict(list)
        for r in self.rows:
            groups[(r.profile, r.n, r.algorithm)].append(r)
        return [
            {
                "profile": p,
                "n": n,
                "algorithm": a,
                "copies": len(rs),
                "objective": fmean(float(r.objective) for r in rs),
                "quality": fmean(r.quality for r in rs),
                "wall_millis": fmean(r.wall_millis for r in rs),
            }
            for (p, n, a), rs in groups.items()
        ]


def _timed(fn, *args):
    t0 = time.perf_counter()
    out = fn(*args)
    return out, (time.perf_counter() - t0) * 1000.0


def _run_cell(profile: PopulationProfile, n: int, seed: int, algorithms: Sequence[str], config: SolverConfig):
    inst = generate_instance(profile, n, seed)
    lb, lb_ms = _timed(get_solver("lb2"), inst, config)
    ub, ub_ms = _timed(get_solver("ub-inf"), inst, config)
    rows = []
    best, best_ms = lb.objective, lb_ms
    for name in algorithms:
        if name in ("lb2", "ub-inf"):
            continue
        sol, ms = _timed(get_solver(name), inst, config)
        rows.append(BenchRow(profile.name, n, seed, name, sol.objective, lb.objective, ub.objective, ms))
        if name in HEURISTICS:
            best = max(best, sol.objective)
            best_ms += ms
    rows.append(BenchRow(profile.name, n, seed, "lb2", lb.objective, lb.objective, ub.objective, lb_ms))
    rows.append(BenchRow(profile.name, n, seed, "ub-inf", ub.objective, lb.objective, ub.objective, ub_ms))
    rows.append(BenchRow(profile.name, n, seed, "best", best, lb.objective, ub.objective, best_ms))
    return rows


def thread_cap() -> int:
    raw = os.environ.get("EXCHANGE_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ValueError(f"EXCHANGE_THREADS must be an integer, got {raw!r}") from None


def run_benchmark(
    profiles: Sequence[PopulationProfile],
    sizes: Sequence[int],
    copies: int,
    algorithms: Sequence[str],
    seed: int = 0,
    config: SolverConfig = SolverConfig(),
    threads: int | None = None,
) -> BenchReport:
    """Run every algorithm on ``copies`` pools per (profile, n).

    Each cell also records both bounds and a synthetic ``best`` row
    (max of the heuristics and lb2, so lb2 <= best <= ub_inf). Cells run in
    up to ``threads`` worker processes (default: ``EXCHANGE_THREADS`` or 1);
    rows come back in a fixed order regardless.
    """
    if copies < 1:
        raise ValueError("copies must be >= 1")
    for name in algorithms:
        get_solver(name)
    if "exact" in algorithms and max(sizes) > MAX_NODES:
        raise ValueError(f"exact oracle requested for n={max(sizes)} above guard {MAX_NODES}")
    cells = [(p, n, seed + k) for p in profiles for n in sizes for k in range(copies)]
    workers = min(threads or thread_cap(), len(cells))
    report = BenchReport()
    if workers <= 1:
        for p, n, s in cells:
            report.rows.extend(_run_cell(p, n, s, algorithms, config))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_run_cell, p, n, s, algorithms, config) for p, n, s in cells]
            for fut in futures:
                report.rows.extend(fut.result())
    return report


def quality_warnings(report: BenchReport, profile: str = "us") -> list[str]:
    """Soft check: mean quality of matching >= mean quality of greedy - 0.02."""
    quals: dict[str, list[float]] = defaultdict(list)
    for r in report.rows:
        if r.profile == profile:
            quals[r.algorithm].append(r.quality)
    out = []
    if quals.get("matching") and quals.get("greedy"):
        q2, q1 = fmean(quals["matching"]), fmean(quals["greedy"])
        if q2 < q1 - QUALITY_SLACK:
            out.append(
                f"{profile}: mean quality matching={q2:.4f} below greedy={q1:.4f} - {QUALITY_SLACK}"
            )
    for msg in out:
        warnings.warn(msg, stacklevel=2)
        log.warning(msg)
    return out


def _fmt(value) -> str:
    if isinstance(value, Fraction):
        return format_weight(value)
    return str(value)


def report_csv(report: BenchReport, timing: bool = True) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in report.rows:
        ms = f"{r.wall_millis:.3f}" if timing else "0"
        w.writerow([r.profile, r.n, r.seed, r.algorithm, _fmt(r.objective), _fmt(r.lb2), _fmt(r.ub_inf), ms])
    return buf.getvalue()


def report_svg(report: BenchReport) -> str:
    """Quality (objective / ub_inf) and mean wall time against n, one line per profile/algorithm."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    plt.rcParams["svg.hashsalt"] = "exchange-clearing"
    series: dict[tuple[str, str], list[dict]] = defaultdict(list)
    for avg in report.averages():
        series[(avg["profile"], avg["algorithm"])].append(avg)
    fig, (ax_q, ax_t) = plt.subplots(1, 2, figsize=(11, 4.2))
    for (profile, alg), pts in series.items():
        pts.sort(key=lambda a: a["n"])
        ns = [a["n"] for a in pts]
        label = f"{profile}/{alg}"
        ax_q.plot(ns, [a["quality"] for a in pts], marker="o", label=label)
        ax_t.plot(ns, [a["wall_millis"] for a in pts], marker="o", label=label)
    ax_q.set_xlabel("pairs (n)")
    ax_q.set_ylabel("objective / ub_inf")
    ax_q.set_ylim(0, 1.02)
    ax_t.set_xlabel("pairs (n)")
    ax_t.set_ylabel("wall time (ms)")
    ax_q.legend(fontsize=7)
    fig.tight_layout()
    buf = io.StringIO()
    fig.savefig(buf, format="svg", metadata={"Date": None})
    plt.close(fig)
    return buf.getvalue()


def emit_report(report: BenchReport, path, fmt: str = "csv", timing: bool = True) -> None:
    if not report.rows:
        raise ValueError("empty report")
    text = report_csv(report, timing) if fmt == "csv" else report_svg(report)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
