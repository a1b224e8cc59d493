"""Desk-scale benchmark: both profiles, sizes 500/1000/2000, 10 copies each.

    python scripts/run_benchmark.py --out results/report.csv --svg results/report.svg

Set EXCHANGE_THREADS to fan cells out over worker processes.
"""

import argparse
import time
from pathlib import Path

from exchange_clearing.bench import emit_report, quality_warnings, run_benchmark
from exchange_clearing.simgen import CHINA, US


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="500,1000,2000")
    ap.add_argument("--copies", type=int, default=10)
    ap.add_argument("--algs", default="greedy-basic,greedy,matching,matching+cleanup")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default="results/report.csv")
    ap.add_argument("--svg", default="results/report.svg")
    args = ap.parse_args()

    sizes = [int(s) for s in args.sizes.split(",")]
    t0 = time.perf_counter()
    report = run_benchmark([US, CHINA], sizes, args.copies, args.algs.split(","), seed=args.seed)
    Path(args.out).parent.mkdir(parents=True, exist_ok=True)
    emit_report(report, args.out, "csv")
    emit_report(report, args.svg, "svg")
    print(f"{len(report.rows)} rows in {time.perf_counter() - t0:.1f}s -> {args.out}, {args.svg}")
    for avg in report.averages():
        print(f"{avg['profile']:>6} n={avg['n']:<5} {avg['algorithm']:<17} quality={avg['quality']:.4f} ms={avg['wall_millis']:.0f}")
    for msg in quality_warnings(report):
        print("warning:", msg)


if __name__ == "__main__":
    main()
