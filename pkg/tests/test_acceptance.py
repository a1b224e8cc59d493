"""End-to-end acceptance gate; each test prints one PASS/FAIL line."""

import os
import random
import subprocess
import sys
import time
import warnings

import numpy as np
import pytest

from exchange_clearing.bench import quality_warnings, report_csv, run_benchmark
from exchange_clearing.bounds import solve_2_exchange, solve_unbounded_exchange
from exchange_clearing.cycles import cycle_weight, enumerate_cycles
from exchange_clearing.gadgets import (
    build_size3_reduction,
    build_weighted3_reduction,
    build_weightedL_reduction,
    generate_source,
    solve_3dm_exact,
    solve_lin2_exact,
    verify_gadgets,
)
from exchange_clearing.gadgets.reductions import parse_label
from exchange_clearing.greedy import solve_greedy_basic, solve_greedy_heuristic
from exchange_clearing.instance import SolverConfig, emit_instance
from exchange_clearing.matching import UndirectedGraph, matching_weight, max_cardinality_matching, max_weight_matching
from exchange_clearing.matching_clearing import solve_matching_based
from exchange_clearing.oracle import solve_exact
from exchange_clearing.simgen import CHINA, US, generate_instance
from exchange_clearing.solvers import ALGORITHMS, HEURISTICS

from oracles import brute_matching, random_graph, random_instance

BENCH_SIZES = [500, 1000, 2000]
BENCH_ALGS = ["greedy-basic", "greedy", "matching"]


def verdict(capsys, k, ok, detail):
    with capsys.disabled():
        print(f"\n{'PASS' if ok else 'FAIL'} criterion {k}: {detail}")
    assert ok, detail


@pytest.fixture(scope="module")
def desk_bench():
    t0 = time.perf_counter()
    report = run_benchmark([US, CHINA], BENCH_SIZES, 10, BENCH_ALGS, seed=0)
    return report, time.perf_counter() - t0


def test_criterion_1_greedy_ratio(capsys):
    rng = random.Random(101)
    t0 = time.perf_counter()
    violations, count = 0, 0
    cfg = SolverConfig(L=3)
    for _ in range(240):
        inst = random_instance(rng, rng.randint(2, 12), rng.choice([0.1, 0.2, 0.3, 0.45, 0.6]))
        opt = solve_exact(inst, cfg).objective
        got = solve_greedy_basic(inst, cfg).objective
        violations += 3 * got < opt
        count += 1
    elapsed = time.perf_counter() - t0
    verdict(capsys, 1, violations == 0 and elapsed < 30,
            f"{count} instances, {violations} ratio violations, {elapsed:.1f}s")


def test_criterion_2_bound_optimality(capsys):
    rng = random.Random(202)
    bad = []
    instances = 0
    for i in range(520):
        objective = "size" if i % 2 == 0 else "weight"
        inst = random_instance(rng, rng.randint(1, 10), rng.choice([0.1, 0.2, 0.3, 0.4]), weighted=True)
        lo = solve_2_exchange(inst, objective).objective
        hi = solve_unbounded_exchange(inst, objective).objective
        if lo != solve_exact(inst, SolverConfig(L=2, objective=objective)).objective:
            bad.append(("lb2", i))
        if hi != solve_exact(inst, SolverConfig(L=None, objective=objective)).objective:
            bad.append(("ub-inf", i))
        instances += 1
    graphs = 0
    for i in range(520):
        n = rng.randint(0, 10)
        for weighted in (False, True):
            edges = random_graph(rng, n, rng.choice([0.2, 0.35, 0.5, 0.8]), weighted)
            g = UndirectedGraph(n, tuple(edges))
            got = matching_weight(g, max_weight_matching(g)) if weighted else len(max_cardinality_matching(g))
            if got != brute_matching(edges, weighted):
                bad.append(("matching", i, weighted))
        graphs += 1
    verdict(capsys, 2, not bad,
            f"{instances} instances x 2 bounds, {graphs} graphs x 2 matchings, mismatches={bad[:5]}")


def test_criterion_3_sandwich(capsys, desk_bench):
    report, _ = desk_bench
    bad = [r for r in report.rows if r.algorithm == "best" and not r.lb2 <= r.objective <= r.ub_inf]
    small = run_benchmark([US, CHINA], [8, 12, 16, 20], 5, ["exact"] + BENCH_ALGS, seed=50)
    exact_rows = [r for r in small.rows if r.algorithm == "exact"]
    bad += [r for r in exact_rows if not r.lb2 <= r.objective <= r.ub_inf]
    bad += [r for r in small.rows if r.algorithm == "best" and not r.lb2 <= r.objective <= r.ub_inf]
    rng = random.Random(303)
    for _ in range(200):
        inst = random_instance(rng, rng.randint(2, 12), rng.choice([0.1, 0.25, 0.4]))
        ex = solve_exact(inst, SolverConfig(L=3)).objective
        if not solve_2_exchange(inst).objective <= ex <= solve_unbounded_exchange(inst).objective:
            bad.append(inst)
    rows = sum(1 for r in report.rows + small.rows if r.algorithm == "best")
    verdict(capsys, 3, not bad,
            f"{rows} best rows, {len(exact_rows)} oracle rows + 200 random oracle runs, {len(bad)} violations")


def _var_cycles(inst, var):
    nodes = {v for v, t in inst.labels.items() if parse_label(t).get("gadget") == "var" and parse_label(t)["var"] == str(var)}
    return [c for c in enumerate_cycles(inst, 3) if set(c) <= nodes]


def test_criterion_4_gadget_structure(capsys):
    problems = []
    checked = {"weightedL": 0, "weighted3": 0, "size3": 0}
    rng = random.Random(404)
    for _ in range(20):
        sys_ = generate_source("lin2", {"n": rng.randint(3, 5), "m": rng.randint(2, 4)}, rng.randrange(10**6))
        inst, L, _ = build_weightedL_reduction(sys_)
        if inst.n != (2 * sys_.m + 1) * sys_.n_vars:
            problems.append(("node count", sys_))
        rep = verify_gadgets(inst, "weightedL")
        problems += rep.violations
        checked["weightedL"] += rep.gadgets_checked
    for _ in range(20):
        sys_ = generate_source("lin2-3occ", {"n": rng.randint(3, 5), "m": rng.randint(1, 3)}, rng.randrange(10**6))
        inst, _, _ = build_weighted3_reduction(sys_)
        rep = verify_gadgets(inst, "weighted3")
        problems += rep.violations
        checked["weighted3"] += rep.gadgets_checked
        # thin/thick totals recounted here from the raw cycle list
        for var, occ in enumerate(sys_.occurrences()):
            cycles = _var_cycles(inst, var)
            roles = [{parse_label(inst.labels[v])["role"] for v in c} for c in cycles]
            thin = sum(cycle_weight(inst, c) for c, r in zip(cycles, roles) if "thin" in r)
            thick = sum(cycle_weight(inst, c) for c, r in zip(cycles, roles) if "thick" in r)
            if thin != 2 * occ or thick != 2 * occ:
                problems.append(("thin/thick", var, thin, thick, occ))
    for i in range(12):
        params = {"q": rng.randint(2, 4), "regime": "exact2"} if i % 2 else {"nx": 3, "ny": 3, "nz": 3, "t": rng.randint(1, 8)}
        inst, _ = build_size3_reduction(generate_source("3dm", params, rng.randrange(10**6)))
        rep = verify_gadgets(inst, "size3")
        problems += rep.violations
        checked["size3"] += rep.gadgets_checked
    verdict(capsys, 4, not problems, f"gadgets checked {checked}, violations={problems[:3]}")


def test_criterion_5_roundtrips(capsys):
    t0 = time.perf_counter()
    rng = random.Random(505)
    bad = []
    counts = {"weightedL": 0, "weighted3": 0, "size3": 0}
    for kind, build in (("weightedL", build_weightedL_reduction), ("weighted3", build_weighted3_reduction)):
        for _ in range(55):
            src = generate_source("lin2", {"n": rng.randint(3, 4), "m": rng.choice([2, 3])}, rng.randrange(10**6))
            if kind == "weighted3" and max(src.occurrences()) > 3:
                continue
            inst, L, offset = build(src)
            best = solve_exact(inst, SolverConfig(L=L, objective="weight"), max_nodes=None).objective
            if best - offset != solve_lin2_exact(src):
                bad.append((kind, src))
            counts[kind] += 1
    for _ in range(60):
        t = rng.randint(1, 6)
        src = generate_source("3dm", {"nx": rng.randint(2, 3), "ny": rng.randint(2, 3), "nz": rng.randint(2, 3), "t": t}, rng.randrange(10**6))
        inst, L = build_size3_reduction(src)
        sol = solve_exact(inst, SolverConfig(L=L, objective="size"), max_nodes=None)
        target = 3 * len(src.triples) + solve_3dm_exact(src)
        if len(sol.cycles) != target or sol.objective != 3 * target:
            bad.append(("size3", src))
        counts["size3"] += 1
    elapsed = time.perf_counter() - t0
    ok = not bad and min(counts.values()) >= 50 and elapsed < 300
    verdict(capsys, 5, ok, f"systems {counts}, mismatches={len(bad)}, {elapsed:.1f}s")


def test_criterion_6_desk_performance(capsys, desk_bench):
    inst = generate_instance(US, 2000, 0)
    cfg = SolverConfig(L=3)
    t0 = time.perf_counter()
    solve_greedy_heuristic(inst, cfg)
    t_greedy = time.perf_counter() - t0
    t0 = time.perf_counter()
    solve_matching_based(inst, cfg)
    t_matching = time.perf_counter() - t0
    report, bench_s = desk_bench
    again = run_benchmark([US, CHINA], BENCH_SIZES, 10, BENCH_ALGS, seed=0)
    same = report_csv(report, timing=False) == report_csv(again, timing=False)
    per_cell = {(r.profile, r.n, r.algorithm) for r in report.rows}
    ok = t_greedy < 120 and t_matching < 120 and same and len(report.rows) == 10 * len(per_cell)
    verdict(capsys, 6, ok,
            f"n=2000 greedy {t_greedy:.2f}s, matching {t_matching:.2f}s; "
            f"bench {len(report.rows)} rows in {bench_s:.0f}s, deterministic={same}")


def test_criterion_7_figure_relations(capsys, desk_bench):
    us = np.mean([generate_instance(US, 500, s).density() for s in range(20)])
    cn = np.mean([generate_instance(CHINA, 500, s).density() for s in range(20)])
    report, _ = desk_bench
    with warnings.catch_warnings(record=True):
        warnings.simplefilter("always")
        soft = quality_warnings(report, "us")
    q = {a: np.mean([r.quality for r in report.rows if r.profile == "us" and r.algorithm == a]) for a in ("greedy", "matching")}
    note = "no warning" if not soft else f"WARNING {soft[0]}"
    verdict(capsys, 7, cn < us,
            f"density china {cn:.4f} < us {us:.4f}; us quality matching {q['matching']:.4f} "
            f"vs greedy {q['greedy']:.4f} ({note})")


def _cli(*args, hashseed):
    env = dict(os.environ, PYTHONHASHSEED=str(hashseed))
    return subprocess.run([sys.executable, "-m", "exchange_clearing", *args], capture_output=True, env=env, check=True).stdout


def test_criterion_8_determinism(capsys, tmp_path):
    diffs = []
    pools = [generate_instance(US, 60, 1), generate_instance(CHINA, 40, 2), random_instance(random.Random(8), 11, 0.3, True)]
    for p in (US, CHINA):
        if emit_instance(generate_instance(p, 80, 5)) != emit_instance(generate_instance(p, 80, 5)):
            diffs.append(("generate", p.name))
    for name, solver in ALGORITHMS.items():
        for k, inst in enumerate(pools):
            if name == "exact" and inst.n > 24:
                continue
            for objective in ("size", "weight"):
                cfg = SolverConfig(objective=objective)
                if solver(inst, cfg) != solver(inst, cfg):
                    diffs.append((name, k, objective))
    for kind, params in (("lin2", {"n": 4, "m": 6}), ("lin2-3occ", {"n": 6, "m": 6}), ("3dm", {"q": 4, "regime": "exact2"})):
        if generate_source(kind, params, 1) != generate_source(kind, params, 1):
            diffs.append(("source", kind))
    src = generate_source("lin2", {"n": 4, "m": 3}, 1)
    for build in (build_weightedL_reduction, build_weighted3_reduction):
        if emit_instance(build(src)[0]) != emit_instance(build(src)[0]):
            diffs.append(("build", build.__name__))
    tdm = generate_source("3dm", {"q": 3, "regime": "exact2"}, 1)
    if emit_instance(build_size3_reduction(tdm)[0]) != emit_instance(build_size3_reduction(tdm)[0]):
        diffs.append(("build", "size3"))
    a = run_benchmark([US, CHINA], [30, 60], 3, list(HEURISTICS), seed=4)
    b = run_benchmark([US, CHINA], [30, 60], 3, list(HEURISTICS), seed=4)
    if report_csv(a, timing=False) != report_csv(b, timing=False):
        diffs.append(("bench",))
    # separate interpreters with different hash seeds
    pool = tmp_path / "pool.txt"
    outs = []
    for hs in (1, 2):
        _cli("gen", "--profile", "us", "--n", "120", "--seed", "3", "--out", str(pool), hashseed=hs)
        text = pool.read_bytes()
        solved = b"".join(_cli("solve", "--alg", alg, "--in", str(pool), hashseed=hs) for alg in ("greedy-basic", "greedy", "matching", "lb2", "ub-inf"))
        outs.append((text, solved))
    if outs[0] != outs[1]:
        diffs.append(("cli",))
    verdict(capsys, 8, not diffs, f"{len(ALGORITHMS)} solvers, generators, builders, bench and CLI; diffs={diffs}")
