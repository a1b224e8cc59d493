"""Command-line entry point: ``exchange-clearing <verb> ...``."""

from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction

from .bench import emit_report, quality_warnings, run_benchmark
from .cycles import cycle_weight, enumerate_cycles
from .gadgets import reductions, sources
from .gadgets.verify import KINDS, verify_gadgets
from .instance import SolverConfig, format_weight, parse_weight, read_instance, write_instance
from .simgen import generate_instance, load_profile
from .solvers import ALGORITHMS, get_solver


def _length(text: str):
    if text.lower() in ("inf", "unbounded", "none"):
        return None
    return int(text)


def _csv_list(text: str) -> list[str]:
    return [t for t in text.split(",") if t]


def _fmt(v) -> str:
    return format_weight(v) if isinstance(v, Fraction) else str(v)


def cmd_gen(args) -> int:
    inst = generate_instance(load_profile(args.profile), args.n, args.seed)
    write_instance(inst, args.out)
    print(f"wrote {args.out}: n={inst.n} m={inst.m}")
    return 0


def cmd_solve(args) -> int:
    inst = read_instance(args.inp)
    config = SolverConfig(
        L=args.L, objective=args.objective, seed=args.seed, alg2_w=args.w, alg2_cleanup=args.cleanup
    )
    if args.alg in ("lb2",):
        config = SolverConfig(L=2, objective=args.objective)
    elif args.alg in ("ub-inf",):
        config = SolverConfig(L=None, objective=args.objective)
    sol = get_solver(args.alg)(inst, config)
    print(f"objective {_fmt(sol.objective)}")
    print(f"cycles {len(sol.cycles)}")
    for c in sol.cycles:
        print("cycle " + " ".join(map(str, c)))
    return 0


def cmd_cycles(args) -> int:
    inst = read_instance(args.inp)
    for c in enumerate_cycles(inst, args.L):
        print(" ".join(map(str, c)) + f"\t{format_weight(cycle_weight(inst, c))}")
    return 0


_BUILDERS = {
    "weightedL": (sources.parse_lin2, reductions.build_weightedL_reduction),
    "weighted3": (sources.parse_lin2, reductions.build_weighted3_reduction),
    "size3": (sources.parse_3dm, reductions.build_size3_reduction),
}


def cmd_gadget_build(args) -> int:
    parse, build = _BUILDERS[args.kind]
    with open(args.inp, encoding="utf-8") as fh:
        src = parse(fh.read())
    built = build(src)
    write_instance(built[0], args.out)
    extra = f" var_offset={format_weight(built[2])}" if len(built) == 3 else ""
    print(f"wrote {args.out}: n={built[0].n} m={built[0].m} L={built[1]}{extra}")
    return 0


def cmd_gadget_verify(args) -> int:
    report = verify_gadgets(read_instance(args.inp), args.kind)
    print(report.summary())
    return 0 if report.ok else 1


def cmd_gadget_source(args) -> int:
    if args.kind == "3dm":
        params = {"q": args.q, "regime": "exact2"} if args.exact2 else {
            "nx": args.q, "ny": args.q, "nz": args.q, "t": args.t}
        text = sources.emit_3dm(sources.generate_source("3dm", params, args.seed))
    else:
        text = sources.emit_lin2(sources.generate_source(args.kind, {"n": args.n, "m": args.m}, args.seed))
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    print(f"wrote {args.out}")
    return 0


def cmd_bench(args) -> int:
    profiles = [load_profile(p) for p in _csv_list(args.profiles)]
    sizes = [int(s) for s in _csv_list(args.sizes)]
    config = SolverConfig(L=3, objective=args.objective, alg2_w=args.w)
    report = run_benchmark(profiles, sizes, args.copies, _csv_list(args.algs), args.seed, config)
    emit_report(report, args.out, "csv", timing=not args.omit_timing)
    if args.svg:
        emit_report(report, args.svg, "svg")
    for avg in report.averages():
        print(
            f"{avg['profile']:>6} n={avg['n']:<5} {avg['algorithm']:<16} "
            f"mean={avg['objective']:.1f} quality={avg['quality']:.4f} ms={avg['wall_millis']:.1f}"
        )
    quality_warnings(report)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="exchange-clearing", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="verb", required=True)

    g = sub.add_parser("gen", help="simulate a compatibility graph")
    g.add_argument("--profile", default="us", help="us, china, or a profile file")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("solve", help="clear an instance file")
    s.add_argument("--alg", required=True, choices=sorted(ALGORITHMS))
    s.add_argument("--in", dest="inp", required=True)
    s.add_argument("--L", type=_length, default=3)
    s.add_argument("--objective", choices=("size", "weight"), default="size")
    s.add_argument("--w", type=parse_weight, default=Fraction(10))
    s.add_argument("--cleanup", action="store_true")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_solve)

    c = sub.add_parser("cycles", help="list cycles up to length L with their weights")
    c.add_argument("--in", dest="inp", required=True)
    c.add_argument("--L", type=_length, default=3)
    c.set_defaults(func=cmd_cycles)

    gd = sub.add_parser("gadget", help="build or verify reduction instances")
    gsub = gd.add_subparsers(dest="action", required=True)
    gb = gsub.add_parser("build")
    gb.add_argument("--kind", required=True, choices=KINDS)
    gb.add_argument("--in", dest="inp", required=True)
    gb.add_argument("--out", required=True)
    gb.set_defaults(func=cmd_gadget_build)
    gv = gsub.add_parser("verify")
    gv.add_argument("--kind", required=True, choices=KINDS)
    gv.add_argument("inp")
    gv.set_defaults(func=cmd_gadget_verify)
    gs = gsub.add_parser("source", help="write a random source system")
    gs.add_argument("--kind", required=True, choices=("lin2", "lin2-3occ", "3dm"))
    gs.add_argument("--n", type=int, default=4)
    gs.add_argument("--m", type=int, default=3)
    gs.add_argument("--q", type=int, default=3)
    gs.add_argument("--t", type=int, default=6)
    gs.add_argument("--exact2", action="store_true")
    gs.add_argument("--seed", type=int, default=0)
    gs.add_argument("--out", required=True)
    gs.set_defaults(func=cmd_gadget_source)

    b = sub.add_parser("bench", help="benchmark heuristics against the bounds")
    b.add_argument("--profiles", default="us,china")
    b.add_argument("--sizes", default="500,1000,2000")
    b.add_argument("--copies", type=int, default=10)
    b.add_argument("--algs", default="greedy,matching")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--objective", choices=("size", "weight"), default="size")
    b.add_argument("--w", type=parse_weight, default=Fraction(10))
    b.add_argument("--out", required=True)
    b.add_argument("--svg")
    b.add_argument("--omit-timing", action="store_true", help="write wall_millis as 0 for byte-stable CSV")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (ValueError, OSError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
