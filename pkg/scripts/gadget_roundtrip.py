"""Build every reduction on random small sources and compare optima.

For the weighted reductions the exchange optimum minus the variable-cycle
offset should equal the best number of satisfied equations; for the size
reduction the optimal number of cycles should be 3|T| plus the 3DM optimum.
"""

import argparse
import random

from exchange_clearing.gadgets import (
    build_size3_reduction,
    build_weighted3_reduction,
    build_weightedL_reduction,
    generate_source,
    solve_3dm_exact,
    solve_lin2_exact,
    verify_gadgets,
)
from exchange_clearing.instance import SolverConfig
from exchange_clearing.oracle import solve_exact


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)

    for kind, build in (("weightedL", build_weightedL_reduction), ("weighted3", build_weighted3_reduction)):
        ok = 0
        for _ in range(args.count):
            src = generate_source("lin2", {"n": rng.randint(3, 4), "m": rng.choice([2, 3])}, rng.randrange(10**6))
            inst, L, offset = build(src)
            assert verify_gadgets(inst, kind).ok
            best = solve_exact(inst, SolverConfig(L=L, objective="weight"), max_nodes=None).objective
            ok += best - offset == solve_lin2_exact(src)
        print(f"{kind}: {ok}/{args.count} roundtrips agree")

    ok = 0
    for _ in range(args.count):
        src = generate_source("3dm", {"nx": 3, "ny": 3, "nz": 3, "t": rng.randint(1, 6)}, rng.randrange(10**6))
        inst, L = build_size3_reduction(src)
        sol = solve_exact(inst, SolverConfig(L=L), max_nodes=None)
        ok += len(sol.cycles) == 3 * len(src.triples) + solve_3dm_exact(src)
    print(f"size3: {ok}/{args.count} roundtrips agree")


if __name__ == "__main__":
    main()
