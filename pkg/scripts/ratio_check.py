"""Worst observed exact/greedy ratio on small random pools (the guarantee is 3)."""

import random
from fractions import Fraction

from exchange_clearing.greedy import solve_greedy_basic, solve_greedy_heuristic
from exchange_clearing.instance import ExchangeInstance, SolverConfig
from exchange_clearing.matching_clearing import solve_matching_based
from exchange_clearing.oracle import solve_exact


def random_pool(rng, n, p):
    return ExchangeInstance(n, [(u, v, 1) for u in range(n) for v in range(n) if u != v and rng.random() < p])


def main(trials=500, seed=0):
    rng = random.Random(seed)
    cfg = SolverConfig()
    worst = {"greedy-basic": Fraction(1), "greedy": Fraction(1), "matching": Fraction(1)}
    empty = dict.fromkeys(worst, 0)
    for _ in range(trials):
        inst = random_pool(rng, rng.randint(3, 12), rng.choice([0.1, 0.2, 0.35, 0.5]))
        opt = solve_exact(inst, cfg).objective
        if not opt:
            continue
        for name, solver in (("greedy-basic", solve_greedy_basic), ("greedy", solve_greedy_heuristic), ("matching", solve_matching_based)):
            got = solver(inst, cfg).objective
            if not got:
                # matching-based clearing returns nothing when there is no mutual pair
                empty[name] += 1
                continue
            worst[name] = max(worst[name], Fraction(opt, got))
    for name, r in worst.items():
        print(f"{name:>13}: worst opt/alg = {float(r):.3f}  (empty on {empty[name]} non-empty pools)")


if __name__ == "__main__":
    main()
