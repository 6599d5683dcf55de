#!/usr/bin/env python3
"""Sweep every law over enumerated and random quasi-orders and tabulate failures.

    python3 scripts/law_sweep.py --max-points 3 --random 300
"""

import argparse
from collections import Counter

from tangled import laws
from tangled.constructions import enumerate_quasiorders, random_quasiorder


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-points", type=int, default=3)
    ap.add_argument("--random", type=int, default=200)
    ap.add_argument("--max-random-size", type=int, default=8)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    runs, fails = Counter(), Counter()
    first = {}
    orders = [R for n in range(1, args.max_points + 1) for R in enumerate_quasiorders(n)]
    orders += [
        random_quasiorder(1 + i % args.max_random_size, args.seed + i, (0.1, 0.2, 0.3, 0.5)[i % 4])
        for i in range(args.random)
    ]
    for i, R in enumerate(orders):
        for r in laws.sweep_all(R, seed=args.seed + i):
            runs[r.law] += 1
            if not r.passed:
                fails[r.law] += 1
                first.setdefault(r.law, r)

    print(f"{'law':<15}{'orders':>8}{'failures':>10}")
    for law in laws.CHECKERS:
        print(f"{law:<15}{runs[law]:>8}{fails[law]:>10}")
    for law, r in first.items():
        print(f"first {law} failure: {r}")


if __name__ == "__main__":
    main()
