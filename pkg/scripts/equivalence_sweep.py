#!/usr/bin/env python3
"""Compare the three tangle algorithms on every small quasi-order and on random ones.

    python3 scripts/equivalence_sweep.py --max-points 4 --random 200 --random-size 9
"""

import argparse
import itertools
import time

from tangled.constructions import enumerate_quasiorders, random_quasiorder
from tangled.kernel import TANGLE_ALGORITHMS, all_subsets


def families(n, max_members):
    subsets = list(all_subsets(n))
    for k in range(1, max_members + 1):
        yield from itertools.combinations_with_replacement(subsets, k)


def compare(R, gamma):
    values = {name: fn(R, list(gamma)) for name, fn in TANGLE_ALGORITHMS.items()}
    return len(set(values.values())) == 1


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-points", type=int, default=4)
    ap.add_argument("--members", type=int, default=2, help="largest family size")
    ap.add_argument("--random", type=int, default=100, help="number of random orders")
    ap.add_argument("--random-size", type=int, default=8)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    for n in range(1, args.max_points + 1):
        start = time.perf_counter()
        orders = enumerate_quasiorders(n)
        checked = bad = 0
        for R in orders:
            for gamma in families(n, args.members):
                checked += 1
                bad += not compare(R, gamma)
        print(f"n={n}: {len(orders):5d} orders, {checked:7d} families, {bad} disagreements "
              f"({time.perf_counter() - start:.1f}s)")

    bad = 0
    for i in range(args.random):
        n = args.random_size
        R = random_quasiorder(n, args.seed + i, 0.1 + 0.4 * (i % 5) / 4)
        subsets = [s for j, s in enumerate(all_subsets(n)) if j % 37 == i % 37]
        for gamma in itertools.combinations(subsets, 2):
            bad += not compare(R, gamma)
    print(f"random: {args.random} orders on {args.random_size} points, {bad} disagreements")


if __name__ == "__main__":
    main()
