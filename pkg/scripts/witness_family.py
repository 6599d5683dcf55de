#!/usr/bin/env python3
"""Tabulate the chain witnesses: each step condition holds at 0 while the tangle is empty.

    python3 scripts/witness_family.py --max-m 16
"""

import argparse

from tangled.constructions import chain_model, sigma_witness
from tangled.logic import evaluate, parse

TANGLE = parse("<t>{q, ~q}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-m", type=int, default=16)
    args = ap.parse_args()

    print(f"{'m':>3}  {'p0':<5} {'steps':<7} {'tangle':<8} overall")
    for m in range(1, args.max_m + 1):
        r = sigma_witness(m)
        steps = f"{sum(r.each_a_n_holds)}/{m}"
        t = evaluate(TANGLE, chain_model(m))
        print(f"{m:>3}  {str(r.p0_holds):<5} {steps:<7} {str(t):<8} {'PASS' if r.overall else 'FAIL'}")


if __name__ == "__main__":
    main()
