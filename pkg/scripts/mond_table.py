"""Classify every table normal form and a batch of random A-transforms of each.

    python scripts/mond_table.py --transforms 20 --seed 7
"""

import argparse
import random
import time

from singsurf.fixtures import random_A_transform, table_forms
from singsurf.mond import classify
from singsurf.normal_form import reduce


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--transforms", type=int, default=20)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    print(f"{'form':6} {'order':>5} {'label':6} {'agree':>9} {'sec':>6}")
    bad = 0
    for f in table_forms():
        t0 = time.perf_counter()
        label = classify(reduce(f.germ).coeffs).label
        agree = sum(
            classify(reduce(random_A_transform(f.germ, rng)).coeffs).label == f.label
            for _ in range(args.transforms)
        )
        bad += (label != f.label) + (args.transforms - agree)
        print(f"{f.label:6} {f.order:5d} {label:6} {agree:4d}/{args.transforms:<4d} {time.perf_counter() - t0:6.2f}")
    print("all labels reproduced" if not bad else f"{bad} mismatches")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
