"""Closed-form leading geometry over the singular point against numeric ray limits.

    python scripts/blowup_limits.py --germ G1
"""

import argparse

from singsurf import blowup as bg
from singsurf.blowup import ThetaDirection
from singsurf.fixtures import fixture
from singsurf.mond import classify
from singsurf.oracle import blowup_limit
from singsurf.suites import ORACLE_DEGREES


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--germ", choices=["G1", "G2"], default="G1")
    args = ap.parse_args()
    c = fixture(args.germ)
    n = classify(c).blowup_n
    print(f"{args.germ}: {classify(c).label}, chart index n = {n}")
    print(f"{'deg':>5} {'type':10} {'k10':>10} {'err':>8} {'k20':>10} {'err':>8} {'slope':>7} {'K lead':>10} {'err':>8}")
    for deg in ORACLE_DEGREES:
        th = ThetaDirection.from_degrees(deg)
        k1, k2, K = bg.k10(c, n, th), bg.k20(c, n, th), bg.gauss_lead(c, n, th)
        e1 = blowup_limit(c, n, th, "k10").value - k1
        lim2 = blowup_limit(c, n, th, "k20")
        eK = blowup_limit(c, n, th, "gauss_scaled").value - K
        print(
            f"{deg:5d} {bg.point_type(c, n, th):10} {k1:10.6f} {e1:8.1e} {k2:10.6f} {lim2.value - k2:8.1e}"
            f" {lim2.order_estimate:7.3f} {K:10.6f} {eK:8.1e}"
        )


if __name__ == "__main__":
    main()
