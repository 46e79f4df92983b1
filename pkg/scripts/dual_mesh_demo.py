"""Write the dual surface of a fixture as OBJ + CSV and print its labels.

    python scripts/dual_mesh_demo.py --germ G2 --out /tmp/g2_dual
"""

import argparse
from pathlib import Path

from singsurf import blowup as bg
from singsurf.config import MeshConfig
from singsurf.dual import dual_label, dual_mesh, write_csv, write_obj
from singsurf.fixtures import fixture
from singsurf.mond import classify


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--germ", choices=["G1", "G2"], default="G2")
    ap.add_argument("--out", default="dual_demo")
    ap.add_argument("--R", type=int, default=MeshConfig.R)
    ap.add_argument("--T", type=int, default=MeshConfig.T)
    args = ap.parse_args()
    cfg = MeshConfig(args.R, args.T)
    c = fixture(args.germ)
    t = classify(c)
    n = t.blowup_n
    ths = bg.parabolic_thetas(c, n).thetas
    for th in ths:
        print(f"theta = {th.degrees:g} deg: {dual_label(c, t, th)}")
    p = bg.leading_normal(c, n, ths[0]).unit
    mesh = dual_mesh(c, t, p, R=cfg.R, T=cfg.T, rmax=cfg.rmax, margin=cfg.margin)
    out = Path(args.out)
    write_obj(mesh, out.with_suffix(".obj"))
    write_csv(mesh, out.with_suffix(".csv"))
    print(f"{len(mesh.vertices)} vertices, {len(mesh.faces)} faces -> {out.with_suffix('.obj')}")


if __name__ == "__main__":
    main()
