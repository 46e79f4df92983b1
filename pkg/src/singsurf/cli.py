"""Command-line interface: ``singsurf classify|analyze|verify|dual``.

Exit codes: 0 ok, 2 malformed input, 3 out of family, 4 hypothesis
violation, 5 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import blowup as bg
from .blowup import ThetaDirection
from .config import MeshConfig
from .dual import DualUndefined, dual_label, dual_mesh, write_csv, write_obj
from .exact import Q
from .fixtures import corpus
from .mond import InsufficientJet
from .normal_form import ReductionError, singular_point_class
from .parabolic import HypothesisError
from .pipeline import analyze, load, parse_theta, theta_info
from .report import DocumentError, GermDocument, ReportDocument, encode_exact, parse_germ_document
from .suites import SUITES, run_suite

EXIT_OK, EXIT_PARSE, EXIT_FAMILY, EXIT_HYPOTHESIS, EXIT_VERIFY = 0, 2, 3, 4, 5


class CliError(Exception):
    def __init__(self, code: int, msg: str):
        super().__init__(msg)
        self.code = code


def _read(path: str) -> GermDocument:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise CliError(EXIT_PARSE, f"{path}: {exc.strerror}") from None
    try:
        return parse_germ_document(text)
    except DocumentError as exc:
        raise CliError(EXIT_PARSE, f"{path}: {exc}") from None


def _load(path: str):
    doc = _read(path)
    try:
        c, t = load(doc)
    except (ValueError, InsufficientJet) as exc:
        raise CliError(EXIT_PARSE, f"{path}: {exc}") from None
    return c, t


def _in_family(path: str):
    c, t = _load(path)
    if not t.in_family:
        raise CliError(EXIT_FAMILY, t.label)
    return c, t


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands


def cmd_classify(args) -> int:
    c, t = _load(args.input)
    if c is None:
        print(t.label)
        return EXIT_FAMILY
    print(t.label)
    print(f"singular point: {singular_point_class(c)}")
    return EXIT_OK if t.in_family else EXIT_FAMILY


def cmd_analyze(args) -> int:
    c, _ = _in_family(args.input)
    thetas = "auto" if args.theta in (None, "auto") else [parse_theta(x) for x in args.theta.split(",")]
    dirs = [(Q(y), Q(z)) for y, z in (args.direction or [])]
    data = analyze(c, thetas, dirs, oracle=not args.no_oracle)
    _emit(ReportDocument(data).render(), args.output)
    return EXIT_OK


def _germs_for_verify(args):
    if args.input:
        c, t = _load(args.input)
        if c is None:
            raise CliError(EXIT_FAMILY, t.label)
        return [c]
    if args.random is not None:
        return corpus(args.random, args.seed)
    return None


def cmd_verify(args) -> int:
    names = SUITES if args.suite == "all" else [args.suite]
    germs = _germs_for_verify(args)
    bg.set_debug(corrupt_delta2=args.debug_corrupt_delta2)
    try:
        results = [run_suite(name, germs, seed=args.seed, size=args.size).summary() for name in names]
    finally:
        bg.set_debug(corrupt_delta2=False)
    ok = all(r["passed"] for r in results)
    _emit(json.dumps({"passed": ok, "suites": results}, indent=1, sort_keys=True) + "\n", args.output)
    return EXIT_OK if ok else EXIT_VERIFY


def _grid(spec: str):
    parts = spec.lower().replace("×", "x").split("x")
    try:
        R, T = (int(p) for p in parts)
    except ValueError:
        raise CliError(EXIT_PARSE, f"grid must look like RxT, got {spec!r}") from None
    if R < 1 or T < 1:
        raise CliError(EXIT_PARSE, "grid sizes must be positive")
    return R, T


def cmd_dual(args) -> int:
    c, t = _in_family(args.input)
    n = t.blowup_n
    if c.get_a(2, 0) == 0:
        raise CliError(EXIT_HYPOTHESIS, "dual hypotheses violated: inflection singular point")
    ps = bg.parabolic_thetas(c, n)
    ths = list(ps.thetas) or [ThetaDirection.from_degrees(0)]
    if args.pshift is not None:
        pshift = tuple(Q(x) for x in args.pshift)
    else:
        pshift = bg.leading_normal(c, n, ths[0]).direction
    labels = []
    for th in ths:
        nl = bg.leading_normal(c, n, th).direction
        if sum(a * b for a, b in zip(pshift, nl)) == 0:
            raise CliError(EXIT_HYPOTHESIS, f"dual hypotheses violated: <p, n(0, {th.degrees:g} deg)> = 0")
        try:
            lab = str(dual_label(c, t, th))
        except HypothesisError as exc:
            raise CliError(EXIT_HYPOTHESIS, f"dual hypotheses violated: {exc}") from None
        labels.append({"theta": theta_info(th), "dual_label": lab})
    R, T = _grid(args.grid)
    mc = MeshConfig(R, T, args.rmax)
    sidecar = Path(str(args.mesh) + ".json")
    if args.input != "-" and Path(args.input).resolve() in (sidecar.resolve(), Path(args.mesh).resolve()):
        raise CliError(EXIT_PARSE, "output paths would overwrite the input")
    try:
        mesh = dual_mesh(c, t, pshift, R=mc.R, T=mc.T, rmax=mc.rmax, margin=mc.margin)
    except DualUndefined as exc:
        raise CliError(EXIT_HYPOTHESIS, f"dual hypotheses violated: {exc}") from None
    write_obj(mesh, args.mesh)
    if args.csv:
        write_csv(mesh, args.csv)
    side = {
        "atype": t.label,
        "p_shift": [encode_exact(x) for x in pshift],
        "grid": [R, T],
        "rmax": args.rmax,
        "all_theta": ps.all_theta,
        "parabolic": labels,
        "vertices": len(mesh.vertices),
        "faces": len(mesh.faces),
    }
    sidecar.write_text(ReportDocument(side).render())
    for rec in labels:
        print(f"{rec['theta']['degrees']:g} {rec['dual_label']}")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="singsurf", description="Differential geometry of corank-1 surface singularities.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="A-type and singular point class")
    c.add_argument("input", help="germ document ('-' for stdin)")
    c.set_defaults(fn=cmd_classify)

    a = sub.add_parser("analyze", help="full report as JSON")
    a.add_argument("input")
    a.add_argument("--theta", default="auto", help="'auto' or comma-separated degrees")
    a.add_argument("--direction", nargs=2, action="append", metavar=("Y", "Z"), help="height direction (0, y, z); rationals like 1/2")
    a.add_argument("--no-oracle", action="store_true", help="skip numeric residuals")
    a.add_argument("-o", "--output")
    a.set_defaults(fn=cmd_analyze)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("input", nargs="?")
    v.add_argument("--random", type=int, metavar="N", help="seeded random corpus of N germs")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--size", type=int, help="transforms (mond-table) or germs (monge)")
    v.add_argument("--suite", default="all", choices=list(SUITES) + ["all"])
    v.add_argument("--debug-corrupt-delta2", action="store_true", help=argparse.SUPPRESS)
    v.add_argument("-o", "--output")
    v.set_defaults(fn=cmd_verify)

    d = sub.add_parser("dual", help="dual surface mesh and labels")
    d.add_argument("input")
    d.add_argument("--mesh", required=True, help="OBJ output; the sidecar report is written to MESH.json")
    d.add_argument("--csv")
    d.add_argument("--grid", default=f"{MeshConfig.R}x{MeshConfig.T}", help="R x Theta samples")
    d.add_argument("--rmax", type=float, default=MeshConfig.rmax)
    d.add_argument("--pshift", nargs=3, metavar=("X", "Y", "Z"), help="default: the limiting normal at the first parabolic direction")
    d.set_defaults(fn=cmd_dual)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except CliError as exc:
        print(f"singsurf: {exc}", file=sys.stderr)
        return exc.code
    except (ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, (DualUndefined, HypothesisError)):
            print(f"singsurf: hypotheses violated: {exc}", file=sys.stderr)
            return EXIT_HYPOTHESIS
        if isinstance(exc, ReductionError):
            print(f"singsurf: out_of_family({exc.reason})", file=sys.stderr)
            return EXIT_FAMILY
        print(f"singsurf: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
