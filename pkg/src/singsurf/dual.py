"""Dual surface f* = <g + p, n> n and its local type over the singular point."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

from .blowup import ThetaDirection, point_type, ridge_order, subparabolic
from .jets import MapGerm
from .mond import AType
from .normal_form import NormalFormCoeffs
from .parabolic import HypothesisError


class DualUndefined(ValueError):
    pass


def _partials(c):
    g = c if isinstance(c, MapGerm) else c.reconstruct()
    gu = tuple(comp.diff("u") for comp in g.components)
    gv = tuple(comp.diff("v") for comp in g.components)
    return g, gu, gv


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def dual_point(c: NormalFormCoeffs, p_shift, u: float, v: float, _cache=None) -> tuple:
    if all(x == 0 for x in p_shift):
        raise DualUndefined("p_shift = 0 makes the dual degenerate at the singular point")
    g, gu, gv = _cache or _partials(c)
    x = [comp.eval_numeric(u, v) + float(p) for comp, p in zip(g.components, p_shift)]
    cr = _cross([d.eval_numeric(u, v) for d in gu], [d.eval_numeric(u, v) for d in gv])
    nrm = math.sqrt(sum(t * t for t in cr))
    if nrm == 0.0:
        raise DualUndefined(f"singular parameter point ({u}, {v})")
    n = [t / nrm for t in cr]
    h = sum(a * b for a, b in zip(x, n))
    if abs(h) < 1e-14:
        raise DualUndefined(f"<g + p, n> vanishes at ({u}, {v})")
    return tuple(h * t for t in n)


@dataclass(frozen=True)
class DualLabel:
    label: str  # cuspidal_edge, swallowtail or unresolved
    reason: str = ""

    def __str__(self):
        return self.label if not self.reason else f"{self.label}({self.reason})"


def dual_label(c: NormalFormCoeffs, t: AType, th: ThetaDirection) -> DualLabel:
    """Local type of the dual at the point over theta; ridge tests take precedence."""
    if not t.in_family:
        raise ValueError("dual label needs an in-family germ")
    if c.get_a(2, 0) == 0:
        raise HypothesisError("dual classification excludes inflection singular points")
    n = t.blowup_n
    if th.cos_zero:
        return DualLabel("unresolved", "not parabolic")
    if point_type(c, n, th) != "parabolic":
        return DualLabel("unresolved", "not parabolic")
    ridge = ridge_order(c, n, th)
    if ridge == "not_ridge":
        return DualLabel("cuspidal_edge")
    if ridge == "first_order":
        if subparabolic(c, n, th):
            return DualLabel("unresolved", "sub-parabolic")
        return DualLabel("swallowtail")
    return DualLabel("unresolved", "higher-order ridge")


@dataclass
class DualMesh:
    vertices: list = field(default_factory=list)
    faces: list = field(default_factory=list)  # 0-based triangles
    meta: list = field(default_factory=list)  # (r, theta, point_type) per vertex


def dual_mesh(
    c,
    t: AType | None,
    p_shift,
    R: int = 16,
    T: int = 32,
    rmax: float = 0.2,
    margin: float = 0.05,
) -> DualMesh:
    """Dual over the blow-up grid r in (0, rmax], theta in [-pi/2 + margin, pi/2 - margin].

    With ``t = None`` the germ is taken as a regular patch (a MapGerm) and the
    grid is plain polar coordinates.
    """
    if R < 1 or T < 1:
        raise ValueError("grid sizes must be positive")
    n = t.blowup_n if t is not None else 0
    cache = _partials(c)
    rs = [rmax * (k + 1) / R for k in range(R)]
    if T == 1:
        ths = [0.0]
    else:
        lo, hi = -math.pi / 2 + margin, math.pi / 2 - margin
        ths = [lo + (hi - lo) * l / (T - 1) for l in range(T)]
    if t is None:
        types = ["regular"] * len(ths)
    else:
        types = [point_type(c, n, ThetaDirection.from_degrees(math.degrees(th))) for th in ths]
    mesh = DualMesh()
    for r in rs:
        for th, pt in zip(ths, types):
            cs, sn = math.cos(th), math.sin(th)
            u, v = r * cs, r ** (n + 1) * cs ** n * sn
            mesh.vertices.append(dual_point(c, p_shift, u, v, cache))
            mesh.meta.append((r, th, pt))
    for k in range(R - 1):
        for l in range(T - 1):
            a, b = k * T + l, (k + 1) * T + l
            mesh.faces.append((a, b, b + 1))
            mesh.faces.append((a, b + 1, a + 1))
    return mesh


def write_obj(mesh: DualMesh, path) -> None:
    with open(path, "w") as fh:
        fh.write("# dual surface over the blow-up grid\n")
        for x, y, z in mesh.vertices:
            fh.write(f"v {x:.17g} {y:.17g} {z:.17g}\n")
        for a, b, cc in mesh.faces:
            fh.write(f"f {a + 1} {b + 1} {cc + 1}\n")


def write_csv(mesh: DualMesh, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["r", "theta", "x", "y", "z", "point_type"])
        for (r, th, pt), (x, y, z) in zip(mesh.meta, mesh.vertices):
            w.writerow([repr(r), repr(th), repr(x), repr(y), repr(z), pt])
