"""Floating-point oracles, independent of the exact jet machinery.

Germs are copied once into float coefficient arrays; partial derivatives
are taken on those arrays with numpy, so nothing here reuses the exact
closed forms it is meant to check.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import chebyshev as cheb
from numpy.polynomial import polynomial as P
from scipy.optimize import brentq

from .jets import Jet1, MapGerm
from .normal_form import NormalFormCoeffs


class OracleError(ValueError):
    pass


class PolySurface:
    """(u, v) -> R^3 polynomial map with float coefficients c[k][i, j] u^i v^j."""

    def __init__(self, arrays):
        self.c = [np.asarray(a, dtype=float) for a in arrays]
        self._d = {}

    @classmethod
    def from_germ(cls, g) -> "PolySurface":
        if isinstance(g, NormalFormCoeffs):
            g = g.reconstruct()
        if isinstance(g, MapGerm):
            K = g.order
            arrs = []
            for comp in g.components:
                a = np.zeros((K + 1, K + 1))
                for (i, j), val in comp.items():
                    a[i, j] = float(val)
                arrs.append(a)
            return cls(arrs)
        return cls(g)

    def _deriv(self, du: int, dv: int):
        key = (du, dv)
        if key not in self._d:
            out = []
            for a in self.c:
                if du:
                    a = P.polyder(a, du, axis=0)
                if dv:
                    a = P.polyder(a, dv, axis=1)
                out.append(a)
            self._d[key] = out
        return self._d[key]

    def __call__(self, u, v, du: int = 0, dv: int = 0) -> np.ndarray:
        return np.array([P.polyval2d(u, v, a) for a in self._deriv(du, dv)])


@dataclass(frozen=True)
class SurfaceGeometry:
    normal: tuple
    k1: float  # bounded branch
    k2: float  # larger in absolute value
    K: float
    H: float


def surface_geometry_numeric(g, u: float, v: float) -> SurfaceGeometry:
    s = g if isinstance(g, PolySurface) else PolySurface.from_germ(g)
    gu, gv = s(u, v, 1, 0), s(u, v, 0, 1)
    guu, guv, gvv = s(u, v, 2, 0), s(u, v, 1, 1), s(u, v, 0, 2)
    cr = np.cross(gu, gv)
    w2 = float(cr @ cr)
    if not math.isfinite(w2) or w2 <= 1e-300:
        raise OracleError(f"degenerate metric at ({u}, {v})")
    w = math.sqrt(w2)
    n = cr / w
    E, F, G = gu @ gu, gu @ gv, gv @ gv
    L, M, N = guu @ n, guv @ n, gvv @ n
    K = (L * N - M * M) / w2
    H = (E * N - 2 * F * M + G * L) / (2 * w2)
    disc = max(H * H - K, 0.0)
    big = H + math.copysign(math.sqrt(disc), H)
    small = K / big if big != 0 else 0.0
    return SurfaceGeometry(tuple(float(x) for x in n), float(small), float(big), float(K), float(H))


@dataclass(frozen=True)
class LimitEstimate:
    value: object  # float, or tuple for the normal
    order_estimate: float
    samples: list = field(default_factory=list)  # (r, value), r decreasing

    def __post_init__(self):
        rs = [r for r, _ in self.samples]
        if len(rs) < 4:
            raise OracleError("at least 4 samples are needed")
        if any(b >= a for a, b in zip(rs, rs[1:])):
            raise OracleError("samples must be strictly decreasing in r")


DEFAULT_RADII = tuple(2.0 ** -k for k in range(4, 13))


def richardson(values, ratio: float = 2.0):
    """Eliminate r, r^2, r^3 from values at r, r/ratio, r/ratio^2, r/ratio^3."""
    T = [np.asarray(v, dtype=float) for v in values]
    k = 1
    while len(T) > 1:
        f = ratio ** k
        T = [(f * T[i + 1] - T[i]) / (f - 1) for i in range(len(T) - 1)]
        k += 1
    return T[0]


def _slope(rs, ys) -> float:
    x = np.log(np.asarray(rs))
    y = np.log(np.abs(np.asarray(ys)))
    return float(np.polyfit(x, y, 1)[0])


def _theta(th) -> tuple:
    if hasattr(th, "unit"):
        return th.unit()
    return math.cos(th), math.sin(th)


def blowup_limit(g, n: int, th, quantity: str, radii=DEFAULT_RADII) -> LimitEstimate:
    """Numeric limit of a blow-up quantity along the ray at angle theta."""
    if quantity not in ("normal", "k10", "k20", "gauss_scaled"):
        raise ValueError(f"unknown quantity {quantity!r}")
    cs, sn = _theta(th)
    if abs(cs) < 1e-12:
        raise OracleError("the ray at cos(theta) = 0 collapses onto the singular point")
    s = g if isinstance(g, PolySurface) else PolySurface.from_germ(g)
    samples, raw = [], []
    for r in radii:
        u, v = r * cs, r ** (n + 1) * cs ** n * sn
        try:
            geo = surface_geometry_numeric(s, u, v)
        except OracleError:
            warnings.warn(f"sample r = {r} dropped (underflow)")
            continue
        if quantity == "normal":
            val = geo.normal
        elif quantity == "k10":
            val = geo.k1
        elif quantity == "k20":
            val = r ** (2 * n + 2) * geo.k2
            raw.append((r, geo.k2))
        else:
            val = r ** (2 * n + 2) * geo.K
        samples.append((r, val))
    if len(samples) < 4:
        raise OracleError("fewer than 4 usable samples")
    est = richardson([val for _, val in samples[-4:]])
    value = tuple(float(x) for x in est) if quantity == "normal" else float(est)
    tail = samples[-5:]
    if quantity == "k20":
        order = _slope([r for r, _ in raw[-5:]], [k for _, k in raw[-5:]])
    else:
        errs = [np.linalg.norm(np.asarray(val) - np.asarray(value)) for _, val in tail]
        pts = [(r, e) for (r, _), e in zip(tail, errs) if e > 0]
        order = _slope(*zip(*pts)) if len(pts) >= 2 else math.inf
    return LimitEstimate(value, order, samples)


# ---------------------------------------------------------------------------
# torsion


def _sampler(curve):
    if isinstance(curve, tuple) and all(isinstance(c, Jet1) for c in curve):
        return lambda t: np.array([c.eval_numeric(t) for c in curve])
    return curve


def _torsion_fit(f, h: float, nodes: int, deg: int) -> tuple:
    ts = np.cos(np.pi * (np.arange(nodes) + 0.5) / nodes) * h
    pts = np.array([f(float(t)) for t in ts])
    x = ts / h
    fits = [cheb.chebfit(x, pts[:, k], deg) for k in range(3)]
    ders = [[cheb.chebder(cf, m) / h ** m for m in (1, 2, 3)] for cf in fits]

    def tau(t: float) -> float:
        d = np.array([[cheb.chebval(t / h, ders[k][m]) for k in range(3)] for m in range(3)])
        cr = np.cross(d[0], d[1])
        w = float(cr @ cr)
        if w < 1e-20:
            raise OracleError("curvature vanishes: torsion undefined")
        return float(cr @ d[2]) / w

    dl = h / 8

    def D(e):
        return (tau(e) - tau(-e)) / (2 * e)

    return tau(0.0), (4 * D(dl / 2) - D(dl)) / 3


def torsion_numeric(curve, h: float | None = None, nodes: int = 40, deg: int = 14, rtol: float = 1e-6) -> tuple:
    """(tau(0), tau'(0)) from Chebyshev fits of a sampled curve on [-h, h].

    Without ``h`` the window is halved from 0.02 until two successive
    estimates agree to ``rtol``; failing that, the best-agreeing pair wins.
    """
    f = _sampler(curve)
    if h is not None:
        return _torsion_fit(f, h, nodes, deg)
    prev, best = None, None
    h = 0.02
    for _ in range(5):
        try:
            cur = _torsion_fit(f, h, nodes, deg)
        except OracleError:
            prev, h = None, h / 2
            continue
        if prev is not None:
            gap = max(abs(a - b) / max(1.0, abs(b)) for a, b in zip(cur, prev))
            if gap <= rtol:
                return cur
            if best is None or gap < best[0]:
                best = (gap, cur)
        prev, h = cur, h / 2
    if best is None:
        raise OracleError("torsion estimate failed on every window")
    return best[1]


def branch_numeric(g, n: int):
    """v(u) solving Sigma(u, v) = 0 near v = 0, with |v| = O(|u|^(n+1)).

    The bracket grows geometrically from a tiny width, so the first sign
    change found belongs to the root of smallest |v|: the branch tangent to
    the u-axis.  Other parts of the zero set sit at |v| >> |u|^(n+1).
    """
    s = g if isinstance(g, PolySurface) else PolySurface.from_germ(g)

    def sigma(u, v):
        gu, gv = s(u, v, 1, 0), s(u, v, 0, 1)
        cr = np.cross(gu, gv)
        L, M, N = s(u, v, 2, 0) @ cr, s(u, v, 1, 1) @ cr, s(u, v, 0, 2) @ cr
        return float(L * N - M * M)

    def v_of(u: float) -> float:
        if u == 0.0:
            return 0.0
        scale = abs(u) ** (n + 1)
        for k in range(-8, 24):
            B = scale * 2.0 ** k
            lo, hi = sigma(u, -B), sigma(u, B)
            if lo * hi < 0:
                return brentq(lambda v: sigma(u, v), -B, B, xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=500)
        raise OracleError(f"no sign change of Sigma at u = {u}")

    def curve(t: float) -> np.ndarray:
        return s(t, v_of(t))

    return curve


def monge_parabolic_numeric(k2: float, a: dict, order: int):
    """Parabolic curve of z = k2 y^2 / 2 + sum a_ij x^i y^j / (i! j!), lifted to the graph."""
    f = np.zeros((order + 1, order + 1))
    f[0, 2] = k2 / 2
    for (i, j), val in a.items():
        f[i, j] = float(val) / (math.factorial(i) * math.factorial(j))
    fxx, fxy, fyy = P.polyder(f, 2, axis=0), P.polyder(P.polyder(f, 1, axis=0), 1, axis=1), P.polyder(f, 2, axis=1)

    def H(x, y):
        return P.polyval2d(x, y, fxx) * P.polyval2d(x, y, fyy) - P.polyval2d(x, y, fxy) ** 2

    a30, a21 = float(a.get((3, 0), 0)), float(a.get((2, 1), 0))
    by_x = a21 != 0
    if not by_x and a30 == 0:
        raise OracleError("parabolic set singular at the origin")

    def other(t: float) -> float:
        if t == 0.0:
            return 0.0
        fn = (lambda y: H(t, y)) if by_x else (lambda x: H(x, t))
        for k in range(-30, 6):
            B = abs(t) * 2.0 ** k
            if fn(-B) * fn(B) < 0:
                return brentq(fn, -B, B, xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=500)
        raise OracleError(f"no sign change of the Hessian determinant at t = {t}")

    def curve(t: float) -> np.ndarray:
        x, y = (t, other(t)) if by_x else (other(t), t)
        return np.array([x, y, P.polyval2d(x, y, f)])

    return curve
