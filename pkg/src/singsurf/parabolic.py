"""Parabolic set, its characteristic branch, and torsion of the branch."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from math import factorial

from .exact import ONE, Q, ZERO, Surd, sign
from .jets import Jet1, Jet2, JetError, cross3, dot3
from .mond import AType, InsufficientJet
from .normal_form import NormalFormCoeffs


class HypothesisError(ValueError):
    """A theorem's hypotheses do not hold for this input."""


def sigma_jet(c: NormalFormCoeffs) -> Jet2:
    """L'N' - M'^2 for g = (u, p, q); valid through degree order - 2."""
    K = c.order
    if K < 2:
        raise JetError("sigma needs order >= 2")
    p, q = c.p_jet(), c.q_jet()
    K2 = K - 2
    pu, pv, qu, qv = p.diff("u"), p.diff("v"), q.diff("u"), q.diff("v")
    puu, puv, pvv = pu.diff("u"), pu.diff("v"), pv.diff("v")
    quu, quv, qvv = qu.diff("u"), qu.diff("v"), qv.diff("v")
    # g_u x g_v = (p_u q_v - q_u p_v, -q_v, p_v); second derivatives have x-part 0
    pv2, qv2 = pv.with_order(K2), qv.with_order(K2)
    L = qv2 * (-puu) + pv2 * quu
    M = qv2 * (-puv) + pv2 * quv
    N = qv2 * (-pvv) + pv2 * qvv
    return L * N - M * M


def newton_polygon(s: Jet2) -> list:
    """Vertices of the compact faces of the Newton polygon, by increasing i."""
    if s.is_zero():
        raise ValueError("Newton polygon of the zero jet")
    best: dict[int, int] = {}
    for i, j in s.keys():
        if j < best.get(i, j + 1):
            best[i] = j
    pts = sorted(best.items())
    hull: list = []
    for pnt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (pnt[1] - y1) - (y2 - y1) * (pnt[0] - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append(pnt)
    # keep the strictly descending part
    out = [hull[0]]
    for pnt in hull[1:]:
        if pnt[1] < out[-1][1]:
            out.append(pnt)
        else:
            break
    return out


@dataclass(frozen=True)
class BranchSeries:
    series: Jet1  # v = beta(u)
    contact: int  # order of contact with the tangent line (lower bound if beta = 0)
    exact_contact: bool
    n: int
    residual_order: int  # Sigma(u, beta(u)) vanishes through this degree


def _lead(c: NormalFormCoeffs, n: int):
    a = c.get_a(n + 1, 1)
    if a == 0:
        raise ValueError("a_{n+1,1} vanishes")
    return a, factorial(n + 1)


def trace_branch(c: NormalFormCoeffs, t: AType, N: int) -> BranchSeries:
    """Solve Sigma(u, beta(u)) = 0 with beta = u^(n+1) w(u) through degree N."""
    if not t.in_family:
        raise ValueError("branch tracing needs an in-family germ")
    a20 = c.get_a(2, 0)
    if a20 == 0:
        raise HypothesisError("branch tracing needs a non-inflection singular point (a_20 != 0)")
    n = t.blowup_n
    K = c.order
    if N > K - n - 3:
        raise InsufficientJet(N + n + 3, K)
    a, F = _lead(c, n)
    S = sigma_jet(c)
    lam = S[(n + 1, 1)]
    if lam == 0:
        raise ValueError("branch continuation ambiguous at step 0")
    Nw = N - n - 1  # degree of w needed
    M = N + n + 1
    tt = Jet1.t(M)
    W = Jet1.zero(M)
    for k in range(Nw + 1):
        phi = S.substitute_curve(tt, (tt ** (n + 1)) * W)
        r = phi[2 * n + 2 + k]
        W = W + Jet1(M, {k: -r / lam})
    beta = Jet1(N, {d + n + 1: val for d, val in W.items() if d + n + 1 <= N})
    resid = S.substitute_curve(Jet1.t(M), beta.with_order(M))
    bad = [d for d, val in resid.items() if d <= M]
    if bad:
        raise AssertionError(f"branch residual nonzero at degree {min(bad)}")
    v = beta.valuation()
    if v is None:
        return BranchSeries(beta, N + 1, False, n, M)
    return BranchSeries(beta, v, True, n, M)


def branch_lead_coefficient(c: NormalFormCoeffs, n: int):
    a, F = _lead(c, n)
    return a * c.get_b(2) / (F * c.get_a(2, 0))


@dataclass(frozen=True)
class SpaceCurveInvariants:
    binormal0: tuple  # exact, positive multiple of b(0)
    binormal0_unit: tuple
    tau0: object
    tau0prime: object
    curvature0_sq: object
    curvature0: float


def frenet_at_zero(curve: tuple) -> SpaceCurveInvariants:
    """b(0), tau(0), tau'(0) of a curve given as three Jet1 (order >= 4)."""
    if min(comp.order for comp in curve) < 4:
        raise JetError("torsion derivative needs the 4-jet of the curve")
    L = [tuple(comp[k] * factorial(k) for comp in curve) for k in range(5)]
    L1, L2, L3, L4 = L[1], L[2], L[3], L[4]
    cr = cross3(L1, L2)
    W = dot3(cr, cr)
    if W == 0:
        raise ValueError("curvature vanishes at 0: torsion undefined")
    D = dot3(cr, L3)
    Dp = dot3(cr, L4)
    Wp = 2 * dot3(cr, cross3(L1, L3))
    tau0 = D / W
    tau0p = (Dp * W - D * Wp) / (W * W)
    n1 = dot3(L1, L1)
    k2 = W / (n1 * n1 * n1)
    cf = [float(x) for x in cr]
    r = math.sqrt(sum(x * x for x in cf))
    return SpaceCurveInvariants(cr, tuple(x / r for x in cf), tau0, tau0p, k2, math.sqrt(float(k2)))


def branch_curve(c: NormalFormCoeffs, b: BranchSeries, N: int | None = None) -> tuple:
    """L(t) = g(t, beta(t)) as three Jet1."""
    N = N or b.series.order
    t = Jet1.t(N)
    beta = b.series.with_order(N)
    return (t, c.p_jet().substitute_curve(t, beta), c.q_jet().substitute_curve(t, beta))


def curve_invariants(c: NormalFormCoeffs, b: BranchSeries) -> SpaceCurveInvariants:
    if b.series.order < 5:
        raise JetError("curve invariants need the branch through degree 5")
    return frenet_at_zero(branch_curve(c, b))


def closed_form_invariants(c: NormalFormCoeffs, n: int) -> dict:
    """Closed forms for b(0), tau(0), tau'(0); a_21 enters only when n = 1."""
    a20, a30, a40 = c.get_a(2, 0), c.get_a(3, 0), c.get_a(4, 0)
    b2, b3, b4 = c.get_b(2), c.get_b(3), c.get_b(4)
    a21 = c.get_a(2, 1) if n == 1 else ZERO
    s = a20 * a20 + b2 * b2
    tau0 = (a30 * b2 - a20 * b3) / s
    tau0p = -2 * (a30 * b2 - a20 * b3) * (a20 * a30 + b2 * b3) / (s * s) + (
        a40 * a20 * b2 + 3 * a21 * a21 * b2 * b2 - a20 * a20 * b4
    ) / (a20 * s)
    return {"binormal0": (ZERO, -a20, b2), "tau0": tau0, "tau0prime": tau0p}


def classify_by_torsion(inv: SpaceCurveInvariants) -> str:
    if inv.tau0 != 0:
        return "A2"
    if inv.tau0prime != 0:
        return "A3"
    return "A4plus"


# ---------------------------------------------------------------------------
# regular surfaces in Monge form z = k2 y^2 / 2 + sum a_ij x^i y^j / (i! j!)


@dataclass(frozen=True)
class MongeCoeffs:
    order: int
    k2: object
    a: dict = field(default_factory=dict)

    def __post_init__(self):
        a = {}
        for (i, j), val in dict(self.a).items():
            if i + j < 3 or i + j > self.order:
                raise ValueError(f"a[{i},{j}] outside 3 <= i+j <= {self.order}")
            val = Q(val)
            if val != 0:
                a[(i, j)] = val
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "k2", Q(self.k2))

    def get(self, i, j):
        return self.a.get((i, j), ZERO)

    def f_jet(self) -> Jet2:
        c = {(0, 2): self.k2 / 2}
        for (i, j), val in self.a.items():
            c[(i, j)] = val / (factorial(i) * factorial(j))
        return Jet2(self.order, c)


@dataclass(frozen=True)
class RegularParabolicReport:
    label: str  # A2, A3 or A4plus
    binormal_is_normal: bool
    tau0: object
    tau0prime: object
    tau0prime_printed: object  # None unless a_30 = 0
    tau_certifies_A3: bool
    curvature0_sq: object


def monge_parabolic_curve(m: MongeCoeffs, N: int) -> tuple:
    """Parabolic curve f_xx f_yy - f_xy^2 = 0 through 0, lifted to the surface."""
    f = m.f_jet()
    fxx = f.diff("u").diff("u")
    fxy = f.diff("u").diff("v")
    fyy = f.diff("v").diff("v")
    H = fxx * fyy - fxy * fxy
    # H has order K-2; its linear part is k2 (a30 x + a21 y)
    by_x = H[(0, 1)] != 0
    if not by_x and H[(1, 0)] == 0:
        raise HypothesisError("parabolic set is singular at the origin")
    if N > H.order:
        raise InsufficientJet(N + 2, m.order)
    t = Jet1.t(N)
    g = Jet1.zero(N)
    h1 = H[(0, 1)] if by_x else H[(1, 0)]
    # fixed-point iteration: each pass fixes one more degree
    for _ in range(N + 1):
        x, y = (t, g) if by_x else (g, t)
        r = H.with_order(N).substitute_curve(x, y)
        if r.is_zero():
            break
        g = g - r.scale(ONE / h1)
    x, y = (t, g) if by_x else (g, t)
    return (x, y, f.substitute_curve(x, y))


def regular_parabolic_check(m: MongeCoeffs) -> RegularParabolicReport:
    k2 = m.k2
    if k2 == 0:
        raise HypothesisError("k2 = 0: the origin is a flat umbilic")
    a30, a21, a40 = m.get(3, 0), m.get(2, 1), m.get(4, 0)
    if a30 == 0 and a21 == 0:
        raise HypothesisError("parabolic set singular at 0 (a30 = a21 = 0)")
    if m.order < 7:
        raise InsufficientJet(7, m.order)
    curve = monge_parabolic_curve(m, 5)
    try:
        inv = frenet_at_zero(curve)
    except HypothesisError:
        raise
    except ValueError as exc:
        raise HypothesisError(f"{exc}: proposition inapplicable") from None
    b = inv.binormal0
    binormal_is_normal = b[0] == 0 and b[1] == 0
    if a30 != 0:
        label = "A2"
    elif a40 * k2 - 3 * a21 * a21 != 0:
        label = "A3"
    else:
        label = "A4plus"
    printed = None
    if a30 == 0:
        den = a21 * (2 * a21 * a21 - a40 * k2)
        if den == 0:
            raise HypothesisError("curvature of the parabolic curve vanishes: proposition inapplicable")
        printed = (8 * a21 * a21 - 3 * a40 * k2) * (3 * a21 * a21 - a40 * k2) / den
    return RegularParabolicReport(
        label,
        binormal_is_normal,
        inv.tau0,
        inv.tau0prime,
        printed,
        printed is not None and printed != 0,
        inv.curvature0_sq,
    )
