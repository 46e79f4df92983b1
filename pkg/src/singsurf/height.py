"""Height functions h_v = <g, v> at the singular point.

Two independent routes decide the singularity type: the coefficient rows
(``classify_height``) and the geometric route through the blow-up
(``classify_height_geometric``).  ``ade_recognize`` is a splitting-lemma
recognizer that works on any function jet and serves as a third opinion.
Directions may be unnormalized: every test is homogeneous in (y, z).
"""

from __future__ import annotations

from dataclasses import dataclass

from .blowup import ThetaDirection, point_type, ridge_order
from .exact import ONE, ZERO, Q, Surd, sign
from .jets import Jet2, compose2
from .mond import AType
from .normal_form import NormalFormCoeffs, _rank


@dataclass(frozen=True)
class Direction3:
    x: object
    y: object
    z: object

    def __post_init__(self):
        for name in ("x", "y", "z"):
            val = getattr(self, name)
            if not isinstance(val, Surd):
                object.__setattr__(self, name, Q(val))
        if self.x == 0 and self.y == 0 and self.z == 0:
            raise ValueError("zero direction")

    @property
    def components(self):
        return (self.x, self.y, self.z)

    def unit(self) -> tuple:
        v = [float(t) for t in self.components]
        r = sum(t * t for t in v) ** 0.5
        return tuple(t / r for t in v)

    def __neg__(self):
        return Direction3(-self.x, -self.y, -self.z)


@dataclass(frozen=True)
class HeightClass:
    atype: str  # A1, A2, A3, A4plus, D4plus or regular
    versal_H: bool
    versal_Hext: bool
    route: str  # coefficient, geometric or combined
    case: str = ""

    def key(self):
        return (self.atype, self.versal_H, self.versal_Hext)


def height_jet(c: NormalFormCoeffs, v: Direction3) -> Jet2:
    g = c.reconstruct()
    out = Jet2.zero(c.order)
    for coef, comp in zip(v.components, g.components):
        if coef != 0:
            out = out + comp.scale(coef)
    return out


def _versal_pair(flag: bool) -> tuple:
    # R+-versality of H and K-versality of the extended family coincide
    return flag, flag


def classify_height(c: NormalFormCoeffs, v: Direction3) -> HeightClass:
    x0, y0, z0 = v.components
    if x0 != 0:
        return HeightClass("regular", True, True, "coefficient", "regular")
    A, B = c.A, c.B
    lin = B(2) * y0 + A(2, 0) * z0
    if y0 != 0:
        if lin != 0:
            return HeightClass("A1", *_versal_pair(True), "coefficient", "1")
        if B(3) * y0 + A(3, 0) * z0 != 0:
            return HeightClass("A2", *_versal_pair(True), "coefficient", "2a")
        if B(4) * y0 * y0 + A(4, 0) * y0 * z0 - 3 * A(2, 1) ** 2 * z0 * z0 != 0:
            return HeightClass("A3", *_versal_pair(A(2, 0) != 0), "coefficient", "3a")
        return HeightClass("A4plus", *_versal_pair(False), "coefficient", "4a")
    # v = +-(0, 0, 1)
    if A(2, 0) == 0:
        return HeightClass("D4plus", *_versal_pair(False), "coefficient", "5")
    if A(0, 3) != 0:
        return HeightClass("A2", *_versal_pair(False), "coefficient", "2b")
    if A(2, 0) * A(0, 4) - 3 * A(1, 2) ** 2 != 0:
        return HeightClass("A3", *_versal_pair(False), "coefficient", "3b")
    return HeightClass("A4plus", *_versal_pair(False), "coefficient", "4b")


def classify_height_geometric(c: NormalFormCoeffs, t: AType, th: ThetaDirection) -> HeightClass:
    """Singularity of h along +-n(0, theta) from the geometry over the singular point."""
    if not t.in_family:
        raise ValueError("geometric route needs an in-family germ")
    n = t.blowup_n
    inflection = c.get_a(2, 0) == 0
    if th.cos_zero:
        if inflection:
            return HeightClass("D4plus", *_versal_pair(False), "geometric", "2b")
        # A>=2 by the geometry; the finer split comes from the coefficient rows
        sub = classify_height(c, Direction3(0, 0, 1))
        return HeightClass(sub.atype, *_versal_pair(False), "combined", "2a/" + sub.case)
    if point_type(c, n, th) != "parabolic":
        return HeightClass("A1", *_versal_pair(True), "geometric", "1a")
    ridge = ridge_order(c, n, th)
    if ridge == "not_ridge":
        return HeightClass("A2", *_versal_pair(True), "geometric", "1b")
    if ridge == "first_order":
        return HeightClass("A3", *_versal_pair(not inflection), "geometric", "1c")
    return HeightClass("A4plus", *_versal_pair(False), "geometric", "1d")


def _monomials(lo: int, hi: int):
    return [(i, d - i) for d in range(lo, hi + 1) for i in range(d, -1, -1)]


def versality_matrix(c: NormalFormCoeffs, v: Direction3, N: int, extended: bool = False):
    """Rows of the versality matrix modulo constants and m^N."""
    if c.order < N:
        raise ValueError(f"versality matrix needs jet order >= {N}")
    x0, y0, z0 = v.components
    if x0 != 0:
        raise ValueError("versality matrix is defined at singular points only")
    K = N - 1
    cc = c.with_order(N)
    h = height_jet(cc, v)
    hu = h.diff("u").with_order(K)
    hv = h.diff("v").with_order(K)
    g = cc.reconstruct()
    gens = [Jet2.u(K), (g[2].scale(y0) - g[1].scale(z0)).with_order(K)]
    for i, j in _monomials(0, N - 2):
        m = Jet2.monomial(K, i, j)
        gens.append(m * hu)
        gens.append(m * hv)
    if extended:
        hk = h.with_order(K)
        for i, j in _monomials(0, N - 3):
            gens.append(Jet2.monomial(K, i, j) * hk)
    cols = _monomials(1, K)
    return [[gen[col] for col in cols] for gen in gens], len(cols)


_DET_N = {"A1": 3, "A2": 4, "A3": 5}


def versality_matrix_rank(c: NormalFormCoeffs, v: Direction3, extended: bool = False):
    """(rank, full_rank_value) of the versality matrix for an A1-A3 height function."""
    hc = classify_height(c, v)
    if hc.atype not in _DET_N:
        raise ValueError(f"versality matrix not applicable to {hc.atype}")
    N = _DET_N[hc.atype]
    rows, ncols = versality_matrix(c, v, N, extended)
    return _rank(rows), ncols


def is_versal_by_matrix(c: NormalFormCoeffs, v: Direction3, extended: bool = False) -> bool:
    r, full = versality_matrix_rank(c, v, extended)
    return r == full


# --------------------------------------------------------------------------
# splitting lemma


def ade_recognize(f: Jet2) -> str:
    """A_k / D4plus / regular / needs_higher_jet for a function jet with f(0) = 0."""
    K = f.order
    if f[(1, 0)] != 0 or f[(0, 1)] != 0:
        return "regular"
    f20, f11, f02 = f[(2, 0)], f[(1, 1)], f[(0, 2)]
    det = 4 * f20 * f02 - f11 * f11
    if det != 0:
        return "A1"
    if f20 == 0 and f11 == 0 and f02 == 0:
        return "D4plus"
    s, w = Jet2.u(K), Jet2.v(K)
    # coordinates (s, w) in which the quadratic part is alpha w^2
    if f02 != 0:
        g = compose2(f, s, w - s.scale(f11 / (2 * f02)))
    else:
        g = compose2(f, w, s)
    alpha = g[(0, 2)]
    assert alpha != 0 and g[(1, 1)] == 0 and g[(2, 0)] == 0
    for _ in range(2 * K + 2):
        G = Jet2(K, {(i, j - 1): val for (i, j), val in g.items() if j >= 1 and (i, j) != (0, 2)})
        if G.is_zero():
            break
        g = compose2(g, s, w - G.scale(ONE / (2 * alpha)))
    else:
        raise RuntimeError("splitting did not converge")
    phi = [(i, val) for (i, j), val in g.items() if j == 0]
    if not phi:
        return "needs_higher_jet"
    d = min(i for i, _ in phi)
    return f"A{d - 1}"


def ade_matches(label: str, ade: str) -> bool:
    """Agreement between a height label and a splitting-lemma result."""
    if label in ("A1", "A2", "A3"):
        return ade == label
    if label == "A4plus":
        if ade == "needs_higher_jet":
            return True
        return ade.startswith("A") and int(ade[1:]) >= 4
    return ade == label
