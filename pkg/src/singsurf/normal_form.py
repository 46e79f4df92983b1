"""Reduction of corank-1 germs to the normal form (u, p, q).

p = v^2/2 + sum b_i u^i / i!,   q = a_20 u^2/2 + sum a_ij u^i v^j / (i! j!).

The reduction keeps every jet rational.  The target frame is the rational
orthogonal (not orthonormal) frame with rows e, w, e x w; the square roots
of the row norms, and the final rescaling of v, are applied only to the
finished coefficient table, where they become ``Surd`` scalars.  A target
homothety is used when the v-scaling would otherwise need a fourth root;
all downstream labels are similarity invariant.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from math import factorial
from typing import Mapping

from .exact import Q, ONE, ZERO, Surd, sign, sqrt_exact, is_rational
from .jets import Jet1, Jet2, JetError, MapGerm, compose2, cross3, dot3


class ReductionError(ValueError):
    """Raised when a germ is outside the scope of the normal form."""

    def __init__(self, reason: str, orbit: str | None = None):
        super().__init__(reason if orbit is None else f"{reason} (2-jet orbit: {orbit})")
        self.reason = reason
        self.orbit = orbit


@dataclass(frozen=True)
class NormalFormCoeffs:
    """The a_ij / b_i table of the normal form, truncated at ``order``."""

    order: int
    a: Mapping = field(default_factory=dict)
    b: Mapping = field(default_factory=dict)

    def __post_init__(self):
        K = self.order
        a, b = {}, {}
        for (i, j), val in dict(self.a).items():
            if i + j < 2 or i + j > K:
                raise ValueError(f"a[{i},{j}] outside 2 <= i+j <= {K}")
            if (i, j) in ((1, 1), (0, 2)):
                raise ValueError(f"a[{i},{j}] is not part of the normal form")
            val = val if isinstance(val, Surd) else Q(val)
            if val != 0:
                a[(int(i), int(j))] = val
        for i, val in dict(self.b).items():
            if i < 2 or i > K:
                raise ValueError(f"b[{i}] outside 2 <= i <= {K}")
            val = val if isinstance(val, Surd) else Q(val)
            if val != 0:
                b[int(i)] = val
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def A(self, i: int, j: int):
        if i + j > self.order:
            raise JetError(f"a[{i},{j}] needs jet order {i + j} > {self.order}")
        return self.a.get((i, j), ZERO)

    def B(self, i: int):
        if i > self.order:
            raise JetError(f"b[{i}] needs jet order {i} > {self.order}")
        return self.b.get(i, ZERO)

    def get_a(self, i, j):
        return self.a.get((i, j), ZERO)

    def get_b(self, i):
        return self.b.get(i, ZERO)

    def is_rational(self) -> bool:
        return all(not isinstance(x, Surd) for x in itertools.chain(self.a.values(), self.b.values()))

    def with_order(self, order: int) -> "NormalFormCoeffs":
        return NormalFormCoeffs(
            order,
            {k: v for k, v in self.a.items() if sum(k) <= order},
            {k: v for k, v in self.b.items() if k <= order},
        )

    def replace(self, a=None, b=None, order=None) -> "NormalFormCoeffs":
        na = dict(self.a)
        nb = dict(self.b)
        na.update(a or {})
        nb.update(b or {})
        return NormalFormCoeffs(order or self.order, na, nb)

    def p_jet(self) -> Jet2:
        K = self.order
        c = {(0, 2): Q(1, 2)} if K >= 2 else {}
        for i, val in self.b.items():
            c[(i, 0)] = val * Q(1, factorial(i))
        return Jet2(K, c)

    def q_jet(self) -> Jet2:
        c = {(i, j): val * Q(1, factorial(i) * factorial(j)) for (i, j), val in self.a.items()}
        return Jet2(self.order, c)

    def reconstruct(self) -> MapGerm:
        return MapGerm((Jet2.u(self.order), self.p_jet(), self.q_jet()))

    @classmethod
    def from_germ(cls, g: MapGerm) -> "NormalFormCoeffs":
        """Read the table off a germ that is already in normal form."""
        K = g.order
        x, p, q = g.components
        if x != Jet2.u(K):
            raise ReductionError("first component is not u")
        a, b = {}, {}
        for (i, j), val in p.items():
            if (i, j) == (0, 2):
                if val != Q(1, 2):
                    raise ReductionError("p does not start with v^2/2")
            elif j == 0:
                b[i] = val * factorial(i)
            else:
                raise ReductionError(f"p has a forbidden term u^{i}v^{j}")
        if K >= 2 and p[(0, 2)] != Q(1, 2):
            raise ReductionError("p does not start with v^2/2")
        for (i, j), val in q.items():
            if i + j < 2 or (i, j) in ((1, 1), (0, 2)):
                raise ReductionError(f"q has a forbidden term u^{i}v^{j}")
            a[(i, j)] = val * factorial(i) * factorial(j)
        return cls(K, a, b)


@dataclass(frozen=True)
class SingularPointClass:
    label: str

    def __str__(self):
        return self.label


def singular_point_class(c: NormalFormCoeffs) -> SingularPointClass:
    a20, b2 = c.get_a(2, 0), c.get_b(2)
    if a20 != 0:
        return SingularPointClass("hyperbolic")
    if b2 != 0:
        return SingularPointClass("inflection")
    return SingularPointClass("degenerate_inflection")


# ---------------------------------------------------------------------------
# corank and the 2-jet


@dataclass(frozen=True)
class CorankInfo:
    corank: int
    null_direction: tuple | None = None
    image_direction: tuple | None = None
    covector: tuple | None = None


def corank_check(g: MapGerm) -> CorankInfo:
    gu = tuple(c[(1, 0)] for c in g.components)
    gv = tuple(c[(0, 1)] for c in g.components)
    cr = cross3(gu, gv)
    if any(x != 0 for x in cr):
        return CorankInfo(0)
    if all(x == 0 for x in gu) and all(x == 0 for x in gv):
        return CorankInfo(2)
    # rank one: J = e (l1, l2)
    if any(x != 0 for x in gu):
        e = gu
        k = next(i for i in range(3) if gu[i] != 0)
        l1, l2 = ONE, gv[k] / gu[k]
    else:
        e = gv
        l1, l2 = ZERO, ONE
    eta = (-l2, l1)
    return CorankInfo(1, eta, e, (l1, l2))


def _quad_matrix(form: Jet2):
    return (form[(2, 0)], form[(1, 1)] / 2, form[(0, 2)])


def quadratic_pair_orbit(p2: Jet2, q2: Jet2) -> str:
    """GL2 x GL2 orbit of a pair of binary quadratic forms (u^2, uv, v^2 parts)."""
    A = _quad_matrix(p2)
    B = _quad_matrix(q2)
    va, vb = A, B
    rank_span = _rank([list(va), list(vb)])
    if rank_span == 0:
        return "(0,0): degenerate inflection"
    if rank_span == 1:
        f = va if any(x != 0 for x in va) else vb
        det = f[0] * f[2] - f[1] * f[1]
        return "(x^2+-y^2,0): inflection" if det != 0 else "(x^2,0): degenerate inflection"
    detA = A[0] * A[2] - A[1] * A[1]
    detB = B[0] * B[2] - B[1] * B[1]
    mixed = A[0] * B[2] + A[2] * B[0] - 2 * A[1] * B[1]
    disc = mixed * mixed - 4 * detA * detB
    s = sign(disc)
    if s > 0:
        return "(x^2,y^2): hyperbolic"
    if s < 0:
        return "(xy,x^2-y^2): elliptic"
    return "(x^2,xy): parabolic"


def _rank(rows) -> int:
    rows = [list(r) for r in rows]
    rank, col, ncol = 0, 0, len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncol:
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col] / rows[rank][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


# ---------------------------------------------------------------------------
# jet helpers


def _lift(c: Jet1, K: int) -> Jet2:
    """A series in s seen as a jet in (u, v) depending on u only."""
    return Jet2(K, {(d, 0): val for d, val in c.items() if d <= K})


def reciprocal2(f: Jet2) -> Jet2:
    """1/f for a unit jet, by Newton iteration y <- y (2 - f y)."""
    c0 = f[(0, 0)]
    if c0 == 0:
        raise JetError("jet is not a unit")
    K = f.order
    y = Jet2.const(K, ONE / c0)
    prec = 0  # y is correct through this degree
    while prec < K:
        m = min(2 * prec + 1, K)
        fm, ym = f.with_order(m), y.with_order(m)
        y = Jet2(K, (ym * (2 - fm * ym)).coeffs)
        prec = m
    return y


def sqrt_unit2(f: Jet2) -> Jet2:
    """Square root of a jet with constant term 1 (binomial series)."""
    if f[(0, 0)] != 1:
        raise JetError("sqrt_unit2 expects constant term 1")
    K = f.order
    m = f - 1
    out = Jet2.const(K, 1)
    term = Jet2.const(K, 1)
    coef = ONE
    for k in range(1, K + 1):
        coef = coef * (Q(1, 2) - (k - 1)) / k
        term = term * m
        if term.is_zero():
            break
        out = out + term.scale(coef)
    return out


def _solve_first_component(X: Jet2) -> Jet2:
    """phi(s, t) with X(phi, t) = s, for X = s + higher-order terms."""
    K = X.order
    s = Jet2.u(K)
    t = Jet2.v(K)
    Xu = X.diff("u").with_order(K)
    phi = s
    prec = 1  # phi is correct through this degree
    while prec < K:
        m = min(2 * prec, K)
        pm, sm, tm = phi.with_order(m), s.with_order(m), t.with_order(m)
        resid = compose2(X.with_order(m), pm, tm) - sm
        if not resid.is_zero():
            pm = pm - resid * reciprocal2(compose2(Xu.with_order(m), pm, tm))
        phi = Jet2(K, pm.coeffs)
        prec = m
    return phi


def _critical_curve(Y: Jet2) -> Jet1:
    """c(s) with dY/dt(s, c(s)) = 0 (Y_tt(0) != 0)."""
    K = Y.order
    Yt = Y.diff("v").with_order(K)
    Ytt = Yt.diff("v").with_order(K)
    s = Jet1.t(K)
    c = Jet1.zero(K)
    prec = 1
    while prec <= K + 1:
        r = Yt.substitute_curve(s, c)
        if r.is_zero():
            break
        c = c - r * Ytt.substitute_curve(s, c).reciprocal()
        prec *= 2
    return c


def _morse(Y: Jet2, omega):
    """T(s,t), beta(s) with Y(s, T(s,t)) = omega t^2/2 + beta(s)."""
    K = Y.order
    s1 = Jet1.t(K)
    c = _critical_curve(Y)
    beta = Y.substitute_curve(s1, c)
    s, tau = Jet2.u(K), Jet2.v(K)
    shifted = compose2(Y, s, _lift(c, K) + tau) - _lift(beta, K)
    for (i, j), val in shifted.items():
        if j < 2:
            raise ReductionError("Morse normalization failed: residual below tau^2")
    H = Jet2(K - 2, {(i, j - 2): val for (i, j), val in shifted.items() if i + j - 2 <= K - 2})
    R = sqrt_unit2(H.scale(2 / Q(omega)))
    # invert t = tau R(s, tau) by Newton, order K-1
    K1 = K - 1
    R1 = Jet2(K1, R.coeffs) if K1 >= R.order else R.with_order(K1)
    Rtau = R1.diff("v").with_order(K1)
    s, t = Jet2.u(K1), Jet2.v(K1)
    tau = t
    prec = 1
    while prec < K1:
        m = min(2 * prec, K1)
        sm, tm, um = s.with_order(m), t.with_order(m), tau.with_order(m)
        Rc = compose2(R1.with_order(m), sm, um)
        resid = um * Rc - tm
        if not resid.is_zero():
            um = um - resid * reciprocal2(Rc + um * compose2(Rtau.with_order(m), sm, um))
        tau = Jet2(K1, um.coeffs)
        prec = m
    T = Jet2(K, tau.coeffs) + _lift(c, K)
    return T, beta


def _sign_keys(a: dict, b: dict):
    """Ordering used by the canonical sign choice: a_{i,1} first, then by degree."""
    keys = [("a", k) for k in sorted(a) if k[1] == 1]
    rest = [("a", k) for k in a if k[1] != 1] + [("b", (i, 0)) for i in b]
    rest.sort(key=lambda x: (x[1][0] + x[1][1], x[0], -x[1][1], x[1][0]))
    return keys + rest


FLIPS = tuple(itertools.product((False, True), repeat=3))


def apply_flip(c: NormalFormCoeffs, flip) -> NormalFormCoeffs:
    """Apply (z-flip, v-flip, x-flip) to a table; labels are invariant."""
    fz, ft, fx = flip
    a = {}
    for (i, j), val in c.a.items():
        s = 1
        if fz:
            s = -s
        if ft and j % 2:
            s = -s
        if fx and i % 2:
            s = -s
        a[(i, j)] = val if s > 0 else -val
    b = {i: (-val if fx and i % 2 else val) for i, val in c.b.items()}
    return NormalFormCoeffs(c.order, a, b)


def canonical_sign(c: NormalFormCoeffs):
    """Pick the flip making the sign vector lexicographically largest."""
    keys = _sign_keys(c.a, c.b)
    signs = {}
    for kind, k in keys:
        val = c.a[k] if kind == "a" else c.b[k[0]]
        signs[(kind, k)] = sign(val)
    best, best_vec = None, None
    for flip in FLIPS:
        fz, ft, fx = flip
        vec = []
        for kind, (i, j) in keys:
            s = signs[(kind, (i, j))]
            if kind == "a":
                if fz:
                    s = -s
                if ft and j % 2:
                    s = -s
            if fx and i % 2:
                s = -s
            vec.append(s)
        if best_vec is None or vec > best_vec:
            best, best_vec = flip, vec
    return apply_flip(c, best), best


@dataclass(frozen=True)
class Reduction:
    """Result of ``reduce``.

    ``source_change`` maps the intermediate coordinates (s, t) to the original
    (u, v).  ``rotation`` holds the rational orthogonal frame rows (e, w, e x w)
    with squared norms ``norms2``; the true rotation divides each row by its
    norm.  The normal-form coordinates are x = homothety * s / |e| and
    t = scale_t * v_nf, followed by ``flip``.
    """

    coeffs: NormalFormCoeffs
    rotation: tuple
    norms2: tuple
    homothety: object
    scale_t: object
    flip: tuple
    orbit: str
    _su: Jet2 = field(repr=False, compare=False)
    _sv: Jet2 = field(repr=False, compare=False)
    _T: Jet2 = field(repr=False, compare=False)
    _beta: Jet1 = field(repr=False, compare=False)
    _qt: Jet2 = field(repr=False, compare=False)

    @cached_property
    def source_change(self) -> tuple:
        S = Jet2.u(self._T.order)
        return (compose2(self._su, S, self._T), compose2(self._sv, S, self._T))

    @property
    def reduced_components(self) -> tuple:
        """(s, Y, Z) as rational jets in (s, t); Y = N_w t^2 / 2 + beta(s)."""
        K = self._T.order
        Y = _lift(self._beta, K) + Jet2.monomial(K, 0, 2, self.norms2[1] / 2)
        return (Jet2.u(K), Y, self._qt)


def reduce(g: MapGerm, canonical: bool = True) -> Reduction:
    K = g.order
    if g.is_zero():
        raise ReductionError("insufficient jet data")
    if K < 2:
        raise ReductionError("insufficient jet data: order < 2")
    info = corank_check(g)
    if info.corank == 0:
        raise ReductionError("corank 0")
    if info.corank == 2:
        raise ReductionError("corank 2")
    e = info.image_direction
    l1, l2 = info.covector
    N1 = dot3(e, e)
    # source linear change: columns xi (l.xi = 1/N1) and eta
    xi = (ONE / (l1 * N1), ZERO) if l1 != 0 else (ZERO, ONE / (l2 * N1))
    eta = info.null_direction
    U, V = Jet2.u(K), Jet2.v(K)
    lin_u = U.scale(xi[0]) + V.scale(eta[0])
    lin_v = U.scale(xi[1]) + V.scale(eta[1])
    Xg = _combo(g, e)
    X = compose2(Xg, lin_u, lin_v)
    phi = _solve_first_component(X)
    su = compose2(lin_u, phi, V)
    sv = compose2(lin_v, phi, V)
    # 2-jet of the straightened germ gives w = g_tt(0)
    g2 = [c.with_order(2) for c in g.components]
    su2, sv2 = su.with_order(2), sv.with_order(2)
    G2 = [compose2(c, su2, sv2) for c in g2]
    w = tuple(2 * c[(0, 2)] for c in G2)
    n_basis = _normal_basis(e, w)
    p2 = compose2(_combo_list(g2, n_basis[0]), su2, sv2)
    q2 = compose2(_combo_list(g2, n_basis[1]), su2, sv2)
    orbit = quadratic_pair_orbit(p2, q2)
    if all(x == 0 for x in w):
        raise ReductionError("unsupported 2-jet: no v^2 term in the normal plane", orbit)
    ew = cross3(e, w)
    Zr2 = compose2(_combo_list(g2, ew), su2, sv2)
    if Zr2[(1, 1)] != 0:
        raise ReductionError("unsupported 2-jet: cross-cap", orbit)
    Nw = dot3(w, w)
    Y = compose2(_combo(g, w), su, sv)
    Z = compose2(_combo(g, ew), su, sv)
    T, beta = _morse(Y, Nw)
    S = Jet2.u(K)
    qt = compose2(Z, S, T)
    # exact scalings
    n1 = sqrt_exact(N1)
    n2 = sqrt_exact(Nw)
    n3 = sqrt_exact(N1 * Nw)
    lam = ONE if is_rational(n2) else n2
    sigma = sqrt_exact(ONE / _rat(lam * n2))
    b, a = {}, {}
    for i, val in beta.items():
        if i >= 2:
            b[i] = val * _pw(lam, 1 - i) * _pw(n1, i) / n2 * factorial(i)
    for (i, j), val in qt.items():
        a[(i, j)] = val * _pw(lam, 1 - i) * _pw(n1, i) * _pw(sigma, j) / n3 * (factorial(i) * factorial(j))
    coeffs = NormalFormCoeffs(K, a, b)
    flip = (False, False, False)
    if canonical:
        coeffs, flip = canonical_sign(coeffs)
    return Reduction(
        coeffs=coeffs,
        rotation=(tuple(e), tuple(w), tuple(ew)),
        norms2=(N1, Nw, N1 * Nw),
        homothety=lam,
        scale_t=sigma,
        flip=flip,
        orbit=orbit,
        _su=su,
        _sv=sv,
        _T=T,
        _beta=beta,
        _qt=qt,
    )


def _rat(x):
    r = x.rational_value() if isinstance(x, Surd) else x
    if r is None:
        raise ReductionError("internal: expected a rational scale")
    return r


def _pw(x, k: int):
    return x ** k


def _combo(g: MapGerm, vec) -> Jet2:
    return _combo_list(g.components, vec)


def _combo_list(comps, vec) -> Jet2:
    acc = Jet2.zero(comps[0].order)
    for coef, comp in zip(vec, comps):
        if coef != 0:
            acc = acc + comp.scale(coef)
    return acc


def _normal_basis(e, w):
    """Two vectors spanning e-perp (w first when nonzero)."""
    if any(x != 0 for x in w):
        return (w, cross3(e, w))
    for cand in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        c = cross3(e, tuple(Q(x) for x in cand))
        if any(x != 0 for x in c):
            return (c, cross3(e, c))
    raise ReductionError("degenerate image direction")
