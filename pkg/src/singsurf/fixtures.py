"""Named fixtures and seeded random corpora.

Random germs are built with deliberately planted degeneracies (inflection,
b2 = 0, ridge and higher-order ridge at the parabolic direction,
sub-parabolic points) so that every branch of the classifiers is exercised.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import factorial

from .exact import ONE, Q, ZERO
from .jets import Jet2, MapGerm
from .mond import AType, classify, required_order, solve_xi
from .normal_form import NormalFormCoeffs

G1 = NormalFormCoeffs(9, {(2, 0): 1, (2, 1): 2, (0, 3): 6}, {2: 1})
G2 = NormalFormCoeffs(9, {(2, 0): 1, (2, 1): 2, (0, 3): 6}, {4: 1})


def fixture(name: str, order: int | None = None) -> NormalFormCoeffs:
    c = {"G1": G1, "G2": G2}[name]
    return c if order is None else c.with_order(order)


# ---------------------------------------------------------------------------
# Mond's normal forms


@dataclass(frozen=True)
class TableForm:
    label: str
    family: str
    k: int
    order: int
    germ: MapGerm


def _table_germ(family: str, k: int, s: int, K: int) -> MapGerm:
    u, v = Jet2.u(K), Jet2.v(K)
    if family == "S":
        q = v ** 3 + (u ** (k + 1) * v).scale(s)
    elif family == "B":
        q = u * u * v + (v ** (2 * k + 1)).scale(s)
    elif family == "C":
        q = u * v ** 3 + (u ** k * v).scale(s)
    else:
        q = u ** 3 * v + v ** 5
    return MapGerm((u, v * v, q))


def table_forms() -> list:
    """Signed normal forms S1..S6, B2..B6, C3..C6, F4 (both signs where distinct)."""
    out = []

    def add(family, k, signs):
        K = required_order(family, k)
        for s in signs:
            sg = "" if len(signs) == 1 else ("+" if s > 0 else "-")
            out.append(TableForm(f"{family}{k}{sg}", family, k, K, _table_germ(family, k, s, K)))

    for k in range(1, 7):
        add("S", k, (1, -1) if k % 2 else (1,))
    for k in range(2, 7):
        add("B", k, (1, -1))
    for k in range(3, 7):
        add("C", k, (1, -1) if k % 2 else (1,))
    add("F", 4, (1,))
    return out


# ---------------------------------------------------------------------------
# random exact transforms


def _rq(rng: random.Random, lo: int = -3, hi: int = 3, nonzero: bool = False, dens=(1, 2, 3)):
    while True:
        x = Q(rng.randint(lo, hi), rng.choice(dens))
        if x != 0 or not nonzero:
            return x


def cayley_rotation(rng: random.Random):
    """Rational rotation (I - A)(I + A)^-1 for a random skew A."""
    a, b, c = _rq(rng), _rq(rng), _rq(rng)
    # closed form of the Cayley transform for skew(a, b, c)
    d = 1 + a * a + b * b + c * c
    return (
        ((1 + a * a - b * b - c * c) / d, 2 * (a * b - c) / d, 2 * (a * c + b) / d),
        (2 * (a * b + c) / d, (1 - a * a + b * b - c * c) / d, 2 * (b * c - a) / d),
        (2 * (a * c - b) / d, 2 * (b * c + a) / d, (1 - a * a - b * b + c * c) / d),
    )


def _random_poly(rng: random.Random, K: int, lo: int, hi: int, density: float) -> Jet2:
    c = {}
    for d in range(lo, hi + 1):
        for i in range(d + 1):
            if rng.random() < density:
                c[(i, d - i)] = _rq(rng)
    return Jet2(K, c)


def random_source_change(rng: random.Random, K: int, deg: int = 3):
    while True:
        m = [[_rq(rng) for _ in range(2)] for _ in range(2)]
        if m[0][0] * m[1][1] - m[0][1] * m[1][0] != 0:
            break
    u, v = Jet2.u(K), Jet2.v(K)
    su = u.scale(m[0][0]) + v.scale(m[0][1]) + _random_poly(rng, K, 2, deg, 0.4)
    sv = u.scale(m[1][0]) + v.scale(m[1][1]) + _random_poly(rng, K, 2, deg, 0.4)
    return su, sv


def random_rigid_transform(g: MapGerm, rng: random.Random, deg: int = 3) -> MapGerm:
    """Source diffeomorphism followed by a rational rotation and a homothety."""
    su, sv = random_source_change(rng, g.order, deg)
    h = Q(rng.randint(1, 4), rng.randint(1, 4))
    R = cayley_rotation(rng)
    out = g.compose(su, sv).rotate(R)
    return MapGerm(tuple(comp.scale(h) for comp in out.components))


def random_A_transform(g: MapGerm, rng: random.Random, deg: int = 3) -> MapGerm:
    """Source diffeomorphism, linear target change and quadratic target terms."""
    K = g.order
    su, sv = random_source_change(rng, K, deg)
    h = g.compose(su, sv)
    while True:
        M = [[_rq(rng) for _ in range(3)] for _ in range(3)]
        det = (
            M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
            - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
            + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0])
        )
        if det != 0:
            break
    comps = list(h.rotate(M).components)
    X = h.components
    for r in range(3):
        for i in range(3):
            for j in range(i, 3):
                if rng.random() < 0.25:
                    comps[r] = comps[r] + (X[i] * X[j]).scale(_rq(rng))
    return MapGerm(tuple(comps))


# ---------------------------------------------------------------------------
# random in-family normal forms

FAMILIES = (("S", 1), ("S", 2), ("S", 3), ("B", 2), ("B", 3), ("C", 3), ("C", 4), ("F", 4))

DEGENERACIES = ("none", "inflection", "b2zero", "ridge", "ridge2", "subparabolic")


def blowup_n(family: str, k: int) -> int:
    return {"S": k, "B": 1, "C": k - 1, "F": 2}[family]


def _family_constraints(family: str, k: int, rng) -> dict:
    """Forced a-entries (zeros included) that pin the family."""
    a = {}
    if family == "S":
        a[(0, 3)] = _rq(rng, nonzero=True)
        for i in range(2, k + 1):
            a[(i, 1)] = ZERO
        a[(k + 1, 1)] = _rq(rng, nonzero=True)
    elif family == "B":
        a[(0, 3)] = ZERO
        a[(2, 1)] = _rq(rng, nonzero=True)
    elif family == "C":
        a[(0, 3)] = ZERO
        for i in range(2, k):
            a[(i, 1)] = ZERO
        a[(1, 3)] = _rq(rng, nonzero=True)
        a[(k, 1)] = _rq(rng, nonzero=True)
    else:
        a[(0, 3)] = ZERO
        a[(2, 1)] = ZERO
        a[(1, 3)] = ZERO
        a[(3, 1)] = _rq(rng, nonzero=True)
        a[(0, 5)] = _rq(rng, nonzero=True)
    return a


def _tune_B(c: NormalFormCoeffs, k: int, rng) -> NormalFormCoeffs:
    a21, a13 = c.get_a(2, 1), c.get_a(1, 3)
    if k == 2:
        while 3 * c.get_a(0, 5) * a21 - 5 * a13 * a13 == 0:
            c = c.replace(a={(0, 5): _rq(rng, nonzero=True)})
        return c
    c = c.replace(a={(0, 5): 5 * a13 * a13 / (3 * a21)})
    for m in range(3, k):
        key = (0, 2 * m + 1)
        c0 = c.replace(a={key: ZERO})
        c1 = c.replace(a={key: ONE})
        x0 = solve_xi(c0, m).xi[m]
        x1 = solve_xi(c1, m).xi[m]
        c = c.replace(a={key: -x0 / (x1 - x0)})
    return c


def random_normal_form(
    rng: random.Random,
    family: str | None = None,
    k: int | None = None,
    degeneracy: str | None = None,
    order: int | None = None,
) -> NormalFormCoeffs:
    """An in-family normal form with an optional planted degeneracy."""
    if family is None:
        family, k = rng.choice(FAMILIES)
    if degeneracy is None:
        degeneracy = rng.choice(DEGENERACIES)
    n = blowup_n(family, k)
    K = order or max(required_order(family, k), n + 8)
    for _ in range(100):
        forced = _family_constraints(family, k, rng)
        a = {}
        for d in range(2, K + 1):
            for i in range(d + 1):
                j = d - i
                if (i, j) in ((1, 1), (0, 2)) or (d == 2 and (i, j) != (2, 0)):
                    continue
                if rng.random() < 0.6:
                    a[(i, j)] = _rq(rng)
        a.update(forced)
        if degeneracy != "inflection":
            a[(2, 0)] = _rq(rng, nonzero=True)
        b = {i: _rq(rng) for i in range(2, K + 1) if rng.random() < 0.7}
        c = _plant(NormalFormCoeffs(K, a, b), n, degeneracy, rng)
        if family == "B":
            c = _tune_B(c, k, rng)
        t = classify(c)
        if t.family == family and t.k == k:
            return c
    raise RuntimeError(f"could not build a {family}{k} germ with {degeneracy}")


def _plant(c: NormalFormCoeffs, n: int, degeneracy: str, rng):
    F = factorial(n + 1)
    a = c.get_a(n + 1, 1)
    if degeneracy == "none":
        return c
    if degeneracy == "inflection":
        c = c.replace(a={(2, 0): ZERO})
        return c.replace(b={2: ZERO}) if rng.random() < 0.3 else c
    if degeneracy == "b2zero":
        return c.replace(b={2: ZERO})
    a20 = c.get_a(2, 0)
    if degeneracy == "subparabolic":
        # a a20 = F b2 tan(theta0) with tan(theta0) = a b2 / (F a20)
        b2 = _rq(rng, nonzero=True)
        return c.replace(a={(n + 1, 1): F * a20 * a20 / (b2 * b2)}, b={2: b2})
    b2 = c.get_b(2)
    # Delta_1 = 0 at the parabolic direction
    c = c.replace(b={3: c.get_a(3, 0) * b2 / a20})
    if degeneracy == "ridge":
        return c
    # Delta_2 = 0 as well: Delta_2 is affine in b4 with slope -a C^2
    from .blowup import delta_polys

    C, S = F * a20, a * b2
    d0 = delta_polys(c.replace(b={4: ZERO}), n, C, S)[1]
    d1 = delta_polys(c.replace(b={4: ONE}), n, C, S)[1]
    return c.replace(b={4: -d0 / (d1 - d0)})


def corpus(size: int, seed: int, **kw) -> list:
    rng = random.Random(seed)
    return [random_normal_form(rng, **kw) for _ in range(size)]


# ---------------------------------------------------------------------------
# regular surfaces in Monge form


def random_monge(rng: random.Random, order: int = 7):
    """k2 != 0, a21 != 0 and a nonvanishing curvature of the parabolic curve."""
    from .parabolic import MongeCoeffs

    while True:
        k2 = _rq(rng, nonzero=True)
        a = {}
        for d in range(3, order + 1):
            for i in range(d + 1):
                if rng.random() < 0.6:
                    a[(i, d - i)] = _rq(rng)
        a[(2, 1)] = _rq(rng, nonzero=True)
        kind = rng.choice(("A2", "A3", "A4"))
        if kind != "A2":
            a[(3, 0)] = ZERO
        else:
            a[(3, 0)] = _rq(rng, nonzero=True)
        if kind == "A4":
            a[(4, 0)] = 3 * a[(2, 1)] ** 2 / k2
        m = MongeCoeffs(order, k2, a)
        if a[(3, 0)] == 0 and 2 * a[(2, 1)] ** 2 - m.get(4, 0) * k2 == 0:
            continue
        return m
