import math
import random
from math import factorial

import pytest

from singsurf.exact import Q
from singsurf.fixtures import G1, G2, random_normal_form
from singsurf.height import Direction3, classify_height
from singsurf.jets import Jet1, Jet2
from singsurf.mond import InsufficientJet, classify
from singsurf.normal_form import NormalFormCoeffs
from singsurf.parabolic import (
    HypothesisError,
    MongeCoeffs,
    branch_lead_coefficient,
    classify_by_torsion,
    closed_form_invariants,
    curve_invariants,
    frenet_at_zero,
    newton_polygon,
    regular_parabolic_check,
    sigma_jet,
    trace_branch,
)
from singsurf.suites import printed_sigma


def test_sigma_leading_terms():
    rng = random.Random(4)
    for _ in range(10):
        c = random_normal_form(rng, degeneracy="none")
        S = sigma_jet(c)
        a = c.get_a
        assert S[(2, 1)] == -Q(1, 2) * a(2, 0) * a(2, 1)
        assert S[(0, 3)] == Q(1, 2) * a(2, 0) * a(0, 3)
        assert S[(4, 0)] == Q(1, 4) * a(2, 1) ** 2 * c.get_b(2)
        for key, want in printed_sigma(c).items():
            assert S[key] == want


def test_sigma_boundary_expansions():
    rng = random.Random(8)
    for _ in range(10):
        c = random_normal_form(rng, degeneracy="none")
        n = classify(c).blowup_n
        S = sigma_jet(c)
        a, F = c.get_a(n + 1, 1), factorial(n + 1)
        on_v = S.restrict_v()  # u = 0
        assert on_v[1] == on_v[2] == 0 and on_v[3] == c.get_a(2, 0) * c.get_a(0, 3) / 2
        Sv = S.diff("v").restrict_u()  # v = 0
        assert all(Sv[d] == 0 for d in range(n + 1))
        assert Sv[n + 1] == -c.get_a(2, 0) * a / F


def test_newton_polygon():
    n = 2
    s = Jet2(8, {(2 * n + 2, 0): 1, (n + 1, 1): 1, (0, 3): 1, (4, 3): 1})
    assert newton_polygon(s) == [(0, 3), (n + 1, 1), (2 * n + 2, 0)]
    assert newton_polygon(Jet2.monomial(5, 2, 2)) == [(2, 2)]
    poly = newton_polygon(sigma_jet(G1))
    assert (0, 3) in poly and (2, 1) in poly
    with pytest.raises(ValueError):
        newton_polygon(Jet2.zero(3))


def test_branch_fixtures():
    b = trace_branch(G2, classify(G2), 5)
    assert b.series[2] == 0 and b.series[3] == 0
    b = trace_branch(G1, classify(G1), 5)
    assert b.series[2] == branch_lead_coefficient(G1, 1) == 1
    assert b.contact == 2


def test_branch_residual_vanishes():
    for c in (G1, G2):
        t = classify(c)
        b = trace_branch(c, t, 5)
        M = b.residual_order
        resid = sigma_jet(c).substitute_curve(Jet1.t(M), b.series.with_order(M))
        assert resid.is_zero() and M >= 5 + t.blowup_n + 1


@pytest.mark.parametrize("k", [1, 2, 3])
def test_contact_S_family(k):
    c = random_normal_form(random.Random(k), "S", k, "none")
    t = classify(c)
    b = trace_branch(c, t, c.order - k - 3)
    assert b.contact >= k + 1


def test_branch_rejects_inflection_and_short_jets():
    c = G2.replace(a={(2, 0): 0}, b={2: 1})
    with pytest.raises(HypothesisError):
        trace_branch(c, classify(c), 3)
    with pytest.raises(InsufficientJet):
        trace_branch(G2, classify(G2), 9)


def test_torsion_G2():
    inv = curve_invariants(G2, trace_branch(G2, classify(G2), 5))
    assert inv.tau0 == 0 and inv.tau0prime == -1
    assert classify_by_torsion(inv) == "A3"
    c = G2.replace(b={3: 1})
    inv = curve_invariants(c, trace_branch(c, classify(c), 5))
    assert inv.tau0 == -1 and classify_by_torsion(inv) == "A2"
    c = G2.replace(b={3: 0, 4: 0})
    inv = curve_invariants(c, trace_branch(c, classify(c), 5))
    assert classify_by_torsion(inv) == "A4plus"


def test_binormal_closed_form():
    for c in (G1, G2):
        inv = curve_invariants(c, trace_branch(c, classify(c), 5))
        a20, b2 = c.get_a(2, 0), c.get_b(2)
        r = math.hypot(float(a20), float(b2))
        assert inv.binormal0_unit == pytest.approx((0.0, -float(a20) / r, float(b2) / r), abs=1e-12)
        cf = closed_form_invariants(c, 1)
        assert (inv.tau0, inv.tau0prime) == (cf["tau0"], cf["tau0prime"])


def test_torsion_vs_height_along_binormal():
    rng = random.Random(21)
    for _ in range(12):
        c = random_normal_form(rng, degeneracy=rng.choice(["none", "ridge", "ridge2"]))
        t = classify(c)
        inv = curve_invariants(c, trace_branch(c, t, 5))
        label = classify_by_torsion(inv)
        for v in (Direction3(*inv.binormal0), -Direction3(*inv.binormal0)):
            assert classify_height(c, v).atype == label


def test_frenet_textbook_curves():
    t = Jet1.t(7)
    zero = Jet1.zero(7)
    inv = frenet_at_zero((t, t * t, zero))
    assert inv.tau0 == 0 and inv.tau0prime == 0
    # cubic (t, t^2, t^3): tau = 3 / (1 + 9t^2 + 9t^4) at 0 is 3, tau'(0) = 0
    inv = frenet_at_zero((t, t * t, t ** 3))
    assert inv.tau0 == 3 and inv.tau0prime == 0


def test_monge_examples():
    rep = regular_parabolic_check(MongeCoeffs(7, 1, {(3, 0): 1, (2, 1): 1}))
    assert rep.label == "A2" and not rep.binormal_is_normal
    rep = regular_parabolic_check(MongeCoeffs(7, 1, {(2, 1): 1, (4, 0): 1}))
    assert rep.label == "A3" and rep.tau0 == 0
    assert rep.tau0prime_printed == 10 == rep.tau0prime and rep.tau_certifies_A3
    rep = regular_parabolic_check(MongeCoeffs(7, 1, {(2, 1): 1, (4, 0): 3}))
    assert rep.label == "A4plus" and rep.tau0prime == 0


def test_monge_hypotheses():
    with pytest.raises(HypothesisError):
        regular_parabolic_check(MongeCoeffs(7, 1, {(2, 1): 1, (4, 0): 2}))
    with pytest.raises(HypothesisError):
        regular_parabolic_check(MongeCoeffs(7, 0, {(2, 1): 1}))
    with pytest.raises(HypothesisError):
        regular_parabolic_check(MongeCoeffs(7, 1, {(4, 0): 1}))


def test_sigma_against_symbolic_oracle():
    import sympy as sp

    u, v = sp.symbols("u v")
    A = {(i, j): sp.Symbol(f"a{i}{j}") for i in range(5) for j in range(5) if 2 <= i + j <= 4 and (i, j) not in ((0, 2), (1, 1))}
    b2, b3, b4 = sp.symbols("b2 b3 b4")
    p = v**2 / 2 + b2 * u**2 / 2 + b3 * u**3 / 6 + b4 * u**4 / 24
    q = sum(val * u**i * v**j / (sp.factorial(i) * sp.factorial(j)) for (i, j), val in A.items())
    cr = sp.Matrix([1, sp.diff(p, u), sp.diff(q, u)]).cross(sp.Matrix([0, sp.diff(p, v), sp.diff(q, v)]))
    sec = [sp.Matrix([0, sp.diff(p, x, y), sp.diff(q, x, y)]).dot(cr) for x, y in ((u, u), (u, v), (v, v))]
    S = sp.Poly(sp.expand(sec[0] * sec[2] - sec[1] ** 2), u, v)
    c31 = S.coeff_monomial(u**3 * v)
    want = -sp.Rational(1, 6) * (A[2, 0] * A[3, 1] + 3 * A[3, 0] * A[2, 1] - 3 * A[2, 1] * A[1, 2] * b2)
    assert sp.expand(c31 - want) == 0
    # the a_13 reading of this term is not an identity
    misread = want.subs(A[3, 1], A[1, 3])
    assert sp.expand(c31 - misread) != 0
    assert S.coeff_monomial(u**2 * v**2) == -sp.Rational(3, 2) * A[2, 1] ** 2
