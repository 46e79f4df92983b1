import math

import pytest
from hypothesis import given
import hypothesis.strategies as st

from singsurf.blowup import (
    ThetaDirection,
    calA,
    deltas,
    gauss_lead,
    k10,
    k10_numerator,
    k20,
    leading_normal,
    parabolic_thetas,
    point_type,
    ridge_order,
    subparabolic,
)
from singsurf.exact import Q
from singsurf.fixtures import G1, G2
from singsurf.normal_form import NormalFormCoeffs

DEG = st.sampled_from([-75, -60, -45, -30, -10, 0, 15, 30, 45, 60, 80, 90])


def th(d):
    return ThetaDirection.from_degrees(d)


@given(DEG)
def test_calA_G1_constant(d):
    assert math.isclose(calA(G1, 1, th(d)).value, 2.0)


def test_calA_endpoints():
    assert calA(G2, 1, th(0)).value == 2.0
    assert calA(G2, 1, ThetaDirection.pi_half()).value == 2.0
    c = NormalFormCoeffs(6, {(2, 0): 1, (0, 3): 1, (3, 1): 5}, {})
    assert calA(c, 2, ThetaDirection.pi_half()).value == 6.0
    assert calA(c, 2, th(0)).value == 5.0


@given(DEG)
def test_normal_unit_and_G1_form(d):
    t = th(d)
    nl = leading_normal(G1, 1, t)
    cf, sf = t.unit()
    assert nl.unit == pytest.approx((0.0, -cf, sf), abs=1e-15)
    y, z = nl.direction[1:]
    # squared length is exactly A^2 at the exact representative
    assert y * y + z * z == calA(G1, 1, t).square


def test_normal_examples():
    assert leading_normal(G1, 1, ThetaDirection.pi_half()).unit == (0.0, 0.0, 1.0)
    assert leading_normal(G2, 1, th(0)).unit == (0.0, -1.0, 0.0)


@given(DEG)
def test_k10_fixtures(d):
    t = th(d)
    cf, sf = t.unit()
    assert math.isclose(k10(G1, 1, t), sf - cf, abs_tol=1e-14)
    assert math.isclose(k10(G2, 1, t), sf, abs_tol=1e-14)


def test_k10_inflection_at_pi_half():
    c = NormalFormCoeffs(5, {(2, 1): 2, (0, 3): 1}, {2: 1})
    assert k10(c, 1, ThetaDirection.pi_half()) == 0


def test_k20():
    assert math.isclose(k20(G1, 1, th(0)), -1.0)
    with pytest.raises(ZeroDivisionError):
        k20(G1, 1, ThetaDirection.pi_half())
    grow = [abs(k20(G1, 1, th(d))) for d in (80, 89, 89.9, 89.99)]
    assert grow == sorted(grow) and grow[-1] > 5000


@given(st.integers(-6, 6).filter(bool), st.sampled_from([-80, -30, 0, 20, 70]), st.integers(1, 3))
def test_k20_sign(a, d, n):
    c = NormalFormCoeffs(n + 3, {(2, 0): 1, (0, 3): 1, (n + 1, 1): a}, {})
    t = th(d)
    cf, _ = t.unit()
    assert math.copysign(1, k20(c, n, t)) == -math.copysign(1, a * cf ** (2 * n - 1))


def test_point_types_G1():
    assert point_type(G1, 1, th(0)) == "elliptic"
    assert point_type(G1, 1, th(45)) == "parabolic"
    assert point_type(G1, 1, th(60)) == "hyperbolic"
    assert math.isclose(gauss_lead(G1, 1, th(0)), 1.0)


@given(st.integers(-3, 3), st.integers(-3, 3), st.sampled_from([-75, -30, 0, 10, 45, 60]))
def test_parabolic_iff_k10_zero(b2, a20, d):
    c = NormalFormCoeffs(5, {(2, 0): a20, (2, 1): 2, (0, 3): 1}, {2: b2})
    for t in [th(d)] + list(parabolic_thetas(c, 1).thetas):
        if t.cos_zero:
            continue
        assert (point_type(c, 1, t) == "parabolic") == (k10_numerator(c, 1, t) == 0)


def test_deltas_G2():
    d = deltas(G2, 1, th(0))
    assert list(d.exact) == [0, -2, 2]
    assert ridge_order(G2, 1, th(0)) == "first_order"
    assert not subparabolic(G2, 1, th(0))
    assert ridge_order(G2.replace(b={3: 1}), 1, th(0)) == "not_ridge"
    assert ridge_order(G2.replace(b={4: 0}), 1, th(0)) == "higher_order"


def test_deltas_G1_subparabolic():
    t = th(45)
    assert deltas(G1, 1, t).exact[2] == 0
    assert subparabolic(G1, 1, t)


def test_delta1_identically_zero():
    c = G1.replace(a={(3, 0): 0}, b={3: 0})
    for d in (-60, 0, 30, 70):
        assert deltas(c, 1, th(d)).exact[0] == 0


def test_deltas_undefined_at_pi_half():
    with pytest.raises(ValueError):
        deltas(G1, 1, ThetaDirection.pi_half())


def test_parabolic_thetas():
    ps = parabolic_thetas(G1, 1)
    assert len(ps.thetas) == 1 and ps.thetas[0].tan() == 1
    assert math.isclose(ps.thetas[0].degrees, 45.0)
    assert parabolic_thetas(G2, 1).thetas[0].tan() == 0
    c = NormalFormCoeffs(5, {(2, 1): 2, (0, 3): 1}, {2: 1})
    ps = parabolic_thetas(c, 1)
    assert ps.thetas[0].cos_zero
    c = NormalFormCoeffs(5, {(2, 1): 2, (0, 3): 1}, {})
    assert parabolic_thetas(c, 1).all_theta


def test_theta_representation():
    assert ThetaDirection.from_degrees(90).cos_zero
    assert ThetaDirection.from_degrees(-90).cos_zero
    t = ThetaDirection.from_tan(Q(3, 4))
    assert t.C * t.C + t.S * t.S == 1
    assert ThetaDirection.from_degrees(17).approximate
