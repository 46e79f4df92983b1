import random

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from singsurf.blowup import parabolic_thetas
from singsurf.dual import dual_label
from singsurf.exact import Q
from singsurf.fixtures import G1, G2, random_normal_form, random_rigid_transform
from singsurf.height import classify_height_geometric
from singsurf.jets import Jet2, MapGerm
from singsurf.mond import classify
from singsurf.normal_form import (
    FLIPS,
    NormalFormCoeffs,
    ReductionError,
    apply_flip,
    corank_check,
    reduce,
    singular_point_class,
)

K = 6
u, v = Jet2.u(K), Jet2.v(K)


def germ(*comps):
    return MapGerm(tuple(comps))


def test_corank_examples():
    info = corank_check(germ(u, v * v, u * v))
    assert info.corank == 1 and info.null_direction == (0, 1)
    assert corank_check(germ(u, v, Jet2.zero(K))).corank == 0
    assert corank_check(germ(u * u, v * v, u * v)).corank == 2


def test_reduce_identity_form():
    g = germ(u, (v * v).scale(Q(1, 2)), (u * u).scale(Q(1, 2)))
    c = reduce(g).coeffs
    assert c.a == {(2, 0): 1} and c.b == {}


def test_reduce_mond_B2_shape():
    c = reduce(germ(u, v * v, u * u * v + v ** 5)).coeffs
    assert c.get_a(2, 1) != 0 and c.get_a(0, 3) == 0 and c.get_a(0, 5) != 0


@pytest.mark.parametrize("g, reason", [
    (germ(u, v, Jet2.zero(K)), "corank 0"),
    (germ(u * u, v * v, u * v), "corank 2"),
])
def test_reduce_rejects_corank(g, reason):
    with pytest.raises(ReductionError) as exc:
        reduce(g)
    assert reason in exc.value.reason


def test_reduce_rejects_cross_cap():
    with pytest.raises(ReductionError) as exc:
        reduce(germ(u, v * v, u * v))
    assert exc.value.orbit is not None


def test_zero_jet_rejected():
    with pytest.raises(ReductionError):
        reduce(germ(Jet2.zero(K), Jet2.zero(K), Jet2.zero(K)))


def test_singular_point_classes():
    assert str(singular_point_class(NormalFormCoeffs(4, {(2, 0): 1}, {}))) == "hyperbolic"
    assert str(singular_point_class(NormalFormCoeffs(4, {(2, 1): 2}, {2: 1}))) == "inflection"
    assert str(singular_point_class(NormalFormCoeffs(4, {(2, 1): 2}, {}))) == "degenerate_inflection"


def test_forbidden_monomials_rejected():
    with pytest.raises(ValueError):
        NormalFormCoeffs(4, {(1, 1): 1}, {})
    with pytest.raises(ValueError):
        NormalFormCoeffs(4, {(0, 2): 1}, {})


def test_round_trip_through_reconstruct():
    for c in (G1, G2):
        assert NormalFormCoeffs.from_germ(c.reconstruct()) == c


def _structural(red, g):
    su, sv = red.source_change
    h = g.compose(su, sv)
    rows = [sum((c.scale(x) for c, x in zip(h.components, row)), Jet2.zero(h.order)) for row in red.rotation]
    assert tuple(rows) == red.reduced_components
    s, Y, Z = red.reduced_components
    assert s == Jet2.u(h.order)
    assert all(j == 0 or (i, j) == (0, 2) for (i, j) in Y.keys())
    assert Z[(0, 2)] == 0 and Z[(1, 1)] == 0


def _labels(c):
    t = classify(c)
    ths = parabolic_thetas(c, t.blowup_n).thetas
    out = [t.label]
    for th in ths:
        out.append(classify_height_geometric(c, t, th).key())
        if c.get_a(2, 0) != 0:
            out.append(str(dual_label(c, t, th)))
    return out


@settings(max_examples=15)
@given(st.integers(0, 10 ** 6))
def test_invariance_under_rigid_motions(seed):
    rng = random.Random(seed)
    c = random_normal_form(rng, family="S", k=1, order=7)
    g = random_rigid_transform(c.reconstruct(), rng)
    red = reduce(g)
    _structural(red, g)
    assert _labels(red.coeffs) == _labels(c)


def test_idempotent_at_label_level():
    for c in (G1, G2):
        once = reduce(c.reconstruct()).coeffs
        twice = reduce(once.reconstruct()).coeffs
        assert _labels(once) == _labels(twice) == _labels(c)


def test_flips_preserve_labels():
    for flip in FLIPS:
        assert classify(apply_flip(G2, flip)).family == "S"
