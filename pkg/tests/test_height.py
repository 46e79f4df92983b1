import pytest

from singsurf.blowup import ThetaDirection
from singsurf.exact import Q
from singsurf.fixtures import G1, G2, corpus
from singsurf.height import (
    Direction3,
    ade_recognize,
    classify_height,
    classify_height_geometric,
    height_jet,
    is_versal_by_matrix,
    versality_matrix_rank,
)
from singsurf.jets import Jet2
from singsurf.mond import classify
from singsurf.normal_form import NormalFormCoeffs
from singsurf.suites import suite_ade_oracle, suite_route_agreement, suite_versality

K = 6
u, v = Jet2.u(K), Jet2.v(K)


def test_height_jet_examples():
    assert height_jet(G2, Direction3(1, 0, 0)) == Jet2.u(G2.order)
    expect = Jet2(G2.order, {(0, 2): Q(-1, 2), (4, 0): Q(-1, 24)})
    assert height_jet(G2, Direction3(0, -1, 0)) == expect
    assert height_jet(G1, Direction3(0, 0, 1)) == G1.q_jet()
    assert classify_height(G2, Direction3(1, 0, 0)).atype == "regular"


def test_classify_height_examples():
    h = classify_height(G2, Direction3(0, -1, 0))
    assert (h.atype, h.versal_H, h.versal_Hext) == ("A3", True, True)
    assert classify_height(G1, Direction3(0, 1, 1)).atype == "A1"
    c = NormalFormCoeffs(6, {(2, 1): 2, (0, 3): 1}, {2: 1})
    h = classify_height(c, Direction3(0, 0, 1))
    assert h.atype == "D4plus" and not h.versal_H


def test_geometric_route_examples():
    t = classify(G2)
    h = classify_height_geometric(G2, t, ThetaDirection.from_degrees(0))
    assert (h.atype, h.versal_H) == ("A3", True)
    assert classify_height_geometric(G1, classify(G1), ThetaDirection.from_degrees(0)).atype == "A1"
    h = classify_height_geometric(G1, classify(G1), ThetaDirection.pi_half())
    assert (h.atype, h.versal_H) == ("A2", False)


def test_versality_matrix_examples():
    r, full = versality_matrix_rank(G2, Direction3(0, -1, 0))
    assert r == full
    assert is_versal_by_matrix(G1, Direction3(0, 1, 1))
    # case 3b: v = (0, 0, 1), a_03 = 0, a20 a04 - 3 a12^2 != 0
    c = NormalFormCoeffs(7, {(2, 0): 1, (2, 1): 2, (0, 4): 1, (0, 5): 1}, {})
    h = classify_height(c, Direction3(0, 0, 1))
    assert h.atype == "A3" and not h.versal_H
    r, full = versality_matrix_rank(c, Direction3(0, 0, 1))
    assert r < full


def test_versality_matrix_rejects_A4():
    c = G2.replace(b={4: 0})
    with pytest.raises(ValueError):
        versality_matrix_rank(c, Direction3(0, -1, 0))


@pytest.mark.parametrize("f, want", [
    ((v * v).scale(Q(1, 2)) + (u ** 4).scale(Q(1, 24)), "A3"),
    ((v * v).scale(Q(1, 2)) + (u ** 3).scale(Q(1, 6)) + (u ** 4).scale(Q(1, 24)), "A2"),
    ((v * v).scale(Q(1, 2)) + u * u * v, "A3"),
    (u * u + v * v, "A1"),
    (u + v * v, "regular"),
    (u ** 3 + v ** 3, "D4plus"),
    ((v + u * u) ** 2, "needs_higher_jet"),
])
def test_ade_examples(f, want):
    assert ade_recognize(f) == want


def test_corpus_properties():
    germs = [G1, G2] + corpus(25, 11)
    for suite in (suite_route_agreement, suite_ade_oracle, suite_versality):
        res = suite(germs)
        assert res.checks > 0 and res.passed, res.failures[:2]


def test_extended_parity():
    for c in [G1, G2] + corpus(10, 5):
        for y, z in ((0, 1), (1, 0), (1, 1), (-2, 1)):
            h = classify_height(c, Direction3(0, y, z))
            assert h.versal_H == h.versal_Hext
