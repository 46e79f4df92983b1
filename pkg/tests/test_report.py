import json

import hypothesis.strategies as st
import pytest
from hypothesis import given

from conftest import jets, rationals
from singsurf.exact import Q, Surd
from singsurf.fixtures import G1, G2
from singsurf.jets import MapGerm
from singsurf.normal_form import NormalFormCoeffs
from singsurf.pipeline import analyze
from singsurf.report import (
    DocumentError,
    GermDocument,
    ReportDocument,
    decode_exact,
    encode_exact,
    parse_germ_document,
)


@st.composite
def nf_docs(draw):
    K = draw(st.integers(3, 7))
    a_keys = [(i, d - i) for d in range(2, K + 1) for i in range(d + 1) if d > 2 or i == 2]
    a = draw(st.dictionaries(st.sampled_from(a_keys), rationals.filter(bool), max_size=6))
    b = draw(st.dictionaries(st.integers(2, K), rationals.filter(bool), max_size=3))
    label = draw(st.none() | st.text(max_size=5))
    return GermDocument.from_coeffs(NormalFormCoeffs(K, a, b), label)


@given(nf_docs())
def test_normal_form_round_trip(doc):
    back = parse_germ_document(doc.render())
    assert back == doc
    assert back.render() == doc.render()


@given(jets(order=4, min_degree=1), jets(order=4, min_degree=1), jets(order=4, min_degree=1))
def test_raw_round_trip(a, b, c):
    doc = GermDocument.from_germ(MapGerm((a, b, c)))
    back = parse_germ_document(doc.render())
    assert back.germ() == doc.germ()


def test_exact_encoding():
    assert encode_exact(Q(-3, 4)) == [-3, 4]
    s = Surd.make({6: Q(3, 2), 1: Q(1)})
    assert decode_exact(encode_exact(s)) == s
    with pytest.raises(DocumentError):
        decode_exact([1, 0])


def _doc(**kw):
    base = {"format": "singsurf-germ", "mode": "normal_form", "order": 4, "a": [[2, 0, 1, 1]], "b": []}
    base.update(kw)
    return json.dumps(base)


@pytest.mark.parametrize("text, where", [
    (_doc(a=[[2, 0, 1, 1], [2, 0, 2, 1]]), "$.a[1]"),
    (_doc(a=[[2, 0, 1, 0]]), "$.a[0]"),
    (_doc(a=[[4, 1, 1, 1]]), "$.a[0]"),
    (_doc(b=[[2, 1, 1, 1]]), "$.b[0]"),
    (_doc(order=0), "$.order"),
    (_doc(mode="weird"), "$.mode"),
    (_doc(extra=1), "$"),
    (_doc(format="other"), "$.format"),
    (_doc(a=[[1, 1, 1, 1]]), "$"),
    (_doc(a=[[2, 0, 1.5, 1]]), "$.a[0]"),
])
def test_parse_errors_are_located(text, where):
    with pytest.raises(DocumentError) as exc:
        parse_germ_document(text)
    assert exc.value.where == where


def test_truncated_json_has_line_and_column():
    text = GermDocument.from_coeffs(G1).render()[:30]
    with pytest.raises(DocumentError) as exc:
        parse_germ_document(text)
    assert exc.value.where.startswith("line ")


def test_raw_constant_term_rejected():
    text = json.dumps({"mode": "raw", "order": 2, "components": [[[0, 0, 1, 1]], [], []]})
    with pytest.raises(DocumentError):
        parse_germ_document(text)


def test_report_round_trip():
    data = analyze(G2, oracle=False)
    rep = ReportDocument(data)
    text = rep.render()
    back = ReportDocument.parse(text)
    assert back == rep and back.render() == text
    with pytest.raises(DocumentError):
        ReportDocument.parse(GermDocument.from_coeffs(G2).render())


def test_report_deterministic():
    a = ReportDocument(analyze(G1, thetas=[], directions=[(Q(0), Q(1))])).render()
    b = ReportDocument(analyze(G1, thetas=[], directions=[(Q(0), Q(1))])).render()
    assert a == b
