"""Germ documents, report documents and their JSON encoding.

Exact numbers are written as ``[num, den]``; surds as
``{"surd": [[radicand, num, den], ...]}``.  Floats appear only in report
fields that are numeric by nature (oracle estimates, unit vectors).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .exact import Q, Surd
from .jets import Jet2, MapGerm
from .normal_form import NormalFormCoeffs

FORMAT = "singsurf-germ"
REPORT_FORMAT = "singsurf-report"


class DocumentError(ValueError):
    """Malformed input; ``where`` locates the problem (line:col or a JSON path)."""

    def __init__(self, msg: str, where: str = ""):
        super().__init__(f"{where}: {msg}" if where else msg)
        self.where = where


# ---------------------------------------------------------------------------
# exact scalars


def encode_exact(x):
    if isinstance(x, Surd):
        return {"surd": [[int(r), int(c.numerator), int(c.denominator)] for r, c in sorted(x.terms.items())]}
    q = Q(x)
    return [int(q.numerator), int(q.denominator)]


def _int(x, where):
    if isinstance(x, bool) or not isinstance(x, int):
        raise DocumentError(f"expected an integer, got {json.dumps(x)}", where)
    return x


def _frac(num, den, where):
    num, den = _int(num, where), _int(den, where)
    if den == 0:
        raise DocumentError("zero denominator", where)
    return Q(num, den)


def decode_exact(obj, where: str = ""):
    if isinstance(obj, list) and len(obj) == 2:
        return _frac(obj[0], obj[1], where)
    if isinstance(obj, dict) and set(obj) == {"surd"} and isinstance(obj["surd"], list):
        terms = {}
        for k, t in enumerate(obj["surd"]):
            w = f"{where}.surd[{k}]"
            if not (isinstance(t, list) and len(t) == 3):
                raise DocumentError("surd term must be [radicand, num, den]", w)
            r = _int(t[0], w)
            if r < 1 or r in terms:
                raise DocumentError("bad or repeated radicand", w)
            terms[r] = _frac(t[1], t[2], w)
        return Surd.make(terms)
    raise DocumentError(f"expected [num, den] or a surd, got {json.dumps(obj)}", where)


# ---------------------------------------------------------------------------
# germ documents


@dataclass
class GermDocument:
    mode: str  # raw or normal_form
    order: int
    a: dict = field(default_factory=dict)
    b: dict = field(default_factory=dict)
    components: tuple = ()
    label: str | None = None

    # conversion ---------------------------------------------------------
    @classmethod
    def from_coeffs(cls, c: NormalFormCoeffs, label: str | None = None) -> "GermDocument":
        return cls("normal_form", c.order, dict(c.a), dict(c.b), (), label)

    @classmethod
    def from_germ(cls, g: MapGerm, label: str | None = None) -> "GermDocument":
        comps = tuple(dict(comp.items()) for comp in g.components)
        return cls("raw", g.order, components=comps, label=label)

    def coeffs(self) -> NormalFormCoeffs:
        if self.mode != "normal_form":
            raise ValueError("not a normal-form document")
        return NormalFormCoeffs(self.order, self.a, self.b)

    def germ(self) -> MapGerm:
        if self.mode == "normal_form":
            return self.coeffs().reconstruct()
        return MapGerm(tuple(Jet2(self.order, comp) for comp in self.components))

    # JSON -----------------------------------------------------------------
    def to_obj(self) -> dict:
        def entries(d, two):
            out = []
            for key in sorted(d):
                i, j = key if two else (key, 0)
                val = encode_exact(d[key])
                out.append([i, j] + val if isinstance(val, list) else [i, j, val])
            return out

        obj = {"format": FORMAT, "mode": self.mode, "order": self.order}
        if self.mode == "normal_form":
            obj["a"] = entries(self.a, True)
            obj["b"] = entries(self.b, False)
        else:
            obj["components"] = [entries(comp, True) for comp in self.components]
        if self.label is not None:
            obj["label"] = self.label
        return obj

    def render(self) -> str:
        return json.dumps(self.to_obj(), indent=1, sort_keys=True) + "\n"


def _entries(lst, K: int, where: str, single: bool = False) -> dict:
    if not isinstance(lst, list):
        raise DocumentError("expected a list of coefficient entries", where)
    out = {}
    for k, e in enumerate(lst):
        w = f"{where}[{k}]"
        if not isinstance(e, list) or len(e) not in (3, 4):
            raise DocumentError("entry must be [i, j, num, den] or [i, j, surd]", w)
        i, j = _int(e[0], w), _int(e[1], w)
        if i < 0 or j < 0 or i + j > K:
            raise DocumentError(f"monomial ({i}, {j}) outside the order {K}", w)
        if single and j != 0:
            raise DocumentError("b entries must have j = 0", w)
        val = _frac(e[2], e[3], w) if len(e) == 4 else decode_exact(e[2], w)
        key = i if single else (i, j)
        if key in out:
            raise DocumentError(f"duplicate entry for ({i}, {j})", w)
        out[key] = val
    return out


def parse_germ_document(text: str) -> GermDocument:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(exc.msg, f"line {exc.lineno}:{exc.colno}") from None
    if not isinstance(obj, dict):
        raise DocumentError("top level must be an object", "$")
    known = {"format", "mode", "order", "a", "b", "components", "label"}
    extra = set(obj) - known
    if extra:
        raise DocumentError(f"unknown fields {sorted(extra)}", "$")
    if obj.get("format", FORMAT) != FORMAT:
        raise DocumentError(f"format must be {FORMAT!r}", "$.format")
    mode = obj.get("mode")
    if mode not in ("raw", "normal_form"):
        raise DocumentError("mode must be 'raw' or 'normal_form'", "$.mode")
    if "order" not in obj:
        raise DocumentError("missing order", "$")
    K = _int(obj["order"], "$.order")
    if K < 1:
        raise DocumentError("order must be positive", "$.order")
    label = obj.get("label")
    if label is not None and not isinstance(label, str):
        raise DocumentError("label must be a string", "$.label")
    if mode == "normal_form":
        a = _entries(obj.get("a", []), K, "$.a")
        b = _entries(obj.get("b", []), K, "$.b", single=True)
        doc = GermDocument(mode, K, a, b, (), label)
        try:
            doc.coeffs()
        except ValueError as exc:
            raise DocumentError(str(exc), "$") from None
        return doc
    comps = obj.get("components")
    if not isinstance(comps, list) or len(comps) != 3:
        raise DocumentError("raw mode needs three component lists", "$.components")
    parsed = tuple(_entries(cp, K, f"$.components[{k}]") for k, cp in enumerate(comps))
    for k, cp in enumerate(parsed):
        if cp.get((0, 0), 0) != 0:
            raise DocumentError("germ must map 0 to 0", f"$.components[{k}]")
    return GermDocument(mode, K, components=parsed, label=label)


# ---------------------------------------------------------------------------
# report documents


def _clean(x):
    """JSON-safe copy: non-finite floats become strings."""
    if isinstance(x, float):
        return x if math.isfinite(x) else repr(x)
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    return x


@dataclass
class ReportDocument:
    data: dict

    def render(self) -> str:
        obj = {"format": REPORT_FORMAT, **_clean(self.data)}
        return json.dumps(obj, indent=1, sort_keys=True) + "\n"

    @classmethod
    def parse(cls, text: str) -> "ReportDocument":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DocumentError(exc.msg, f"line {exc.lineno}:{exc.colno}") from None
        if not isinstance(obj, dict) or obj.pop("format", None) != REPORT_FORMAT:
            raise DocumentError("not a report document", "$")
        return cls(obj)

    def __eq__(self, other):
        return isinstance(other, ReportDocument) and _clean(self.data) == _clean(other.data)
