"""End-to-end analysis of one germ, producing plain report data."""

from __future__ import annotations

import math

from . import blowup as bg
from .blowup import ThetaDirection
from .dual import dual_label
from .height import Direction3, ade_recognize, classify_height, classify_height_geometric, height_jet
from .mond import AType, InsufficientJet, classify, out_of_family
from .normal_form import NormalFormCoeffs, ReductionError, reduce, singular_point_class
from .oracle import OracleError, blowup_limit, branch_numeric, torsion_numeric
from .parabolic import HypothesisError, classify_by_torsion, curve_invariants, trace_branch
from .report import GermDocument, encode_exact


def load(doc: GermDocument):
    """(coeffs or None, AType); raw germs are reduced first."""
    if doc.mode == "normal_form":
        c = doc.coeffs()
    else:
        try:
            c = reduce(doc.germ()).coeffs
        except ReductionError as exc:
            return None, out_of_family(exc.reason)
    return c, classify(c)


def theta_info(th: ThetaDirection) -> dict:
    return {
        "degrees": th.degrees,
        "exact": {"C": encode_exact(th.C), "S": encode_exact(th.S)},
        "approximate": th.approximate,
    }


def _height_info(h) -> dict:
    return {"atype": h.atype, "versal_H": h.versal_H, "versal_Hext": h.versal_Hext, "route": h.route, "case": h.case}


def _rel_err(est: float, target: float) -> float:
    d = abs(est - target)
    return d / abs(target) if abs(target) > 1 else d


def theta_report(c: NormalFormCoeffs, t: AType, th: ThetaDirection, oracle: bool = True) -> dict:
    n = t.blowup_n
    nl = bg.leading_normal(c, n, th)
    out = {
        "theta": theta_info(th),
        "normal": {"exact": [encode_exact(x) for x in nl.direction], "unit": list(nl.unit)},
        "k10": bg.k10(c, n, th),
    }
    if th.cos_zero:
        undef = "undefined_at_pi_half"
        out.update(point_type=undef, ridge=undef, subparabolic=undef, deltas=undef, k20=undef, gauss_lead=undef)
    else:
        d = bg.deltas(c, n, th)
        out.update(
            point_type=bg.point_type(c, n, th),
            ridge=bg.ridge_order(c, n, th),
            subparabolic=bg.subparabolic(c, n, th),
            deltas={"exact": [encode_exact(x) for x in d.exact], "values": list(d.values)},
            k20=bg.k20(c, n, th),
            gauss_lead=bg.gauss_lead(c, n, th),
        )
    v = Direction3(*nl.direction)
    out["height"] = {
        "coefficient": _height_info(classify_height(c, v)),
        "geometric": _height_info(classify_height_geometric(c, t, th)),
        "ade": ade_recognize(height_jet(c, v)),
    }
    try:
        out["dual_label"] = str(dual_label(c, t, th))
    except HypothesisError as exc:
        out["dual_label"] = f"hypotheses_violated({exc})"
    if oracle and not th.cos_zero:
        res = {}
        try:
            est = blowup_limit(c, n, th, "normal").value
            res["normal"] = max(abs(a - b) for a, b in zip(est, nl.unit))
            res["k10"] = _rel_err(blowup_limit(c, n, th, "k10").value, out["k10"])
            k2 = blowup_limit(c, n, th, "k20")
            res["k20"] = _rel_err(k2.value, out["k20"])
            res["k20_slope"] = k2.order_estimate
            res["gauss_scaled"] = _rel_err(blowup_limit(c, n, th, "gauss_scaled").value, out["gauss_lead"])
        except OracleError as exc:
            res["error"] = str(exc)
        out["oracle_residuals"] = res
    return out


def branch_report(c: NormalFormCoeffs, t: AType, oracle: bool = True) -> dict:
    if c.get_a(2, 0) == 0:
        return {"status": "not_applicable(inflection)"}
    n = t.blowup_n
    N = min(5, c.order - n - 3)
    if N < n + 1:
        return {"status": f"insufficient_jet(needs order >= {n + 4 + 5})"}
    b = trace_branch(c, t, N)
    out = {
        "status": "ok",
        "series": [[d, encode_exact(val)] for d, val in sorted(b.series.items())],
        "through_degree": N,
        "contact": b.contact,
        "contact_is_lower_bound": not b.exact_contact,
        "residual_vanishes_through": b.residual_order,
    }
    if N < 5:
        out["torsion"] = f"insufficient_jet(needs order >= {n + 8})"
        return out
    inv = curve_invariants(c, b)
    tor = {
        "binormal0": [encode_exact(x) for x in inv.binormal0],
        "tau0": encode_exact(inv.tau0),
        "tau0prime": encode_exact(inv.tau0prime),
        "height_type": classify_by_torsion(inv),
    }
    if oracle:
        try:
            t0, t1 = torsion_numeric_branch(c, n)
            tor["oracle_residuals"] = {"tau0": _rel_err(t0, float(inv.tau0)), "tau0prime": _rel_err(t1, float(inv.tau0prime))}
        except OracleError as exc:
            tor["oracle_residuals"] = {"error": str(exc)}
    out["torsion"] = tor
    return out


def torsion_numeric_branch(c: NormalFormCoeffs, n: int):
    """Numeric (tau(0), tau'(0)) of the branch followed as a zero set of Sigma."""
    return torsion_numeric(branch_numeric(c, n))


def parse_theta(spec: str) -> ThetaDirection:
    return ThetaDirection.from_degrees(float(spec))


def analyze(c: NormalFormCoeffs, thetas="auto", directions=(), oracle: bool = True) -> dict:
    t = classify(c)
    data = {
        "atype": t.label,
        "singular_point": str(singular_point_class(c)),
        "normal_form": GermDocument.from_coeffs(c).to_obj(),
    }
    if not t.in_family:
        return data
    n = t.blowup_n
    data["blowup_n"] = n
    ps = bg.parabolic_thetas(c, n)
    data["parabolic"] = {"thetas": [theta_info(th) for th in ps.thetas], "all_theta": ps.all_theta, "note": ps.note}
    if thetas == "auto":
        ths = list(ps.thetas) if not ps.all_theta else [ThetaDirection.from_degrees(0)]
    else:
        ths = list(thetas)
    data["directions"] = [theta_report(c, t, th, oracle) for th in ths]
    hs = []
    for y, z in directions:
        v = Direction3(0, y, z)
        try:
            h = classify_height(c, v)
            hs.append({"direction": [encode_exact(x) for x in v.components], **_height_info(h), "ade": ade_recognize(height_jet(c, v))})
        except InsufficientJet as exc:
            hs.append({"direction": [encode_exact(x) for x in v.components], "error": str(exc)})
    if hs:
        data["heights"] = hs
    data["branch"] = branch_report(c, t, oracle)
    return data
