"""Verification suites shared by the CLI and the acceptance tests.

Every suite returns a ``SuiteResult``; a failure carries the offending germ
as a serialized germ document so it can be replayed with ``singsurf``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from math import factorial

from . import blowup as bg
from .blowup import ThetaDirection
from .dual import dual_label
from .exact import Q, ZERO
from .fixtures import (
    G1,
    G2,
    corpus,
    random_A_transform,
    random_monge,
    random_normal_form,
    table_forms,
)
from .height import (
    Direction3,
    ade_matches,
    ade_recognize,
    classify_height,
    classify_height_geometric,
    height_jet,
    versality_matrix_rank,
)
from .mond import AType, classify
from .normal_form import NormalFormCoeffs, reduce
from .oracle import blowup_limit, monge_parabolic_numeric, torsion_numeric
from .parabolic import (
    closed_form_invariants,
    classify_by_torsion,
    curve_invariants,
    regular_parabolic_check,
    sigma_jet,
    trace_branch,
)
from .pipeline import theta_info, torsion_numeric_branch
from .report import GermDocument, encode_exact


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, germ=None, **detail) -> bool:
        self.checks += 1
        if not ok:
            rec = dict(detail)
            if germ is not None:
                doc = GermDocument.from_coeffs(germ) if isinstance(germ, NormalFormCoeffs) else GermDocument.from_germ(germ)
                rec["germ"] = doc.to_obj()
            self.failures.append(rec)
        return ok

    def summary(self) -> dict:
        return {"suite": self.name, "checks": self.checks, "passed": self.passed, "failures": self.failures}


def close(est: float, target: float, tol: float) -> bool:
    """Relative error when |target| > 1, absolute otherwise."""
    d = abs(est - target)
    return d <= tol * (abs(target) if abs(target) > 1 else 1.0)


# sampled directions: rational tangents plus pi/2
TAN_SAMPLES = (Q(-3), Q(-1), Q(-1, 2), ZERO, Q(1, 3), Q(1), Q(2), Q(5))
ORACLE_DEGREES = (-75, -50, -30, -10, 0, 20, 45, 70)


def sample_thetas(c: NormalFormCoeffs, n: int) -> list:
    ths = [ThetaDirection.from_tan(t) for t in TAN_SAMPLES] + [ThetaDirection.pi_half()]
    ps = bg.parabolic_thetas(c, n)
    ths.extend(ps.thetas)
    return ths


# ---------------------------------------------------------------------------
# 1. Mond table


def suite_mond_table(transforms: int = 200, seed: int = 0) -> SuiteResult:
    res = SuiteResult("mond-table")
    rng = random.Random(seed)
    for f in table_forms():
        got = classify(reduce(f.germ).coeffs).label
        res.check(got == f.label, f.germ, form=f.label, got=got)
        for _ in range(transforms):
            g = random_A_transform(f.germ, rng)
            got = classify(reduce(g).coeffs).label
            res.check(got == f.label, g, form=f.label, got=got, transformed=True)
    return res


# ---------------------------------------------------------------------------
# 2. blow-up limits


def suite_blowup_limits(germs, tol: float = 1e-4, slope_tol: float = 0.05) -> SuiteResult:
    res = SuiteResult("blowup-limits")
    for c in germs:
        t = classify(c)
        n = t.blowup_n
        for deg in ORACLE_DEGREES:
            th = ThetaDirection.from_degrees(deg)
            where = {"theta_deg": deg}
            nl = bg.leading_normal(c, n, th).unit
            est = blowup_limit(c, n, th, "normal").value
            res.check(all(abs(a - b) <= tol for a, b in zip(est, nl)), c, quantity="normal", got=est, want=nl, **where)
            want = bg.k10(c, n, th)
            got = blowup_limit(c, n, th, "k10").value
            res.check(close(got, want, tol), c, quantity="k10", got=got, want=want, **where)
            want = bg.k20(c, n, th)
            lim = blowup_limit(c, n, th, "k20")
            res.check(close(lim.value, want, tol), c, quantity="k20", got=lim.value, want=want, **where)
            res.check(
                abs(lim.order_estimate + (2 * n + 2)) <= slope_tol,
                c,
                quantity="k20_slope",
                got=lim.order_estimate,
                want=-(2 * n + 2),
                **where,
            )
            want = bg.gauss_lead(c, n, th)
            got = blowup_limit(c, n, th, "gauss_scaled").value
            res.check(close(got, want, tol), c, quantity="gauss_scaled", got=got, want=want, **where)
    return res


# ---------------------------------------------------------------------------
# 3-5. height routes, ADE oracle, versality matrix


def suite_route_agreement(germs) -> SuiteResult:
    res = SuiteResult("route-agreement")
    for c in germs:
        t = classify(c)
        for th in sample_thetas(c, t.blowup_n):
            geo = classify_height_geometric(c, t, th)
            d = bg.leading_normal(c, t.blowup_n, th).direction
            for v in (Direction3(*d), -Direction3(*d)):
                coef = classify_height(c, v)
                res.check(
                    coef.key() == geo.key(),
                    c,
                    theta=theta_info(th),
                    geometric=list(geo.key()) + [geo.case],
                    coefficient=list(coef.key()) + [coef.case],
                )
    return res


def _directions(c: NormalFormCoeffs, t: AType):
    for th in sample_thetas(c, t.blowup_n):
        yield th, Direction3(*bg.leading_normal(c, t.blowup_n, th).direction)


def suite_ade_oracle(germs) -> SuiteResult:
    res = SuiteResult("ade-oracle")
    for c in germs:
        t = classify(c)
        for th, v in _directions(c, t):
            hc = classify_height(c, v)
            ade = ade_recognize(height_jet(c, v))
            res.check(ade_matches(hc.atype, ade), c, theta=theta_info(th), label=hc.atype, ade=ade)
    return res


def suite_versality(germs) -> SuiteResult:
    res = SuiteResult("versality-matrix")
    for c in germs:
        t = classify(c)
        for th, v in _directions(c, t):
            hc = classify_height(c, v)
            if hc.case not in ("2a", "3a"):
                continue
            for ext, flag in ((False, hc.versal_H), (True, hc.versal_Hext)):
                r, full = versality_matrix_rank(c, v, extended=ext)
                res.check((r == full) == flag, c, theta=theta_info(th), case=hc.case, extended=ext, rank=r, full=full, versal=flag)
    return res


# ---------------------------------------------------------------------------
# 6. Sigma and the branch


def printed_sigma(c: NormalFormCoeffs) -> dict:
    """Degree 3 and 4 coefficients of Sigma, with the u^3 v term reading a_31."""
    a, b2 = c.get_a, c.get_b(2)
    h = Q(1, 2)
    return {
        (2, 1): -h * a(2, 0) * a(2, 1),
        (0, 3): h * a(2, 0) * a(0, 3),
        (4, 0): Q(1, 4) * a(2, 1) ** 2 * b2,
        (3, 1): -Q(1, 6) * (a(2, 0) * a(3, 1) + 3 * a(3, 0) * a(2, 1) - 3 * a(2, 1) * a(1, 2) * b2),
        (2, 2): -Q(3, 2) * a(2, 1) ** 2,
        (1, 3): h * (a(2, 0) * a(1, 3) + a(3, 0) * a(0, 3) - 4 * a(2, 1) * a(1, 2) - a(1, 2) * a(0, 3) * b2),
        (0, 4): Q(1, 12) * (4 * a(2, 0) * a(0, 4) + 6 * a(2, 1) * a(0, 3) - 12 * a(1, 2) ** 2 - 3 * a(0, 3) ** 2 * b2),
    }


CONTACT_FIXTURES = (("S", 2, 3), ("B", 2, 2), ("C", 3, 3), ("F", 4, 3))


def suite_sigma_branch(germs, seed: int = 0) -> SuiteResult:
    res = SuiteResult("sigma-branch")
    for c in germs:
        S = sigma_jet(c)
        for key, want in printed_sigma(c).items():
            res.check(S[key] == want, c, monomial=list(key), got=encode_exact(S[key]), want=encode_exact(want))
        for key in ((3, 0), (1, 2)):
            res.check(S[key] == 0, c, monomial=list(key), got=encode_exact(S[key]), want=[0, 1])
    rng = random.Random(seed)
    fixtures = [(fam, k, m, random_normal_form(rng, fam, k, "none")) for fam, k, m in CONTACT_FIXTURES]
    fixtures += [(None, None, None, c) for c in germs if c.get_a(2, 0) != 0]
    for fam, k, m, c in fixtures:
        t = classify(c)
        n = t.blowup_n
        N = c.order - n - 3
        b = trace_branch(c, t, N)
        m = n + 1 if m is None else m
        res.check(b.contact >= m, c, family=t.label, contact=b.contact, want_at_least=m)
        resid = sigma_jet(c).substitute_curve(type(b.series).t(b.residual_order), b.series.with_order(b.residual_order))
        res.check(resid.is_zero(), c, family=t.label, residual_through=b.residual_order)
        res.check(b.residual_order >= N + n + 1, c, guaranteed=N + n + 1, got=b.residual_order)
    return res


# ---------------------------------------------------------------------------
# 7. torsion dictionary


def suite_torsion(germs, numeric_count: int = 100, tol: float = 1e-5) -> SuiteResult:
    res = SuiteResult("torsion")
    done = 0
    for c in germs:
        if c.get_a(2, 0) == 0:
            continue
        t = classify(c)
        n = t.blowup_n
        b = trace_branch(c, t, 5)
        inv = curve_invariants(c, b)
        cf = closed_form_invariants(c, n)
        res.check(inv.tau0 == cf["tau0"], c, quantity="tau0_exact", got=encode_exact(inv.tau0), want=encode_exact(cf["tau0"]))
        res.check(
            inv.tau0prime == cf["tau0prime"],
            c,
            quantity="tau0prime_exact",
            got=encode_exact(inv.tau0prime),
            want=encode_exact(cf["tau0prime"]),
        )
        bx = inv.binormal0
        cb = cf["binormal0"]
        res.check(bx[0] == 0 and bx[1] * cb[2] == bx[2] * cb[1], c, quantity="binormal0")
        label = classify_by_torsion(inv)
        for v in (Direction3(*bx), -Direction3(*bx)):
            h = classify_height(c, v).atype
            res.check(h == label, c, quantity="torsion_vs_height", torsion=label, height=h)
        if done < numeric_count:
            done += 1
            t0, t1 = torsion_numeric_branch(c, n)
            res.check(close(t0, float(cf["tau0"]), tol), c, quantity="tau0_numeric", got=t0, want=float(cf["tau0"]))
            res.check(close(t1, float(cf["tau0prime"]), tol), c, quantity="tau0prime_numeric", got=t1, want=float(cf["tau0prime"]))
    return res


# ---------------------------------------------------------------------------
# 8. regular surfaces


def suite_monge(count: int = 200, seed: int = 0, tol: float = 1e-5) -> SuiteResult:
    res = SuiteResult("monge")
    rng = random.Random(seed)
    for _ in range(count):
        m = random_monge(rng)
        rep = regular_parabolic_check(m)
        ade = ade_recognize(m.f_jet())
        detail = {"k2": encode_exact(m.k2), "a": [[i, j] + encode_exact(v) for (i, j), v in sorted(m.a.items())]}
        res.check(ade_matches(rep.label, ade), None, label=rep.label, ade=ade, **detail)
        res.check(rep.binormal_is_normal == (rep.label != "A2"), None, label=rep.label, **detail)
        if rep.tau0prime_printed is not None:
            res.check(rep.tau0prime == rep.tau0prime_printed, None, quantity="tau0prime_exact", **detail)
            _, t1 = torsion_numeric(monge_parabolic_numeric(float(m.k2), m.a, m.order))
            want = float(rep.tau0prime_printed)
            res.check(close(t1, want, tol), None, quantity="tau0prime_numeric", got=t1, want=want, **detail)
    return res


# ---------------------------------------------------------------------------
# 9. dual labels


def suite_dual_labels() -> SuiteResult:
    res = SuiteResult("dual-labels")
    cases = [
        (G2, ThetaDirection.from_degrees(0), "swallowtail"),
        (G2.replace(b={3: 1}), ThetaDirection.from_degrees(0), "cuspidal_edge"),
        (G1, ThetaDirection.from_degrees(45), "unresolved(sub-parabolic)"),
    ]
    for c, th, want in cases:
        got = str(dual_label(c, classify(c), th))
        res.check(got == want, c, theta=theta_info(th), got=got, want=want)
    return res


SUITES = (
    "mond-table",
    "blowup-limits",
    "route-agreement",
    "ade-oracle",
    "versality-matrix",
    "sigma-branch",
    "torsion",
    "monge",
    "dual-labels",
)


def run_suite(name: str, germs=None, seed: int = 0, size: int | None = None) -> SuiteResult:
    """Run a suite on ``germs`` (normal forms), or on fixtures plus a seeded corpus."""
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    if name == "mond-table":
        return suite_mond_table(size if size is not None else 200, seed)
    if name == "monge":
        return suite_monge(size if size is not None else 200, seed)
    if name == "dual-labels":
        return suite_dual_labels()
    if germs is None:
        germs = [G1, G2] + (corpus(size, seed) if size else [])
    fn = {
        "blowup-limits": suite_blowup_limits,
        "route-agreement": suite_route_agreement,
        "ade-oracle": suite_ade_oracle,
        "versality-matrix": suite_versality,
        "sigma-branch": suite_sigma_branch,
        "torsion": suite_torsion,
    }[name]
    return fn(germs)
