"""A-type of a normal-form germ: S_k, B_k, C_k, F_4 and the blow-up index."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial

from .exact import Q, ZERO, sign
from .jets import Jet1, JetError
from .normal_form import NormalFormCoeffs


class InsufficientJet(JetError):
    def __init__(self, needed: int, have: int):
        super().__init__(f"insufficient jet data: needs order >= {needed}, have {have}")
        self.needed = needed


@dataclass(frozen=True)
class AType:
    family: str  # S, B, C, F or out_of_family
    k: int = 0
    sign: str = "none"  # "+", "-" or "none"
    blowup_n: int = 0
    reason: str = ""

    @property
    def in_family(self) -> bool:
        return self.family in ("S", "B", "C", "F")

    @property
    def label(self) -> str:
        if not self.in_family:
            return f"out_of_family({self.reason})"
        s = "" if self.sign == "none" else self.sign
        return f"{self.family}{self.k}{s}"

    def __str__(self):
        return self.label


def out_of_family(reason: str) -> AType:
    return AType("out_of_family", reason=reason)


@dataclass(frozen=True)
class XiSequence:
    c: dict = field(default_factory=dict)
    xi: dict = field(default_factory=dict)


def required_order(family: str, k: int) -> int:
    """Jet order needed to certify the label."""
    if family == "S":
        return k + 2
    if family == "B":
        return 5 if k == 2 else 2 * k + 1
    if family == "C":
        return max(4, k + 1)
    if family == "F":
        return 5
    raise ValueError(family)


def blowup_index(t: AType) -> int:
    if not t.in_family:
        raise ValueError("blow-up index is defined only for in-family germs")
    return {"S": t.k, "B": 1, "C": t.k - 1, "F": 2}[t.family]


def _sgn(x) -> str:
    return "+" if sign(x) > 0 else "-"


def solve_xi(c: NormalFormCoeffs, kmax: int) -> XiSequence:
    """c_l and xi_n (n = 3..kmax) by substitution along u = gamma(v)."""
    if c.get_a(0, 3) != 0 or c.get_a(2, 1) == 0:
        raise ValueError("solve_xi needs a_03 = 0 and a_21 != 0")
    if c.order < 2 * kmax + 1:
        raise InsufficientJet(2 * kmax + 1, c.order)
    a21 = c.get_a(2, 1)
    N = 2 * kmax + 1
    q = c.q_jet()
    qu = q.diff("u")
    v = Jet1.t(N)
    cs: dict = {}
    xis: dict = {}
    gamma = Jet1.zero(N)
    for m in range(2, kmax + 1):
        # [v^(2m-1)] q_u(gamma, v) is affine in c_m with slope a_21
        r = qu.substitute_curve(gamma, v)[2 * m - 1]
        cm = -r / a21
        cs[m] = cm
        gamma = gamma + Jet1(N, {2 * (m - 1): cm})
        if m >= 3:
            xis[m] = q.substitute_curve(gamma, v)[2 * m + 1]
    return XiSequence(cs, xis)


def classify(c: NormalFormCoeffs) -> AType:
    K = c.order
    if not c.a:
        return out_of_family("degenerate")
    if K < 3:
        return out_of_family(f"needs order >= 3, have {K}")
    a = c.get_a
    a03 = a(0, 3)
    first = next((i for i in range(2, K) if a(i, 1) != 0), None)
    if a03 != 0:
        if first is None:
            return out_of_family(f"a_i1 vanish through order {K}; needs order >= {K + 1}")
        k = first - 1
        sg = _sgn(a03 * a(first, 1)) if k % 2 else "none"
        return AType("S", k, sg, k)
    if a(2, 1) != 0:
        if K < 5:
            return out_of_family(f"needs order >= 5, have {K}")
        D = 3 * a(0, 5) * a(2, 1) - 5 * a(1, 3) ** 2
        if D != 0:
            return AType("B", 2, _sgn(D), 1)
        k = 3
        while True:
            if K < 2 * k + 1:
                return out_of_family(f"xi_3..xi_{k - 1} vanish; needs order >= {2 * k + 1}")
            xs = solve_xi(c, k)
            xk = xs.xi[k]
            if xk != 0:
                return AType("B", k, _sgn(a(2, 1) * xk), 1)
            k += 1
    if first is None:
        return out_of_family(f"a_03 = 0 and a_i1 vanish through order {K}")
    if K < 4:
        return out_of_family(f"needs order >= 4, have {K}")
    a13 = a(1, 3)
    if a13 != 0:
        k = first
        sg = _sgn(a13 * a(k, 1)) if k % 2 else "none"
        return AType("C", k, sg, k - 1)
    if first == 3:
        if K < 5:
            return out_of_family(f"needs order >= 5, have {K}")
        if a(0, 5) != 0:
            return AType("F", 4, "none", 2)
        return out_of_family("a_03 = a_21 = a_13 = a_05 = 0: not A-simple in this list")
    return out_of_family(f"a_03 = a_21 = a_13 = 0 with first a_i1 at i = {first}: not in the S/B/C/F list")


def lead_index(c: NormalFormCoeffs):
    """n with a_{2,1} = ... = a_{n,1} = 0 and a_{n+1,1} != 0, or None."""
    return next((i - 1 for i in range(2, c.order) if c.get_a(i, 1) != 0), None)
