"""Leading-order geometry over the singular point in the blow-up chart.

The chart is (r, theta) -> (r cos theta, r^(n+1) cos^n theta sin theta).
Every zero test here is done on an exact numerator that is homogeneous in
(cos theta, sin theta), so an unnormalized exact representative of the
direction suffices; floats are produced only for reported values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

import mpmath

from .exact import Q, ONE, ZERO, Surd, sign, sqrt_exact, is_rational
from .normal_form import NormalFormCoeffs

_S2 = sqrt_exact(2)
_S3 = sqrt_exact(3)
_S6 = sqrt_exact(6)
# exact (cos, sin) at multiples of 15 degrees in [0, 90]
_EXACT_DEG = {
    0: (ONE, ZERO),
    15: ((_S6 + _S2) / 4, (_S6 - _S2) / 4),
    30: (_S3 / 2, Q(1, 2)),
    45: (_S2 / 2, _S2 / 2),
    60: (Q(1, 2), _S3 / 2),
    75: ((_S6 - _S2) / 4, (_S6 + _S2) / 4),
    90: (ZERO, ONE),
}


@dataclass(frozen=True)
class ThetaDirection:
    """A direction (cos, sin) with theta in (-pi/2, pi/2].

    ``C, S`` is an exact representative, positive multiple of (cos, sin);
    ``normalized`` says whether C^2 + S^2 = 1 exactly.  ``approximate`` is set
    when the exact direction was replaced by a nearby rational one.
    """

    C: object
    S: object
    normalized: bool = False
    approximate: bool = False

    def __post_init__(self):
        if self.C == 0 and self.S == 0:
            raise ValueError("zero direction")
        if sign(self.C) < 0 or (self.C == 0 and sign(self.S) < 0):
            object.__setattr__(self, "C", -self.C)
            object.__setattr__(self, "S", -self.S)

    @classmethod
    def from_tan(cls, t) -> "ThetaDirection":
        t = t if isinstance(t, Surd) else Q(t)
        if is_rational(t):
            rho = sqrt_exact(1 + t * t)
            inv = ONE / rho if not isinstance(rho, Surd) else rho.inverse()
            return cls(inv, t * inv, normalized=True)
        return cls(ONE, t)

    @classmethod
    def from_pair(cls, C, S) -> "ThetaDirection":
        return cls(C, S)

    @classmethod
    def pi_half(cls) -> "ThetaDirection":
        return cls(ZERO, ONE, normalized=True)

    @classmethod
    def from_degrees(cls, deg: float) -> "ThetaDirection":
        d = float(deg)
        d = (d + 90.0) % 180.0 - 90.0  # fold into [-90, 90)
        if d == -90.0:
            d = 90.0
        if d == int(d) and int(d) % 15 == 0:
            c, s = _EXACT_DEG[abs(int(d))]
            return cls(c, s if d >= 0 else -s, normalized=True)
        t = Fraction(math.tan(math.radians(d))).limit_denominator(10 ** 12)
        th = cls.from_tan(Q(t))
        return cls(th.C, th.S, th.normalized, approximate=True)

    @property
    def cos_zero(self) -> bool:
        return self.C == 0

    def unit(self) -> tuple[float, float]:
        with mpmath.workdps(40):
            c = _mp(self.C)
            s = _mp(self.S)
            r = mpmath.sqrt(c * c + s * s)
            return float(c / r), float(s / r)

    @property
    def radians(self) -> float:
        c, s = self.unit()
        return math.atan2(s, c)

    @property
    def degrees(self) -> float:
        return math.degrees(self.radians)

    def tan(self):
        if self.C == 0:
            raise ZeroDivisionError("tan undefined at pi/2")
        return self.S / self.C


def _mp(x):
    if isinstance(x, Surd):
        return x.evaluate(40)
    return mpmath.mpf(int(x.numerator)) / int(x.denominator)


def _f(x) -> float:
    return float(x)


def _lead(c: NormalFormCoeffs, n: int):
    a = c.get_a(n + 1, 1)
    if a == 0:
        raise ValueError(f"a_{n + 1},1 vanishes: n = {n} is not the blow-up index")
    return a, factorial(n + 1)


@dataclass(frozen=True)
class CalA:
    square: object  # exact A(theta)^2 at the representative (C, S)
    value: float  # A(theta) at the normalized direction


def calA(c: NormalFormCoeffs, n: int, th: ThetaDirection) -> CalA:
    a, F = _lead(c, n)
    sq = a * a * th.C * th.C + F * F * th.S * th.S
    cf, sf = th.unit()
    val = math.sqrt(float(a) ** 2 * cf * cf + F * F * sf * sf)
    return CalA(sq, val)


@dataclass(frozen=True)
class NormalLimit:
    direction: tuple  # exact (0, y, z), a positive multiple of the limit normal
    unit: tuple  # floats


def leading_normal(c: NormalFormCoeffs, n: int, th: ThetaDirection) -> NormalLimit:
    a, F = _lead(c, n)
    d = (ZERO, -a * th.C, F * th.S)
    y, z = float(d[1]), float(d[2])
    r = math.hypot(y, z)
    return NormalLimit(d, (0.0, y / r, z / r))


def k10_numerator(c: NormalFormCoeffs, n: int, th: ThetaDirection):
    a, F = _lead(c, n)
    return -a * c.get_b(2) * th.C + F * c.get_a(2, 0) * th.S


def k10(c: NormalFormCoeffs, n: int, th: ThetaDirection) -> float:
    a, F = _lead(c, n)
    cf, sf = th.unit()
    num = -float(a) * float(c.get_b(2)) * cf + F * float(c.get_a(2, 0)) * sf
    return num / calA(c, n, th).value


def k20(c: NormalFormCoeffs, n: int, th: ThetaDirection) -> float:
    if th.cos_zero:
        raise ZeroDivisionError("pole of second curvature branch at cos(theta) = 0")
    a, F = _lead(c, n)
    cf, _ = th.unit()
    A = calA(c, n, th).value
    return -(F * F) * float(a) / (A ** 3 * cf ** (2 * n - 1))


def gauss_lead(c: NormalFormCoeffs, n: int, th: ThetaDirection) -> float:
    """Leading coefficient of r^(2n+2) K over the singular point."""
    if th.cos_zero:
        raise ZeroDivisionError("undefined at cos(theta) = 0")
    a, F = _lead(c, n)
    cf, sf = th.unit()
    A = calA(c, n, th).value
    af = float(a)
    return F * F * af * (af * float(c.get_b(2)) * cf - F * float(c.get_a(2, 0)) * sf) / (A ** 4 * cf ** (2 * n - 1))


def point_type(c: NormalFormCoeffs, n: int, th: ThetaDirection) -> str:
    if th.cos_zero:
        raise ValueError("point type over the singularity needs cos(theta) != 0")
    a, F = _lead(c, n)
    num = a * (a * c.get_b(2) * th.C - F * c.get_a(2, 0) * th.S)
    s = sign(num) * sign(th.C)
    return {1: "elliptic", -1: "hyperbolic", 0: "parabolic"}[s]


@dataclass(frozen=True)
class Deltas:
    """Exact values at the representative (C, S) and floats at the unit direction."""

    exact: tuple
    values: tuple


def delta_polys(c: NormalFormCoeffs, n: int, C, S, corrupt_delta2: bool = False):
    a, F = _lead(c, n)
    b2, b3, b4 = c.get_b(2), c.get_b(3), c.get_b(4)
    a20, a30, a40, a21 = c.get_a(2, 0), c.get_a(3, 0), c.get_a(4, 0), c.get_a(2, 1)
    d1 = a * b3 * C - F * a30 * S
    last = 12 * a21 * S * S
    if corrupt_delta2 or _DEBUG["corrupt_delta2"]:
        last = -last
    d2 = -(a * b4 * C - F * a40 * S) * C + 3 * (a20 * a20 + b2 * b2) * (a * b2 * C - F * a20 * S) * C + last
    d3 = a * a20 * C - F * b2 * S
    return d1, d2, d3


# debug hook used by the verification CLI to prove the suites catch mutations
_DEBUG = {"corrupt_delta2": False}


def set_debug(**flags):
    for k, v in flags.items():
        if k not in _DEBUG:
            raise KeyError(k)
        _DEBUG[k] = bool(v)


def deltas(c: NormalFormCoeffs, n: int, th: ThetaDirection) -> Deltas:
    if th.cos_zero:
        raise ValueError("undefined_at_pi_half")
    ex = delta_polys(c, n, th.C, th.S)
    cf, sf = th.unit()
    fl = delta_polys(_FloatCoeffs(c), n, cf, sf)
    return Deltas(ex, tuple(float(x) for x in fl))


class _FloatCoeffs:
    """Float view of a coefficient table, for reporting values."""

    def __init__(self, c: NormalFormCoeffs):
        self._c = c

    def get_a(self, i, j):
        return float(self._c.get_a(i, j))

    def get_b(self, i):
        return float(self._c.get_b(i))


def ridge_order(c: NormalFormCoeffs, n: int, th: ThetaDirection) -> str:
    if th.cos_zero:
        return "undefined_at_pi_half"
    d1, d2, _ = delta_polys(c, n, th.C, th.S)
    if d1 != 0:
        return "not_ridge"
    return "first_order" if d2 != 0 else "higher_order"


def subparabolic(c: NormalFormCoeffs, n: int, th: ThetaDirection):
    if th.cos_zero:
        return "undefined_at_pi_half"
    return delta_polys(c, n, th.C, th.S)[2] == 0


@dataclass(frozen=True)
class ParabolicSet:
    thetas: list = field(default_factory=list)
    all_theta: bool = False
    note: str = ""

    def __iter__(self):
        return iter(self.thetas)

    def __len__(self):
        return len(self.thetas)


def parabolic_thetas(c: NormalFormCoeffs, n: int) -> ParabolicSet:
    a, F = _lead(c, n)
    a20, b2 = c.get_a(2, 0), c.get_b(2)
    if a20 != 0:
        return ParabolicSet([ThetaDirection.from_tan(a * b2 / (F * a20))])
    if b2 != 0:
        return ParabolicSet([ThetaDirection.pi_half()], note="inflection: parabolic direction at pi/2")
    return ParabolicSet([], all_theta=True, note="degenerate inflection: k10 vanishes identically")


@dataclass(frozen=True)
class OverSingularityReport:
    theta: ThetaDirection
    point_type: str
    ridge: str
    subparabolic: object
    deltas: Deltas | None


def over_singularity(c: NormalFormCoeffs, n: int, th: ThetaDirection) -> OverSingularityReport:
    if th.cos_zero:
        return OverSingularityReport(th, "undefined_at_pi_half", "undefined_at_pi_half", "undefined_at_pi_half", None)
    return OverSingularityReport(th, point_type(c, n, th), ridge_order(c, n, th), subparabolic(c, n, th), deltas(c, n, th))
