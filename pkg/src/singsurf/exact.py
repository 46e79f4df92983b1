"""Exact scalars: rationals (gmpy2.mpq) and multiquadratic surds.

A ``Surd`` is a finite sum ``sum c_r * sqrt(r)`` with rational ``c_r`` and
distinct squarefree ``r >= 1``.  Such numbers form a field, and the
square roots of distinct squarefree integers are linearly independent over
the rationals, so the zero test is a plain coefficient check.  Signs are
decided by evaluating at increasing precision until the value separates
from zero, which always terminates for a nonzero element.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

import gmpy2
import mpmath
import sympy

mpq = gmpy2.mpq
_MPQ = type(mpq(0))

ZERO = mpq(0)
ONE = mpq(1)


def Q(x, den=None):
    """Coerce an int, Fraction, string or mpq (optionally with a denominator) to mpq."""
    if den is not None:
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        return mpq(int(x), int(den))
    if isinstance(x, _MPQ):
        return x
    if isinstance(x, (int, Fraction, str)) or isinstance(x, Rational):
        return mpq(x)
    if isinstance(x, Surd):
        r = x.rational_value()
        if r is None:
            raise TypeError("irrational surd cannot be coerced to a rational")
        return r
    raise TypeError(f"cannot coerce {type(x).__name__} to an exact rational")


def is_rational(x) -> bool:
    return isinstance(x, (_MPQ, int, Fraction))


@lru_cache(maxsize=4096)
def _squarefree_split(n: int) -> tuple[int, int]:
    """Return (s, r) with n = s**2 * r and r squarefree (n > 0)."""
    s, r = 1, 1
    for p, e in sympy.factorint(n).items():
        s *= p ** (e // 2)
        if e % 2:
            r *= p
    return s, r


@lru_cache(maxsize=4096)
def _primes(r: int) -> tuple[int, ...]:
    return tuple(sorted(sympy.factorint(r)))


class Surd:
    """Element of Q(sqrt 2, sqrt 3, ...), stored as {squarefree radicand: rational}."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict):
        self.terms = {r: c for r, c in terms.items() if c != 0}

    # construction -------------------------------------------------------
    @staticmethod
    def make(terms: dict):
        """Build from {radicand: coeff}; collapses to mpq when purely rational."""
        s = Surd(terms)
        r = s.rational_value()
        return s if r is None else r

    @staticmethod
    def lift(x) -> "Surd":
        if isinstance(x, Surd):
            return x
        return Surd({1: Q(x)})

    def rational_value(self):
        if not self.terms:
            return ZERO
        if set(self.terms) == {1}:
            return self.terms[1]
        return None

    # arithmetic ----------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Surd):
            try:
                other = Surd.lift(other)
            except TypeError:
                return NotImplemented
        out = dict(self.terms)
        for r, c in other.terms.items():
            out[r] = out.get(r, ZERO) + c
        return Surd.make(out)

    __radd__ = __add__

    def __neg__(self):
        return Surd({r: -c for r, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-Surd.lift(other))

    def __rsub__(self, other):
        return Surd.lift(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, Surd):
            try:
                q = Q(other)
            except TypeError:
                return NotImplemented
            return Surd.make({r: c * q for r, c in self.terms.items()})
        out: dict = {}
        for r1, c1 in self.terms.items():
            for r2, c2 in other.terms.items():
                g = math.gcd(r1, r2)
                r = (r1 // g) * (r2 // g)
                out[r] = out.get(r, ZERO) + c1 * c2 * g
        return Surd.make(out)

    __rmul__ = __mul__

    def _conj(self, p: int) -> "Surd":
        return Surd({r: (-c if r % p == 0 else c) for r, c in self.terms.items()})

    def inverse(self):
        if not self.terms:
            raise ZeroDivisionError("surd division by zero")
        num = Surd({1: ONE})
        cur = self
        primes = sorted({p for r in self.terms for p in _primes(r)})
        for p in primes:
            conj = cur._conj(p)
            num = num * conj
            cur = Surd.lift(cur * conj)
        den = cur.rational_value()
        assert den is not None and den != 0
        return num * (ONE / den)

    def __truediv__(self, other):
        if isinstance(other, Surd):
            return self * other.inverse()
        return self * (ONE / Q(other))

    def __rtruediv__(self, other):
        return Surd.lift(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = base * out
            base = base * base
            k >>= 1
        return out

    # comparison ----------------------------------------------------------
    def __eq__(self, other):
        try:
            diff = self - other
        except TypeError:
            return NotImplemented
        return diff == 0 if not isinstance(diff, Surd) else not diff.terms

    def __hash__(self):
        r = self.rational_value()
        if r is not None:
            return hash(r)
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __float__(self):
        return float(self.evaluate(30))

    def evaluate(self, dps: int = 30):
        with mpmath.workdps(dps):
            return mpmath.fsum(
                mpmath.mpf(int(c.numerator)) / int(c.denominator) * mpmath.sqrt(r)
                for r, c in self.terms.items()
            )

    def sign(self) -> int:
        if not self.terms:
            return 0
        scale = max(abs(float(c)) for c in self.terms.values())
        dps = 30
        while True:
            val = self.evaluate(dps)
            if abs(val) > mpmath.mpf(10) ** (-(dps - 8)) * scale:
                return 1 if val > 0 else -1
            dps *= 2

    def __lt__(self, other):
        return sign(self - other) < 0

    def __gt__(self, other):
        return sign(self - other) > 0

    def __repr__(self):
        parts = []
        for r in sorted(self.terms):
            c = self.terms[r]
            parts.append(f"{c}" if r == 1 else f"{c}*sqrt({r})")
        return "Surd(" + " + ".join(parts) + ")"


def sqrt_exact(x):
    """Exact square root of a nonnegative rational: mpq when possible, else Surd."""
    x = Q(x)
    if x < 0:
        raise ValueError("square root of a negative number")
    if x == 0:
        return ZERO
    n, d = int(x.numerator), int(x.denominator)
    sn, rn = _squarefree_split(n)
    sd, rd = _squarefree_split(d)
    # sqrt(n/d) = sn/sd * sqrt(rn/rd) = sn/(sd*rd) * sqrt(rn*rd)
    coeff = mpq(sn, sd * rd)
    r = rn * rd
    if r == 1:
        return coeff
    return Surd({r: coeff})


def sign(x) -> int:
    if isinstance(x, Surd):
        return x.sign()
    return (x > 0) - (x < 0)


def is_zero(x) -> bool:
    return x == 0


def to_float(x) -> float:
    return float(x)


def is_square(x) -> bool:
    return is_rational(sqrt_exact(x))
