"""Truncated power series with exact coefficients.

``Jet2`` is a bivariate jet in (u, v), ``Jet1`` a univariate jet in t.  Both
are immutable; every operation truncates its result at the shared order.
Coefficients are gmpy2 rationals, or ``Surd`` values where a normalization
needed a square root.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

import gmpy2

from .exact import Q, ZERO, ONE, Surd

_MPQ = type(gmpy2.mpq(0))


def _scalar(x):
    return x if isinstance(x, Surd) else Q(x)


def _integer_form(c: dict):
    """(D, numerators) with c = numerators / D, or None if a value is not rational."""
    D = gmpy2.mpz(1)
    for val in c.values():
        if type(val) is not _MPQ:
            return None
        D = gmpy2.lcm(D, val.denominator)
    return D, {k: val.numerator * (D // val.denominator) for k, val in c.items()}


class JetError(ValueError):
    pass


class Jet2:
    """Truncated polynomial sum c_ij u^i v^j with i + j <= order."""

    __slots__ = ("order", "_c")

    def __init__(self, order: int, coeffs: Mapping | None = None):
        if order < 0:
            raise JetError("order must be nonnegative")
        self.order = int(order)
        c = {}
        for key, val in (coeffs or {}).items():
            i, j = key
            if i < 0 or j < 0:
                raise JetError(f"negative exponent in {key}")
            if i + j > order:
                raise JetError(f"monomial {key} exceeds order {order}")
            val = _scalar(val)
            if val != 0:
                c[(int(i), int(j))] = val
        self._c = c

    @classmethod
    def _raw(cls, order, c):
        obj = cls.__new__(cls)
        obj.order = order
        obj._c = c
        return obj

    @classmethod
    def truncated(cls, order: int, coeffs: Mapping) -> "Jet2":
        return cls(order, {k: v for k, v in coeffs.items() if k[0] + k[1] <= order})

    @classmethod
    def zero(cls, order: int) -> "Jet2":
        return cls._raw(order, {})

    @classmethod
    def const(cls, order: int, value) -> "Jet2":
        return cls(order, {(0, 0): value})

    @classmethod
    def u(cls, order: int) -> "Jet2":
        return cls(order, {(1, 0): 1}) if order >= 1 else cls.zero(order)

    @classmethod
    def v(cls, order: int) -> "Jet2":
        return cls(order, {(0, 1): 1}) if order >= 1 else cls.zero(order)

    @classmethod
    def monomial(cls, order: int, i: int, j: int, coeff=1) -> "Jet2":
        if i + j > order:
            return cls.zero(order)
        return cls(order, {(i, j): coeff})

    # access -------------------------------------------------------------
    def __getitem__(self, key):
        return self._c.get(key, ZERO)

    coeff = __getitem__

    def items(self):
        return self._c.items()

    def keys(self):
        return self._c.keys()

    @property
    def coeffs(self) -> dict:
        return dict(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def min_degree(self):
        return min((i + j for i, j in self._c), default=None)

    def homogeneous(self, d: int) -> dict:
        return {k: c for k, c in self._c.items() if k[0] + k[1] == d}

    def with_order(self, order: int) -> "Jet2":
        return Jet2._raw(order, {k: c for k, c in self._c.items() if k[0] + k[1] <= order})

    def __eq__(self, other):
        if not isinstance(other, Jet2):
            return NotImplemented
        return self.order == other.order and self._c == other._c

    def __hash__(self):
        return hash((self.order, frozenset(self._c.items())))

    def __repr__(self):
        terms = " + ".join(f"{c}*u^{i}v^{j}" for (i, j), c in sorted(self._c.items()))
        return f"Jet2(K={self.order}: {terms or '0'})"

    # arithmetic ----------------------------------------------------------
    def _check(self, other):
        if not isinstance(other, Jet2):
            raise TypeError("expected a Jet2")
        if other.order != self.order:
            raise JetError(f"order mismatch: {self.order} vs {other.order}")

    def __add__(self, other):
        if not isinstance(other, Jet2):
            return self + Jet2.const(self.order, other)
        self._check(other)
        out = dict(self._c)
        for k, c in other._c.items():
            s = out.get(k, ZERO) + c
            if s != 0:
                out[k] = s
            else:
                out.pop(k, None)
        return Jet2._raw(self.order, out)

    __radd__ = __add__

    def __neg__(self):
        return Jet2._raw(self.order, {k: -c for k, c in self._c.items()})

    def __sub__(self, other):
        if not isinstance(other, Jet2):
            return self + (-_scalar(other))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s) -> "Jet2":
        s = _scalar(s)
        if s == 0:
            return Jet2.zero(self.order)
        return Jet2._raw(self.order, {k: c * s for k, c in self._c.items()})

    def __mul__(self, other):
        if not isinstance(other, Jet2):
            return self.scale(other)
        self._check(other)
        K = self.order
        if not self._c or not other._c:
            return Jet2.zero(K)
        # group the second factor by degree so truncation prunes whole blocks
        lo = min(i + j for i, j in other._c)
        # integer numerators avoid a gcd per accumulation step
        f1, f2 = _integer_form(self._c), _integer_form(other._c)
        if f1 is not None and f2 is not None:
            (D1, n1), (D2, n2) = f1, f2
            zero = 0
        else:
            n1, n2, zero = self._c, other._c, ZERO
        bydeg = [[] for _ in range(K + 1)]
        for (i, j), c in n2.items():
            bydeg[i + j].append((i, j, c))
        out: dict = {}
        get = out.get
        for (i1, j1), c1 in n1.items():
            rem = K - i1 - j1
            for d in range(lo, rem + 1):
                for i2, j2, c2 in bydeg[d]:
                    key = (i1 + i2, j1 + j2)
                    out[key] = get(key, zero) + c1 * c2
        if zero is ZERO:
            return Jet2._raw(K, {k: c for k, c in out.items() if c != 0})
        D = D1 * D2
        return Jet2._raw(K, {k: gmpy2.mpq(c, D) for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise JetError("negative power")
        out = Jet2.const(self.order, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def mul_u(self, a: int = 1, b: int = 0) -> "Jet2":
        """Multiply by the monomial u^a v^b (cheap shift)."""
        K = self.order
        return Jet2._raw(K, {(i + a, j + b): c for (i, j), c in self._c.items() if i + j + a + b <= K})

    def diff(self, var: str) -> "Jet2":
        if self.order < 1:
            raise JetError("cannot differentiate an order-0 jet")
        out = {}
        if var == "u":
            for (i, j), c in self._c.items():
                if i:
                    out[(i - 1, j)] = c * i
        elif var == "v":
            for (i, j), c in self._c.items():
                if j:
                    out[(i, j - 1)] = c * j
        else:
            raise JetError(f"unknown variable {var!r}")
        return Jet2._raw(self.order - 1, out)

    # evaluation ----------------------------------------------------------
    def eval_numeric(self, u: float, v: float) -> float:
        # Horner in v inside Horner in u
        rows: dict[int, dict[int, float]] = {}
        for (i, j), c in self._c.items():
            rows.setdefault(i, {})[j] = float(c)
        if not rows:
            return 0.0
        total = 0.0
        for i in range(max(rows), -1, -1):
            row = rows.get(i)
            inner = 0.0
            if row:
                for j in range(max(row), -1, -1):
                    inner = inner * v + row.get(j, 0.0)
            total = total * u + inner
        return total

    def eval_exact(self, u, v):
        total = ZERO
        for (i, j), c in self._c.items():
            total = total + c * (u ** i) * (v ** j)
        return total

    def substitute_curve(self, x: "Jet1", y: "Jet1") -> "Jet1":
        """f(x(t), y(t)) for univariate jets without constant terms."""
        if x[0] != 0 or y[0] != 0:
            raise JetError("curve must pass through the origin")
        N = x.order
        xp = [Jet1.const(N, 1)]
        yp = [Jet1.const(N, 1)]
        for _ in range(self.order):
            xp.append(xp[-1] * x)
            yp.append(yp[-1] * y)
        out = Jet1.zero(N)
        for (i, j), c in self._c.items():
            out = out + (xp[i] * yp[j]).scale(c)
        return out

    def restrict_u(self) -> "Jet1":
        """f(t, 0)."""
        return Jet1(self.order, {i: c for (i, j), c in self._c.items() if j == 0})

    def restrict_v(self) -> "Jet1":
        """f(0, t)."""
        return Jet1(self.order, {j: c for (i, j), c in self._c.items() if i == 0})


def compose2(f: Jet2, su: Jet2, sv: Jet2) -> Jet2:
    """f(su(u,v), sv(u,v)) truncated at the order of su and sv."""
    if su.order != sv.order:
        raise JetError("substitution orders differ")
    if su[(0, 0)] != 0 or sv[(0, 0)] != 0:
        raise JetError("substitution has a nonzero constant term")
    K = su.order
    if f.is_zero():
        return Jet2.zero(K)
    maxi = max(i for i, _ in f.keys())
    maxj = max(j for _, j in f.keys())
    # powers of sv, then Horner in su over the u-degree of f
    vp = [Jet2.const(K, 1)]
    for _ in range(min(maxj, K)):
        vp.append(vp[-1] * sv)
    rows: dict[int, dict] = {}
    for (i, j), c in f.items():
        if i <= K and j <= K:
            rows.setdefault(i, {})[j] = c
    res = Jet2.zero(K)
    for i in range(min(maxi, K), -1, -1):
        if i < min(maxi, K):
            res = res * su
        row = rows.get(i)
        if row:
            acc: dict = {}
            for j, c in row.items():
                for key, cv in vp[j].items():
                    acc[key] = acc.get(key, ZERO) + c * cv
            res = res + Jet2._raw(K, {k: c for k, c in acc.items() if c != 0})
    return res


class Jet1:
    """Truncated univariate series sum c_d t^d with d <= order."""

    __slots__ = ("order", "_c")

    def __init__(self, order: int, coeffs: Mapping | None = None):
        self.order = int(order)
        c = {}
        for d, val in (coeffs or {}).items():
            if d < 0:
                raise JetError("negative degree")
            if d > order:
                continue
            val = _scalar(val)
            if val != 0:
                c[int(d)] = val
        self._c = c

    @classmethod
    def zero(cls, order):
        return cls(order)

    @classmethod
    def const(cls, order, value):
        return cls(order, {0: value})

    @classmethod
    def t(cls, order):
        return cls(order, {1: 1})

    def __getitem__(self, d):
        return self._c.get(d, ZERO)

    def items(self):
        return self._c.items()

    @property
    def coeffs(self) -> dict:
        return dict(self._c)

    def is_zero(self):
        return not self._c

    def valuation(self):
        return min(self._c, default=None)

    def with_order(self, order):
        return Jet1(order, self._c)

    def __eq__(self, other):
        if not isinstance(other, Jet1):
            return NotImplemented
        return self.order == other.order and self._c == other._c

    def __hash__(self):
        return hash((self.order, frozenset(self._c.items())))

    def __repr__(self):
        terms = " + ".join(f"{c}*t^{d}" for d, c in sorted(self._c.items()))
        return f"Jet1(N={self.order}: {terms or '0'})"

    def __add__(self, other):
        if not isinstance(other, Jet1):
            other = Jet1.const(self.order, other)
        if other.order != self.order:
            raise JetError("order mismatch")
        out = dict(self._c)
        for d, c in other._c.items():
            out[d] = out.get(d, ZERO) + c
        return Jet1(self.order, out)

    __radd__ = __add__

    def __neg__(self):
        return Jet1(self.order, {d: -c for d, c in self._c.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, Jet1) else -_scalar(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s):
        s = _scalar(s)
        return Jet1(self.order, {d: c * s for d, c in self._c.items()})

    def __mul__(self, other):
        if not isinstance(other, Jet1):
            return self.scale(other)
        if other.order != self.order:
            raise JetError("order mismatch")
        N = self.order
        out: dict = {}
        for d1, c1 in self._c.items():
            for d2, c2 in other._c.items():
                d = d1 + d2
                if d <= N:
                    out[d] = out.get(d, ZERO) + c1 * c2
        return Jet1(N, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Jet1.const(self.order, 1)
        for _ in range(k):
            out = out * self
        return out

    def diff(self):
        return Jet1(max(self.order - 1, 0), {d - 1: c * d for d, c in self._c.items() if d})

    def shift_down(self, k: int) -> "Jet1":
        """Divide by t^k; requires valuation >= k."""
        if any(d < k for d in self._c):
            raise JetError("series not divisible by t^k")
        return Jet1(self.order - k, {d - k: c for d, c in self._c.items()})

    def reciprocal(self) -> "Jet1":
        """1/f for a unit f, via the geometric series of the nilpotent tail."""
        c0 = self[0]
        if c0 == 0:
            raise JetError("series is not a unit")
        inv0 = ONE / c0 if not isinstance(c0, Surd) else c0.inverse()
        m = Jet1(self.order, {d: c for d, c in self._c.items() if d}).scale(inv0)
        out = Jet1.const(self.order, 1)
        term = Jet1.const(self.order, 1)
        for _ in range(self.order):
            term = -(term * m)
            if term.is_zero():
                break
            out = out + term
        return out.scale(inv0)

    def compose(self, g: "Jet1") -> "Jet1":
        """f(g(t)) with g(0) = 0."""
        if g[0] != 0:
            raise JetError("inner series must vanish at 0")
        out = Jet1.zero(g.order)
        top = max(self._c, default=0)
        for d in range(top, -1, -1):
            out = out * g + self[d]
        return out

    def derivative_at_zero(self, k: int):
        from math import factorial
        return self[k] * factorial(k)

    def eval_numeric(self, t: float) -> float:
        total = 0.0
        for d in range(max(self._c, default=0), -1, -1):
            total = total * t + float(self[d])
        return total


@dataclass(frozen=True)
class MapGerm:
    """Three component jets (x, y, z) of a map germ (R^2,0) -> (R^3,0)."""

    components: tuple

    def __post_init__(self):
        comps = tuple(self.components)
        if len(comps) != 3:
            raise JetError("a map germ has three components")
        orders = {c.order for c in comps}
        if len(orders) != 1:
            raise JetError("components must share one truncation order")
        for c in comps:
            if c[(0, 0)] != 0:
                raise JetError("germ must map the origin to the origin")
        object.__setattr__(self, "components", comps)

    @property
    def order(self) -> int:
        return self.components[0].order

    def __getitem__(self, k):
        return self.components[k]

    def diff(self, var: str) -> tuple:
        return tuple(c.diff(var) for c in self.components)

    def compose(self, su: Jet2, sv: Jet2) -> "MapGerm":
        return MapGerm(tuple(compose2(c, su, sv) for c in self.components))

    def rotate(self, M) -> "MapGerm":
        """Apply a 3x3 matrix (rows of exact scalars) in the target."""
        comps = []
        for row in M:
            acc = Jet2.zero(self.order)
            for coef, comp in zip(row, self.components):
                if coef != 0:
                    acc = acc + comp.scale(coef)
            comps.append(acc)
        return MapGerm(tuple(comps))

    def eval_numeric(self, u: float, v: float) -> tuple:
        return tuple(c.eval_numeric(u, v) for c in self.components)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)


def dot3(a: Iterable, b: Iterable):
    a, b = list(a), list(b)
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def cross3(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])
