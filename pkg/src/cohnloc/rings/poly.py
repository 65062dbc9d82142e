"""Univariate polynomials and rational functions over an exact field."""
from __future__ import annotations

from fractions import Fraction
from itertools import zip_longest

from ..errors import InputError


def _trim(coeffs):
    # ints become Fractions so that division stays exact
    coeffs = [Fraction(c) if isinstance(c, int) else c for c in coeffs]
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return tuple(coeffs)


class Polynomial:
    """Coefficients are stored low degree first with no trailing zeros."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        self.coeffs = _trim(coeffs)

    @classmethod
    def constant(cls, c):
        return cls([c])

    @classmethod
    def variable(cls, one=1):
        return cls([0 * one, one])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def leading(self):
        return self.coeffs[-1]

    def __bool__(self):
        return bool(self.coeffs)

    @staticmethod
    def _lift(x):
        return x if isinstance(x, Polynomial) else Polynomial([x])

    def __add__(self, other):
        o = self._lift(other)
        return Polynomial(a + b for a, b in zip_longest(self.coeffs, o.coeffs, fillvalue=0))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        if not self.coeffs or not o.coeffs:
            return Polynomial()
        out = [0] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for k, b in enumerate(o.coeffs):
                out[i + k] = a * b + out[i + k]
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        result = Polynomial([1])
        for _ in range(k):
            result = result * self
        return result

    def __divmod__(self, other):
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [0] * max(len(rem) - other.degree, 0)
        lead = other.leading
        while len(rem) > other.degree and rem:
            shift = len(rem) - 1 - other.degree
            c = rem[-1] / lead
            q[shift] = c
            for i, b in enumerate(other.coeffs):
                rem[shift + i] = rem[shift + i] - c * b
            rem = list(_trim(rem))
        return Polynomial(q), Polynomial(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self):
        lead = self.leading
        return Polynomial(c / lead for c in self.coeffs)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        o = self._lift(other)
        return len(self.coeffs) == len(o.coeffs) and all(
            a == b for a, b in zip(self.coeffs, o.coeffs))

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if not mono:
                terms.append(f"({c})")
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"({c}){mono}")
        return " + ".join(terms)


def poly_gcd(a, b):
    """Monic gcd (the zero polynomial if both inputs vanish)."""
    while b:
        a, b = b, a % b
    return a.monic() if a else a


class RationalFunction:
    """``num / den`` reduced by the gcd, with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = Polynomial._lift(num)
        den = Polynomial([1]) if den is None else Polynomial._lift(den)
        if not den:
            raise InputError("zero denominator")
        if not num:
            self.num, self.den = Polynomial(), Polynomial([1])
            return
        g = poly_gcd(num, den)
        num, den = num // g, den // g
        lead = den.leading
        self.num = Polynomial(c / lead for c in num.coeffs)
        self.den = den.monic()

    @staticmethod
    def _lift(x):
        return x if isinstance(x, RationalFunction) else RationalFunction(x)

    def __add__(self, other):
        o = self._lift(other)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if not o.num:
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        o = self._lift(other)
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalFunction({self.num!r}, {self.den!r})"

    def __str__(self):
        if self.den.degree == 0:
            return str(self.num)
        return f"[{self.num}] / [{self.den}]"
