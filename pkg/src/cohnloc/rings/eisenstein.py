"""Eisenstein numbers ``a + b j`` with ``j`` a primitive cube root of unity.

Coefficients are rationals, so this is the field Q(j); the ring Z[j] is the
subset with integral coordinates (:meth:`Eisenstein.is_integral`).
"""
from __future__ import annotations

from fractions import Fraction


class Eisenstein:
    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    @classmethod
    def j(cls):
        return cls(0, 1)

    @staticmethod
    def _lift(x):
        if isinstance(x, Eisenstein):
            return x
        if isinstance(x, (int, Fraction)):
            return Eisenstein(x, 0)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Eisenstein(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return Eisenstein(-self.a, -self.b)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Eisenstein(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        # j^2 = -1 - j
        bd = self.b * o.b
        return Eisenstein(self.a * o.a - bd, self.a * o.b + self.b * o.a - bd)

    __rmul__ = __mul__

    def conjugate(self):
        """Complex conjugate ``a + b j^2``."""
        return Eisenstein(self.a - self.b, -self.b)

    def norm(self):
        return self.a * self.a - self.a * self.b + self.b * self.b

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(j)")
        c = self * o.conjugate()
        return Eisenstein(c.a / n, c.b / n)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k):
        result, base = Eisenstein(1), self
        if k < 0:
            base, k = Eisenstein(1) / base, -k
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def is_integral(self):
        return self.a.denominator == 1 and self.b.denominator == 1

    def __repr__(self):
        return f"Eisenstein({self.a}, {self.b})"

    def __str__(self):
        if not self.b:
            return str(self.a)
        if not self.a:
            return f"{self.b}j" if self.b != 1 else "j"
        sign = "+" if self.b > 0 else "-"
        mag = abs(self.b)
        return f"{self.a}{sign}{'' if mag == 1 else mag}j"


J = Eisenstein.j()
