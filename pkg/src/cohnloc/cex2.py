"""A representation of Z/2 * Z/3 in 2x2 matrices over Q(j)(t).

In the free product ``<x, y | x^2 = y^3 = 1>`` the coprime-order elements
``x`` and ``y`` do not commute in the localization, and ``(1-x)(1-y)`` does
not vanish there.  The representation below factors through the
localization, so the nonzero images certify this.
"""
from __future__ import annotations

from .errors import TheoremViolation
from .rings.eisenstein import Eisenstein
from .rings.poly import Polynomial, RationalFunction

ONE = Eisenstein(1)
J = Eisenstein.j()


def K(*coeffs):
    """Rational function from polynomial coefficients (low degree first)."""
    return RationalFunction(Polynomial([Eisenstein(c) if not isinstance(c, Eisenstein) else c
                                        for c in coeffs]))


T = K(0, 1)


class Mat2K:
    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        self.a, self.b, self.c, self.d = (RationalFunction._lift(x) if not isinstance(
            x, (int, Eisenstein)) else K(x) for x in (a, b, c, d))

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 1)

    @classmethod
    def scalar(cls, s):
        return cls(s, 0, 0, s)

    def __add__(self, o):
        return Mat2K(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    def __sub__(self, o):
        return Mat2K(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)

    def __rsub__(self, other):
        return Mat2K.scalar(other) - self

    def __mul__(self, o):
        if not isinstance(o, Mat2K):
            o = RationalFunction._lift(o) if not isinstance(o, (int, Eisenstein)) else K(o)
            return Mat2K(self.a * o, self.b * o, self.c * o, self.d * o)
        return Mat2K(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                     self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def __rmul__(self, s):
        return self * s

    def det(self):
        return self.a * self.d - self.b * self.c

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def is_zero(self):
        return not any(self.entries())

    def __eq__(self, o):
        return isinstance(o, Mat2K) and all(x == y for x, y in zip(self.entries(), o.entries()))

    def __hash__(self):
        return hash(self.entries())

    def __str__(self):
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"

    __repr__ = __str__


def cex2_generators():
    """Images of ``x`` (order 2) and ``y`` (order 3)."""
    x = Mat2K(T, 1, 1 - T * T, -T)
    y = Mat2K(1, 0, 0, K(J))
    if x * x != Mat2K.identity():
        raise TheoremViolation("image of x does not square to 1")
    if y * y * y != Mat2K.identity():
        raise TheoremViolation("image of y does not cube to 1")
    return x, y


def expected_products():
    """The three products in closed form, factored as printed in the literature."""
    u = K(ONE - J)
    return (
        Mat2K(0, -1, 0, 1 + T) * u,
        Mat2K(0, 0, T - 1, 1) * (u * (1 + T)),
        Mat2K(0, -1, 1 - T * T, 0) * u,
    )


def cex2_products():
    """Images of ``(1-x)(1-y)``, ``(1-y)(1-x)`` and ``xy - yx``, checked exactly."""
    x, y = cex2_generators()
    one = Mat2K.identity()
    got = ((one - x) * (one - y), (one - y) * (one - x), x * y - y * x)
    for g, e in zip(got, expected_products()):
        if g != e:
            raise TheoremViolation(f"computed {g} differs from {e}")
        if g.is_zero():
            raise TheoremViolation("product vanishes")
    return got
