"""Scalar rings: Z, Q and the localizations Z_(p)."""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from sympy.ntheory import isprime

from ..errors import InputError, NotAUnit, NotPrime, RingMismatch


def p_part(n, p):
    """Largest power of ``p`` dividing the nonzero integer ``n``."""
    n, q = abs(n), 1
    while n % p == 0:
        n //= p
        q *= p
    return q


class PLocalRational:
    """A rational ``a/b`` with ``b`` prime to ``p``, i.e. an element of Z_(p)."""

    __slots__ = ("p", "value")

    def __init__(self, value, p):
        value = Fraction(value)
        if value.denominator % p == 0:
            raise InputError(f"{value} is not {p}-local")
        self.p = p
        self.value = value

    def _coerce(self, other):
        if isinstance(other, PLocalRational):
            if other.p != self.p:
                raise RingMismatch(f"Z_({self.p}) vs Z_({other.p})")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def _make(self, v):
        obj = object.__new__(PLocalRational)
        obj.p, obj.value = self.p, v
        return obj

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._make(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._make(self.value - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._make(o - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._make(self.value * o)

    __rmul__ = __mul__

    def __neg__(self):
        return self._make(-self.value)

    def __eq__(self, other):
        if isinstance(other, PLocalRational):
            return self.p == other.p and self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.value))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"PLocalRational({self.value}, p={self.p})"

    def __str__(self):
        return str(self.value)

    def is_unit(self):
        return self.value.numerator % self.p != 0

    def valuation(self):
        if not self.value:
            return None
        n, k = self.value.numerator, 0
        while n % self.p == 0:
            n //= self.p
            k += 1
        return k

    def invert(self):
        if not self.is_unit():
            raise NotAUnit(f"{self.value} is not a unit of Z_({self.p})")
        return self._make(1 / self.value)


def plocal_invert(x):
    return x.invert()


class IntegerRing:
    """Z, with elements stored as Python ints."""

    name = "Z"
    zero = 0
    one = 1

    def __call__(self, x):
        if isinstance(x, PLocalRational):
            x = x.value
        x = Fraction(x)
        if x.denominator != 1:
            raise InputError(f"{x} is not an integer")
        return int(x)

    def is_unit(self, x):
        return x in (1, -1)

    def inverse(self, x):
        if x not in (1, -1):
            raise NotAUnit(f"{x} is not a unit of Z")
        return x

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash("Z")

    def __repr__(self):
        return "ZZ"


class RationalField:
    name = "Q"
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, x):
        if isinstance(x, PLocalRational):
            x = x.value
        return Fraction(x)

    def is_unit(self, x):
        return x != 0

    def inverse(self, x):
        if x == 0:
            raise NotAUnit("0 is not invertible")
        return 1 / Fraction(x)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


class LocalRing:
    """Z_(p); elements are :class:`PLocalRational`."""

    def __init__(self, p):
        if not isprime(p):
            raise NotPrime(f"{p} is not prime")
        self.p = p
        self.name = f"Z_({p})"
        self.zero = PLocalRational(0, p)
        self.one = PLocalRational(1, p)

    def __call__(self, x):
        if isinstance(x, PLocalRational):
            if x.p != self.p:
                raise RingMismatch(f"Z_({x.p}) element in Z_({self.p})")
            return x
        if isinstance(x, (int, Rational, str)):
            return PLocalRational(x, self.p)
        raise InputError(f"cannot interpret {x!r} in {self.name}")

    def is_unit(self, x):
        return self(x).is_unit()

    def inverse(self, x):
        return self(x).invert()

    def __eq__(self, other):
        return isinstance(other, LocalRing) and other.p == self.p

    def __hash__(self):
        return hash(("Z_(p)", self.p))

    def __repr__(self):
        return f"LocalRing({self.p})"


ZZ = IntegerRing()
QQ = RationalField()
