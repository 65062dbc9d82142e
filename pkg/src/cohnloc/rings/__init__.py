"""Scalar rings, polynomials and exact linear algebra."""
from .eisenstein import Eisenstein
from .plocal import QQ, ZZ, IntegerRing, LocalRing, PLocalRational, RationalField, plocal_invert
from .poly import Polynomial, RationalFunction, poly_gcd

__all__ = [
    "Eisenstein", "QQ", "ZZ", "IntegerRing", "LocalRing", "PLocalRational", "RationalField",
    "plocal_invert", "Polynomial", "RationalFunction", "poly_gcd",
]
