"""Exact projective points over the rationals.

A point of P^n(Q) is stored by its canonical integer representative:
coprime integer coordinates whose first nonzero entry is positive.  All
equality tests in the package reduce to tuple equality of these
representatives.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import AllZero

# Arbitrary-precision rationals are stdlib fractions throughout the package.
BigRational = Fraction


def _gcd_all(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = math.gcd(g, v)
        if g == 1:
            return 1
    return g


class RationalProjectivePoint:
    """Canonical reduced integer representative of a point of P^n(Q)."""

    __slots__ = ("coords",)

    def __init__(self, coords: Sequence[int], _normalized: bool = False):
        if _normalized:
            self.coords = tuple(coords)
            return
        ints = [int(c) for c in coords]
        if all(c == 0 for c in ints):
            raise AllZero("projective point needs a nonzero coordinate")
        g = _gcd_all(ints)
        ints = [c // g for c in ints]
        for c in ints:
            if c != 0:
                if c < 0:
                    ints = [-x for x in ints]
                break
        self.coords = tuple(ints)

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalProjectivePoint) and self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def __repr__(self) -> str:
        return "[" + ":".join(str(c) for c in self.coords) + "]"

    def __len__(self) -> int:
        return len(self.coords)


def normalize_projective(raw_coords: Sequence) -> RationalProjectivePoint:
    """Clear denominators and reduce to the canonical integer representative.

    Accepts any mix of ints and Fractions.  Raises AllZero when every
    coordinate vanishes.
    """
    fracs = [Fraction(c) for c in raw_coords]
    if all(f == 0 for f in fracs):
        raise AllZero("projective point needs a nonzero coordinate")
    lcm = 1
    for f in fracs:
        lcm = lcm * f.denominator // math.gcd(lcm, f.denominator)
    return RationalProjectivePoint([f.numerator * (lcm // f.denominator) for f in fracs])


def log_abs_int(n: int) -> float:
    """Natural log of |n| for arbitrarily large n (n must be nonzero)."""
    n = abs(n)
    if n == 0:
        raise ValueError("log of zero")
    bits = n.bit_length()
    if bits <= 512:
        return math.log(n)
    # keep the top 512 bits; the discarded tail shifts the log by < 2^-500
    shift = bits - 512
    return math.log(n >> shift) + shift * math.log(2)


def log_height_rational(x: Fraction) -> float:
    """Weil height of a rational number: h([x:1]) = log max(|num|, den)."""
    x = Fraction(x)
    return log_abs_int(max(abs(x.numerator), x.denominator))
