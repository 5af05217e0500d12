"""Height functions on the Legendre family.

Weil heights are exact-arithmetic logs of reduced integer coordinates.
The canonical (quadratic) height comes from the doubling-limit engine in
tate.py with a certified error bound; torsion points short-circuit to an
exact zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .legendre import LegendreFiberPoint, ProductFiberPoint, rational_torsion_order
from .projective import RationalProjectivePoint, log_abs_int, log_height_rational
from .tate import DoublingData, doubling_data, tate_limit


def weil_height(p: RationalProjectivePoint) -> float:
    """log max |c_i| over the canonical reduced integer coordinates."""
    return log_abs_int(max(abs(c) for c in p.coords))


def lambda_height(lam) -> float:
    """Height of the base point [lambda : 1] in P^1."""
    return log_height_rational(Fraction(lam))


def total_height(point: ProductFiberPoint) -> float:
    """Sum of the component Weil heights plus the base height."""
    return sum(weil_height(c.point) for c in point.components) + lambda_height(point.lam)


def segre_point(point: ProductFiberPoint) -> RationalProjectivePoint:
    """Canonical Segre image in P^(2*3^g - 1): all cross-factor products."""
    lam = Fraction(point.lam)
    vectors = [c.point.coords for c in point.components]
    vectors.append((lam.numerator, lam.denominator))
    products = [1]
    for vec in vectors:
        products = [p * c for p in products for c in vec]
    return RationalProjectivePoint(products)


def segre_height(point: ProductFiberPoint) -> float:
    """Weil height of the Segre image.

    Equals total_height as a real number: the Segre coordinates stay
    coprime and their max modulus is the product of the factor maxima, so
    the identity is exact at the integer level (the float values agree to
    rounding of the final log).
    """
    return weil_height(segre_point(point))


@dataclass
class NTEstimate:
    """Canonical-height estimate from depth N of the doubling limit."""

    value: float
    depth: int
    error_bound: float


_DOUBLING_CACHE: dict[Fraction, DoublingData] = {}


def _doubling(lam: Fraction) -> DoublingData:
    if lam not in _DOUBLING_CACHE:
        _DOUBLING_CACHE[lam] = doubling_data(lam)
    return _DOUBLING_CACHE[lam]


def neron_tate(
    p: LegendreFiberPoint,
    tolerance: float = 1e-8,
    *,
    bit_budget: int = 1 << 20,
    exact_switch_bits: int = 16384,
    max_depth: int = 64,
    tracked: bool = True,
) -> NTEstimate:
    """Canonical height by the doubling limit, certified to the tolerance.

    Rational torsion (including the identity) returns an exact zero.  With
    tracked=False the orbit stays in exact integers and NonConvergence is
    raised once coordinates outgrow bit_budget before the tail bound drops
    under the tolerance.
    """
    if p.is_identity() or rational_torsion_order(p) is not None:
        return NTEstimate(0.0, 0, 0.0)
    x, _, z = p.point.coords
    g = math.gcd(x, z)
    limit = tate_limit(
        _doubling(p.lam),
        x // g,
        z // g,
        tolerance,
        bit_budget=bit_budget,
        exact_switch_bits=exact_switch_bits,
        max_depth=max_depth,
        tracked=tracked,
    )
    return NTEstimate(limit.value, limit.depth, limit.error_bound)


def neron_tate_product(
    point: ProductFiberPoint, tolerance: float = 1e-8, **kwargs
) -> NTEstimate:
    """Componentwise sum of canonical heights; errors add up to tolerance."""
    per = tolerance / len(point.components)
    value = 0.0
    err = 0.0
    depth = 0
    for c in point.components:
        est = neron_tate(c, per, **kwargs)
        value += est.value
        err += est.error_bound
        depth = max(depth, est.depth)
    return NTEstimate(value, depth, err)


def silverman_tate_ratio(point: ProductFiberPoint, tolerance: float = 1e-8, **kwargs) -> float:
    """|total height - canonical height| / max(1, h(lambda)).

    The comparison theorem bounds this by an absolute constant over the
    whole family; the experiments record the empirical maximum.
    """
    nt = neron_tate_product(point, tolerance, **kwargs)
    return abs(total_height(point) - nt.value) / max(1.0, lambda_height(point.lam))


def _factorize(n: int) -> dict[int, int]:
    factors: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def szpiro_ullmo_bound(n: int, faltings_h: float, c: float) -> float:
    """Isogeny-growth lower bound for the Faltings height.

    Value of  faltings_h + (1/2) log n - sum_{p | n} ((p^e - 1) /
    ((p^2 - 1) p^(e-1))) log p - c  where e is the exponent of p in n.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    correction = 0.0
    for p, e in _factorize(n).items():
        correction += float(Fraction(p**e - 1, (p * p - 1) * p ** (e - 1))) * math.log(p)
    return faltings_h + 0.5 * math.log(n) - correction - c
