"""The Legendre curve zy^2 = x(x-z)(x-lambda*z) and its exact group law over Q.

Points are canonical reduced projective triples together with the base
parameter lambda.  The identity is [0:1:0], the unique point at infinity.
All arithmetic is exact; the chord-tangent formulas work in the affine
chart y^2 = x(x-1)(x-lambda) with explicit special cases.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import BadLambda, LambdaMismatch
from .projective import RationalProjectivePoint, normalize_projective

IDENTITY_COORDS = (0, 1, 0)


def _check_lambda(lam: Fraction) -> Fraction:
    lam = Fraction(lam)
    if lam == 0 or lam == 1:
        raise BadLambda(f"lambda = {lam} is a singular fiber")
    return lam


class LegendreCurve:
    """A fiber E_lambda of the Legendre family, lambda not in {0, 1}."""

    __slots__ = ("lam",)

    def __init__(self, lam):
        self.lam = _check_lambda(lam)

    def identity(self) -> "LegendreFiberPoint":
        return LegendreFiberPoint(RationalProjectivePoint(IDENTITY_COORDS), self.lam)

    def point(self, x, y, z=1) -> "LegendreFiberPoint":
        return LegendreFiberPoint(normalize_projective([x, y, z]), self.lam)

    def j_invariant(self) -> Fraction:
        lam = self.lam
        return 256 * (lam * lam - lam + 1) ** 3 / (lam * lam * (lam - 1) ** 2)

    def __repr__(self):
        return f"LegendreCurve(lambda={self.lam})"


def on_curve(p: RationalProjectivePoint, lam) -> bool:
    """Exact test of z*y^2 = x(x-z)(x-lambda*z) for p = [x:y:z] in P^2."""
    lam = _check_lambda(lam)
    if len(p.coords) != 3:
        raise ValueError("point must lie in P^2")
    x, y, z = p.coords
    u, v = lam.numerator, lam.denominator
    # multiplied through by v to stay in Z
    return v * z * y * y == x * (x - z) * (v * x - u * z)


class LegendreFiberPoint:
    """A rational point of E_lambda in canonical projective coordinates."""

    __slots__ = ("point", "lam")

    def __init__(self, point: RationalProjectivePoint, lam):
        lam = _check_lambda(lam)
        if not on_curve(point, lam):
            raise ValueError(f"{point} does not satisfy the curve equation at lambda={lam}")
        self.point = point
        self.lam = lam

    def is_identity(self) -> bool:
        return self.point.coords == IDENTITY_COORDS

    def affine(self) -> tuple[Fraction, Fraction]:
        x, y, z = self.point.coords
        if z == 0:
            raise ValueError("identity has no affine coordinates")
        return Fraction(x, z), Fraction(y, z)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LegendreFiberPoint)
            and self.lam == other.lam
            and self.point == other.point
        )

    def __hash__(self):
        return hash((self.point, self.lam))

    def __repr__(self):
        return f"{self.point} on E_{self.lam}"

    def __neg__(self):
        return neg(self)

    def __add__(self, other):
        return add(self, other)


def neg(p: LegendreFiberPoint) -> LegendreFiberPoint:
    if p.is_identity():
        return p
    x, y, z = p.point.coords
    return LegendreFiberPoint(RationalProjectivePoint([x, -y, z]), p.lam)


def add(p: LegendreFiberPoint, q: LegendreFiberPoint) -> LegendreFiberPoint:
    """Chord-tangent sum with identity [0:1:0]."""
    if p.lam != q.lam:
        raise LambdaMismatch(f"{p.lam} != {q.lam}")
    lam = p.lam
    if p.is_identity():
        return q
    if q.is_identity():
        return p
    x1, y1 = p.affine()
    x2, y2 = q.affine()
    if x1 == x2:
        if y1 == -y2:
            return LegendreCurve(lam).identity()
        # tangent line; y1 = y2 != 0 here since y = 0 points are 2-torsion
        m = (3 * x1 * x1 - 2 * (1 + lam) * x1 + lam) / (2 * y1)
    else:
        m = (y2 - y1) / (x2 - x1)
    x3 = m * m + (1 + lam) - x1 - x2
    y3 = m * (x1 - x3) - y1
    return LegendreFiberPoint(normalize_projective([x3, y3, 1]), lam)


def mul_n(p: LegendreFiberPoint, n: int) -> LegendreFiberPoint:
    """[n]P by double-and-add; negative n via the inverse."""
    if n < 0:
        return mul_n(neg(p), -n)
    result = LegendreCurve(p.lam).identity()
    addend = p
    while n:
        if n & 1:
            result = add(result, addend)
        n >>= 1
        if n:
            addend = add(addend, addend)
    return result


def rational_torsion_order(p: LegendreFiberPoint, bound: int = 12) -> int | None:
    """Smallest n <= bound with [n]P = O, else None.

    bound 12 suffices for points over Q by Mazur's classification of
    rational torsion.
    """
    acc = p
    for n in range(1, bound + 1):
        if acc.is_identity():
            return n
        acc = add(acc, p)
    return None


class ProductFiberPoint:
    """A point of the g-fold fibered power: g fiber points sharing one lambda."""

    __slots__ = ("components", "lam")

    def __init__(self, components):
        components = tuple(components)
        if not components:
            raise ValueError("need g >= 1 components")
        lam = components[0].lam
        for c in components[1:]:
            if c.lam != lam:
                raise LambdaMismatch("components live over different lambdas")
        self.components = components
        self.lam = lam

    @property
    def g(self) -> int:
        return len(self.components)

    def __eq__(self, other):
        return (
            isinstance(other, ProductFiberPoint)
            and self.components == other.components
        )

    def __repr__(self):
        pts = ", ".join(repr(c.point) for c in self.components)
        return f"({pts}) on E_{self.lam}^{self.g}"
