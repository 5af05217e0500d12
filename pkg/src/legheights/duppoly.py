"""Multiplication-by-2^N polynomials for the Legendre family.

The three level-1 polynomials G0, G1, G2 in Z[X0,X1,X2,X3] describe point
doubling projectively: [2]([x:y:z], lam) = [G0:G1:G2](x, y, z, lam).
Level N+1 arises by substituting a level-N triple into the level-1 triple,
leaving X3 (the base parameter) alone.  Each level-N component is
homogeneous of degree 4^N in X0, X1, X2, of degree at most 4^N - 1 in X3,
hence of total degree at most 2*4^N.

Symbolic lifting beyond level 2 goes through a packed-integer (Kronecker)
multiplication on dehomogenized exponent data; the generic substitution
path would take hours there.  Point evaluation never builds the big
polynomials: it iterates the level-1 triple.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import AllZero
from .intpoly import IntPolynomial, poly_compose, poly_eval
from .legendre import LegendreCurve, LegendreFiberPoint
from .projective import RationalProjectivePoint

try:
    from gmpy2 import mpz as _mpz
except ImportError:  # pragma: no cover - gmpy2 is an optional speedup
    _mpz = None

VARS = ("X0", "X1", "X2", "X3")

# level-1 doubling triple; exponent order (X0, X1, X2, X3)
_G10_TERMS = {
    (0, 1, 3, 2): 2,
    (3, 1, 0, 1): 2,
    (2, 1, 1, 1): -6,
    (3, 1, 0, 0): 2,
    (1, 3, 0, 0): 2,
}
_G11_TERMS = {
    (2, 0, 2, 3): -4,
    (1, 0, 3, 3): 6,
    (0, 0, 4, 3): -1,
    (4, 0, 0, 2): -1,
    (3, 0, 1, 2): 9,
    (2, 0, 2, 2): -17,
    (1, 0, 3, 2): 6,
    (0, 2, 2, 2): -4,
    (4, 0, 0, 1): -2,
    (3, 0, 1, 1): 9,
    (2, 0, 2, 1): -4,
    (1, 2, 1, 1): 3,
    (0, 2, 2, 1): -4,
    (4, 0, 0, 0): -1,
    (0, 4, 0, 0): 1,
}
_G12_TERMS = {(0, 3, 1, 0): 8}


@dataclass(frozen=True)
class DuplicationTriple:
    """The polynomials describing [2^level] on the family."""

    level: int
    g0: IntPolynomial
    g1: IntPolynomial
    g2: IntPolynomial

    def __post_init__(self):
        d = 4**self.level
        for g in (self.g0, self.g1, self.g2):
            if g.homogeneous_degree_in(("X0", "X1", "X2")) != d:
                raise ValueError(f"component not homogeneous of degree {d} in X0..X2")
            if g.degree_in("X3") > d - 1:
                raise ValueError(f"X3-degree exceeds {d - 1}")
            if g.total_degree() > 2 * d:
                raise ValueError(f"total degree exceeds {2 * d}")

    def components(self) -> tuple[IntPolynomial, IntPolynomial, IntPolynomial]:
        return (self.g0, self.g1, self.g2)


def base_triple() -> DuplicationTriple:
    """The verbatim level-1 doubling polynomials."""
    return DuplicationTriple(
        1,
        IntPolynomial(VARS, _G10_TERMS),
        IntPolynomial(VARS, _G11_TERMS),
        IntPolynomial(VARS, _G12_TERMS),
    )


def lift_triple(t: DuplicationTriple, fast: bool | None = None) -> DuplicationTriple:
    """Level N -> N+1 by substitution into the level-1 triple.

    fast=None picks the packed-multiplication path automatically for
    level >= 2 inputs; fast=False forces the generic substitution (used to
    cross-check the packed path).
    """
    if fast is None:
        fast = t.level >= 2
    if not fast:
        base = base_triple()
        x3 = IntPolynomial.variable(VARS, "X3")
        inner = [t.g0, t.g1, t.g2, x3]
        return DuplicationTriple(
            t.level + 1,
            poly_compose(base.g0, inner),
            poly_compose(base.g1, inner),
            poly_compose(base.g2, inner),
        )
    return _lift_fast(t)


_TRIPLE_CACHE: dict[int, DuplicationTriple] = {}


def triple(level: int, cap: int = 4) -> DuplicationTriple:
    """Cached duplication triple for 1 <= level <= cap.

    Level 4 is allowed but expensive (the components carry millions of
    terms); levels above the cap are refused to avoid runaway growth.
    """
    if level < 1:
        raise ValueError("level must be >= 1")
    if level > cap:
        raise ValueError(f"level {level} above cap {cap}")
    if level not in _TRIPLE_CACHE:
        t = base_triple() if level == 1 else lift_triple(triple(level - 1, cap))
        _TRIPLE_CACHE[level] = t
    return _TRIPLE_CACHE[level]


def dup_apply(p: LegendreFiberPoint, n: int) -> LegendreFiberPoint:
    """[2^n]P by n exact evaluations of the level-1 triple."""
    if n < 1:
        raise ValueError("n must be >= 1")
    base = base_triple()
    lam = p.lam
    coords = p.point.coords
    for _ in range(n):
        args = [Fraction(coords[0]), Fraction(coords[1]), Fraction(coords[2]), lam]
        vals = [poly_eval(g, args) for g in base.components()]
        if all(v == 0 for v in vals):
            raise AllZero("doubling triple vanished on a curve point")
        # clear the lambda denominators (degree <= 3 in X3) and reduce
        scale = lam.denominator**3
        pt = RationalProjectivePoint([int(v * scale) for v in vals])
        coords = pt.coords
    return LegendreFiberPoint(RationalProjectivePoint(coords), lam)


def emit_terms(t: DuplicationTriple) -> str:
    """Plain-text term listing: one `e0 e1 e2 e3 coefficient` line per term.

    Components are introduced by `component i` lines; the header records
    the level and variable order.  Terms are sorted for reproducibility.
    """
    lines = [f"# duplication triple level {t.level}", "# variables X0 X1 X2 X3"]
    for i, g in enumerate(t.components()):
        lines.append(f"component {i}")
        for expo in sorted(g.terms):
            lines.append(" ".join(str(e) for e in expo) + f" {g.terms[expo]}")
    return "\n".join(lines) + "\n"


def specialize_scaling(level: int, x0: int, x1: int, x2: int, lam: int = 7) -> list[IntPolynomial]:
    """Exact univariate certificates g_i(T) = G_i(T*x0, T*x1, T*x2, lam).

    Used to probe homogeneity at levels where the full expansion is
    impractical: for a homogeneous component the result collapses to a
    single power of T.  Returns polynomials in the variable T obtained by
    iterated substitution, never expanding the big triple.
    """
    one = ("T",)
    tv = IntPolynomial.variable(one, "T")
    cur = [
        IntPolynomial.constant(one, x0) * tv,
        IntPolynomial.constant(one, x1) * tv,
        IntPolynomial.constant(one, x2) * tv,
    ]
    lam_stub = IntPolynomial.constant(one, lam)
    base = base_triple()
    for _ in range(level):
        cur = [poly_compose(g, [cur[0], cur[1], cur[2], lam_stub]) for g in base.components()]
    return cur


def x3_degree_certificate(level: int, x0: int, x1: int, x2: int) -> list[IntPolynomial]:
    """Exact univariate polynomials G_i(x0, x1, x2, X3) by iterated substitution."""
    one = ("X3",)
    x3 = IntPolynomial.variable(one, "X3")
    cur = [IntPolynomial.constant(one, v) for v in (x0, x1, x2)]
    base = base_triple()
    for _ in range(level):
        cur = [poly_compose(g, [cur[0], cur[1], cur[2], x3]) for g in base.components()]
    return cur


# ---------------------------------------------------------------------------
# packed (Kronecker) lifting
# ---------------------------------------------------------------------------
# A component homogeneous of degree m in X0,X1,X2 is stored as
# {(e0, e1, e3): c} with the X2 exponent m - e0 - e1 implicit.  Products of
# two such forms become one multiplication of packed integers: slot index
# (e0 * n1 + e1) * n3 + e3, fixed slot width, balanced-digit extraction.


class _DehomForm:
    __slots__ = ("m", "d3", "terms")

    def __init__(self, m: int, d3: int, terms: dict):
        self.m = m
        self.d3 = d3
        self.terms = terms

    @classmethod
    def from_poly(cls, g: IntPolynomial, m: int) -> "_DehomForm":
        terms = {}
        d3 = 0
        for (e0, e1, e2, e3), c in g.terms.items():
            if e0 + e1 + e2 != m:
                raise ValueError("not homogeneous of the stated degree")
            terms[(e0, e1, e3)] = c
            d3 = max(d3, e3)
        return cls(m, d3, terms)

    def to_poly(self) -> IntPolynomial:
        out = {}
        for (e0, e1, e3), c in self.terms.items():
            e2 = self.m - e0 - e1
            if e2 < 0:
                raise ValueError("negative implicit exponent; not a valid form")
            out[(e0, e1, e2, e3)] = c
        return IntPolynomial(VARS, out)

    def max_abs(self) -> int:
        return max((abs(c) for c in self.terms.values()), default=0)

    def shift_x3(self, d: int) -> "_DehomForm":
        if d == 0:
            return self
        return _DehomForm(
            self.m, self.d3 + d, {(e0, e1, e3 + d): c for (e0, e1, e3), c in self.terms.items()}
        )

    def scaled(self, k: int) -> "_DehomForm":
        return _DehomForm(self.m, self.d3, {e: k * c for e, c in self.terms.items()})


def _accumulate(target: dict, form: _DehomForm, coef: int, d_shift: int):
    for (e0, e1, e3), c in form.terms.items():
        key = (e0, e1, e3 + d_shift)
        s = target.get(key, 0) + coef * c
        if s:
            target[key] = s
        else:
            del target[key]


def _pack(form: _DehomForm, n1: int, n3: int, wbytes: int, nslots: int) -> int:
    pos = bytearray(nslots * wbytes + 1)
    neg = bytearray(nslots * wbytes + 1)
    for (e0, e1, e3), c in form.terms.items():
        idx = ((e0 * n1 + e1) * n3 + e3) * wbytes
        if c > 0:
            pos[idx : idx + wbytes] = c.to_bytes(wbytes, "little")
        else:
            neg[idx : idx + wbytes] = (-c).to_bytes(wbytes, "little")
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _mul_forms(a: _DehomForm, b: _DehomForm) -> _DehomForm:
    m = a.m + b.m
    d3 = a.d3 + b.d3
    n1 = m + 1
    n3 = d3 + 1
    nslots = (m + 1) * n1 * n3
    bound = min(len(a.terms), len(b.terms)) * a.max_abs() * b.max_abs()
    wbits = max(bound.bit_length() + 3, 16)
    wbytes = (wbits + 7) // 8
    wbits = wbytes * 8
    half = 1 << (wbits - 1)
    full = 1 << wbits
    xa = _pack(a, n1, n3, wbytes, nslots)
    xb = _pack(b, n1, n3, wbytes, nslots)
    if _mpz is not None:
        prod = int(_mpz(xa) * _mpz(xb))
    else:
        prod = xa * xb
    sign = 1
    if prod < 0:
        prod = -prod
        sign = -1
    raw = prod.to_bytes(nslots * wbytes + 16, "little")
    terms = {}
    carry = 0
    for idx in range(nslots):
        d = int.from_bytes(raw[idx * wbytes : (idx + 1) * wbytes], "little") + carry
        if d >= half:
            d -= full
            carry = 1
        else:
            carry = 0
        if d:
            e3 = idx % n3
            rest = idx // n3
            e1 = rest % n1
            e0 = rest // n1
            terms[(e0, e1, e3)] = sign * d
    if carry:
        raise ArithmeticError("packed multiplication overflowed its slot width")
    return _DehomForm(m, d3, terms)


def _lift_fast(t: DuplicationTriple) -> DuplicationTriple:
    m = 4**t.level
    forms = [_DehomForm.from_poly(g, m) for g in t.components()]
    pair_cache: dict[tuple[int, int], _DehomForm] = {}

    def pair(i: int, j: int) -> _DehomForm:
        key = (min(i, j), max(i, j))
        if key not in pair_cache:
            pair_cache[key] = _mul_forms(forms[key[0]], forms[key[1]])
        return pair_cache[key]

    quad_cache: dict[tuple[int, ...], _DehomForm] = {}

    def quad(a: int, b: int, c: int) -> _DehomForm:
        # product forms[0]^a * forms[1]^b * forms[2]^c with a+b+c = 4,
        # assembled from two cached pairwise products
        factors = [0] * a + [1] * b + [2] * c
        key = tuple(factors)
        if key not in quad_cache:
            quad_cache[key] = _mul_forms(pair(factors[0], factors[1]), pair(factors[2], factors[3]))
        return quad_cache[key]

    base = base_triple()
    out_polys = []
    for g in base.components():
        acc: dict = {}
        for (a, b, c, d), coef in g.terms.items():
            _accumulate(acc, quad(a, b, c), coef, d)
        out_polys.append(_DehomForm(4 * m, 4 * m - 1, acc).to_poly())
    return DuplicationTriple(t.level + 1, *out_polys)
