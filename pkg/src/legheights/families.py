"""One-parameter families of points on the Legendre family.

A family is g pairs of coordinate rules x_i(t), y_i(t) plus a base rule
lambda(t), all quotients of integer-coefficient polynomials in t.  The
curve identity y^2 = x(x-1)(x-lambda) is verified symbolically over Q(t)
at construction, so every admissible rational t yields an exact point.

File format (JSON):
    {"g": 1,
     "components": [{"x": "2", "y": "2*t"}],
     "lambda": "2 - 2*t^2"}
Polynomial grammar: integers, t, + - * ^ and parentheses; a single "/"
separates numerator and denominator.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InvalidInput
from .legendre import LegendreCurve, ProductFiberPoint
from .projective import normalize_projective
from .legendre import LegendreFiberPoint


class Poly1:
    """Dense univariate polynomial over Z, ascending coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[int]):
        c = [int(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = c or [0]

    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs != [0] else -1

    def is_zero(self) -> bool:
        return self.coeffs == [0]

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly1(
            [
                (self.coeffs[i] if i < len(self.coeffs) else 0)
                + (other.coeffs[i] if i < len(other.coeffs) else 0)
                for i in range(n)
            ]
        )

    def __neg__(self):
        return Poly1([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly1(out)

    def __eq__(self, other):
        return isinstance(other, Poly1) and self.coeffs == other.coeffs

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __str__(self):
        if self.is_zero():
            return "0"
        out = ""
        for e in range(self.degree(), -1, -1):
            c = self.coeffs[e]
            if not c:
                continue
            sign = "-" if c < 0 else ("+" if out else "")
            mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
            body = str(abs(c)) if not mono else (mono if abs(c) == 1 else f"{abs(c)}*{mono}")
            out += f" {sign} {body}" if out else f"{sign}{body}"
        return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str):
        raise InvalidInput(f"{msg} at position {self.pos} in {self.text!r}")

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expr(self) -> Poly1:
        sign = 1
        ch = self.peek()
        if ch in "+-":
            self.pos += 1
            sign = -1 if ch == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while True:
            ch = self.peek()
            if ch == "+":
                self.pos += 1
                acc = acc + self.term()
            elif ch == "-":
                self.pos += 1
                acc = acc - self.term()
            else:
                return acc

    def term(self) -> Poly1:
        acc = self.factor()
        while True:
            ch = self.peek()
            if ch == "*":
                self.pos += 1
                acc = acc * self.factor()
            elif ch and (ch.isdigit() or ch == "t" or ch == "("):
                # implicit product like "2t" or "2(1-t)"
                acc = acc * self.factor()
            else:
                return acc

    def factor(self) -> Poly1:
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            ch = self.peek()
            if not ch.isdigit():
                self.error("expected integer exponent")
            n = 0
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                n = 10 * n + int(self.text[self.pos])
                self.pos += 1
            out = Poly1([1])
            for _ in range(n):
                out = out * base
            return out
        return base

    def atom(self) -> Poly1:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            inner = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return inner
        if ch == "t":
            self.pos += 1
            return Poly1([0, 1])
        if ch.isdigit():
            n = 0
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                n = 10 * n + int(self.text[self.pos])
                self.pos += 1
            return Poly1([n])
        if ch == "-":
            self.pos += 1
            return -self.atom()
        self.error("expected integer, 't' or '('")


def parse_poly(text: str) -> Poly1:
    p = _Parser(text)
    out = p.expr()
    if p.peek():
        p.error("trailing input")
    return out


class RationalFunction:
    """Quotient of two integer polynomials in t."""

    __slots__ = ("num", "den", "source")

    def __init__(self, num: Poly1, den: Poly1 | None = None, source: str = ""):
        if den is None:
            den = Poly1([1])
        if den.is_zero():
            raise InvalidInput("zero denominator")
        self.num = num
        self.den = den
        self.source = source

    @classmethod
    def parse(cls, text: str) -> "RationalFunction":
        if text.count("/") > 1:
            raise InvalidInput(f"at most one '/' allowed: {text!r}")
        if "/" in text:
            n, d = text.split("/")
            return cls(parse_poly(n), parse_poly(d), text)
        return cls(parse_poly(text), None, text)

    def __add__(self, other):
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other):
        return RationalFunction(self.num * other.den - other.num * self.den, self.den * other.den)

    def __mul__(self, other):
        return RationalFunction(self.num * other.num, self.den * other.den)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def defined_at(self, t) -> bool:
        return self.den(t) != 0

    def __call__(self, t):
        if isinstance(t, Fraction) or isinstance(t, int):
            return Fraction(self.num(Fraction(t)), self.den(Fraction(t)))
        return self.num(t) / self.den(t)

    def __str__(self):
        if self.source:
            return self.source
        if self.den == Poly1([1]):
            return str(self.num)
        return f"({self.num}) / ({self.den})"


_ONE = RationalFunction(Poly1([1]))


@dataclass
class FamilySpec:
    """g coordinate rules plus the base rule, curve identity checked at init."""

    components: list[tuple[RationalFunction, RationalFunction]]
    lam: RationalFunction

    def __post_init__(self):
        if not self.components:
            raise InvalidInput("need at least one component")
        for xr, yr in self.components:
            # y^2 - x(x-1)(x-lambda) must vanish identically over Q(t)
            lhs = yr * yr
            rhs = xr * (xr - _ONE) * (xr - self.lam)
            diff = lhs - rhs
            if not diff.is_zero():
                raise InvalidInput(
                    f"coordinate rules x={xr}, y={yr} do not satisfy the curve identity"
                )

    @property
    def g(self) -> int:
        return len(self.components)

    def admissible(self, t) -> bool:
        t = Fraction(t)
        if not self.lam.defined_at(t):
            return False
        lam = self.lam(t)
        if lam == 0 or lam == 1:
            return False
        return all(x.defined_at(t) and y.defined_at(t) for x, y in self.components)

    def lambda_at(self, t):
        return self.lam(t)

    def point_at(self, t) -> ProductFiberPoint:
        """Exact product point at a rational parameter value."""
        t = Fraction(t)
        if not self.admissible(t):
            raise InvalidInput(f"t = {t} is not admissible for this family")
        lam = self.lam(t)
        comps = []
        for xr, yr in self.components:
            comps.append(
                LegendreFiberPoint(normalize_projective([xr(t), yr(t), 1]), lam)
            )
        return ProductFiberPoint(comps)

    def point_floats(self, t: float, component: int = 0) -> tuple[float, float]:
        xr, yr = self.components[component]
        return float(xr(t)), float(yr(t))

    def to_json_dict(self) -> dict:
        return {
            "g": self.g,
            "components": [{"x": str(x), "y": str(y)} for x, y in self.components],
            "lambda": str(self.lam),
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "FamilySpec":
        try:
            comps = [
                (RationalFunction.parse(c["x"]), RationalFunction.parse(c["y"]))
                for c in doc["components"]
            ]
            lam = RationalFunction.parse(doc["lambda"])
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"malformed family document: {exc}") from exc
        fam = cls(comps, lam)
        if "g" in doc and doc["g"] != fam.g:
            raise InvalidInput(f"declared g={doc['g']} but {fam.g} components given")
        return fam

    @classmethod
    def load(cls, path: str) -> "FamilySpec":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_json_dict(json.load(fh))


def builtin_family_x2() -> FamilySpec:
    """The x = 2 family: P(t) = ([2 : 2t : 1], lambda = 2 - 2 t^2).

    On-curve identity: (2t)^2 = 2 * 1 * (2 - lambda) = 4 t^2, exact for
    every t; t in {0, 1, -1} is excluded by the lambda constraint.
    """
    return FamilySpec(
        [(RationalFunction.parse("2"), RationalFunction.parse("2*t"))],
        RationalFunction.parse("2 - 2*t^2"),
    )


def resolve_family(spec: str) -> FamilySpec:
    """CLI helper: 'builtin:x2' or a path to a JSON family file."""
    if spec == "builtin:x2":
        return builtin_family_x2()
    if spec.startswith("builtin:"):
        raise InvalidInput(f"unknown builtin family {spec!r}")
    return FamilySpec.load(spec)
