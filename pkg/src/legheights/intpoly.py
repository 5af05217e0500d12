"""Sparse multivariate polynomials with arbitrary-precision integer coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .errors import ArityMismatch


class IntPolynomial:
    """Polynomial in Z[x_1, ..., x_k], stored as {exponent tuple: coefficient}.

    Zero coefficients are never stored; the zero polynomial has an empty
    term map.  Instances are immutable in spirit: no method mutates self.
    """

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple, int] | None = None):
        self.variables = tuple(variables)
        clean: dict[tuple, int] = {}
        if terms:
            nvars = len(self.variables)
            for expo, coef in terms.items():
                if len(expo) != nvars:
                    raise ArityMismatch(
                        f"exponent vector {expo} has length {len(expo)}, expected {nvars}"
                    )
                coef = int(coef)
                if coef:
                    clean[tuple(int(e) for e in expo)] = coef
        self.terms = clean

    # -- constructors ---------------------------------------------------

    @classmethod
    def constant(cls, variables: Sequence[str], value: int) -> "IntPolynomial":
        if value == 0:
            return cls(variables)
        return cls(variables, {(0,) * len(variables): value})

    @classmethod
    def variable(cls, variables: Sequence[str], name: str) -> "IntPolynomial":
        idx = list(variables).index(name)
        expo = [0] * len(variables)
        expo[idx] = 1
        return cls(variables, {tuple(expo): 1})

    # -- ring operations ------------------------------------------------

    def _check_same_vars(self, other: "IntPolynomial"):
        if self.variables != other.variables:
            raise ArityMismatch("polynomials live over different variable sets")

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        self._check_same_vars(other)
        terms = dict(self.terms)
        for expo, coef in other.terms.items():
            s = terms.get(expo, 0) + coef
            if s:
                terms[expo] = s
            else:
                terms.pop(expo, None)
        return IntPolynomial(self.variables, terms)

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(self.variables, {e: c * other for e, c in self.terms.items()})
        self._check_same_vars(other)
        out: dict[tuple, int] = {}
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        for ea, ca in a.items():
            for eb, cb in b.items():
                expo = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(expo, 0) + ca * cb
                if s:
                    out[expo] = s
                else:
                    del out[expo]
        return IntPolynomial(self.variables, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "IntPolynomial":
        if n < 0:
            raise ValueError("negative power")
        result = IntPolynomial.constant(self.variables, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IntPolynomial)
            and self.variables == other.variables
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    # -- queries ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, name: str) -> int:
        if not self.terms:
            return -1
        idx = self.variables.index(name)
        return max(e[idx] for e in self.terms)

    def homogeneous_degree_in(self, names: Sequence[str]) -> int | None:
        """Common degree in the listed variables, or None if not homogeneous."""
        if not self.terms:
            return None
        idxs = [self.variables.index(n) for n in names]
        degs = {sum(e[i] for i in idxs) for e in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def max_abs_coeff(self) -> int:
        return max((abs(c) for c in self.terms.values()), default=0)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for expo in sorted(self.terms, reverse=True):
            coef = self.terms[expo]
            mono = "*".join(
                f"{v}^{e}" if e > 1 else v
                for v, e in zip(self.variables, expo)
                if e
            )
            parts.append(f"{coef}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


def poly_eval(p: IntPolynomial, args: Sequence) -> Fraction:
    """Exact value of p at rational arguments."""
    if len(args) != len(p.variables):
        raise ArityMismatch(f"expected {len(p.variables)} arguments, got {len(args)}")
    vals = [Fraction(a) for a in args]
    total = Fraction(0)
    # cache powers per variable; exponents repeat heavily in dense polynomials
    powers: list[dict[int, Fraction]] = [{0: Fraction(1), 1: v} for v in vals]
    for expo, coef in p.terms.items():
        prod = Fraction(coef)
        for i, e in enumerate(expo):
            cache = powers[i]
            if e not in cache:
                cache[e] = vals[i] ** e
            prod *= cache[e]
        total += prod
    return total


def poly_compose(outer: IntPolynomial, inner: Sequence[IntPolynomial]) -> IntPolynomial:
    """Substitute inner[i] for the i-th variable of outer (exact)."""
    if len(inner) != len(outer.variables):
        raise ArityMismatch(
            f"need {len(outer.variables)} inner polynomials, got {len(inner)}"
        )
    if not inner:
        return outer
    variables = inner[0].variables
    for g in inner[1:]:
        if g.variables != variables:
            raise ArityMismatch("inner polynomials live over different variable sets")
    result = IntPolynomial(variables)
    pow_cache: list[dict[int, IntPolynomial]] = [
        {0: IntPolynomial.constant(variables, 1), 1: g} for g in inner
    ]
    for expo, coef in outer.terms.items():
        prod = IntPolynomial.constant(variables, coef)
        for i, e in enumerate(expo):
            cache = pow_cache[i]
            if e not in cache:
                # build up from the largest cached power below e
                k = max(k for k in cache if k <= e)
                acc = cache[k]
                while k < e:
                    acc = acc * inner[i]
                    k += 1
                    cache[k] = acc
            prod = prod * cache[e]
        result = result + prod
    return result
