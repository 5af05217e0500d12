"""Doubling-limit engine for the canonical height.

The canonical height of P on E_lambda is the limit of h(x([2^N]P)) / (2*4^N).
One doubling step acts on x = [p:q] (coprime integers) through a pair of
integer quartic forms F, G:

    x([2]Q) = F(p, q) / G(p, q),   F = (v p^2 - u q^2)^2,
                                   G = 4 v p q (p - q)(v p - u q),

with lambda = u/v in lowest terms.  Because F and G have no common
projective zero, the height defect of one step is bounded by an explicit
constant D computed from the coefficients of F, G and of Bezout cofactors
A F + B G = R * p^7 (and the q^7 twin).  The limit tail after depth N is
then at most D / (6 * 4^N), which yields a certified stopping rule.

Exact doubling quadruples coordinate sizes, so the engine runs exactly only
while coordinates stay small and then switches to a tracked orbit:

* magnitudes of p, q follow rigorous fixed-point balls (integer mantissa,
  exponent, error radius);
* the gcd cancellation at each step is recovered exactly from residues
  modulo a power of the Bezout integer R, using gcd(F, G) | R and
  gcd(F mod M, G mod M, M) = gcd(F, G) whenever R | M.

Both phases produce the same reduced x-orbit; the tracked phase merely
stops storing digits that cannot influence log-size measurements.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import NonConvergence
from .projective import log_abs_int

LOG2 = math.log(2)


# ---------------------------------------------------------------------------
# fixed-point ball arithmetic on integers
# ---------------------------------------------------------------------------


class Ball:
    """Value enclosed in [(m - r) * 2^e, (m + r) * 2^e]."""

    __slots__ = ("m", "e", "r")

    def __init__(self, m: int, e: int = 0, r: int = 0):
        self.m = m
        self.e = e
        self.r = r

    def normalized(self, prec: int) -> "Ball":
        bits = abs(self.m).bit_length()
        if bits <= prec:
            return self
        s = bits - prec
        return Ball(self.m >> s, self.e + s, (self.r >> s) + 2)

    def __mul__(self, other: "Ball") -> "Ball":
        return Ball(
            self.m * other.m,
            self.e + other.e,
            abs(self.m) * other.r + abs(other.m) * self.r + self.r * other.r,
        )

    def __add__(self, other: "Ball") -> "Ball":
        a, b = self, other
        if a.e < b.e:
            a, b = b, a
        shift = a.e - b.e
        if shift > 4096 + abs(b.m).bit_length():
            # opposite operand is far below a's resolution: absorb into error
            tail = ((abs(b.m) + b.r) >> shift) + 1
            return Ball(a.m, a.e, a.r + tail)
        return Ball((a.m << shift) + b.m, b.e, (a.r << shift) + b.r)

    def __neg__(self) -> "Ball":
        return Ball(-self.m, self.e, self.r)

    def __sub__(self, other: "Ball") -> "Ball":
        return self + (-other)

    def div_int(self, g: int, prec: int) -> "Ball":
        """Divide by a positive integer (exact value division, enclosed)."""
        shift = max(0, prec + 8 - (abs(self.m).bit_length() - g.bit_length()))
        m = (self.m << shift) // g
        r = ((self.r << shift) // g) + 2
        return Ball(m, self.e - shift, r)

    def straddles_zero(self) -> bool:
        return abs(self.m) <= self.r

    def rel_width_bits(self) -> int:
        """log2(error/|value|), large means ill-determined."""
        if self.r == 0:
            return -(1 << 30)
        if abs(self.m) <= self.r:
            return 1 << 30
        return self.r.bit_length() - abs(self.m).bit_length()

    def abs_bounds(self) -> tuple[int, int, int]:
        """(lo, hi, e) with |value| in [lo * 2^e, hi * 2^e]."""
        lo = abs(self.m) - self.r
        hi = abs(self.m) + self.r
        return (max(lo, 0), hi, self.e)


def _log_max_abs(b1: Ball, b2: Ball) -> tuple[float, float]:
    """(value, error) for log max(|b1|, |b2|), intervals made rigorous."""
    lo1, hi1, e1 = b1.abs_bounds()
    lo2, hi2, e2 = b2.abs_bounds()

    def logv(m: int, e: int) -> float:
        if m <= 0:
            return float("-inf")
        return log_abs_int(m) + e * LOG2

    lo = max(logv(lo1, e1), logv(lo2, e2))
    hi = max(logv(hi1, e1), logv(hi2, e2))
    if lo == float("-inf"):
        raise ArithmeticError("log of interval containing zero")
    return (0.5 * (lo + hi), 0.5 * (hi - lo) + 1e-12 * (1.0 + abs(hi)))


# ---------------------------------------------------------------------------
# per-curve doubling data
# ---------------------------------------------------------------------------


def _solve_bezout(fc: list[int], gc: list[int], target_p7: bool) -> tuple[list[int], list[int], int]:
    """Integer cofactors with A*F + B*G = R * p^7 (or R * q^7).

    fc, gc list the coefficients of the quartic forms by q-degree:
    F = sum fc[i] p^(4-i) q^i.  A, B are cubic forms returned the same way.
    Solves the 8x8 Sylvester-style linear system exactly.
    """
    n = 8
    rows = [[Fraction(0)] * n for _ in range(n)]
    # unknowns: a0..a3 (A), b0..b3 (B); equation rows indexed by q-degree 0..7
    for j in range(4):  # A coefficient a_j multiplies p^(3-j) q^j
        for i in range(5):
            rows[i + j][j] += fc[i]
            rows[i + j][4 + j] += gc[i]
    rhs_index = 0 if target_p7 else 7
    rhs = [Fraction(1) if i == rhs_index else Fraction(0) for i in range(n)]
    # gaussian elimination with partial pivoting over Q
    aug = [rows[i] + [rhs[i]] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ArithmeticError("singular doubling forms; lambda in {0,1}?")
        aug[col], aug[piv] = aug[piv], aug[col]
        pc = aug[col][col]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col] / pc
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    sol = [aug[i][n] / aug[i][i] for i in range(n)]
    denom = 1
    for s in sol:
        denom = denom * s.denominator // math.gcd(denom, s.denominator)
    ints = [int(s * denom) for s in sol]
    g = denom
    for v in ints:
        g = math.gcd(g, v)
    return [v // g for v in ints[:4]], [v // g for v in ints[4:]], denom // g


@dataclass
class DoublingData:
    """x-coordinate doubling forms for one curve plus certified constants."""

    lam: Fraction
    f_coeffs: list[int]
    g_coeffs: list[int]
    tail_constant: float  # |hhat - H_N| <= tail_constant / 4^N
    gcd_divisor: int  # gcd(F(p,q), G(p,q)) divides this for coprime p, q


def doubling_data(lam: Fraction) -> DoublingData:
    lam = Fraction(lam)
    u, v = lam.numerator, lam.denominator
    fc = [v * v, 0, -2 * u * v, 0, u * u]
    gc = [0, 4 * v * v, -4 * v * (u + v), 4 * u * v, 0]
    a_p, b_p, r_p = _solve_bezout(fc, gc, True)
    a_q, b_q, r_q = _solve_bezout(fc, gc, False)
    s_up = max(sum(abs(c) for c in fc), sum(abs(c) for c in gc))
    r_div = abs(r_p * r_q) // math.gcd(abs(r_p), abs(r_q))
    s_p = sum(abs(c) for c in a_p) + sum(abs(c) for c in b_p)
    s_q = sum(abs(c) for c in a_q) + sum(abs(c) for c in b_q)
    c_dn = max(
        math.log(s_p) + log_abs_int(r_div) - log_abs_int(r_p),
        math.log(s_q) + log_abs_int(r_div) - log_abs_int(r_q),
    )
    d_const = max(math.log(s_up), c_dn)
    return DoublingData(lam, fc, gc, d_const / 6.0, r_div)


def _eval_form(coeffs, p, q):
    # sum coeffs[i] * p^(4-i) * q^i by Horner in q/p-free form
    acc = 0
    pk = [1, p, p * p, p * p * p, p * p * p * p]
    qk = [1, q, q * q, q * q * q, q * q * q * q]
    for i, c in enumerate(coeffs):
        if c:
            acc += c * pk[4 - i] * qk[i]
    return acc


def _eval_form_ball(coeffs, p: Ball, q: Ball, prec: int) -> Ball:
    pk = [Ball(1)] * 5
    qk = [Ball(1)] * 5
    for i in range(1, 5):
        pk[i] = (pk[i - 1] * p).normalized(prec)
        qk[i] = (qk[i - 1] * q).normalized(prec)
    acc = Ball(0)
    for i, c in enumerate(coeffs):
        if c:
            acc = acc + (pk[4 - i] * qk[i] * Ball(c)).normalized(prec)
    return acc.normalized(prec)


# ---------------------------------------------------------------------------
# the limit computation
# ---------------------------------------------------------------------------


@dataclass
class TateLimit:
    value: float
    depth: int
    error_bound: float


def _tracked_phase(
    data: DoublingData,
    p: int,
    q: int,
    depth: int,
    target_depth: int,
    prec: int,
) -> tuple[float, float, int]:
    """Run the orbit from exact (p, q) to target_depth with balls + residues.

    Returns (h, h_err, depth).  Raises ArithmeticError when the requested
    precision cannot separate a form value from zero (caller escalates).
    """
    steps = target_depth - depth
    r_div = data.gcd_divisor
    modulus = r_div ** (steps + 2)
    pb = Ball(p).normalized(prec)
    qb = Ball(q).normalized(prec)
    pr = p % modulus
    qr = q % modulus
    for _ in range(steps):
        fb = _eval_form_ball(data.f_coeffs, pb, qb, prec)
        gb = _eval_form_ball(data.g_coeffs, pb, qb, prec)
        if fb.straddles_zero() or gb.straddles_zero():
            raise ArithmeticError("insufficient precision in tracked doubling")
        if max(fb.rel_width_bits(), gb.rel_width_bits()) > -48:
            raise ArithmeticError("tracked doubling lost too many bits")
        fr = _eval_form(data.f_coeffs, pr, qr) % modulus
        gr = _eval_form(data.g_coeffs, pr, qr) % modulus
        g = math.gcd(math.gcd(fr, gr), modulus)
        modulus //= g
        pr = (fr // g) % modulus
        qr = (gr // g) % modulus
        pb = fb.div_int(g, prec)
        qb = gb.div_int(g, prec)
        depth += 1
    h, h_err = _log_max_abs(pb, qb)
    return h, h_err, depth


def tate_limit(
    data: DoublingData,
    p: int,
    q: int,
    tolerance: float,
    *,
    bit_budget: int = 1 << 20,
    exact_switch_bits: int = 16384,
    max_depth: int = 64,
    tracked: bool = True,
) -> TateLimit:
    """Certified limit of h([p_N : q_N]) / (2*4^N) along the doubling orbit.

    [p:q] must be the reduced x-coordinate of a non-torsion point.  Either
    finishes with error_bound <= tolerance or raises NonConvergence.
    """
    if tolerance <= 0:
        raise NonConvergence("tolerance must be positive")
    g = math.gcd(p, q)
    p //= g
    q //= g
    c_tail = data.tail_constant
    target_depth = 0
    while c_tail / (4.0**target_depth) > 0.98 * tolerance:
        target_depth += 1
        if target_depth > max_depth:
            raise NonConvergence(
                f"depth {target_depth} exceeds max_depth {max_depth} for tolerance {tolerance}"
            )

    depth = 0
    while depth < target_depth:
        if max(abs(p).bit_length(), abs(q).bit_length()) > min(exact_switch_bits, bit_budget):
            break
        fv = _eval_form(data.f_coeffs, p, q)
        gv = _eval_form(data.g_coeffs, p, q)
        if fv == 0 or gv == 0:
            # orbit hit a 2-division point: the input was torsion after all
            return TateLimit(0.0, depth, 0.0)
        g = math.gcd(fv, gv)
        p, q = fv // g, gv // g
        depth += 1

    if depth < target_depth:
        if not tracked:
            if max(abs(p).bit_length(), abs(q).bit_length()) > bit_budget:
                raise NonConvergence(
                    f"coordinates exceed bit budget {bit_budget} at depth {depth} "
                    f"with tail {c_tail / 4.0**depth:.3e} > tolerance {tolerance:.3e}"
                )
            # keep doubling exactly up to the budget
            while depth < target_depth:
                fv = _eval_form(data.f_coeffs, p, q)
                gv = _eval_form(data.g_coeffs, p, q)
                if fv == 0 or gv == 0:
                    return TateLimit(0.0, depth, 0.0)
                g = math.gcd(fv, gv)
                p, q = fv // g, gv // g
                depth += 1
                if max(abs(p).bit_length(), abs(q).bit_length()) > bit_budget:
                    break
            if depth < target_depth:
                raise NonConvergence(
                    f"bit budget {bit_budget} exhausted at depth {depth}; "
                    f"tail bound {c_tail / 4.0**depth:.3e} > tolerance {tolerance:.3e}"
                )
        else:
            prec = 384
            while True:
                try:
                    h, h_err, depth_out = _tracked_phase(data, p, q, depth, target_depth, prec)
                    break
                except ArithmeticError:
                    prec *= 2
                    if prec > 1 << 16:
                        raise NonConvergence(
                            "tracked doubling could not certify at any precision"
                        ) from None
            depth = depth_out
            value = h / (2.0 * 4.0**depth)
            err = c_tail / (4.0**depth) + h_err / (2.0 * 4.0**depth)
            return TateLimit(value, depth, err)

    h = log_abs_int(max(abs(p), abs(q), 1))
    value = h / (2.0 * 4.0**depth)
    return TateLimit(value, depth, c_tail / (4.0**depth) + 1e-13 * (1.0 + h))
