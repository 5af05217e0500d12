"""Complex-analytic layer: periods, uniformization, elliptic logs, monodromy.

Conventions.  The period pair of E_lambda on the domain
Sigma = {|lambda| < 1 and |1-lambda| < 1} is

    omega1 = F(lambda) * pi,      omega2 = F(1-lambda) * pi * i,

with F the Gauss series; tau = omega2/omega1 lies in the upper half-plane.
Half-period values are labeled e1 = P(tau/2), e2 = P(1/2),
e3 = P((1+tau)/2), so that (e3-e1)/(e2-e1) recovers lambda from tau.
The uniformizing map sends z to

    x = (P(z/omega1; tau) - e1)/(e2 - e1),   y = P'(z/omega1; tau)/(2 r(tau)^3),

with r the non-vanishing half-period product; (x, y) then satisfies
y^2 = x(x-1)(x-lambda).  Torus coordinates xi in (R/Z)^2 refer to the basis
(omega1, omega2): z = omega1*xi1 + omega2*xi2, equivalently
z/omega1 = xi1 + tau*xi2.

Series evaluation is certified for Im tau >= 0.5 (|q| <= e^-pi); the
strict flag relaxes this for the cusp-monodromy transforms, which
genuinely need small Im tau, at the cost of longer adaptive series.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ._backend import hyper_f as _hyper_f_kernel
from ._backend import wp_grid as _wp_grid_kernel
from ._backend import wp_pair as _wp_pair_kernel
from .errors import DomainError, LowImaginaryPart, NoConvergence, PoleError

DEFAULT_EPS = 1e-13
SIGMA_MARGIN = 1e-6
MIN_IM_STRICT = 0.5
MIN_IM_HARD = 0.02
POLE_TOL = 1e-9


def _mod1(x):
    return x % 1 if isinstance(x, (int, Fraction)) else x % 1.0


@dataclass(frozen=True)
class TorusCoordinate:
    """Element of (R/Z)^(2g); entries reduced to [0, 1)."""

    entries: tuple

    def __init__(self, entries: Sequence):
        vals = tuple(_mod1(v) for v in entries)
        if len(vals) == 0 or len(vals) % 2:
            raise ValueError("need an even, positive number of entries")
        object.__setattr__(self, "entries", vals)

    def __len__(self):
        return len(self.entries)

    @property
    def g(self) -> int:
        return len(self.entries) // 2

    def pair(self, i: int) -> tuple:
        return (self.entries[2 * i], self.entries[2 * i + 1])

    def as_floats(self) -> tuple[float, ...]:
        return tuple(float(v) for v in self.entries)

    def distance(self, other: "TorusCoordinate") -> float:
        d = 0.0
        for a, b in zip(self.as_floats(), other.as_floats()):
            t = abs(a - b) % 1.0
            d = max(d, min(t, 1.0 - t))
        return d


@dataclass(frozen=True)
class PeriodPair:
    omega1: complex
    omega2: complex

    def __post_init__(self):
        if self.omega1 == 0:
            raise ValueError("omega1 must be nonzero")
        if (self.omega2 / self.omega1).imag <= 0:
            raise ValueError("omega2/omega1 must lie in the upper half-plane")

    @property
    def tau(self) -> complex:
        return self.omega2 / self.omega1


class ComplexFiberPoint:
    """Approximate point of E_lambda(C): affine (x, y) or the identity."""

    __slots__ = ("x", "y", "infinity")

    def __init__(self, x=None, y=None, infinity: bool = False):
        self.infinity = infinity
        self.x = None if infinity else complex(x)
        self.y = None if infinity else complex(y)

    def __repr__(self):
        if self.infinity:
            return "[0:1:0]"
        return f"({self.x:.12g}, {self.y:.12g})"


class ComplexProductPoint:
    __slots__ = ("components", "lam")

    def __init__(self, components: Sequence[ComplexFiberPoint], lam: complex):
        self.components = tuple(components)
        self.lam = complex(lam)

    @property
    def g(self) -> int:
        return len(self.components)


def in_sigma(lam: complex, margin: float = SIGMA_MARGIN) -> bool:
    lam = complex(lam)
    return abs(lam) < 1.0 - margin and abs(1.0 - lam) < 1.0 - margin


def hyper_F(lam: complex, eps: float | None = None) -> complex:
    """Gauss hypergeometric series at lam, |lam| < 1 (with margin)."""
    lam = complex(lam)
    if abs(lam) >= 1.0 - SIGMA_MARGIN:
        raise DomainError(f"|lambda| = {abs(lam):.6f} too close to the unit circle")
    return _hyper_f_kernel(lam, DEFAULT_EPS if eps is None else eps)


def periods(lam: complex, eps: float | None = None) -> PeriodPair:
    """(omega1, omega2) = (F(lam) pi, F(1-lam) pi i) on Sigma."""
    lam = complex(lam)
    if not in_sigma(lam):
        raise DomainError(f"lambda = {lam} outside Sigma")
    return PeriodPair(hyper_F(lam, eps) * math.pi, hyper_F(1.0 - lam, eps) * math.pi * 1j)


def tau_of_lambda(lam: complex, eps: float | None = None) -> complex:
    return periods(lam, eps).tau


def _check_tau(tau: complex, strict: bool):
    tau = complex(tau)
    if tau.imag < MIN_IM_HARD:
        raise LowImaginaryPart(f"Im tau = {tau.imag:.4f} below the hard floor {MIN_IM_HARD}")
    if strict and tau.imag < MIN_IM_STRICT:
        raise LowImaginaryPart(
            f"Im tau = {tau.imag:.4f} < {MIN_IM_STRICT}; pass strict=False to force"
        )
    return tau


def _lattice_coords(z: complex, tau: complex) -> tuple[float, float]:
    b = z.imag / tau.imag
    a = z.real - b * tau.real
    return a, b


def _near_lattice(a: float, b: float, tol: float = POLE_TOL) -> bool:
    da = abs(a - round(a))
    db = abs(b - round(b))
    return max(da, db) < tol


def _wp_raw(a: float, b: float, tau: complex, eps: float) -> tuple[complex, complex]:
    return _wp_pair_kernel(a, b, tau, eps)


def weierstrass_p(z: complex, tau: complex, eps: float | None = None, strict: bool = True) -> complex:
    """P(z; tau) for the lattice Z + tau Z."""
    tau = _check_tau(tau, strict)
    a, b = _lattice_coords(complex(z), tau)
    if _near_lattice(a, b):
        raise PoleError(f"z = {z} within {POLE_TOL} of the period lattice")
    return _wp_raw(a, b, tau, DEFAULT_EPS if eps is None else eps)[0]


def weierstrass_p_prime(
    z: complex, tau: complex, eps: float | None = None, strict: bool = True
) -> complex:
    tau = _check_tau(tau, strict)
    a, b = _lattice_coords(complex(z), tau)
    if _near_lattice(a, b):
        raise PoleError(f"z = {z} within {POLE_TOL} of the period lattice")
    return _wp_raw(a, b, tau, DEFAULT_EPS if eps is None else eps)[1]


_EVALUES_CACHE: dict[tuple, tuple] = {}


def e_values(tau: complex, eps: float | None = None, strict: bool = True):
    """(e1, e2, e3) = (P(tau/2), P(1/2), P((1+tau)/2))."""
    tau = _check_tau(tau, strict)
    eps = DEFAULT_EPS if eps is None else eps
    key = (tau, eps)
    if key not in _EVALUES_CACHE:
        e1 = _wp_raw(0.0, 0.5, tau, eps)[0]
        e2 = _wp_raw(0.5, 0.0, tau, eps)[0]
        e3 = _wp_raw(0.5, 0.5, tau, eps)[0]
        if len(_EVALUES_CACHE) > 4096:
            _EVALUES_CACHE.clear()
        _EVALUES_CACHE[key] = (e1, e2, e3)
    return _EVALUES_CACHE[key]


def lambda_of_tau(tau: complex, eps: float | None = None, strict: bool = True) -> complex:
    e1, e2, e3 = e_values(tau, eps, strict)
    return (e3 - e1) / (e2 - e1)


def r_of_tau(tau: complex, eps: float | None = None, strict: bool = True) -> complex:
    """pi * prod (1 - qh^2n)^2 (1 + qh^(2n-1))^4 with qh = e^(pi i tau).

    Non-vanishing square root of e2 - e1 with a pinned branch.
    """
    tau = _check_tau(tau, strict)
    eps = DEFAULT_EPS if eps is None else eps
    qh = cmath.exp(1j * math.pi * tau)
    aq = abs(qh)
    prod = 1.0 + 0.0j
    n = 1
    while True:
        prod *= (1.0 - qh ** (2 * n)) ** 2 * (1.0 + qh ** (2 * n - 1)) ** 4
        if aq ** (2 * n - 1) < eps * (1.0 - aq):
            return math.pi * prod
        n += 1
        if n > 200000:
            raise LowImaginaryPart("r(tau) product did not converge")


def j_invariant(lam: complex) -> complex:
    lam = complex(lam)
    return 256.0 * (lam * lam - lam + 1.0) ** 3 / (lam * lam * (lam - 1.0) ** 2)


# ---------------------------------------------------------------------------
# uniformization
# ---------------------------------------------------------------------------


def _fiber_from_lattice(a: float, b: float, tau: complex, eps: float) -> ComplexFiberPoint:
    if _near_lattice(a, b):
        return ComplexFiberPoint(infinity=True)
    e1, e2, _ = e_values(tau, eps, strict=False)
    wp, wpp = _wp_raw(a, b, tau, eps)
    r3 = r_of_tau(tau, eps, strict=False) ** 3
    return ComplexFiberPoint((wp - e1) / (e2 - e1), wpp / (2.0 * r3))


def exp_map(zs, lam: complex, eps: float | None = None) -> ComplexProductPoint:
    """Uniformize: z in C^g to a point of the g-fold fibered power over lam.

    Lattice points map to the identity component [0:1:0].
    """
    lam = complex(lam)
    if not in_sigma(lam):
        raise DomainError(f"lambda = {lam} outside Sigma")
    eps = DEFAULT_EPS if eps is None else eps
    if isinstance(zs, (int, float, complex)):
        zs = [zs]
    pp = periods(lam, eps)
    tau = pp.tau
    comps = []
    for z in zs:
        a, b = _lattice_coords(complex(z) / pp.omega1, tau)
        comps.append(_fiber_from_lattice(a, b, tau, eps))
    return ComplexProductPoint(comps, lam)


def omega_apply(pp: PeriodPair, xi: TorusCoordinate) -> list[complex]:
    """z = Omega(lambda) xi^T componentwise: z_i = omega1 xi_{2i-1} + omega2 xi_{2i}."""
    return [
        pp.omega1 * float(xi.entries[2 * i]) + pp.omega2 * float(xi.entries[2 * i + 1])
        for i in range(xi.g)
    ]


def rho_tilde(xi: TorusCoordinate, tau: complex, eps: float | None = None) -> ComplexProductPoint:
    """The cusp-analytic family point over Lambda(tau) with torus coordinate xi.

    Defined for any tau above the hard floor; the monodromy transforms send
    tau into regions with small imaginary part, so no strict cut applies.
    """
    tau = _check_tau(tau, strict=False)
    eps = DEFAULT_EPS if eps is None else eps
    comps = []
    for i in range(xi.g):
        x1, x2 = (float(v) for v in xi.pair(i))
        if _near_lattice(x1, x2, 1e-14):
            comps.append(ComplexFiberPoint(infinity=True))
        else:
            comps.append(_fiber_from_lattice(x1, x2, tau, eps))
    return ComplexProductPoint(comps, lambda_of_tau(tau, eps, strict=False))


def monodromy_shift_0(xi: TorusCoordinate) -> TorusCoordinate:
    """Torus-coordinate change from looping the base around the cusp 0."""
    out = []
    for i in range(xi.g):
        x1, x2 = xi.pair(i)
        out.extend((x1 + 2 * x2, x2))
    return TorusCoordinate(out)


def monodromy_shift_1(xi: TorusCoordinate) -> TorusCoordinate:
    """Torus-coordinate change from looping the base around the cusp 1."""
    out = []
    for i in range(xi.g):
        x1, x2 = xi.pair(i)
        out.extend((x1, x2 - 4 * x1))
    return TorusCoordinate(out)


# ---------------------------------------------------------------------------
# elliptic logarithm (inverse of exp_map), grid start + Newton polish
# ---------------------------------------------------------------------------

_GRID_CACHE: dict[tuple, tuple] = {}


def _grid(tau: complex, n: int, eps: float):
    key = (tau, n, eps)
    if key not in _GRID_CACHE:
        if len(_GRID_CACHE) > 64:
            _GRID_CACHE.clear()
        _GRID_CACHE[key] = _wp_grid_kernel(tau, n, eps)
    return _GRID_CACHE[key]


def _fiber_target(point, lam) -> ComplexFiberPoint:
    from .legendre import LegendreFiberPoint  # local import to avoid a cycle

    if isinstance(point, ComplexFiberPoint):
        return point
    if isinstance(point, LegendreFiberPoint):
        if point.is_identity():
            return ComplexFiberPoint(infinity=True)
        x, y = point.affine()
        return ComplexFiberPoint(complex(float(x)), complex(float(y)))
    if isinstance(point, (tuple, list)) and len(point) == 2:
        return ComplexFiberPoint(complex(point[0]), complex(point[1]))
    raise TypeError(f"cannot interpret {point!r} as a fiber point")


def _xi_single(
    target: ComplexFiberPoint,
    lam: complex,
    tau: complex,
    eps: float,
    grid_n: int,
    tol: float,
    initial: tuple[float, float] | None,
) -> tuple:
    if target.infinity:
        return (0.0, 0.0)
    if not (cmath.isfinite(target.x) and cmath.isfinite(target.y)):
        raise NoConvergence(f"non-finite target point ({target.x}, {target.y})")
    e1, e2, e3 = e_values(tau, eps, strict=False)
    scale = e2 - e1
    r3 = r_of_tau(tau, eps, strict=False) ** 3
    w = target.x * scale + e1
    wp_t = target.y * 2.0 * r3

    # exact 2-torsion shortcut: P' vanishes there and Newton has no slope
    if abs(target.y) <= 1e-9 * (1.0 + abs(target.x)):
        for xval, xi in ((1.0, (0.5, 0.0)), (0.0, (0.0, 0.5)), (lam, (0.5, 0.5))):
            if abs(target.x - xval) <= 1e-7 * (1.0 + abs(xval)):
                return xi

    def residual(v: complex) -> float:
        a, b = _lattice_coords(v, tau)
        if _near_lattice(a, b):
            return float("inf")
        p = _fiber_from_lattice(a, b, tau, eps)
        return abs(p.x - target.x) / (1.0 + abs(target.x)) + abs(p.y - target.y) / (
            1.0 + abs(target.y)
        )

    def newton(v: complex) -> complex | None:
        for _ in range(60):
            a, b = _lattice_coords(v, tau)
            if _near_lattice(a, b, 1e-13):
                return None
            pv, pd = _wp_raw(a, b, tau, eps)
            f = pv - w
            if abs(f) <= 1e-14 * (1.0 + abs(w)):
                break
            if pd == 0:
                return None
            step = f / pd
            cap = 0.2 * (1.0 + abs(tau))
            if abs(step) > cap:
                step *= cap / abs(step)
            v = v - step
        # P determines v up to sign; P' picks the sheet
        a, b = _lattice_coords(v, tau)
        pv, pd = _wp_raw(a, b, tau, eps)
        if abs(pd - wp_t) > abs(pd + wp_t):
            v = -v
        return v

    starts: list[complex] = []
    if initial is not None:
        starts.append(initial[0] + initial[1] * tau)
    gw, _gwp = _grid(tau, grid_n, eps)
    scored = []
    for idx, val in enumerate(gw):
        if val is None:
            continue
        scored.append((abs(val - w), idx))
    scored.sort()
    for _, idx in scored[:6]:
        i, j = divmod(idx, grid_n)
        starts.append((i / grid_n) + (j / grid_n) * tau)

    best = None
    for v0 in starts:
        v = newton(v0)
        if v is None:
            continue
        res = residual(v)
        if best is None or res < best[0]:
            best = (res, v)
        if res <= tol:
            break
    if best is None or best[0] > tol:
        # one local refinement pass around the most promising cell
        if scored:
            i, j = divmod(scored[0][1], grid_n)
            for di in range(-4, 5):
                for dj in range(-4, 5):
                    v0 = ((i + di / 4.0) / grid_n) + ((j + dj / 4.0) / grid_n) * tau
                    v = newton(v0)
                    if v is None:
                        continue
                    res = residual(v)
                    if best is None or res < best[0]:
                        best = (res, v)
                    if res <= tol:
                        break
                else:
                    continue
                break
    if best is None or best[0] > tol:
        raise NoConvergence(f"elliptic log failed; best residual {best[0] if best else 'inf'}")
    a, b = _lattice_coords(best[1], tau)
    return (a % 1.0, b % 1.0)


def xi_map(
    point,
    lam: complex | None = None,
    initial: TorusCoordinate | None = None,
    grid_n: int = 64,
    tol: float = 1e-10,
    eps: float | None = None,
) -> TorusCoordinate:
    """Torus coordinates xi with exp(Omega(lambda) xi^T, lambda) = point.

    Accepts a ComplexFiberPoint, an exact LegendreFiberPoint, an (x, y)
    pair, or a product point (g components, concatenated coordinates).
    A warm start from a nearby point can be passed via initial.
    """
    from .legendre import LegendreFiberPoint, ProductFiberPoint

    eps = DEFAULT_EPS if eps is None else eps
    if isinstance(point, ComplexProductPoint):
        lam = point.lam
        targets = list(point.components)
    elif isinstance(point, ProductFiberPoint):
        lam = float(point.lam)
        targets = [_fiber_target(c, lam) for c in point.components]
    else:
        if isinstance(point, LegendreFiberPoint) and lam is None:
            lam = float(point.lam)
        if lam is None:
            raise TypeError("lam is required unless the point carries it")
        targets = [_fiber_target(point, lam)]
    lam = complex(lam)
    if not in_sigma(lam):
        raise DomainError(f"lambda = {lam} outside Sigma")
    tau = tau_of_lambda(lam, eps)
    entries: list[float] = []
    for i, tgt in enumerate(targets):
        init = None
        if initial is not None:
            init = tuple(float(v) for v in initial.pair(i))
        entries.extend(_xi_single(tgt, lam, tau, eps, grid_n, tol, init))
    return TorusCoordinate(entries)


# ---------------------------------------------------------------------------
# analytic chord-tangent arithmetic (test-grade, for homomorphism checks)
# ---------------------------------------------------------------------------


def complex_neg(p: ComplexFiberPoint) -> ComplexFiberPoint:
    if p.infinity:
        return p
    return ComplexFiberPoint(p.x, -p.y)


def complex_add(
    p: ComplexFiberPoint, q: ComplexFiberPoint, lam: complex, tol: float = 1e-9
) -> ComplexFiberPoint:
    """Chord-tangent sum on E_lambda(C) in floating point.

    Near-coincidence decisions use the given tolerance; intended for test
    assertions at well-separated sample points, not as a robust group law.
    """
    if p.infinity:
        return q
    if q.infinity:
        return p
    lam = complex(lam)
    scale = 1.0 + abs(p.x) + abs(q.x)
    if abs(p.x - q.x) <= tol * scale:
        if abs(p.y + q.y) <= tol * (1.0 + abs(p.y)):
            return ComplexFiberPoint(infinity=True)
        m = (3.0 * p.x * p.x - 2.0 * (1.0 + lam) * p.x + lam) / (2.0 * p.y)
    else:
        m = (q.y - p.y) / (q.x - p.x)
    x3 = m * m + (1.0 + lam) - p.x - q.x
    y3 = m * (p.x - x3) - p.y
    return ComplexFiberPoint(x3, y3)


def complex_mul(p: ComplexFiberPoint, n: int, lam: complex, tol: float = 1e-9) -> ComplexFiberPoint:
    if n < 0:
        return complex_mul(complex_neg(p), -n, lam, tol)
    acc = ComplexFiberPoint(infinity=True)
    add_in = p
    while n:
        if n & 1:
            acc = complex_add(acc, add_in, lam, tol)
        n >>= 1
        if n:
            add_in = complex_add(add_in, add_in, lam, tol)
    return acc
