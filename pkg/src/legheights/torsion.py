"""Fiber torsion enumeration and counting diagnostics on the torus.

Root counting in boxes is exact rational arithmetic (open boxes, boundary
points excluded).  Fiber torsion is enumerated analytically through the
uniformization and certified only up to numeric tolerances; exact torsion
certification over Q lives in legendre.rational_torsion_order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .analytic import (
    ComplexFiberPoint,
    TorusCoordinate,
    complex_add,
    complex_mul,
    complex_neg,
    e_values,
    in_sigma,
    periods,
    xi_map,
)
from .analytic import DEFAULT_EPS, _fiber_from_lattice  # noqa: F401  (shared kernel path)
from .errors import DomainError


@dataclass(frozen=True)
class TorusBox:
    """Open box prod (c_i - eps, c_i + eps) in (R/Z)^2g, eps <= 1/2."""

    center: tuple
    half_width: Fraction

    def __init__(self, center: Sequence, half_width):
        eps = Fraction(half_width)
        if not 0 < eps <= Fraction(1, 2):
            raise ValueError("half width must lie in (0, 1/2]")
        object.__setattr__(self, "center", tuple(Fraction(c) % 1 for c in center))
        object.__setattr__(self, "half_width", eps)

    @property
    def dim(self) -> int:
        return len(self.center)

    def contains(self, xi: Sequence) -> bool:
        for c, x in zip(self.center, xi):
            d = (Fraction(x) - c) % 1
            if min(d, 1 - d) >= self.half_width:
                return False
        return True


def count_roots_in_box(box: TorusBox, xi0: TorusCoordinate, n: int) -> list[TorusCoordinate]:
    """All xi in the open box with n*xi = xi0 on the torus (exact).

    The solutions in coordinate i are (xi0_i + j)/n for j = 0..n-1; the
    box filter runs in exact rational arithmetic, so boundary points are
    excluded unambiguously.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if len(xi0) != box.dim:
        raise ValueError("dimension mismatch between box and target")
    per_coord: list[list[Fraction]] = []
    for i, c in enumerate(box.center):
        x0 = Fraction(xi0.entries[i])
        hits = []
        for j in range(n):
            cand = (x0 + j) / n % 1
            d = (cand - c) % 1
            if min(d, 1 - d) < box.half_width:
                hits.append(cand)
        per_coord.append(hits)
    return [TorusCoordinate(combo) for combo in product(*per_coord)]


def fiber_torsion_points(
    lam: complex, t_order: int, eps: float | None = None, verify_tol: float = 1e-8
) -> list[ComplexFiberPoint]:
    """The t_order^2 points exp(Omega(lam) xi^T) for xi in ((1/T)Z/Z)^2.

    Each returned point is checked to satisfy the curve equation and to be
    killed by T under the analytic group law, both within verify_tol.
    """
    lam = complex(lam)
    if not in_sigma(lam):
        raise DomainError(f"lambda = {lam} outside Sigma")
    if t_order < 1:
        raise ValueError("torsion order must be >= 1")
    eps = DEFAULT_EPS if eps is None else eps
    tau = periods(lam, eps).tau
    points = []
    for i in range(t_order):
        for j in range(t_order):
            if i == 0 and j == 0:
                points.append(ComplexFiberPoint(infinity=True))
                continue
            p = _fiber_from_lattice(i / t_order, j / t_order, tau, eps)
            res = p.y * p.y - p.x * (p.x - 1.0) * (p.x - lam)
            scale = 1.0 + abs(p.x) ** 3 + abs(p.y) ** 2
            if abs(res) > verify_tol * scale:
                raise ArithmeticError(f"enumerated point off the curve by {abs(res):.2e}")
            if t_order > 1:
                # [T]P = O checked as [T-1]P = -P, which stays affine
                q = complex_mul(p, t_order - 1, lam)
                if q.infinity or abs(q.x - p.x) + abs(q.y + p.y) > verify_tol * 100 * scale:
                    raise ArithmeticError("enumerated point not killed by the torsion order")
            points.append(p)
    return points


def kronecker_orbit_gap(xi_even: Sequence[float], k_max: int, grid: int | None = None) -> float:
    """Covering radius of the doubled orbit {(2k xi_m)_m : 1 <= k <= K}.

    Distance is the sup-metric on (R/Z)^g.  For g = 1 the radius comes
    from exact cyclic gaps of the sorted orbit; higher g falls back to a
    grid scan (the diagnostic the density tests sample).
    """
    vals = [float(v) for v in xi_even]
    g = len(vals)
    if g == 0 or k_max < 1:
        raise ValueError("need g >= 1 and K >= 1")
    orbit = {tuple((2 * k * v) % 1.0 for v in vals) for k in range(1, k_max + 1)}
    if g == 1:
        pts = sorted(p[0] for p in orbit)
        worst = 0.0
        for a, b in zip(pts, pts[1:] + [pts[0] + 1.0]):
            worst = max(worst, (b - a) / 2.0)
        return worst
    if grid is None:
        grid = max(8, int(round(4096 ** (1.0 / g))))
    worst = 0.0
    axes = [[i / grid for i in range(grid)]] * g
    for point in product(*axes):
        best = 1.0
        for q in orbit:
            d = 0.0
            for a, b in zip(point, q):
                t = abs(a - b) % 1.0
                d = max(d, min(t, 1.0 - t))
            best = min(best, d)
        worst = max(worst, best)
    return worst


def _wrap_half(v: float) -> float:
    return (v + 0.5) % 1.0 - 0.5


def torsion_on_section(
    section,
    t_order: int,
    t_window: tuple[float, float],
    lambda_window: tuple[float, float] | None = None,
    grid_points: int = 200,
    tol: float = 1e-10,
    candidate_tol: float = 1e-6,
):
    """Parameter values where the section becomes fiberwise T-torsion.

    Walks the section parameter over t_window, tracks the torus coordinate
    of the section point with warm starts, and bisects sign changes of the
    residues of T*xi to the requested tolerance.  Candidates where both
    residues vanish are re-verified against the enumerated fiber torsion.
    Returns a list of (lambda, TorusCoordinate) pairs.  For a section that
    is identically T-torsion on the window the continuum is reported at
    the grid resolution.
    """
    lo, hi = float(t_window[0]), float(t_window[1])
    ts = [lo + (hi - lo) * i / (grid_points - 1) for i in range(grid_points)]

    samples: list[tuple[float, float, TorusCoordinate]] = []
    warm = None
    for t in ts:
        lam = section.lambda_at(t)
        if isinstance(lam, complex):
            lam = lam.real
        if not in_sigma(complex(lam)):
            warm = None
            continue
        if lambda_window is not None and not (lambda_window[0] < lam < lambda_window[1]):
            warm = None
            continue
        x, y = section.point_floats(t)
        try:
            xi = xi_map((x, y), lam, initial=warm)
        except Exception:
            warm = None
            continue
        warm = xi
        samples.append((t, lam, xi))

    if not samples:
        return []

    def residues(xi: TorusCoordinate) -> tuple[float, float]:
        return (
            _wrap_half(t_order * float(xi.entries[0])),
            _wrap_half(t_order * float(xi.entries[1])),
        )

    flat = [s for s in samples if max(abs(r) for r in residues(s[2])) < 1e-8]
    if len(flat) > 0.8 * len(samples):
        return [(lam, xi) for (_t, lam, xi) in samples]

    def xi_at(t: float, warm: TorusCoordinate | None):
        lam = section.lambda_at(t)
        if isinstance(lam, complex):
            lam = lam.real
        x, y = section.point_floats(t)
        return lam, xi_map((x, y), lam, initial=warm)

    candidates: list[tuple[float, TorusCoordinate]] = []
    for coord in (0, 1):
        for (t1, _l1, xi1), (t2, _l2, xi2) in zip(samples, samples[1:]):
            if t2 - t1 > 2.0 * (hi - lo) / (grid_points - 1):
                continue  # gap across an invalid region
            r1 = residues(xi1)[coord]
            r2 = residues(xi2)[coord]
            if r1 == 0.0:
                continue
            if r1 * r2 < 0 and abs(r1 - r2) < 0.5:
                a, b, ra = t1, t2, r1
                wxi = xi1
                while b - a > tol:
                    mid = 0.5 * (a + b)
                    lam_m, xi_m = xi_at(mid, wxi)
                    wxi = xi_m
                    rm = residues(xi_m)[coord]
                    if ra * rm <= 0:
                        b = mid
                    else:
                        a, ra = mid, rm
                lam_c, xi_c = xi_at(0.5 * (a + b), wxi)
                rr = residues(xi_c)
                if max(abs(rr[0]), abs(rr[1])) < candidate_tol:
                    candidates.append((0.5 * (a + b), xi_c))

    results = []
    seen: list[float] = []
    for t_c, xi_c in sorted(candidates):
        lam_c = section.lambda_at(t_c)
        if isinstance(lam_c, complex):
            lam_c = lam_c.real
        if any(abs(lam_c - s) < 1e-8 for s in seen):
            continue
        # re-verify against the enumerated T-torsion points of the fiber
        pts = fiber_torsion_points(lam_c, t_order)
        x, y = section.point_floats(t_c)
        best = min(
            (abs(p.x - x) + abs(p.y - y) for p in pts if not p.infinity),
            default=float("inf"),
        )
        if best < math.sqrt(candidate_tol):
            seen.append(lam_c)
            results.append((lam_c, xi_c))
    return results
