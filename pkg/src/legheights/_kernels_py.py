"""Pure-Python numeric kernels (fallback backend).

Same API as the compiled backend in _ckernels.pyx: a hypergeometric series,
scalar Weierstrass evaluation in lattice coordinates, and a grid evaluator
used by the elliptic-log inversion.  All series run on complex doubles with
relative truncation control.
"""

from __future__ import annotations

import cmath
import math

BACKEND_NAME = "python"

TWO_PI = 2.0 * math.pi
_MAX_TERMS = 200000


def hyper_f(lam: complex, eps: float) -> complex:
    """Sum of the Gauss series sum_n ((2n)!^2 / (2^{4n} n!^4)) lam^n, |lam| < 1."""
    r = abs(lam)
    if r >= 1.0:
        raise RuntimeError("hypergeometric series needs |lam| < 1")
    total = 1.0 + 0.0j
    term = 1.0 + 0.0j
    coef = 1.0
    n = 0
    while True:
        ratio = (2 * n + 1) / (2 * n + 2)
        coef *= ratio * ratio
        term *= lam
        contrib = coef * term
        total += contrib
        n += 1
        # remaining tail is below |contrib| * r / (1 - r): coefficients decrease
        if abs(contrib) <= eps * abs(total) * (1.0 - r):
            return total
        if n > _MAX_TERMS:
            raise RuntimeError("hypergeometric series did not converge")


def _wp_core(a: float, b: float, tau: complex, eps: float):
    """Weierstrass P and P' at z = a + b*tau for the lattice Z + tau*Z.

    a, b are real lattice coordinates; the caller guarantees (a, b) is not
    an integer pair.  Returns values normalized by the classical Lambert
    series in u = e^(2 pi i z), q = e^(2 pi i tau).
    """
    # center the coordinates so both |q^n u| and |q^n / u| shrink fast
    a -= math.floor(a + 0.5)
    b -= math.floor(b + 0.5)
    q = cmath.exp(2j * math.pi * tau)
    u = cmath.exp(2j * math.pi * (a + b * tau))
    aq = abs(q)
    if aq >= 1.0:
        raise RuntimeError("need Im tau > 0")

    one_minus_u = 1.0 - u
    s = 1.0 / 12.0 + u / (one_minus_u * one_minus_u)
    sp = u * (1.0 + u) / (one_minus_u * one_minus_u * one_minus_u)
    qn = 1.0 + 0.0j
    n = 0
    while True:
        n += 1
        qn *= q
        qu = qn * u
        qiu = qn / u
        d1 = 1.0 - qu
        d2 = 1.0 - qiu
        d3 = 1.0 - qn
        s += qu / (d1 * d1) + qiu / (d2 * d2) - 2.0 * qn / (d3 * d3)
        sp += qu * (1.0 + qu) / (d1 * d1 * d1) - qiu * (1.0 + qiu) / (d2 * d2 * d2)
        # after centering, surviving terms carry q^(n - 1/2)
        if n > 2 and (abs(qu) + abs(qiu) + abs(qn)) * 8.0 <= eps * (1.0 + abs(s)) * (1.0 - aq):
            break
        if n > _MAX_TERMS:
            raise RuntimeError("wp series did not converge")
    wp = -(TWO_PI * TWO_PI) * s  # (2 pi i)^2 = -4 pi^2
    wpp = (-8.0 * math.pi**3 * 1j) * sp  # (2 pi i)^3 = -8 pi^3 i
    return wp, wpp


def wp_pair(a: float, b: float, tau: complex, eps: float):
    return _wp_core(a, b, tau, eps)


def wp_grid(tau: complex, n: int, eps: float):
    """P and P' on the lattice-coordinate grid {(i/n, j/n)}, excluding (0,0).

    Returns two flat lists of length n*n indexed by i*n + j; entry 0 (the
    lattice point) is None.
    """
    wp = [None] * (n * n)
    wpp = [None] * (n * n)
    for i in range(n):
        for j in range(n):
            if i == 0 and j == 0:
                continue
            v, vp = _wp_core(i / n, j / n, tau, eps)
            wp[i * n + j] = v
            wpp[i * n + j] = vp
    return wp, wpp
