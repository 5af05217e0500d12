# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled numeric kernels: same API as _kernels_py, complex doubles in C."""

from libc.math cimport cos, sin, exp, floor, pi, fabs

BACKEND_NAME = "cython"

cdef int _MAX_TERMS = 200000


cdef inline double complex _cis(double t) noexcept:
    return cos(t) + 1j * sin(t)


cdef inline double complex _cexp2pi(double re, double im) noexcept:
    # exp(2*pi*i*(re + i*im)) = exp(-2*pi*im) * cis(2*pi*re)
    return exp(-2.0 * pi * im) * _cis(2.0 * pi * re)


cdef inline double _cabs(double complex z) noexcept:
    return fabs(z.real) + fabs(z.imag)


def hyper_f(double complex lam, double eps):
    cdef double r = abs(lam)
    if r >= 1.0:
        raise RuntimeError("hypergeometric series needs |lam| < 1")
    cdef double complex total = 1.0
    cdef double complex term = 1.0
    cdef double complex contrib
    cdef double coef = 1.0, ratio
    cdef int n = 0
    while True:
        ratio = (2.0 * n + 1.0) / (2.0 * n + 2.0)
        coef *= ratio * ratio
        term = term * lam
        contrib = coef * term
        total = total + contrib
        n += 1
        if abs(contrib) <= eps * abs(total) * (1.0 - r):
            return total
        if n > _MAX_TERMS:
            raise RuntimeError("hypergeometric series did not converge")


cdef int _wp_core(double a, double b, double complex tau, double eps,
                  double complex *wp_out, double complex *wpp_out) except -1:
    a -= floor(a + 0.5)
    b -= floor(b + 0.5)
    cdef double complex q = _cexp2pi(tau.real, tau.imag)
    cdef double complex u = _cexp2pi(a + b * tau.real, b * tau.imag)
    cdef double aq = abs(q)
    if aq >= 1.0:
        raise RuntimeError("need Im tau > 0")
    cdef double complex omu = 1.0 - u
    cdef double complex s = 1.0 / 12.0 + u / (omu * omu)
    cdef double complex sp = u * (1.0 + u) / (omu * omu * omu)
    cdef double complex qn = 1.0
    cdef double complex qu, qiu, d1, d2, d3
    cdef int n = 0
    while True:
        n += 1
        qn = qn * q
        qu = qn * u
        qiu = qn / u
        d1 = 1.0 - qu
        d2 = 1.0 - qiu
        d3 = 1.0 - qn
        s = s + qu / (d1 * d1) + qiu / (d2 * d2) - 2.0 * qn / (d3 * d3)
        sp = sp + qu * (1.0 + qu) / (d1 * d1 * d1) - qiu * (1.0 + qiu) / (d2 * d2 * d2)
        if n > 2 and (abs(qu) + abs(qiu) + abs(qn)) * 8.0 <= eps * (1.0 + abs(s)) * (1.0 - aq):
            break
        if n > _MAX_TERMS:
            raise RuntimeError("wp series did not converge")
    wp_out[0] = -(2.0 * pi) * (2.0 * pi) * s
    wpp_out[0] = (-8.0 * pi * pi * pi * 1j) * sp
    return 0


def wp_pair(double a, double b, double complex tau, double eps):
    cdef double complex wp, wpp
    _wp_core(a, b, tau, eps, &wp, &wpp)
    return wp, wpp


def wp_grid(double complex tau, int n, double eps):
    cdef list wp = [None] * (n * n)
    cdef list wpp = [None] * (n * n)
    cdef int i, j
    cdef double complex v, vp
    for i in range(n):
        for j in range(n):
            if i == 0 and j == 0:
                continue
            _wp_core(i / <double> n, j / <double> n, tau, eps, &v, &vp)
            wp[i * n + j] = v
            wpp[i * n + j] = vp
    return wp, wpp
