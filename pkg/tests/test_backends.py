"""Agreement between the compiled kernels and the pure-Python fallback."""

import random

import pytest

import legheights._kernels_py as pyk

ck = pytest.importorskip("legheights._ckernels")


def test_backend_names():
    assert pyk.BACKEND_NAME == "python"
    assert ck.BACKEND_NAME == "cython"


def test_hyper_f_agreement():
    rng = random.Random(1)
    for _ in range(60):
        lam = complex(rng.uniform(-0.65, 0.65), rng.uniform(-0.65, 0.65))
        a = pyk.hyper_f(lam, 1e-15)
        b = ck.hyper_f(lam, 1e-15)
        assert abs(a - b) <= 1e-13 * (1 + abs(a))


def test_wp_pair_agreement():
    rng = random.Random(2)
    for _ in range(120):
        tau = complex(rng.uniform(-1, 1), rng.uniform(0.25, 2.0))
        a, b = rng.uniform(0.02, 0.98), rng.uniform(0.02, 0.98)
        w1, wp1 = pyk.wp_pair(a, b, tau, 1e-14)
        w2, wp2 = ck.wp_pair(a, b, tau, 1e-14)
        assert abs(w1 - w2) <= 1e-11 * (1 + abs(w1))
        assert abs(wp1 - wp2) <= 1e-11 * (1 + abs(wp1))


def test_wp_grid_agreement():
    tau = 0.31 + 0.87j
    g1, gp1 = pyk.wp_grid(tau, 16, 1e-13)
    g2, gp2 = ck.wp_grid(tau, 16, 1e-13)
    assert g1[0] is None and g2[0] is None
    for a, b in zip(g1[1:], g2[1:]):
        assert abs(a - b) <= 1e-11 * (1 + abs(a))
    for a, b in zip(gp1[1:], gp2[1:]):
        assert abs(a - b) <= 1e-11 * (1 + abs(a))


def test_backend_env_override(monkeypatch):
    import importlib

    import legheights._backend as backend

    monkeypatch.setenv("LEGHEIGHTS_BACKEND", "py")
    mod = importlib.reload(backend)
    assert mod.BACKEND_NAME == "python"
    monkeypatch.delenv("LEGHEIGHTS_BACKEND")
    importlib.reload(backend)
