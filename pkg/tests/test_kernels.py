import math
import os
import subprocess
import sys

import numpy as np
import pytest

from crowns import kernels
from crowns.kernels import _jit, _numpy

BACKENDS = [pytest.param(_numpy, id="numpy"), pytest.param(_jit, id="numba")]


def naive_sums(n, a):
    """Straight textbook evaluation, no folding or reordering."""
    th = (2 * np.arange(1, n + 1) - 1) * np.pi / n
    c = np.cos(th)
    d = 1 + a * a - 2 * a * c
    c12 = math.fsum((1 - a * c) / d ** 1.5)
    c21 = math.fsum((a - c) / d ** 1.5)
    dc21 = math.fsum((np.sin(th) ** 2 - 2 * (a - c) ** 2) / d ** 2.5)
    dc12 = math.fsum(-c / d ** 1.5 - 3 * (1 - a * c) * (a - c) / d ** 2.5)
    return np.array([c12, c21, dc12, dc21])


@pytest.mark.parametrize("b", BACKENDS)
@pytest.mark.parametrize("n", [2, 3, 4, 7, 12, 50])
def test_sn_sum(b, n):
    k = np.arange(1, n)
    assert b.sn_sum(n) == pytest.approx(0.25 * math.fsum(1 / np.sin(k * np.pi / n)), rel=1e-14)


@pytest.mark.parametrize("b", BACKENDS)
@pytest.mark.parametrize("n", [2, 3, 5, 8, 33])
@pytest.mark.parametrize("a", [0.05, 0.6, 0.999, 1.0, 1.7, 40.0])
def test_twisted_sums_match_naive(b, n, a):
    got = b.twisted_sums(n, a)[:4]
    want = naive_sums(n, a)
    scale = np.max(np.abs(want))
    np.testing.assert_allclose(got, want, rtol=1e-11, atol=1e-13 * scale)


@pytest.mark.parametrize("n", [2, 3, 6, 11, 250])
@pytest.mark.parametrize("full", [False, True])
def test_backends_agree_on_grid(n, full):
    grid = np.exp(np.linspace(-3, 3, 301))
    u = _numpy.twisted_grid(n, grid, full)
    v = _jit.twisted_grid(n, grid, full)
    assert u.shape == v.shape == (5 if full else 2, grid.size)
    scale = np.max(np.abs(u), axis=1, keepdims=True)
    assert np.all(np.abs(u - v) <= 1e-12 * scale)


@pytest.mark.parametrize("b", BACKENDS)
def test_grid_matches_pointwise(b):
    grid = np.array([0.3, 0.9, 1.0, 1.2, 7.0])
    g = b.twisted_grid(9, grid, True)
    for i, a in enumerate(grid):
        p = b.twisted_sums(9, a)
        np.testing.assert_allclose(g[:, i], p, rtol=1e-12, atol=1e-14)


@pytest.mark.parametrize("b", BACKENDS)
def test_cjl_reports_collision(b):
    value, dmin, k = b.cjl_sum(4, 1.0, 1.0, 0.0)
    assert math.isnan(value) and dmin < 1e-14 and k == 4
    value, dmin, _ = b.cjl_sum(4, 1.0, 2.0, math.pi / 4)
    assert math.isfinite(value) and dmin > 0.5


@pytest.mark.parametrize("b", BACKENDS)
def test_pair_accel_against_double_loop(b):
    rng = np.random.default_rng(3)
    x, y = rng.normal(size=7), rng.normal(size=7)
    m = rng.uniform(0.5, 2.0, size=7)
    ax, ay, dmin, i, j = b.pair_accel(x, y, m)
    ex, ey = np.zeros(7), np.zeros(7)
    best = (np.inf, -1, -1)
    for p in range(7):
        for q in range(7):
            if p == q:
                continue
            dx, dy = x[q] - x[p], y[q] - y[p]
            r = math.hypot(dx, dy)
            ex[p] += m[q] * dx / r ** 3
            ey[p] += m[q] * dy / r ** 3
            best = min(best, (r, min(p, q), max(p, q)))
    np.testing.assert_allclose(ax, ex, rtol=1e-12)
    np.testing.assert_allclose(ay, ey, rtol=1e-12)
    assert dmin == pytest.approx(best[0], rel=1e-14)
    assert (min(i, j), max(i, j)) == best[1:]


def _backend_in_subprocess(flag):
    env = dict(os.environ)
    env.pop("CROWNS_DISABLE_NUMBA", None)
    if flag is not None:
        env["CROWNS_DISABLE_NUMBA"] = flag
    out = subprocess.run([sys.executable, "-c", "import crowns.kernels as k; print(k.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    return out.stdout.strip()


def test_env_flag_selects_numpy():
    assert _backend_in_subprocess("1") == "numpy"
    assert _backend_in_subprocess("true") == "numpy"


def test_default_backend_is_numba():
    assert _backend_in_subprocess(None) == "numba"
    assert _backend_in_subprocess("0") == "numba"


def test_active_backend_exports():
    mod = _numpy if kernels.BACKEND == "numpy" else _jit
    assert kernels.twisted_sums is mod.twisted_sums


def test_numpy_backend_end_to_end():
    env = dict(os.environ, CROWNS_DISABLE_NUMBA="1")
    code = ("from crowns.analysis import zeros_of_F, solve_for_mass;"
            "z = zeros_of_F(4); s = solve_for_mass(3, 100.0);"
            "print(repr(z.z1), repr(z.z2), len(s.solutions))")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                         text=True, check=True).stdout.split()
    assert float(out[0]) == pytest.approx(0.697380509876, abs=1e-9)
    assert float(out[1]) == pytest.approx(1.602408486212, abs=1e-9)
    assert out[2] == "3"
