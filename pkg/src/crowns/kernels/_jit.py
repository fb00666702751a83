"""numba-compiled kernels; same signatures and semantics as ``_numpy``."""

import math

import numpy as np
from numba import njit


@njit(cache=True, inline="always")
def _neumaier(s, c, x):
    u = s + x
    if abs(s) >= abs(x):
        c += (s - u) + x
    else:
        c += (x - u) + s
    return u, c


@njit(cache=True)
def _csum(terms):
    order = np.argsort(-np.abs(terms), kind="mergesort")
    s = 0.0
    c = 0.0
    for i in order:
        s, c = _neumaier(s, c, terms[i])
    return s + c


@njit(cache=True)
def sn_sum(n):
    terms = np.empty(n - 1)
    for k in range(1, n):
        terms[k - 1] = 1.0 / math.sin(k * math.pi / n)
    return 0.25 * _csum(terms)


@njit(cache=True)
def twisted_sums(n, a):
    t = np.empty((5, n))
    for k in range(1, n + 1):
        theta = (2.0 * k - 1.0) * math.pi / n
        half = math.sin(0.5 * theta)
        s = 2.0 * half * half
        c = math.cos(theta)
        sin2 = math.sin(theta) ** 2
        w21 = (a - 1.0) + s
        w12 = (1.0 - a) + a * s
        d = (1.0 - a) ** 2 + 2.0 * a * s
        d32 = d * math.sqrt(d)
        d52 = d32 * d
        i = k - 1
        t[0, i] = w12 / d32
        t[1, i] = w21 / d32
        t[2, i] = -c / d32 - 3.0 * w12 * w21 / d52
        t[3, i] = (sin2 - 2.0 * w21 * w21) / d52
        t[4, i] = c / d32
    out = np.empty(5)
    for j in range(5):
        out[j] = _csum(t[j])
    return out


@njit(cache=True)
def _twisted_grid(n, grid, full):
    nout = 5 if full else 2
    m = grid.size
    out = np.zeros((nout, m))
    # theta_k and theta_{n+1-k} give identical terms: fold them with weight 2.
    h = (n + 1) // 2
    c = np.empty(h)
    s = np.empty(h)
    sin2 = np.empty(h)
    wt = np.full(h, 2.0)
    if n % 2 == 1:
        wt[h - 1] = 1.0
    for k in range(1, h + 1):
        theta = (2.0 * k - 1.0) * math.pi / n
        half = math.sin(0.5 * theta)
        s[k - 1] = 2.0 * half * half
        c[k - 1] = math.cos(theta)
        sin2[k - 1] = math.sin(theta) ** 2
    acc = np.zeros(nout)
    cmp = np.zeros(nout)
    for p in range(m):
        a = grid[p]
        acc[:] = 0.0
        cmp[:] = 0.0
        for i in range(h):
            w21 = (a - 1.0) + s[i]
            w12 = (1.0 - a) + a * s[i]
            d = (1.0 - a) ** 2 + 2.0 * a * s[i]
            inv32 = wt[i] / (d * math.sqrt(d))
            acc[0], cmp[0] = _neumaier(acc[0], cmp[0], w12 * inv32)
            acc[1], cmp[1] = _neumaier(acc[1], cmp[1], w21 * inv32)
            if full:
                inv52 = inv32 / d
                acc[2], cmp[2] = _neumaier(
                    acc[2], cmp[2], -c[i] * inv32 - 3.0 * w12 * w21 * inv52)
                acc[3], cmp[3] = _neumaier(
                    acc[3], cmp[3], (sin2[i] - 2.0 * w21 * w21) * inv52)
                acc[4], cmp[4] = _neumaier(acc[4], cmp[4], c[i] * inv32)
        for j in range(nout):
            out[j, p] = acc[j] + cmp[j]
    return out


def twisted_grid(n, grid, full):
    return _twisted_grid(n, np.ascontiguousarray(grid, dtype=np.float64), bool(full))


@njit(cache=True)
def cjl_sum(n, aj, al, delta):
    terms = np.empty(n)
    dmin = math.inf
    kmin = 0
    for k in range(1, n + 1):
        phi = delta + 2.0 * math.pi * k / n
        half = math.sin(0.5 * phi)
        hs = half * half
        d = (aj - al) ** 2 + 4.0 * aj * al * hs
        if d < dmin:
            dmin = d
            kmin = k
        terms[k - 1] = ((aj - al) + 2.0 * al * hs) / (d * math.sqrt(d))
    if dmin < 1e-14:
        return math.nan, dmin, kmin
    return _csum(terms), dmin, kmin


@njit(cache=True)
def _pair_accel(x, y, mass):
    nb = x.size
    ax = np.empty(nb)
    ay = np.empty(nb)
    best = math.inf
    bi = -1
    bj = -1
    for i in range(nb):
        sx = 0.0
        cx = 0.0
        sy = 0.0
        cy = 0.0
        for j in range(nb):
            if j == i:
                continue
            dx = x[j] - x[i]
            dy = y[j] - y[i]
            r2 = dx * dx + dy * dy
            r = math.sqrt(r2)
            if r < best:
                best = r
                bi = i
                bj = j
            if r2 == 0.0:
                continue
            inv3 = mass[j] / (r2 * r)
            sx, cx = _neumaier(sx, cx, dx * inv3)
            sy, cy = _neumaier(sy, cy, dy * inv3)
        ax[i] = sx + cx
        ay[i] = sy + cy
    return ax, ay, best, bi, bj


def pair_accel(x, y, mass):
    return _pair_accel(
        np.ascontiguousarray(x, dtype=np.float64),
        np.ascontiguousarray(y, dtype=np.float64),
        np.ascontiguousarray(mass, dtype=np.float64),
    )
