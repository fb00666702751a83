"""Pure-numpy kernels.

Reference path used when numba is unavailable or disabled. Scalar sums are
accumulated in descending magnitude order with ``math.fsum``; grid kernels use
numpy's pairwise summation over chunks of the grid.
"""

import math

import numpy as np

# Max number of (grid point, term) pairs materialised at once.
_CHUNK_ELEMS = 1 << 21


def _csum(terms):
    order = np.argsort(-np.abs(terms), kind="stable")
    return math.fsum(terms[order])


def _twisted_angles(n, folded=False):
    # With ``folded`` only the first ceil(n/2) angles are returned, together
    # with weights: theta_k and theta_{n+1-k} contribute identical terms.
    kmax = (n + 1) // 2 if folded else n
    k = np.arange(1, kmax + 1, dtype=np.float64)
    theta = (2.0 * k - 1.0) * np.pi / n
    half = np.sin(0.5 * theta)
    angles = np.cos(theta), 2.0 * half * half, np.sin(theta) ** 2
    if not folded:
        return angles
    wt = np.full(kmax, 2.0)
    if n % 2 == 1:
        wt[-1] = 1.0
    return angles, wt


def sn_sum(n):
    k = np.arange(1, n, dtype=np.float64)
    return 0.25 * _csum(1.0 / np.sin(k * np.pi / n))


def _terms(a, c, s, sin2):
    # a may be a scalar or a (rows, 1) column; c, s, sin2 broadcast along terms.
    w21 = (a - 1.0) + s            # a - cos(theta)
    w12 = (1.0 - a) + a * s        # 1 - a cos(theta)
    d = (1.0 - a) ** 2 + 2.0 * a * s
    d32 = d * np.sqrt(d)
    d52 = d32 * d
    t12 = w12 / d32
    t21 = w21 / d32
    dt12 = -c / d32 - 3.0 * w12 * w21 / d52
    dt21 = (sin2 - 2.0 * w21 * w21) / d52
    g2 = c / d32
    return t12, t21, dt12, dt21, g2


def twisted_sums(n, a):
    """Return (C12, C21, C12', C21', g2) at a single radius ``a``."""
    c, s, sin2 = _twisted_angles(n)
    out = np.empty(5)
    for i, t in enumerate(_terms(float(a), c, s, sin2)):
        out[i] = _csum(t)
    return out


def twisted_grid(n, grid, full):
    """Evaluate the twisted sums on an array of radii.

    Returns an array of shape (2, m) holding (C12, C21) or, when ``full`` is
    true, shape (5, m) with the derivatives and g2 appended.
    """
    grid = np.ascontiguousarray(grid, dtype=np.float64)
    (c, s, sin2), wt = _twisted_angles(n, folded=True)
    nout = 5 if full else 2
    out = np.empty((nout, grid.size))
    rows = max(1, _CHUNK_ELEMS // wt.size)
    for start in range(0, grid.size, rows):
        a = grid[start:start + rows, None]
        terms = _terms(a, c, s, sin2)
        for i in range(nout):
            out[i, start:start + rows] = (terms[i] * wt).sum(axis=1)
    return out


def cjl_sum(n, aj, al, delta):
    """Sum of the general ring coefficient plus the smallest denominator seen.

    Returns (value, min_d, k_at_min) with k 1-based.
    """
    k = np.arange(1, n + 1, dtype=np.float64)
    phi = delta + 2.0 * np.pi * k / n
    half = np.sin(0.5 * phi)
    hs = half * half
    num = (aj - al) + 2.0 * al * hs
    d = (aj - al) ** 2 + 4.0 * aj * al * hs
    kmin = int(np.argmin(d))
    if d[kmin] < 1e-14:
        return math.nan, float(d[kmin]), kmin + 1
    return _csum(num / (d * np.sqrt(d))), float(d[kmin]), kmin + 1


def pair_accel(x, y, mass):
    """Newtonian accelerations on every body from all the others.

    Returns (ax, ay, min_dist, i, j) where (i, j) is the closest pair.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    mass = np.asarray(mass, dtype=np.float64)
    nb = x.size
    ax = np.empty(nb)
    ay = np.empty(nb)
    best = (math.inf, -1, -1)
    rows = max(1, _CHUNK_ELEMS // max(nb, 1))
    for start in range(0, nb, rows):
        idx = np.arange(start, min(nb, start + rows))
        dx = x[None, :] - x[idx, None]
        dy = y[None, :] - y[idx, None]
        r2 = dx * dx + dy * dy
        r2[np.arange(idx.size), idx] = np.inf
        flat = int(np.argmin(r2))
        i, j = divmod(flat, nb)
        if r2[i, j] < best[0] ** 2:
            best = (math.sqrt(r2[i, j]), int(idx[i]), j)
        with np.errstate(divide="ignore", invalid="ignore"):
            inv3 = mass[None, :] / (r2 * np.sqrt(r2))
            fx = dx * inv3
            fy = dy * inv3
        for row in range(idx.size):
            ax[idx[row]] = math.fsum(fx[row])
            ay[idx[row]] = math.fsum(fy[row])
    return ax, ay, best[0], best[1], best[2]
