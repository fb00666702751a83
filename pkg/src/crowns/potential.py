"""Scalar functions of the twisted two-ring problem.

With the inner ring normalised to unit radius and unit masses, a second ring
of radius ``a`` and mass ``m`` rotated by pi/n is a central configuration iff

    m = H(a) = a**2 * F(a) / G(a),
    F(a) = S_n * a - C21(a),      G(a) = S_n - a**3 * C12(a).

All sums are taken over theta_k = (2k - 1) pi / n and evaluated by the
kernels in :mod:`crowns.kernels`.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from . import kernels
from .errors import DomainError, PoleError, SingularityError

POLE_RTOL = 1e-13


def _check_n(n: int, least: int = 2) -> int:
    if int(n) != n or n < least:
        raise DomainError(f"n must be an integer >= {least}, got {n}")
    return int(n)


def _check_a(a: float) -> float:
    a = float(a)
    if not a > 0:
        raise DomainError(f"radius must be positive, got {a}")
    return a


@lru_cache(maxsize=None)
def s_n(n: int) -> float:
    """(1/4) * sum_{k=1}^{n-1} 1/sin(k pi/n)."""
    return float(kernels.sn_sum(_check_n(n)))


def coeff_cjl(n: int, a_j: float, a_l: float, phase_diff: float) -> float:
    """Coefficient C_jl of ring l acting on the leader of ring j.

    ``phase_diff`` is the leader-angle difference phi_j - phi_l. Raises
    :class:`SingularityError` when a body of ring l sits on the leader of j.
    """
    n = _check_n(n)
    value, dmin, k = kernels.cjl_sum(n, _check_a(a_j), _check_a(a_l), float(phase_diff))
    if math.isnan(value):
        raise SingularityError(
            f"bodies collide: term k={k} has squared distance {dmin:.3g}", index=k)
    return float(value)


class TwistedCurveContext:
    """Per-n cache for evaluating F, G, H and their derivatives.

    Obtain instances through :func:`context`; they are immutable.
    """

    def __init__(self, n: int):
        self.n = _check_n(n)
        k = np.arange(1, self.n + 1)
        self.theta = (2 * k - 1) * np.pi / self.n
        self.theta.flags.writeable = False
        self.sn = s_n(self.n)

    def __repr__(self):
        return f"TwistedCurveContext(n={self.n})"

    # -- raw sums -------------------------------------------------------
    def sums(self, a: float) -> np.ndarray:
        """(C12, C21, C12', C21', g2) at ``a``."""
        return kernels.twisted_sums(self.n, _check_a(a))

    def c12(self, a: float) -> float:
        return float(self.sums(a)[0])

    def c21(self, a: float) -> float:
        return float(self.sums(a)[1])

    # -- F, G, H ----------------------------------------------------------
    def _eval(self, a: float):
        c12, c21, dc12, dc21, _ = self.sums(a)
        a3 = a ** 3
        f = self.sn * a - c21
        g = self.sn - a3 * c12
        df = self.sn - dc21
        dg = -3.0 * a * a * c12 - a3 * dc12
        return float(f), float(g), float(df), float(dg), float(a3 * c12)

    def fg(self, a: float) -> tuple[float, float, float, float]:
        """(F, G, F', G') at ``a``."""
        return self._eval(a)[:4]

    def f(self, a: float) -> float:
        return self.fg(a)[0]

    def g(self, a: float) -> float:
        return self.fg(a)[1]

    def _pole_guard(self, a: float, g: float, a3c12: float) -> None:
        if abs(g) < POLE_RTOL * max(self.sn, abs(a3c12)):
            raise PoleError(f"H has a pole at a={a!r} (n={self.n})", a=a)

    def h(self, a: float) -> float:
        a = _check_a(a)
        f, g, _, _, a3c12 = self._eval(a)
        self._pole_guard(a, g, a3c12)
        return a * a * f / g

    def h_prime(self, a: float) -> float:
        a = _check_a(a)
        f, g, df, dg, a3c12 = self._eval(a)
        self._pole_guard(a, g, a3c12)
        return (a * (2.0 * f + a * df) * g - a * a * f * dg) / (g * g)

    def h_prime_numerator(self, a: float) -> float:
        """H' * G**2: smooth for all a > 0, same sign as H' away from poles."""
        f, g, df, dg = self.fg(_check_a(a))
        return a * (2.0 * f + a * df) * g - a * a * f * dg

    def mass_residual(self, a: float, m: float) -> float:
        """a**2 F(a) - m G(a) = G(a) (H(a) - m), a pole-free form of H(a) = m."""
        f, g, _, _ = self.fg(_check_a(a))
        return a * a * f - m * g

    def g1_g2(self, a: float) -> tuple[float, float]:
        a = _check_a(a)
        g1 = self.sn * (a * a + a + 1.0) / (a * a * (a + 1.0))
        return g1, float(self.sums(a)[4])

    # -- vectorised ---------------------------------------------------------
    def grid(self, a, full: bool = True) -> dict[str, np.ndarray]:
        """Evaluate F, G (and F', G', g2 when ``full``) on an array of radii."""
        a = np.asarray(a, dtype=np.float64)
        sums = kernels.twisted_grid(self.n, a, full)
        out = {"a": a, "C12": sums[0], "C21": sums[1]}
        out["F"] = self.sn * a - sums[1]
        out["G"] = self.sn - a ** 3 * sums[0]
        if full:
            out["dF"] = self.sn - sums[3]
            out["dG"] = -3.0 * a * a * sums[0] - a ** 3 * sums[2]
            out["g2"] = sums[4]
        return out

    def f_grid(self, a) -> np.ndarray:
        return self.grid(a, full=False)["F"]

    def g_grid(self, a) -> np.ndarray:
        return self.grid(a, full=False)["G"]

    def h_prime_numerator_grid(self, a) -> np.ndarray:
        v = self.grid(a)
        a = v["a"]
        return a * (2.0 * v["F"] + a * v["dF"]) * v["G"] - a * a * v["F"] * v["dG"]

    def mass_residual_grid(self, a, m: float) -> np.ndarray:
        v = self.grid(a, full=False)
        return v["a"] ** 2 * v["F"] - m * v["G"]


@lru_cache(maxsize=256)
def context(n: int) -> TwistedCurveContext:
    return TwistedCurveContext(n)


def c12(n: int, a: float) -> float:
    return context(n).c12(a)


def c21(n: int, a: float) -> float:
    return context(n).c21(a)


def f_of_a(n: int, a: float) -> float:
    return context(n).f(a)


def g_of_a(n: int, a: float) -> float:
    return context(n).g(a)


def h_of_a(n: int, a: float) -> float:
    return context(n).h(a)


def f_prime(n: int, a: float) -> float:
    return context(n).fg(a)[2]


def g_prime(n: int, a: float) -> float:
    return context(n).fg(a)[3]


def h_prime(n: int, a: float) -> float:
    return context(n).h_prime(a)


def g1_g2(n: int, a: float) -> tuple[float, float]:
    """The pair (g1, g2) whose crossing for a > 1 is the equal-mass radius."""
    _check_n(n, least=4)
    return context(n).g1_g2(a)
