"""Sign-change scanning and safeguarded root refinement on (0, inf)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import ConvergenceError, EvaluationError
from .intervals import IntervalUnion

DEFAULT_LO = 1e-4
DEFAULT_HI = 1e4
DEFAULT_STEPS = 40001
XTOL = 1e-14
MAXITER = 200

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class Bracket:
    """``fn`` changes sign on [lo, hi].

    A degenerate bracket with ``lo == hi`` marks an abscissa where ``fn`` was
    exactly zero.
    """

    lo: float
    hi: float
    f_lo: float
    f_hi: float

    def __post_init__(self):
        if not (0.0 < self.lo <= self.hi):
            raise ValueError(f"bad bracket [{self.lo}, {self.hi}]")
        if self.lo == self.hi:
            if self.f_lo != 0.0:
                raise ValueError("degenerate bracket must carry an exact zero")
        elif not (self.f_lo * self.f_hi < 0 or self.f_lo == 0.0 or self.f_hi == 0.0):
            raise ValueError(f"no sign change on [{self.lo}, {self.hi}]: "
                             f"f = {self.f_lo}, {self.f_hi}")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @classmethod
    def from_fn(cls, fn: Callable[[float], float], lo: float, hi: float) -> Bracket:
        return cls(lo, hi, float(fn(lo)), float(fn(hi)))


@dataclass(frozen=True)
class Root:
    value: float
    residual: float
    bracket: Bracket  # final enclosing bracket
    iterations: int


def geometric_grid(lo: float, hi: float, steps: int) -> np.ndarray:
    """Log-uniform grid; its image under a -> 1/a is the grid on [1/hi, 1/lo]."""
    if not (0.0 < lo < hi):
        raise ValueError(f"need 0 < lo < hi, got {lo}, {hi}")
    if steps < 2:
        raise ValueError("steps must be >= 2")
    grid = np.exp(np.linspace(math.log(lo), math.log(hi), steps))
    grid[0], grid[-1] = lo, hi
    return grid


def _evaluate(fn, grid, vectorized):
    if vectorized:
        try:
            vals = np.asarray(fn(grid), dtype=np.float64)
        except Exception as exc:
            # Locate the first failing abscissa for the message.
            for x in grid:
                try:
                    fn(np.array([x]))
                except Exception:
                    raise EvaluationError(f"evaluation failed at a={x!r}: {exc}",
                                          abscissa=float(x)) from exc
            raise
        return vals
    vals = np.empty(grid.size)
    for i, x in enumerate(grid):
        try:
            vals[i] = fn(float(x))
        except Exception as exc:
            raise EvaluationError(f"evaluation failed at a={x!r}: {exc}",
                                  abscissa=float(x)) from exc
    return vals


def scan_brackets(
    fn: Callable,
    lo: float = DEFAULT_LO,
    hi: float = DEFAULT_HI,
    steps: int = DEFAULT_STEPS,
    exclusions: IntervalUnion | None = None,
    *,
    grid: Sequence[float] | None = None,
    vectorized: bool = False,
) -> list[Bracket]:
    """All sign changes of ``fn`` between consecutive grid points.

    The grid is geometric over [lo, hi] unless ``grid`` is given. Points inside
    ``exclusions`` are dropped, and a cell that straddles an excluded region is
    not reported (a pole there could produce a spurious sign change). A grid
    point where ``fn`` is exactly zero yields a degenerate bracket.
    With ``vectorized`` the function is called once on the whole grid.
    """
    if grid is None:
        grid = geometric_grid(lo, hi, steps)
    else:
        grid = np.unique(np.asarray(grid, dtype=np.float64))
        if grid.size < 2 or grid[0] <= 0:
            raise ValueError("explicit grid needs >= 2 positive points")
    if exclusions is not None and len(exclusions):
        keep = np.array([x not in exclusions for x in grid])
        grid = grid[keep]
    vals = _evaluate(fn, grid, vectorized)

    out = []
    for i, (x, v) in enumerate(zip(grid, vals)):
        if v == 0.0:
            out.append(Bracket(float(x), float(x), 0.0, 0.0))
            continue
        if i + 1 == grid.size:
            break
        w = vals[i + 1]
        if w != 0.0 and (v < 0) != (w < 0):
            x1 = grid[i + 1]
            if exclusions is not None and exclusions.intersects(x, x1):
                continue
            out.append(Bracket(float(x), float(x1), float(v), float(w)))
    return out


def refine(
    bracket: Bracket,
    fn: Callable[[float], float],
    *,
    xtol: float = XTOL,
    maxiter: int = MAXITER,
) -> Root:
    """Brent-style refinement: inverse quadratic / secant steps safeguarded by bisection.

    Stops once the enclosing bracket is narrower than ``xtol * max(1, |x|)``.
    Every evaluation lies inside the initial bracket.
    """
    if bracket.lo == bracket.hi:
        return Root(bracket.lo, 0.0, bracket, 0)
    a, b = bracket.lo, bracket.hi
    fa, fb = bracket.f_lo, bracket.f_hi
    if fa == 0.0:
        return Root(a, 0.0, Bracket(a, a, 0.0, 0.0), 0)
    if fb == 0.0:
        return Root(b, 0.0, Bracket(b, b, 0.0, 0.0), 0)

    c, fc = a, fa
    d = e = b - a
    for it in range(1, maxiter + 1):
        if (fb > 0) == (fc > 0):
            c, fc = a, fa
            d = e = b - a
        if abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb
        # half of the allowed final width, floored at a few ulps
        tol = max(0.5 * xtol * max(1.0, abs(b)), 2.0 * _EPS * abs(b))
        mid = 0.5 * (c - b)
        if abs(mid) <= tol or fb == 0.0:
            lo, hi = (b, c) if b < c else (c, b)
            fl, fh = (fb, fc) if b < c else (fc, fb)
            if fb == 0.0:
                return Root(b, 0.0, Bracket(b, b, 0.0, 0.0), it)
            return Root(b, fb, Bracket(lo, hi, fl, fh), it)
        if abs(e) >= tol and abs(fa) > abs(fb):
            s = fb / fa
            if a == c:
                p = 2.0 * mid * s
                q = 1.0 - s
            else:
                q = fa / fc
                r = fb / fc
                p = s * (2.0 * mid * q * (q - r) - (b - a) * (r - 1.0))
                q = (q - 1.0) * (r - 1.0) * (s - 1.0)
            if p > 0:
                q = -q
            else:
                p = -p
            if 2.0 * p < min(3.0 * mid * q - abs(tol * q), abs(e * q)):
                e = d
                d = p / q
            else:
                d = mid
                e = d
        else:
            d = mid
            e = d
        a, fa = b, fb
        b = b + d if abs(d) > tol else b + math.copysign(tol, mid)
        fb = float(fn(b))
    lo, hi = sorted((b, c))
    raise ConvergenceError(
        f"no convergence after {maxiter} iterations; last bracket [{lo!r}, {hi!r}]",
        bracket=(lo, hi),
    )


def find_root(fn: Callable[[float], float], lo: float, hi: float, **kw) -> Root:
    """Refine a root of ``fn`` known to change sign on [lo, hi]."""
    return refine(Bracket.from_fn(fn, lo, hi), fn, **kw)
