"""Queries on twisted (2,n)-crowns.

The inner ring has unit radius and unit masses; the twisted ring has radius
``a`` and mass ratio ``m``. Configurations related by ``(a, m) -> (1/a, 1/m)``
are the same crown rescaled, so queries with ``m < 1`` are answered through
``1/m``.

Solving ``H(a) = m`` splits every admissible component at the critical points
of ``H``. On each resulting piece ``H`` is monotone, so the piece holds at most
one root, which is bracketed by the piece endpoints and refined on the
pole-free residual ``a**2 F(a) - m G(a)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .core import CrownConfiguration
from .errors import (
    ConjectureViolation,
    DomainError,
    InconsistencyError,
    NotFoundError,
)
from .intervals import Interval, IntervalUnion
from .oracle import PASS_TOL, ResidualReport, full_gradient_residual
from .potential import context
from .rootkit import XTOL, Bracket, geometric_grid, refine, scan_brackets

MERGE_RTOL = 1e-10
BOUNDARY_ATOL = 1e-9
CRIT_STEPS = 4001


def _check_n(n, least=2):
    if int(n) != n or n < least:
        raise DomainError(f"n must be an integer >= {least}, got {n}")
    return int(n)


def _check_m(m):
    m = float(m)
    if not (m > 0 and math.isfinite(m)):
        raise DomainError(f"mass ratio must be positive, got {m}")
    return m


# ---------------------------------------------------------------------------
# zeros of F


@dataclass(frozen=True)
class ZeroPair:
    """The two positive zeros of F (for n = 2: 1/sqrt(3) and sqrt(3)).

    ``conjecture_verified`` is true when the global sign scan found exactly the
    expected number of sign changes of F (two, or one for n = 2).
    """

    n: int
    z1: float
    z2: float
    conjecture_verified: bool
    sign_changes: int
    analytic: bool = False


def _scan_grid(n):
    wide = geometric_grid(1e-4, 1e4, 40001)
    # extra resolution where F varies on the 1/n scale
    w = 8.0 / n
    local = geometric_grid(1.0 / (1.0 + w), 1.0 + w, 2001)
    return np.union1d(wide, local)


def _doubling_bracket(fn, lo, limit=1e8):
    """Push ``hi`` outward from ``lo`` by doubling until ``fn`` changes sign."""
    f_lo = fn(lo)
    hi = 2.0 * lo
    while hi < limit:
        f_hi = fn(hi)
        if (f_hi > 0) != (f_lo > 0) or f_hi == 0.0:
            return Bracket(lo, hi, f_lo, f_hi)
        lo, f_lo, hi = hi, f_hi, 2.0 * hi
    raise NotFoundError(f"no sign change found below {limit}")


def _known_brackets(n, f):
    """Brackets for (z1, z2) from known bounds; None when a sign check fails."""
    try:
        if n == 3:
            b1 = Bracket.from_fn(f, 3 / 8, 7 / 16)
            b2 = Bracket.from_fn(f, 25 / 16, 13 / 8)
        elif n == 4:
            b1 = Bracket.from_fn(f, 2 / 3, 1.0)
            b2 = _doubling_bracket(f, 1.5)
        else:
            b1 = Bracket.from_fn(f, 1.0 - 1.0 / n, 1.0)
            b2 = _doubling_bracket(f, n / (n - 1.0))
    except (ValueError, NotFoundError):
        return None
    return b1, b2


@lru_cache(maxsize=None)
def zeros_of_F(n: int, tol: float = XTOL, scan: bool = True) -> ZeroPair:
    """Locate z1 < 1 < z2 with F(z1) = F(z2) = 0.

    With ``scan`` the whole range [1e-4, 1e4] is also sampled for sign changes;
    more than two raises :class:`ConjectureViolation`.
    """
    n = _check_n(n)
    ctx = context(n)
    f = ctx.f
    brackets = []
    if scan:
        brackets = scan_brackets(ctx.f_grid, grid=_scan_grid(n), vectorized=True)

    if n == 2:
        z2 = refine(Bracket.from_fn(f, 1.5, 2.0), f, xtol=tol).value
        return ZeroPair(2, 1.0 / z2, z2, len(brackets) == 1 if scan else False,
                        len(brackets), analytic=True)

    if len(brackets) > 2:
        raise ConjectureViolation(
            f"F has {len(brackets)} sign changes for n={n}", n=n, brackets=brackets)
    known = _known_brackets(n, f)
    if known is None:
        if len(brackets) != 2:
            raise NotFoundError(f"could not bracket both zeros of F for n={n}")
        known = brackets
    z1, z2 = (refine(b, f, xtol=tol).value for b in known)
    if scan and len(brackets) == 2:
        for b, z in zip(brackets, (z1, z2)):
            if not (b.lo <= z <= b.hi):
                raise InconsistencyError(
                    f"scan bracket [{b.lo}, {b.hi}] does not contain zero {z} (n={n})")
    if not (0 < z1 < 1 < z2):
        raise InconsistencyError(f"zeros out of order for n={n}: {z1}, {z2}")
    return ZeroPair(n, z1, z2, scan and len(brackets) == 2, len(brackets))


# ---------------------------------------------------------------------------
# admissible sets


def admissible_set(n: int, tol: float = XTOL) -> IntervalUnion:
    """All radii a > 0 for which some positive mass ratio gives a crown."""
    zp = zeros_of_F(n, tol)
    z1, z2 = zp.z1, zp.z2
    if zp.n == 2:
        return IntervalUnion([Interval(z1, z2, "central")])
    if zp.n == 3:
        parts = [(0.0, z1), (1.0 / z2, z2), (1.0 / z1, math.inf)]
    else:
        parts = [(0.0, 1.0 / z2), (z1, 1.0 / z1), (z2, math.inf)]
    labels = ("inner", "central", "outer")
    return IntervalUnion(Interval(lo, hi, lab) for (lo, hi), lab in zip(parts, labels))


def central_interval(n: int, tol: float = XTOL) -> Interval:
    """The admissible component containing a = 1."""
    return admissible_set(n, tol).component_containing(1.0)


# ---------------------------------------------------------------------------
# critical points of H and monotone pieces


def _finite_span(iv: Interval) -> tuple[float, float]:
    lo = iv.lo if iv.lo > 0 else min(1e-6, 1e-3 * iv.hi)
    hi = iv.hi if iv.bounded else max(1e6, 1e3 * iv.lo)
    return lo, hi


@lru_cache(maxsize=None)
def critical_points(n: int, tol: float = XTOL) -> tuple[float, ...]:
    """Sorted critical points of H inside the admissible set."""
    ctx = context(n)
    found = []
    for iv in admissible_set(n, tol):
        lo, hi = _finite_span(iv)
        for b in scan_brackets(ctx.h_prime_numerator_grid, lo, hi, CRIT_STEPS,
                               vectorized=True):
            x = refine(b, ctx.h_prime_numerator, xtol=tol).value
            if x in iv:
                found.append(x)
    return tuple(sorted(found))


def _merge(values, rtol=MERGE_RTOL):
    out = []
    for v in sorted(values):
        if out and abs(v - out[-1]) <= rtol * max(abs(v), abs(out[-1])):
            continue
        out.append(v)
    return out


def _roots_on_component(ctx, iv, crits, m, tol):
    """Radii in ``iv`` with H(a) = m, for m > 0."""
    fn = lambda a: ctx.mass_residual(a, m)  # noqa: E731
    cuts = [iv.lo] + [c for c in crits if c in iv] + [iv.hi]
    roots = []
    for p, q in zip(cuts, cuts[1:]):
        if p == 0.0:
            # H -> 0 at the origin: step in until H < m
            p = min(1e-3, 0.5 * q)
            while ctx.h(p) >= m and p > 1e-200:
                p *= 1e-3
        if math.isinf(q):
            q = max(2.0 * p, 2.0)
            while ctx.h(q) <= m and q < 1e200:
                q *= 2.0
        fp, fq = fn(p), fn(q)
        for x in (p, q):
            # tangency at a critical point
            if x in crits and abs(ctx.h(x) - m) <= 1e-13 * max(1.0, m):
                roots.append(x)
        if fp == 0.0:
            roots.append(p)
        elif fq == 0.0:
            roots.append(q)
        elif (fp > 0) != (fq > 0):
            roots.append(refine(Bracket(p, q, fp, fq), fn, xtol=tol).value)
    return roots


@dataclass(frozen=True)
class Solution:
    a: float
    interval_label: str
    convex: bool
    residual: float
    report: ResidualReport | None = field(default=None, compare=False, repr=False)

    def to_dict(self) -> dict:
        d = {"a": self.a, "interval": self.interval_label, "convex": self.convex,
             "residual": self.residual}
        if self.report is not None:
            d["report"] = self.report.to_dict()
        return d


@dataclass(frozen=True)
class SolutionSet:
    n: int
    mass_ratio: float
    solutions: tuple[Solution, ...]
    count_deduplicated: int

    @property
    def radii(self) -> list[float]:
        return [s.a for s in self.solutions]

    def to_dict(self) -> dict:
        return {"n": self.n, "mass_ratio": self.mass_ratio,
                "count_deduplicated": self.count_deduplicated,
                "solutions": [s.to_dict() for s in self.solutions]}


def _radii_for_mass(n, m, tol):
    """Sorted radii solving H(a) = m, m >= 1 reduced internally."""
    if m < 1.0:
        return sorted(1.0 / a for a in _radii_for_mass(n, 1.0 / m, tol))
    ctx = context(n)
    crits = critical_points(n, tol)
    roots = []
    for iv in admissible_set(n, tol):
        roots.extend(_roots_on_component(ctx, iv, crits, m, tol))
    return _merge(roots)


def _dedup_count(radii, m):
    if abs(m - 1.0) > 1e-12:
        return len(radii)
    return len(_merge(max(a, 1.0 / a) for a in radii))


def solve_for_mass(n: int, m: float, tol: float = XTOL, validate: bool = True) -> SolutionSet:
    """Every radius a > 0 with H(a) = m, each checked by the Cartesian oracle."""
    n = _check_n(n)
    m = _check_m(m)
    adm = admissible_set(n, tol)
    sols = []
    for a in _radii_for_mass(n, m, tol):
        iv = adm.component_containing(a)
        label = iv.label if iv is not None else "boundary"
        report = None
        residual = math.nan
        if validate:
            report = full_gradient_residual(CrownConfiguration.twisted_pair(n, a, m))
            residual = report.max_gradient_residual
            if residual > PASS_TOL:
                raise InconsistencyError(
                    f"radius a={a!r} for n={n}, m={m!r} fails the oracle "
                    f"(residual {residual:.3g})")
        sols.append(Solution(a, label, is_convex(n, a), residual, report))
    return SolutionSet(n, m, tuple(sols), _dedup_count([s.a for s in sols], m))


# ---------------------------------------------------------------------------
# n = 3 bifurcations and counting


@dataclass(frozen=True)
class BifurcationData:
    a_star: float
    a_star_star: float
    m_star: float
    m_star_star: float


@lru_cache(maxsize=None)
def bifurcation_n3(tol: float = XTOL) -> BifurcationData:
    """Local max (a*, m*) and local min (a**, m**) of H for n = 3, a > 1."""
    zp = zeros_of_F(3, tol)
    crits = critical_points(3, tol)
    first = [c for c in crits if 1.0 < c < zp.z2]
    second = [c for c in crits if c > 1.0 / zp.z1]
    if len(first) != 1 or len(second) != 1:
        raise InconsistencyError(
            f"expected one critical point in each of (1, z2) and (1/z1, inf), "
            f"got {first} and {second}")
    ctx = context(3)
    a1, a2 = first[0], second[0]
    m1, m2 = ctx.h(a1), ctx.h(a2)
    h = 1e-4 * a1
    if not ctx.h(a1 + h) + ctx.h(a1 - h) - 2.0 * m1 < 0:
        raise InconsistencyError("H(a*) is not a local maximum")
    if not m1 < m2:
        raise InconsistencyError(f"expected m* < m**, got {m1}, {m2}")
    return BifurcationData(a1, a2, m1, m2)


@dataclass(frozen=True)
class CountResult:
    n: int
    mass_ratio: float
    count: int
    clause: str
    boundary: bool = False
    expected: str = ""


def _n3_clause(m, bif):
    """(expected count, clause) for n = 3 and m >= 1; boundary flag."""
    ms, mss = bif.m_star, bif.m_star_star
    for value, name in ((1.0, "m = 1"), (ms, "m = m*"), (mss, "m = m**")):
        if abs(m - value) <= BOUNDARY_ATOL:
            return 2, f"{name}: exactly two crowns", True
    if m < ms:
        return 3, "1 < m < m*: exactly three crowns, all in the central interval", False
    if m < mss:
        return 1, "m* < m < m**: exactly one crown, with 1/z2 < a < 1", False
    return 3, "m > m**: exactly three crowns, one in (1/z2, 1) and two beyond 1/z1", False


def count_configurations(n: int, m: float, tol: float = XTOL) -> CountResult:
    """Number of different crowns for mass ratio ``m`` and the applicable clause.

    ``expected`` holds the count the theory predicts ("3", ">=3", ...). For
    n = 3 and ``m`` within 1e-9 of 1, m* or m** the boundary clause is
    returned without solving.
    """
    n = _check_n(n)
    m0 = _check_m(m)
    m = max(m0, 1.0 / m0)
    if n == 3:
        count, clause, boundary = _n3_clause(m, bifurcation_n3(tol))
        expected = str(count)
        if boundary:
            return CountResult(n, m0, count, clause, True, expected)
    elif n == 2:
        expected, clause = "1", "n = 2: exactly one crown, with 1/sqrt(3) < a < sqrt(3)"
    elif m == 1.0:
        if n % 2 == 0:
            expected, clause = "2", "m = 1, n even: exactly two crowns (a = 1 and a = a1)"
        else:
            expected, clause = ">=2", "m = 1, n odd: at least two crowns"
    else:
        expected, clause = ">=3", "m > 1: at least three crowns, one per admissible component"
    count = solve_for_mass(n, m, tol).count_deduplicated
    return CountResult(n, m0, count, clause, False, expected)


# ---------------------------------------------------------------------------
# equal masses


@lru_cache(maxsize=None)
def equal_mass_radius(n: int, tol: float = XTOL) -> float:
    """The radius a1 > 1 with H(a1) = 1, found as the crossing of g1 and g2."""
    n = _check_n(n, least=4)
    ctx = context(n)

    def diff(a):
        g1, g2 = ctx.g1_g2(a)
        return g1 - g2

    def diff_grid(a):
        v = ctx.grid(a)
        a = v["a"]
        return ctx.sn * (a * a + a + 1.0) / (a * a * (a + 1.0)) - v["g2"]

    brackets = scan_brackets(diff_grid, 1.0, 1e3, 8001, vectorized=True)
    brackets = [b for b in brackets if b.hi > 1.0]
    if not brackets:
        raise NotFoundError(f"g1 - g2 has no sign change in (1, 1000] for n={n}")
    if n % 2 == 0 and len(brackets) != 1:
        raise InconsistencyError(
            f"expected a unique crossing of g1 and g2 for even n={n}, found {len(brackets)}")
    a1 = refine(brackets[0], diff, xtol=tol).value
    if abs(ctx.h(a1) - 1.0) > 1e-10:
        raise InconsistencyError(f"H(a1) = {ctx.h(a1)!r} for n={n}")
    return a1


# ---------------------------------------------------------------------------
# convexity


def convexity_window(n: int) -> IntervalUnion:
    """Radii for which the 2n bodies form a convex polygon."""
    n = _check_n(n)
    if n == 2:
        return IntervalUnion([Interval(0.0, math.inf, "convex")])
    c = math.cos(math.pi / n)
    return IntervalUnion([Interval(c, 1.0 / c, "convex")])


def is_convex(n: int, a: float) -> bool:
    return a in convexity_window(n)


def convex_threshold_mass(n: int) -> float:
    """H at the outer edge of the convexity window, 1/cos(pi/n)."""
    return context(n).h(1.0 / math.cos(math.pi / _check_n(n, least=3)))


def delta_n(n: int, tol: float = XTOL) -> float:
    """z1 - cos(pi/n); positive means convex crowns lie in the central interval."""
    n = _check_n(n, least=5)
    return zeros_of_F(n, tol).z1 - math.cos(math.pi / n)


@dataclass(frozen=True)
class ConvexityReport:
    n: int
    mass_ratio: float
    solutions: tuple[Solution, ...]
    convex_count: int
    regime: str
    threshold_mass: float | None = None
    delta: float | None = None


def classify_convex(n: int, m: float, tol: float = XTOL) -> ConvexityReport:
    n = _check_n(n, least=3)
    m = _check_m(m)
    sset = solve_for_mass(n, m, tol)
    convex = [s.a for s in sset.solutions if s.convex]
    count = _dedup_count(convex, m)
    central = central_interval(n, tol)
    threshold = delta = None
    if n == 3:
        for s in sset.solutions:
            if s.convex != (s.a in central):
                raise InconsistencyError(
                    f"a={s.a} is convex={s.convex} but central={s.a in central}")
        regime = "convex crowns are exactly those in the central interval"
    elif n == 4:
        threshold = convex_threshold_mass(4)
        mm = max(m, 1.0 / m)
        regime = ("m <= m_bar: exactly one convex crown" if mm <= threshold
                  else "m > m_bar: no convex crown")
    else:
        threshold = convex_threshold_mass(n)
        delta = delta_n(n, tol)
        regime = ("z1 > cos(pi/n): convex crowns lie in the central interval"
                  if delta > 0 else "z1 <= cos(pi/n): convexity check inconclusive")
    return ConvexityReport(n, m, sset.solutions, count, regime, threshold, delta)
