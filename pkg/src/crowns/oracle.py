"""Independent verification of crowns against the raw central-configuration equations.

:func:`full_gradient_residual` works from Cartesian positions and direct
pairwise attractions only; it shares no code with the reduced ring sums in
:mod:`crowns.potential`. The remaining functions evaluate the reduced ring
equations and are used for cross-checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .core import CrownConfiguration, PhaseKind, build_positions, twist_offsets
from .errors import DomainError, SingularityError
from .potential import coeff_cjl, s_n

PASS_TOL = 1e-9
COLLISION_TOL = 1e-12


@dataclass(frozen=True)
class ResidualReport:
    """Outcome of checking one crown.

    ``max_gradient_residual`` is ``max |a_i + lambda q_i|`` over all bodies
    divided by ``max |a_i|``, where ``a_i`` is the gravitational acceleration
    of body i (the gradient of U scaled by 1/m_i) and lambda is the
    least-squares fit. ``lambda_sign`` is +1 for the attractive potential.
    """

    lambda_per_ring: tuple[float, ...]
    lambda_fit: float
    lambda_spread: float
    max_gradient_residual: float
    max_imag_residual: float
    passes: bool
    tol: float = PASS_TOL
    lambda_sign: int = field(default=1)

    def to_dict(self) -> dict:
        return {
            "lambda_per_ring": list(self.lambda_per_ring),
            "lambda_fit": self.lambda_fit,
            "lambda_spread": self.lambda_spread,
            "lambda_sign": self.lambda_sign,
            "max_gradient_residual": self.max_gradient_residual,
            "max_imag_residual": self.max_imag_residual,
            "passes": self.passes,
            "tol": self.tol,
        }


def accelerations(crown: CrownConfiguration) -> tuple[np.ndarray, np.ndarray]:
    """Positions (N, 2) and Newtonian accelerations (N, 2) of every body."""
    pos = build_positions(crown)
    x, y = pos.coords[:, 0], pos.coords[:, 1]
    ax, ay, dmin, i, j = kernels.pair_accel(x, y, pos.masses)
    if dmin < COLLISION_TOL:
        n = crown.n
        raise SingularityError(
            f"bodies (ring {i // n}, body {i % n}) and (ring {j // n}, body {j % n}) "
            f"collide: distance {dmin:.3g}",
            index=(int(i), int(j)),
        )
    return pos.coords, np.column_stack([ax, ay])


def full_gradient_residual(crown: CrownConfiguration, tol: float = PASS_TOL) -> ResidualReport:
    q, acc = accelerations(crown)
    n = crown.n
    # least squares over all 2N scalar equations acc + lambda q = 0
    lam = -float(np.sum(acc * q) / np.sum(q * q))
    # per-body Euclidean norms keep the measure rotation invariant
    res = np.hypot(*(acc + lam * q).T)
    scale = float(np.max(np.hypot(*acc.T)))
    rel = float(np.max(res)) / scale if scale > 0 else float(np.max(res))

    leaders = np.arange(crown.kappa) * n
    lq, la = q[leaders], acc[leaders]
    lam_ring = tuple(float(-np.dot(la[j], lq[j]) / np.dot(lq[j], lq[j]))
                     for j in range(crown.kappa))
    lam0 = lam_ring[0]
    spread = 0.0
    for u in lam_ring:
        for v in lam_ring:
            spread = max(spread, abs(u - v))
    spread = spread / abs(lam0) if lam0 != 0 else spread

    imag = imag_residual(crown)
    return ResidualReport(
        lambda_per_ring=lam_ring,
        lambda_fit=lam,
        lambda_spread=spread,
        max_gradient_residual=rel,
        max_imag_residual=imag,
        passes=bool(rel <= tol),
        tol=tol,
        lambda_sign=1 if lam > 0 else (-1 if lam < 0 else 0),
    )


def _require_crown(crown: CrownConfiguration) -> None:
    if twist_offsets(crown).kind == "non-crown":
        raise DomainError("ring offsets must all be 0 or pi/n")


def leader_lambda(crown: CrownConfiguration, ring_index: int) -> float:
    """lambda solving the real part of ring ``ring_index``'s leader equation."""
    _require_crown(crown)
    n = crown.n
    rj = crown.rings[ring_index]
    total = rj.mass * s_n(n) / rj.radius ** 3
    acc = []
    for l, rl in enumerate(crown.rings):
        if l == ring_index:
            continue
        acc.append(rl.mass * coeff_cjl(n, rj.radius, rl.radius, rj.angle - rl.angle))
    return total + math.fsum(acc) / rj.radius


def _relative_angles(rj, rl, n: int, k: np.ndarray) -> np.ndarray:
    """Angles phi_l - phi_j + 2 pi k / n.

    For declared phases the angle is an integer multiple of pi/n; folding the
    multiple into (-n, n] makes mirror-image terms exactly antisymmetric.
    """
    if rj.kind is not PhaseKind.RAW and rl.kind is not PhaseKind.RAW:
        t = int(rl.kind is PhaseKind.TWISTED) - int(rj.kind is PhaseKind.TWISTED)
        mult = (t + 2 * k) % (2 * n)
        mult = np.where(mult > n, mult - 2 * n, mult)
        return mult * np.pi / n
    return rl.angle - rj.angle + 2.0 * np.pi * k / n


def imag_residual(crown: CrownConfiguration) -> float:
    """Largest tangential imbalance on any leader (vanishes for 0 / pi/n offsets)."""
    n = crown.n
    k = np.arange(1, n + 1)
    worst = 0.0
    for j, rj in enumerate(crown.rings):
        parts = []
        for l, rl in enumerate(crown.rings):
            if l == j:
                continue
            phi = _relative_angles(rj, rl, n, k)
            d = rl.radius ** 2 + rj.radius ** 2 - 2.0 * rl.radius * rj.radius * np.cos(phi)
            if np.min(d) < COLLISION_TOL ** 2:
                raise SingularityError(f"rings {j} and {l} collide", index=(j, l))
            parts.extend(rl.mass * rl.radius * np.sin(phi) / (d * np.sqrt(d)))
        worst = max(worst, abs(math.fsum(parts)))
    return worst


def general_kappa_residual(crown: CrownConfiguration) -> np.ndarray:
    """Left-hand sides of the lambda-eliminated ring equations, j = 2..kappa.

    Ring 1 is normalised to unit radius and unit mass by rescaling first.
    """
    if crown.kappa < 2:
        raise DomainError("need at least two rings")
    _require_crown(crown)
    n = crown.n
    r1 = crown.rings[0]
    a = [r.radius / r1.radius for r in crown.rings]
    m = [r.mass / r1.mass for r in crown.rings]
    ph = [r.angle for r in crown.rings]
    sn = s_n(n)

    def C(j, l):
        return coeff_cjl(n, a[j], a[l], ph[j] - ph[l])

    out = np.empty(crown.kappa - 1)
    for j in range(1, crown.kappa):
        terms = [C(j, 0) - sn * a[j], (sn / a[j] ** 2 - a[j] * C(0, j)) * m[j]]
        for l in range(1, crown.kappa):
            if l != j:
                terms.append((C(j, l) - a[j] * C(0, l)) * m[l])
        out[j - 1] = math.fsum(terms)
    return out
