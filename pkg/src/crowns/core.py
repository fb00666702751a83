"""Rings, crowns and their Cartesian body positions."""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

TWIST_TOL = 1e-12


class PhaseKind(enum.Enum):
    NESTED = "nested"
    TWISTED = "twisted"
    RAW = "raw"


@dataclass(frozen=True)
class RingSpec:
    """A regular n-gon of equal masses.

    ``phase`` is the polar angle of the leader body. Pass ``"nested"`` (0) or
    ``"twisted"`` (pi/n) to declare the phase exactly; a float is stored as a
    raw angle and must lie in (-pi/n, pi/n].
    """

    n: int
    radius: float
    mass: float
    phase: float | str = "nested"

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise ValueError(f"ring needs n >= 2 bodies, got {self.n}")
        if not self.radius > 0:
            raise ValueError(f"radius must be positive, got {self.radius}")
        if not self.mass > 0:
            raise ValueError(f"mass must be positive, got {self.mass}")
        if isinstance(self.phase, PhaseKind):
            object.__setattr__(self, "phase", self.phase.value)
        if isinstance(self.phase, str):
            if self.phase not in (PhaseKind.NESTED.value, PhaseKind.TWISTED.value):
                raise ValueError(f"unknown phase {self.phase!r}")
        else:
            ph = float(self.phase)
            step = math.pi / self.n
            if not (-step < ph <= step):
                raise ValueError(f"phase {ph} outside (-pi/{self.n}, pi/{self.n}]")
            object.__setattr__(self, "phase", ph)

    @property
    def kind(self) -> PhaseKind:
        if isinstance(self.phase, str):
            return PhaseKind(self.phase)
        return PhaseKind.RAW

    @property
    def angle(self) -> float:
        if self.phase == PhaseKind.NESTED.value:
            return 0.0
        if self.phase == PhaseKind.TWISTED.value:
            return math.pi / self.n
        return self.phase

    def scaled(self, factor: float) -> RingSpec:
        return RingSpec(self.n, self.radius * factor, self.mass, self.phase)


@dataclass(frozen=True)
class CrownConfiguration:
    rings: tuple[RingSpec, ...]

    def __post_init__(self):
        rings = tuple(self.rings)
        if not rings:
            raise ValueError("a crown needs at least one ring")
        ns = {r.n for r in rings}
        if len(ns) != 1:
            raise ValueError(f"all rings must share n, got {sorted(ns)}")
        object.__setattr__(self, "rings", rings)

    @property
    def n(self) -> int:
        return self.rings[0].n

    @property
    def kappa(self) -> int:
        return len(self.rings)

    @classmethod
    def twisted_pair(cls, n: int, a: float, m: float) -> CrownConfiguration:
        """Unit ring of unit masses plus a twisted ring of radius ``a``, mass ``m``."""
        return cls((RingSpec(n, 1.0, 1.0, "nested"), RingSpec(n, a, m, "twisted")))

    @classmethod
    def nested_pair(cls, n: int, a: float, m: float) -> CrownConfiguration:
        return cls((RingSpec(n, 1.0, 1.0, "nested"), RingSpec(n, a, m, "nested")))

    def scaled(self, factor: float) -> CrownConfiguration:
        return CrownConfiguration(tuple(r.scaled(factor) for r in self.rings))


@dataclass(frozen=True)
class BodyPositions:
    """Cartesian positions of all bodies, ring-major.

    ``ring_index`` and ``body_index`` are 0-based; body 0 of each ring is its
    leader.
    """

    coords: np.ndarray
    ring_index: np.ndarray
    body_index: np.ndarray
    masses: np.ndarray

    def __len__(self) -> int:
        return self.coords.shape[0]

    def center_of_mass(self) -> np.ndarray:
        return (self.masses[:, None] * self.coords).sum(axis=0) / self.masses.sum()


def build_positions(crown: CrownConfiguration) -> BodyPositions:
    n, kappa = crown.n, crown.kappa
    k = np.arange(n)
    coords = np.empty((kappa * n, 2))
    masses = np.empty(kappa * n)
    for j, ring in enumerate(crown.rings):
        ang = ring.angle + 2.0 * np.pi * k / n
        sl = slice(j * n, (j + 1) * n)
        coords[sl, 0] = ring.radius * np.cos(ang)
        coords[sl, 1] = ring.radius * np.sin(ang)
        masses[sl] = ring.mass
    coords.flags.writeable = False
    masses.flags.writeable = False
    return BodyPositions(
        coords=coords,
        ring_index=np.repeat(np.arange(kappa), n),
        body_index=np.tile(k, kappa),
        masses=masses,
    )


@dataclass(frozen=True)
class TwistReport:
    offsets: dict[tuple[int, int], float]
    kind: str  # "nested", "twisted" or "non-crown"


def _pair_offset(r1: RingSpec, r2: RingSpec) -> float:
    n = r1.n
    period = 2.0 * math.pi / n
    if r1.kind is not PhaseKind.RAW and r2.kind is not PhaseKind.RAW:
        return 0.0 if r1.kind is r2.kind else math.pi / n
    return abs(r1.angle - r2.angle) % period


def twist_offsets(crown: CrownConfiguration) -> TwistReport:
    """Pairwise leader-phase offsets reduced to [0, 2pi/n), plus the crown type."""
    n = crown.n
    step = math.pi / n
    offsets = {}
    kind = "nested"
    for j in range(crown.kappa):
        for l in range(j + 1, crown.kappa):
            off = _pair_offset(crown.rings[j], crown.rings[l])
            offsets[(j, l)] = off
            if off < TWIST_TOL or abs(off - 2.0 * step) < TWIST_TOL:
                continue
            if abs(off - step) < TWIST_TOL:
                if kind == "nested":
                    kind = "twisted"
            else:
                kind = "non-crown"
    return TwistReport(offsets, kind)


# JSON crown documents: {"n": int, "rings": [{"radius", "mass", "phase"}, ...]}

def crown_from_dict(doc: dict) -> CrownConfiguration:
    if not isinstance(doc, dict):
        raise ValueError("crown document must be a JSON object")
    try:
        n = doc["n"]
        rings = doc["rings"]
    except KeyError as exc:
        raise ValueError(f"crown document missing key {exc.args[0]!r}") from None
    if not isinstance(n, int) or isinstance(n, bool):
        raise ValueError(f"'n' must be an integer, got {n!r}")
    if not isinstance(rings, list) or not rings:
        raise ValueError("'rings' must be a non-empty list")
    specs = []
    for i, ring in enumerate(rings):
        try:
            specs.append(RingSpec(n, float(ring["radius"]), float(ring["mass"]),
                                  ring.get("phase", "nested")))
        except (KeyError, TypeError, AttributeError) as exc:
            raise ValueError(f"ring {i}: malformed entry ({exc})") from None
        except ValueError as exc:
            raise ValueError(f"ring {i}: {exc}") from None
    return CrownConfiguration(tuple(specs))


def crown_to_dict(crown: CrownConfiguration) -> dict:
    return {
        "n": crown.n,
        "rings": [{"radius": r.radius, "mass": r.mass, "phase": r.phase} for r in crown.rings],
    }


def load_crown(path: str | Path) -> CrownConfiguration:
    """Read a crown document. JSON syntax errors propagate with line/column."""
    text = Path(path).read_text(encoding="utf-8")
    return crown_from_dict(json.loads(text))


def dump_crown(crown: CrownConfiguration, path: str | Path) -> None:
    Path(path).write_text(json.dumps(crown_to_dict(crown), indent=2) + "\n", encoding="utf-8")
