"""Schottky configurations of complex reflections and the two built-in families."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

from .errors import ConfigurationError, DomainError
from .heisenberg import (
    Point,
    ReflectionGenerator,
    cygan_distance,
    dilate,
    translate,
)

__all__ = [
    "PairMargin",
    "ValidityReport",
    "SchottkyConfig",
    "isometric_sphere",
    "validate",
    "symmetric_family",
    "rcircle_family",
    "family",
    "conjugate",
    "FAMILIES",
]


def isometric_sphere(g: ReflectionGenerator) -> tuple[Point, float]:
    """Center and radius of the isometric sphere of ``g``."""
    return g.center, g.radius


@dataclass(frozen=True)
class PairMargin:
    i: int
    j: int
    distance: float
    radius_sum: float

    @property
    def margin(self) -> float:
        return self.distance - self.radius_sum


@dataclass(frozen=True)
class ValidityReport:
    """Outcome of the pairwise disjointness test.

    ``valid`` is true iff every pair of isometric balls passes the sufficient
    test ``d(c_i, c_j) > r_i + r_j``.  Configurations whose balls are disjoint
    but closer than that are reported invalid.
    """

    valid: bool
    min_margin: float
    pairs: tuple[PairMargin, ...]

    def __bool__(self):
        return self.valid


def validate(cfg: "SchottkyConfig | Sequence[ReflectionGenerator]") -> ValidityReport:
    gens = cfg.generators if isinstance(cfg, SchottkyConfig) else tuple(cfg)
    if len(gens) < 2:
        raise ConfigurationError("at least 2 chains required")
    pairs = []
    for i, j in itertools.combinations(range(len(gens)), 2):
        d = cygan_distance(gens[i].center, gens[j].center)
        pairs.append(PairMargin(i, j, d, gens[i].radius + gens[j].radius))
    min_margin = min(p.margin for p in pairs)
    return ValidityReport(min_margin > 0.0, min_margin, tuple(pairs))


@dataclass(frozen=True)
class SchottkyConfig:
    """An ordered family of complex reflections with its validity report."""

    generators: tuple[ReflectionGenerator, ...]
    name: str | None = None
    description: str | None = None
    validity: ValidityReport = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        gens = tuple(self.generators)
        if len(gens) < 2:
            raise ConfigurationError("at least 2 chains required")
        for g in gens:
            if not isinstance(g, ReflectionGenerator):
                raise ConfigurationError(f"expected ReflectionGenerator, got {type(g).__name__}")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "validity", validate(gens))

    @property
    def m(self) -> int:
        return len(self.generators)

    @property
    def valid(self) -> bool:
        return self.validity.valid

    def require_valid(self):
        if not self.validity.valid:
            raise ConfigurationError(
                f"isometric balls are not separated (minimal margin {self.validity.min_margin:.6g})"
            )

    def __len__(self):
        return len(self.generators)

    def __getitem__(self, i):
        return self.generators[i]


#: Open parameter intervals of the built-in families.
FAMILIES = {
    "symmetric": (0.0, math.pi / 3),
    "rcircle": (0.0, 9 * math.pi / 40),
}


def _check_theta(family, theta, strict=True):
    lo, hi = FAMILIES[family] if strict else (0.0, math.pi / 2)
    if not (lo < theta < hi):
        raise DomainError(f"theta={theta!r} outside the open interval ({lo}, {hi:.12g}) of the {family} family")


def symmetric_family(theta: float, *, strict: bool = True) -> SchottkyConfig:
    """Three chains of radius ``tan(theta)`` centered at ``sec(theta)`` times the cube roots of unity.

    With ``strict=False`` the formulas are evaluated anywhere in ``(0, pi/2)``,
    which is useful for probing the validity test past the family's range.
    """
    _check_theta("symmetric", theta, strict)
    sec = 1.0 / math.cos(theta)
    lam = math.tan(theta)
    roots = (1.0 + 0j, complex(-0.5, math.sqrt(3) / 2), complex(-0.5, -math.sqrt(3) / 2))
    gens = tuple(ReflectionGenerator(Point(sec * w, 0.0), lam) for w in roots)
    return SchottkyConfig(gens, name=f"symmetric theta={theta!r}")


def rcircle_family(theta: float, *, strict: bool = True) -> SchottkyConfig:
    """Three chains with centers near the standard finite R-circle.

    Centers ``(0, sec^2)``, ``(0, -sec^2)`` and ``(-i sec, 0)``, all of radius
    ``tan(theta)``.
    """
    _check_theta("rcircle", theta, strict)
    sec = 1.0 / math.cos(theta)
    lam = math.tan(theta)
    centers = (Point(0j, sec * sec), Point(0j, -sec * sec), Point(-1j * sec, 0.0))
    gens = tuple(ReflectionGenerator(c, lam) for c in centers)
    return SchottkyConfig(gens, name=f"rcircle theta={theta!r}")


def family(name: str, theta: float, *, strict: bool = True) -> SchottkyConfig:
    try:
        builder = {"symmetric": symmetric_family, "rcircle": rcircle_family}[name]
    except KeyError:
        raise DomainError(f"unknown family {name!r}; choose from {sorted(FAMILIES)}") from None
    return builder(theta, strict=strict)


def conjugate(cfg: SchottkyConfig, by: Point, u: complex = 1.0) -> SchottkyConfig:
    """Conjugate every generator by ``phi = T_by o D_u``.

    ``phi g phi^-1`` is the reflection with center ``phi(center)`` and
    multiplier ``u * lam``.  Isometric when ``|u| = 1``.
    """
    gens = tuple(
        ReflectionGenerator(translate(by, dilate(u, g.center)), u * g.lam) for g in cfg.generators
    )
    return SchottkyConfig(gens, name=cfg.name, description=cfg.description)
