"""Arithmetic on the Heisenberg boundary of the complex hyperbolic plane.

A finite boundary point is a pair ``(zeta, v)`` with ``zeta`` complex and
``v`` real; the remaining boundary point is :data:`INFINITY`.  The group law is

    (zeta, v) * (xi, t) = (zeta + xi, v + t + 2 Im(conj(zeta) xi))

and Heisenberg translations act by left multiplication.  The Cygan metric is
the left-invariant metric ``d(p, q) = |p^-1 * q|_0`` with the Heisenberg norm
``|(zeta, v)|_0 = | |zeta|^2 + i v |^(1/2)``.

The Koranyi inversion is written in the sign convention that makes it
compatible with this group law, so that the classical distance identities

    d(g z, g w) = r^2 d(z, w) / (d(z, g^-1 oo) d(w, g^-1 oo))

hold exactly for every reflection ``g`` built here.

Besides the scalar API on :class:`Point`, the module exposes array kernels
(``*_arrays``) used by the word tree and the transition matrix assembly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DomainError, SingularityError

__all__ = [
    "Point",
    "INFINITY",
    "BoundaryPoint",
    "ReflectionGenerator",
    "ORIGIN",
    "group_mul",
    "group_inv",
    "heisenberg_norm",
    "cygan_distance",
    "translate",
    "dilate",
    "koranyi_inversion",
    "apply_reflection",
    "jacobian_det",
    "distortion_factor",
    "SINGULAR_RTOL",
]

#: ``jacobian_det`` refuses points closer than this (relative to the radius) to the pole.
SINGULAR_RTOL = 1e-12


@dataclass(frozen=True)
class Point:
    """A finite point ``(zeta, v)`` of the Heisenberg group."""

    zeta: complex
    v: float

    def __post_init__(self):
        zeta = complex(self.zeta)
        v = float(self.v)
        if not (math.isfinite(zeta.real) and math.isfinite(zeta.imag) and math.isfinite(v)):
            raise DomainError(f"non-finite Heisenberg coordinates ({zeta!r}, {v!r})")
        object.__setattr__(self, "zeta", zeta)
        object.__setattr__(self, "v", v)

    def __iter__(self):
        yield self.zeta
        yield self.v

    def as_real(self) -> tuple[float, float, float]:
        """The point as three real coordinates ``(Re zeta, Im zeta, v)``."""
        return (self.zeta.real, self.zeta.imag, self.v)


class _Infinity:
    """The point at infinity of the boundary (singleton)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()
BoundaryPoint = Union[Point, _Infinity]
ORIGIN = Point(0j, 0.0)


def _finite(p, what="point"):
    if not isinstance(p, Point):
        if p is INFINITY:
            raise DomainError(f"{what} must be finite, got INFINITY")
        raise TypeError(f"{what} must be a Point, got {type(p).__name__}")
    return p


# -- group structure ---------------------------------------------------------


def group_mul(p: BoundaryPoint, q: BoundaryPoint) -> Point:
    """Heisenberg product ``p * q``; defined on finite points only."""
    p = _finite(p, "left operand")
    q = _finite(q, "right operand")
    return Point(p.zeta + q.zeta, p.v + q.v + 2.0 * (p.zeta.conjugate() * q.zeta).imag)


def group_inv(p: BoundaryPoint) -> Point:
    p = _finite(p)
    return Point(-p.zeta, -p.v)


def heisenberg_norm(p: BoundaryPoint) -> float:
    """``|(zeta, v)|_0 = (|zeta|^4 + v^2)^(1/4)``."""
    p = _finite(p)
    return math.sqrt(abs(complex(abs(p.zeta) ** 2, p.v)))


def cygan_distance(p: BoundaryPoint, q: BoundaryPoint) -> float:
    """Cygan distance between two finite boundary points."""
    p = _finite(p, "first point")
    q = _finite(q, "second point")
    dz = p.zeta - q.zeta
    dv = q.v - p.v - 2.0 * (p.zeta.conjugate() * q.zeta).imag
    return math.sqrt(abs(complex(abs(dz) ** 2, dv)))


def translate(by: BoundaryPoint, p: BoundaryPoint) -> BoundaryPoint:
    """Heisenberg translation ``T_by(p) = by * p``; fixes infinity."""
    by = _finite(by, "translation")
    if p is INFINITY:
        return INFINITY
    return group_mul(by, p)


def dilate(lam: complex, p: BoundaryPoint) -> BoundaryPoint:
    """Complex dilatation ``(zeta, v) -> (lam zeta, |lam|^2 v)``; fixes infinity."""
    lam = complex(lam)
    if lam == 0:
        raise DomainError("dilatation factor must be nonzero")
    if p is INFINITY:
        return INFINITY
    p = _finite(p)
    return Point(lam * p.zeta, abs(lam) ** 2 * p.v)


def koranyi_inversion(p: BoundaryPoint) -> BoundaryPoint:
    """Koranyi inversion, swapping the origin and infinity.

    ``(zeta, v) -> (-zeta / (|zeta|^2 + i v), -v / (|zeta|^4 + v^2))``
    """
    if p is INFINITY:
        return ORIGIN
    p = _finite(p)
    a = abs(p.zeta) ** 2
    if a == 0.0 and p.v == 0.0:
        return INFINITY
    w = complex(a, p.v)
    return Point(-p.zeta / w, -p.v / (a * a + p.v * p.v))


# -- complex reflections -------------------------------------------------------


@dataclass(frozen=True)
class ReflectionGenerator:
    """Complex reflection in the finite chain ``T_center D_lam (S^1 x {0})``.

    The reflection sends ``center`` to infinity, fixes its chain pointwise and
    has the Cygan sphere of radius ``|lam|`` about ``center`` as isometric sphere.
    """

    center: Point
    lam: complex

    def __post_init__(self):
        if not isinstance(self.center, Point):
            raise DomainError("reflection center must be a finite Point")
        lam = complex(self.lam)
        if not (math.isfinite(lam.real) and math.isfinite(lam.imag)) or lam == 0:
            raise DomainError(f"multiplier must be finite and nonzero, got {lam!r}")
        object.__setattr__(self, "lam", lam)

    @property
    def radius(self) -> float:
        return abs(self.lam)

    def __call__(self, p: BoundaryPoint) -> BoundaryPoint:
        return apply_reflection(self, p)

    def chain_point(self, t: float) -> Point:
        """Point of the fixed chain at parameter ``t``."""
        return group_mul(self.center, Point(self.lam * complex(math.cos(t), math.sin(t)), 0.0))


def apply_reflection(g: ReflectionGenerator, p: BoundaryPoint) -> BoundaryPoint:
    """Apply the complex reflection of ``g`` to a boundary point.

    The pole ``g.center`` goes to infinity and vice versa.  Away from those two
    points this is ``T_c D_lam R D_lam^-1 T_c^-1`` where ``R`` is the reflection
    in the standard chain ``S^1 x {0}``.
    """
    if p is INFINITY:
        return g.center
    p = _finite(p)
    c = g.center
    dz = p.zeta - c.zeta
    dv = p.v - c.v - 2.0 * (c.zeta.conjugate() * p.zeta).imag
    a = abs(dz) ** 2
    if a == 0.0 and dv == 0.0:
        return INFINITY
    r2 = abs(g.lam) ** 2
    n = a * a + dv * dv
    qz = r2 * dz / complex(a, dv)
    qv = -r2 * r2 * dv / n
    return Point(c.zeta + qz, c.v + qv + 2.0 * (c.zeta.conjugate() * qz).imag)


def jacobian_det(g: ReflectionGenerator, p: BoundaryPoint) -> float:
    """Absolute Jacobian determinant of the reflection as a map of R^3.

    Equals ``(|lam| / d(p, center))^8``, the fourth power of the Cygan scaling
    factor: dilatations scale ``(zeta, v)`` with weights ``(1, 1, 2)``.
    """
    return distortion_factor(g, p) ** 4


def distortion_factor(g: ReflectionGenerator, p: BoundaryPoint) -> float:
    """Local Cygan scaling factor ``|lam|^2 / d(p, center)^2``.

    Small Cygan spheres about ``p`` are mapped to near-spheres whose radius is
    multiplied by this factor.
    """
    d = _pole_distance(g, p)
    return (g.radius / d) ** 2


def _pole_distance(g, p):
    if p is INFINITY:
        raise SingularityError("Jacobian is undefined at infinity")
    d = cygan_distance(p, g.center)
    if d < SINGULAR_RTOL * g.radius:
        raise SingularityError(f"point {p!r} is at the pole of the reflection")
    return d


# -- array kernels ---------------------------------------------------------------
#
# Points are carried as a complex array ``zeta`` and a real array ``v`` of the
# same shape.  Centers broadcast against them.


def cygan_distance_arrays(z1, v1, z2, v2):
    dz = z1 - z2
    dv = v2 - v1 - 2.0 * (np.conj(z1) * z2).imag
    return np.sqrt(np.abs(np.abs(dz) ** 2 + 1j * dv))


def translate_arrays(bz, bv, z, v):
    return bz + z, bv + v + 2.0 * (np.conj(bz) * z).imag


def reflect_arrays(cz, cv, radius, z, v):
    """Vectorised :func:`apply_reflection` for points off the pole."""
    dz = z - cz
    dv = v - cv - 2.0 * (np.conj(cz) * z).imag
    a = np.abs(dz) ** 2
    r2 = radius * radius
    qz = r2 * dz / (a + 1j * dv)
    qv = -r2 * r2 * dv / (a * a + dv * dv)
    return cz + qz, cv + qv + 2.0 * (np.conj(cz) * qz).imag
