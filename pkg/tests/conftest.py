import math

import numpy as np
import pytest

from cyganhdim.heisenberg import Point, ReflectionGenerator, dilate, group_mul


def random_point(rng, scale=1.0):
    z = complex(*rng.normal(scale=scale, size=2))
    return Point(z, rng.normal(scale=scale * scale))


def random_generator(rng):
    center = random_point(rng, 2.0)
    lam = rng.uniform(0.3, 3.0) * np.exp(1j * rng.uniform(0, 2 * math.pi))
    return ReflectionGenerator(center, complex(lam))


def fd_generator(rng):
    """Generator sized for finite-difference checks with a fixed step of 1e-5.

    The step is absolute while the v coordinate scales quadratically, so the
    truncation error near the pole grows like (h / d^2)^2.  Radii in [4, 8]
    keep it below 1e-6 over the whole range d / r in [0.1, 10].
    """
    center = random_point(rng, 0.5)
    lam = rng.uniform(4.0, 8.0) * np.exp(1j * rng.uniform(0, 2 * math.pi))
    return ReflectionGenerator(center, complex(lam))


def point_at_distance(rng, center, r):
    """A random point at Cygan distance ``r`` from ``center``."""
    phi = rng.uniform(-math.pi / 2, math.pi / 2)
    psi = rng.uniform(0, 2 * math.pi)
    unit = Point(math.sqrt(math.cos(phi)) * complex(math.cos(psi), math.sin(psi)), math.sin(phi))
    return group_mul(center, dilate(r, unit))


@pytest.fixture
def rng():
    return np.random.default_rng(20261018)
