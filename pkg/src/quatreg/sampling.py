"""Seeded random quaternion streams for tests, demos and verification suites."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import ConfigurationError
from .quaternion import Quaternion, SliceSphere

__all__ = ["Region", "BALL", "BOUNDARY", "box", "sphere", "QuaternionSampler", "quaternion_stream"]


@dataclass(frozen=True)
class Region:
    """Sampling region: ``ball``, ``boundary``, ``sphere`` (needs ``sphere``) or
    ``box`` (the cube ``[-radius, radius]^4``)."""

    kind: str
    radius: float = 1.0
    sphere: SliceSphere | None = None

    def __post_init__(self):
        if self.kind not in ("ball", "boundary", "sphere", "box"):
            raise ConfigurationError(f"unknown region {self.kind!r}")
        if self.kind == "sphere" and self.sphere is None:
            raise ConfigurationError("sphere region requires a SliceSphere")
        if not self.radius > 0:
            raise ConfigurationError("region radius must be positive")


BALL = Region("ball")
BOUNDARY = Region("boundary")


def box(radius: float = 1.0) -> Region:
    return Region("box", radius=radius)


def sphere(x: float, y: float) -> Region:
    return Region("sphere", sphere=SliceSphere(x, y))


def _as_region(region) -> Region:
    if isinstance(region, Region):
        return region
    if isinstance(region, SliceSphere):
        return Region("sphere", sphere=region)
    if isinstance(region, str):
        if region in ("ball", "boundary"):
            return Region(region)
        if region == "box":
            return box()
    raise ConfigurationError(f"invalid sampling region {region!r}")


class QuaternionSampler:
    """Explicit-state random source; two samplers with the same seed produce
    identical streams."""

    def __init__(self, seed: int = 0):
        self.seed = seed
        self.rng = np.random.default_rng(seed)

    def uniform(self, low: float = -1.0, high: float = 1.0) -> float:
        return float(self.rng.uniform(low, high))

    def _direction(self, dim: int) -> np.ndarray:
        while True:
            v = self.rng.standard_normal(dim)
            n = np.linalg.norm(v)
            if n > 1e-12:
                return v / n

    def unit(self) -> Quaternion:
        """Uniform on the unit 3-sphere of H."""
        return Quaternion(*(float(c) for c in self._direction(4)))

    def imaginary_unit(self) -> Quaternion:
        """Uniform on the sphere S of imaginary units."""
        v = self._direction(3)
        return Quaternion(0.0, float(v[0]), float(v[1]), float(v[2]))

    def ball(self, radius: float = 1.0) -> Quaternion:
        v = self._direction(4) * radius * self.rng.uniform() ** 0.25
        return Quaternion(*(float(c) for c in v))

    def cube(self, radius: float = 1.0) -> Quaternion:
        v = self.rng.uniform(-radius, radius, 4)
        return Quaternion(*(float(c) for c in v))

    def sample(self, region) -> Quaternion:
        region = _as_region(region)
        if region.kind == "ball":
            return self.ball(region.radius)
        if region.kind == "boundary":
            return self.unit() * region.radius
        if region.kind == "box":
            return self.cube(region.radius)
        return region.sphere.point(self.imaginary_unit())

    def many(self, region, n: int) -> list[Quaternion]:
        return [self.sample(region) for _ in range(n)]


def quaternion_stream(seed: int, region) -> Iterator[Quaternion]:
    """Infinite deterministic stream of quaternions drawn uniformly from ``region``."""
    region = _as_region(region)
    sampler = QuaternionSampler(seed)
    while True:
        yield sampler.sample(region)
