"""Quaternion arithmetic, imaginary units, slice spheres and the point at infinity.

A quaternion ``w + x i + y j + z k`` is stored as four doubles. Every
quaternion ``q`` lies on a complex line ``L_I = R + I R`` for some imaginary
unit ``I``; writing ``q = x + y I`` with ``y >= 0`` is its slice decomposition,
and the set ``{x + y J : J^2 = -1}`` is the 2-sphere through ``q``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from numbers import Real
from typing import Union

from .errors import DegenerateError, DomainError

__all__ = [
    "Quaternion",
    "SliceSphere",
    "Infinity",
    "INF",
    "ExtendedQuaternion",
    "ZERO",
    "ONE",
    "I",
    "J",
    "K",
    "as_quaternion",
    "mul",
    "inverse",
    "slice_decompose",
    "sphere_of",
    "is_unit_imaginary",
    "sphere_transport_lemma",
    "LEMMA_MIN_SEPARATION",
]


@dataclass(frozen=True, slots=True)
class Quaternion:
    """Element ``w + x i + y j + z k`` of the real algebra of quaternions."""

    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    @classmethod
    def from_sequence(cls, seq) -> Quaternion:
        w, x, y, z = (float(v) for v in seq)
        return cls(w, x, y, z)

    def to_list(self) -> list[float]:
        return [self.w, self.x, self.y, self.z]

    def __iter__(self):
        yield self.w
        yield self.x
        yield self.y
        yield self.z

    # arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Quaternion):
            return Quaternion(self.w + other.w, self.x + other.x,
                              self.y + other.y, self.z + other.z)
        if isinstance(other, Real):
            return Quaternion(self.w + other, self.x, self.y, self.z)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Quaternion):
            return Quaternion(self.w - other.w, self.x - other.x,
                              self.y - other.y, self.z - other.z)
        if isinstance(other, Real):
            return Quaternion(self.w - other, self.x, self.y, self.z)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, Real):
            return Quaternion(other - self.w, -self.x, -self.y, -self.z)
        return NotImplemented

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            a1, b1, c1, d1 = self.w, self.x, self.y, self.z
            a2, b2, c2, d2 = other.w, other.x, other.y, other.z
            return Quaternion(
                a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
                a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
                a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
                a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
            )
        if isinstance(other, Real):
            return Quaternion(self.w * other, self.x * other,
                              self.y * other, self.z * other)
        return NotImplemented

    def __rmul__(self, other):
        # only reached for real left operands, which commute
        if isinstance(other, Real):
            return Quaternion(self.w * other, self.x * other,
                              self.y * other, self.z * other)
        return NotImplemented

    def __truediv__(self, other):
        # quaternion division is ambiguous (left/right); only real divisors
        if isinstance(other, Real):
            return Quaternion(self.w / other, self.x / other,
                              self.y / other, self.z / other)
        return NotImplemented

    def __abs__(self) -> float:
        return math.hypot(self.w, self.x, self.y, self.z)

    def norm(self) -> float:
        return abs(self)

    def norm2(self) -> float:
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def conj(self) -> Quaternion:
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def inverse(self) -> Quaternion:
        n2 = self.norm2()
        if not 1e-290 < n2 < 1e290:
            # rescale so the squared norm neither underflows nor overflows
            m = max(abs(self.w), abs(self.x), abs(self.y), abs(self.z))
            if m == 0.0:
                raise ZeroDivisionError("quaternion inverse of zero")
            s = self / m
            return s.inverse() / m
        return Quaternion(self.w / n2, -self.x / n2, -self.y / n2, -self.z / n2)

    @property
    def real(self) -> float:
        return self.w

    @property
    def imag(self) -> Quaternion:
        return Quaternion(0.0, self.x, self.y, self.z)

    def imag_norm(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)

    def is_real(self, tol: float = 0.0) -> bool:
        return self.imag_norm() <= tol

    def __repr__(self):
        return f"Quaternion({self.w!r}, {self.x!r}, {self.y!r}, {self.z!r})"

    def __str__(self):
        return f"{self.w:+.6g}{self.x:+.6g}i{self.y:+.6g}j{self.z:+.6g}k"


ZERO = Quaternion()
ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


def as_quaternion(value) -> Quaternion:
    """Coerce reals, complex numbers (``a + bi``) and 4-sequences."""
    if isinstance(value, Quaternion):
        return value
    if isinstance(value, Real):
        return Quaternion(float(value))
    if isinstance(value, complex):
        return Quaternion(value.real, value.imag)
    return Quaternion.from_sequence(value)


def mul(p: Quaternion, q: Quaternion) -> Quaternion:
    return p * q


def inverse(q: Quaternion) -> Quaternion:
    return q.inverse()


class Infinity:
    """The point added by the one-point compactification of H."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (Infinity, ())


INF = Infinity()

ExtendedQuaternion = Union[Quaternion, Infinity]


@dataclass(frozen=True, slots=True)
class SliceSphere:
    """The 2-sphere ``x + y S`` of quaternions with real part ``x`` and
    imaginary part of length ``y``.

    ``y`` is normalized positive; ``y == 0`` is a real point, not a sphere.
    """

    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise DomainError("sphere parameters must be finite")
        if self.y == 0.0:
            raise DomainError("y = 0 describes a real point, not a sphere")
        if self.y < 0.0:
            object.__setattr__(self, "y", -self.y)

    def point(self, unit: Quaternion) -> Quaternion:
        """Return ``x + y*unit``."""
        return Quaternion(self.x + self.y * unit.w, self.y * unit.x,
                          self.y * unit.y, self.y * unit.z)

    def as_complex(self) -> complex:
        return complex(self.x, self.y)

    def distance(self, q: Quaternion) -> float:
        """Euclidean distance in R^4 from ``q`` to the sphere."""
        return math.hypot(q.w - self.x, q.imag_norm() - self.y)

    def contains(self, q: Quaternion, tol: float = 1e-9) -> bool:
        return self.distance(q) <= tol * (1.0 + abs(self.x) + self.y)


def slice_decompose(q: Quaternion) -> tuple[float, float, Quaternion | None]:
    """Split ``q = x + y I`` with ``y = |Im q|``.

    The unit ``I`` is ``None`` for real ``q``, which lies on every complex line.
    """
    y = q.imag_norm()
    if y == 0.0:
        return q.w, 0.0, None
    return q.w, y, Quaternion(0.0, q.x / y, q.y / y, q.z / y)


def sphere_of(q: Quaternion) -> SliceSphere | float:
    """The slice sphere through ``q``, or the real number itself."""
    x, y, _ = slice_decompose(q)
    return x if y == 0.0 else SliceSphere(x, y)


def is_unit_imaginary(q: Quaternion, tol: float = 1e-12) -> bool:
    sq = q * q
    return abs(sq + 1.0) <= tol


LEMMA_MIN_SEPARATION = 1e-6


def sphere_transport_lemma(alpha: Quaternion, beta: Quaternion,
                           tol: float = 1e-9) -> Quaternion:
    """Conjugate ``beta`` by ``beta - conj(alpha)``.

    For ``alpha`` and ``beta`` on a common sphere ``x + yS`` the result is
    ``alpha`` itself, so this is the map collapsing the sphere minus
    ``conj(alpha)`` onto ``alpha``.

    Raises
    ------
    DomainError
        ``alpha`` and ``beta`` are not on the same sphere.
    DegenerateError
        ``|beta - conj(alpha)| < 1e-6``.
    """
    scale = 1.0 + abs(alpha) + abs(beta)
    if (abs(alpha.w - beta.w) > tol * scale
            or abs(alpha.imag_norm() - beta.imag_norm()) > tol * scale):
        raise DomainError("alpha and beta are not on a common slice sphere")
    shift = beta - alpha.conj()
    if abs(shift) < LEMMA_MIN_SEPARATION:
        raise DegenerateError("beta is (numerically) the conjugate of alpha")
    return shift.inverse() * beta * shift
