"""Regular polynomials ``f(q) = sum q^n a_n`` and their *-algebra.

Coefficients sit to the right of the powers of the variable. The regular
product is the convolution of coefficient sequences (without commuting
anything), which turns the polynomials into an associative, non-commutative
real algebra without zero divisors. Pointwise multiplication does not
preserve regularity; the *-product does.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from numbers import Real
from typing import Sequence

from .errors import ConsistencyError, DegreeError, DomainError, NotARootError
from .quaternion import ONE, ZERO, Quaternion, SliceSphere, as_quaternion, I, J, K

__all__ = [
    "MAX_DEGREE",
    "RegularPolynomial",
    "eval_poly",
    "star_mul",
    "regular_conjugate",
    "symmetrization",
    "left_divide_linear",
    "sphere_affine_coeffs",
    "is_degenerate",
    "dbar_check",
    "linear",
    "constant",
    "monomial",
    "IDENTITY_POLY",
]

MAX_DEGREE = 64


@dataclass(frozen=True, slots=True)
class RegularPolynomial:
    """Finite quaternionic power series ``sum_{n} q^n coeffs[n]``.

    Trailing exact zeros are stripped on construction, so the zero polynomial
    has an empty coefficient tuple and degree ``-1``.
    """

    coeffs: tuple[Quaternion, ...]

    def __init__(self, coeffs: Sequence = ()):
        cs = [as_quaternion(c) for c in coeffs]
        while cs and cs[-1] == ZERO:
            cs.pop()
        if len(cs) - 1 > MAX_DEGREE:
            raise DegreeError(f"degree {len(cs) - 1} exceeds cap {MAX_DEGREE}")
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, n: int) -> Quaternion:
        return self.coeffs[n] if 0 <= n < len(self.coeffs) else ZERO

    def scale(self) -> float:
        """Largest coefficient norm (0 for the zero polynomial)."""
        return max((abs(c) for c in self.coeffs), default=0.0)

    def magnitude_at(self, r: float) -> float:
        """``sum |a_n| r^n``: a bound on ``|f(q)|`` for ``|q| <= r``."""
        total = 0.0
        for c in reversed(self.coeffs):
            total = total * r + abs(c)
        return total

    def __call__(self, q) -> Quaternion:
        return eval_poly(self, q)

    def __add__(self, other):
        other = _coerce_poly(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return RegularPolynomial([self.coeff(k) + other.coeff(k) for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return RegularPolynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        other = _coerce_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_poly(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        """Regular product; a quaternion operand acts as a constant polynomial."""
        if isinstance(other, RegularPolynomial):
            return star_mul(self, other)
        if isinstance(other, (Quaternion, Real)):
            return RegularPolynomial([c * other for c in self.coeffs])
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (Quaternion, Real)):
            return RegularPolynomial([other * c for c in self.coeffs])
        return NotImplemented

    def conj(self) -> RegularPolynomial:
        return regular_conjugate(self)

    def max_coeff_diff(self, other: RegularPolynomial) -> float:
        n = max(len(self.coeffs), len(other.coeffs))
        return max((abs(self.coeff(k) - other.coeff(k)) for k in range(n)), default=0.0)

    def is_real(self, tol: float = 0.0) -> bool:
        return all(c.imag_norm() <= tol for c in self.coeffs)

    def real_coeffs(self) -> list[float]:
        return [c.w for c in self.coeffs]

    def __repr__(self):
        return f"RegularPolynomial({list(self.coeffs)!r})"


def _coerce_poly(value) -> RegularPolynomial | None:
    if isinstance(value, RegularPolynomial):
        return value
    if isinstance(value, (Quaternion, Real)):
        return RegularPolynomial([as_quaternion(value)])
    return None


def constant(c) -> RegularPolynomial:
    return RegularPolynomial([c])


def linear(a, b) -> RegularPolynomial:
    """The affine polynomial ``q a + b``."""
    return RegularPolynomial([b, a])


def monomial(n: int, a=ONE) -> RegularPolynomial:
    return RegularPolynomial([ZERO] * n + [as_quaternion(a)])


IDENTITY_POLY = RegularPolynomial([ZERO, ONE])


def eval_poly(f: RegularPolynomial, q) -> Quaternion:
    """Horner evaluation ``a_0 + q (a_1 + q (a_2 + ...))``.

    Powers of ``q`` stay on the left of each coefficient, so no commutation
    is ever needed.
    """
    q = as_quaternion(q)
    acc = ZERO
    for c in reversed(f.coeffs):
        acc = q * acc + c
    return acc


def star_mul(f: RegularPolynomial, g: RegularPolynomial) -> RegularPolynomial:
    if f.is_zero() or g.is_zero():
        return RegularPolynomial()
    deg = f.degree + g.degree
    if deg > MAX_DEGREE:
        raise DegreeError(f"product degree {deg} exceeds cap {MAX_DEGREE}")
    a, b = f.coeffs, g.coeffs
    out = []
    for n in range(deg + 1):
        acc = ZERO
        for k in range(max(0, n - g.degree), min(n, f.degree) + 1):
            acc = acc + a[k] * b[n - k]
        out.append(acc)
    return RegularPolynomial(out)


def regular_conjugate(f: RegularPolynomial) -> RegularPolynomial:
    return RegularPolynomial([c.conj() for c in f.coeffs])


def symmetrization(f: RegularPolynomial) -> RegularPolynomial:
    """``f * f^c``, whose coefficients are real.

    The imaginary rounding residue is checked against ``1e-10`` (relative to
    the squared coefficient scale) and then discarded.
    """
    raw = star_mul(f, regular_conjugate(f))
    tol = 1e-10 * max(1.0, f.scale() ** 2)
    residue = max((c.imag_norm() for c in raw.coeffs), default=0.0)
    if residue > tol:
        raise ConsistencyError(f"symmetrization has imaginary residue {residue:.3e}")
    return RegularPolynomial([Quaternion(c.w) for c in raw.coeffs])


def left_divide_linear(f: RegularPolynomial, p, tol: float = 1e-9) -> RegularPolynomial:
    """Return ``g`` with ``f = (q - p) * g``, for a zero ``p`` of ``f``.

    Raises :class:`NotARootError` when ``|f(p)|`` exceeds ``tol`` times the
    magnitude scale of ``f`` at ``|p|``.
    """
    p = as_quaternion(p)
    if f.is_zero():
        return RegularPolynomial()
    residual = abs(eval_poly(f, p))
    if residual > tol * max(1.0, f.magnitude_at(abs(p))):
        raise NotARootError("p is not a zero of f", residual)
    if p == ZERO:
        return RegularPolynomial(f.coeffs[1:])
    n = f.degree
    if n < 1:
        raise NotARootError("a nonzero constant has no zeros", residual)
    # f_n = b_{n-1} - p b_n, solved from the top coefficient down
    b = [ZERO] * n
    b[n - 1] = f.coeffs[n]
    for k in range(n - 1, 0, -1):
        b[k - 1] = f.coeffs[k] + p * b[k]
    return RegularPolynomial(b)


def sphere_affine_coeffs(f: RegularPolynomial, s: SliceSphere,
                         tol: float = 1e-10) -> tuple[Quaternion, Quaternion]:
    """Constants ``(b, c)`` with ``f(x + yI) = b + I c`` for every unit ``I``.

    Solved from the values at ``I = i`` and ``I = j``; the value at ``I = k``
    is used as a check.
    """
    vi = eval_poly(f, s.point(I))
    vj = eval_poly(f, s.point(J))
    # vi - vj = (i - j) c
    c = (I - J).inverse() * (vi - vj)
    b = vi - I * c
    vk = eval_poly(f, s.point(K))
    scale = max(1.0, f.magnitude_at(math.hypot(s.x, s.y)))
    miss = abs(vk - (b + K * c))
    if miss > tol * scale:
        raise ConsistencyError(f"value on sphere is not affine in I (miss {miss:.3e})")
    return b, c


def is_degenerate(b: Quaternion, c: Quaternion) -> bool:
    """True when the sphere is degenerate: ``f`` is constant on it."""
    return abs(c) < 1e-10 * (1.0 + abs(b))


def _project_to_line(q: Quaternion, unit: Quaternion) -> tuple[float, float]:
    y = q.x * unit.x + q.y * unit.y + q.z * unit.z
    return q.w, y


def dbar_check(f, q, unit: Quaternion, h: float = 1e-5) -> float:
    """Finite-difference estimate of ``|(d/dx + I d/dy) f_I / 2|`` at ``q``.

    ``f`` is any callable on quaternions (a polynomial, a quotient, ...).
    ``q`` is first projected onto the complex line through ``unit``. The
    derivatives use fourth-order central stencils with step ``h``.
    """
    if not h > 0:
        raise DomainError("step h must be positive")
    unit = as_quaternion(unit)
    x, y = _project_to_line(as_quaternion(q), unit)

    def at(dx, dy):
        return f(Quaternion(x + dx) + unit * (y + dy))

    def central(step_x, step_y):
        return (at(-2 * step_x, -2 * step_y) - at(2 * step_x, 2 * step_y)
                + 8.0 * (at(step_x, step_y) - at(-step_x, -step_y))) / (12.0 * h)

    d_x = central(h, 0.0)
    d_y = central(0.0, h)
    return abs(d_x + unit * d_y) / 2.0
