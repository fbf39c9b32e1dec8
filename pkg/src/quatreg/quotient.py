"""Left regular quotients ``f^{-*} * g`` of regular polynomials.

The quotient is evaluated as ``f^s(q)^{-1} (f^c * g)(q)`` away from the zero
set of the real polynomial ``f^s``. The transport map
``T_f(q) = f^c(q)^{-1} q f^c(q)`` relates it to the pointwise quotient:
``f^{-*} * g (q) = f(T_f(q))^{-1} g(T_f(q))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, SingularityError
from .quaternion import ONE, Quaternion, SliceSphere, as_quaternion, sphere_of
from .series import (IDENTITY_POLY, RegularPolynomial, constant, eval_poly,
                     regular_conjugate, star_mul, symmetrization)
from .zeros import real_poly_roots, resolve_on_sphere

__all__ = [
    "RegularRational",
    "eval_quotient",
    "transport",
    "quotient_relation_eval",
    "quotient_star_mul",
    "quotient_conjugate",
    "SingularComponent",
    "singular_set",
    "distance_to_singular_set",
    "SINGULAR_TOL",
]

SINGULAR_TOL = 1e-12


@dataclass(frozen=True)
class RegularRational:
    """The left regular quotient ``den^{-*} * num``."""

    den: RegularPolynomial
    num: RegularPolynomial

    def __post_init__(self):
        if self.den.is_zero():
            raise DomainError("denominator of a regular quotient must be nonzero")

    @classmethod
    def from_polynomial(cls, g: RegularPolynomial) -> RegularRational:
        return cls(constant(ONE), g)

    @classmethod
    def identity(cls) -> RegularRational:
        return cls(constant(ONE), IDENTITY_POLY)

    def __call__(self, q) -> Quaternion:
        return eval_quotient(self, q)

    def __mul__(self, other):
        if isinstance(other, RegularRational):
            return quotient_star_mul(self, other)
        return NotImplemented

    def den_sym(self) -> RegularPolynomial:
        return symmetrization(self.den)

    def is_polynomial(self) -> bool:
        return self.den.degree == 0


def _guard(den_sym: RegularPolynomial, q: Quaternion, value: Quaternion):
    # den_sym has twice the degree of the denominator
    threshold = SINGULAR_TOL * den_sym.scale() * (1.0 + abs(q)) ** max(den_sym.degree, 0)
    if abs(value) <= threshold:
        raise SingularityError(f"{q} lies on the singular set", sphere_of(q))


def eval_quotient(r: RegularRational, q) -> Quaternion:
    """``den^s(q)^{-1} (den^c * num)(q)``.

    Raises :class:`SingularityError` (carrying the sphere or real point
    through ``q``) when ``|den^s(q)|`` is below the scale-relative threshold.
    """
    q = as_quaternion(q)
    ds = symmetrization(r.den)
    ds_q = eval_poly(ds, q)
    _guard(ds, q, ds_q)
    return ds_q.inverse() * eval_poly(star_mul(regular_conjugate(r.den), r.num), q)


def transport(f: RegularPolynomial, q) -> Quaternion:
    """``T_f(q) = f^c(q)^{-1} q f^c(q)``; preserves every sphere ``x + yS``."""
    q = as_quaternion(q)
    fc_q = eval_poly(regular_conjugate(f), q)
    if fc_q.norm2() == 0.0:
        raise SingularityError("f^c vanishes at q", sphere_of(q))
    return fc_q.inverse() * q * fc_q


def quotient_relation_eval(r: RegularRational, q) -> Quaternion:
    """Evaluate ``den(T(q))^{-1} num(T(q))`` with ``T`` the transport of ``den``.

    Agrees with :func:`eval_quotient`, through an unrelated formula.
    """
    q = as_quaternion(q)
    ds = symmetrization(r.den)
    _guard(ds, q, eval_poly(ds, q))
    t = transport(r.den, q)
    return eval_poly(r.den, t).inverse() * eval_poly(r.num, t)


def quotient_star_mul(r1: RegularRational, r2: RegularRational) -> RegularRational:
    """Product in the ring of quotients.

    ``(f^{-*} g) * (h^{-*} k) = (f^s h^s)^{-1} f^c*g*h^c*k``. The denominator
    ``f^s h^s`` is stored as a real polynomial, for which the left quotient
    reduces to plain division.
    """
    f, g, h, k = r1.den, r1.num, r2.den, r2.num
    if f.degree == 0 and h.degree == 0:
        # constant denominators: fold them into the numerator
        num = star_mul(f.coeffs[0].inverse() * g, h.coeffs[0].inverse() * k)
        return RegularRational(constant(ONE), num)
    den = star_mul(symmetrization(f), symmetrization(h))
    num = star_mul(star_mul(star_mul(regular_conjugate(f), g), regular_conjugate(h)), k)
    return RegularRational(den, num)


def quotient_conjugate(r: RegularRational) -> RegularRational:
    """Regular conjugate of ``f^{-*} * g``, namely ``(f^s)^{-1} g^c * f``."""
    return RegularRational(symmetrization(r.den), star_mul(regular_conjugate(r.num), r.den))


@dataclass(frozen=True)
class SingularComponent:
    """A real point or sphere where the denominator's symmetrization vanishes.

    ``multiplicity`` is the zero multiplicity of the denominator there (the
    number of roots of ``den^s`` on the component, halved). ``pole_order``
    is the order left after cancelling the real factors ``(q - x)`` or
    ``q^2 - 2xq + x^2 + y^2`` shared with ``den^c * num``; it is 0 for
    removable components. ``removable_candidate`` marks components where
    ``num^s`` also vanishes.
    """

    location: float | SliceSphere
    multiplicity: int
    pole_order: int
    removable_candidate: bool

    @property
    def is_sphere(self) -> bool:
        return isinstance(self.location, SliceSphere)


def _divide_by_real(h: RegularPolynomial, divisor: list[float]):
    """Long division of ``h`` by a monic real polynomial; returns (quotient, remainder)."""
    rem = list(h.coeffs)
    m = len(divisor) - 1
    if len(rem) - 1 < m:
        return RegularPolynomial(), h
    quot = [Quaternion()] * (len(rem) - m)
    for k in range(len(rem) - 1, m - 1, -1):
        lead = rem[k]
        quot[k - m] = lead
        for t in range(m + 1):
            rem[k - m + t] = rem[k - m + t] - lead * divisor[t]
    return RegularPolynomial(quot), RegularPolynomial(rem[:m])


def _factor_power(h: RegularPolynomial, divisor: list[float], limit: int) -> int:
    count = 0
    while count < limit and not h.is_zero():
        quot, rem = _divide_by_real(h, divisor)
        if rem.scale() > 1e-9 * max(1.0, h.scale()):
            break
        h = quot
        count += 1
    return count


def singular_set(r: RegularRational) -> list[SingularComponent]:
    """Zero set of ``den^s`` with multiplicities and pole orders."""
    ds = symmetrization(r.den)
    if ds.degree < 1:
        return []
    h = star_mul(regular_conjugate(r.den), r.num)
    out = []
    for root, mult in real_poly_roots(ds.real_coeffs()):
        if root.imag < 0:
            continue
        if root.imag == 0.0:
            x = root.real
            divisor = [-x, 1.0]
            exponent = mult
            location = x
            removable = abs(eval_poly(r.num, Quaternion(x))) <= 1e-9 * max(1.0, r.num.magnitude_at(abs(x)))
            zero_mult = mult // 2
        else:
            x, y = root.real, root.imag
            divisor = [x * x + y * y, -2.0 * x, 1.0]
            exponent = mult
            location = SliceSphere(x, y)
            removable = r.num.is_zero() or resolve_on_sphere(r.num, location) is not None
            zero_mult = mult
        shared = _factor_power(h, divisor, exponent)
        out.append(SingularComponent(location, zero_mult, max(exponent - shared, 0), removable))
    return out


def distance_to_singular_set(r: RegularRational, q) -> float:
    q = as_quaternion(q)
    best = math.inf
    for comp in singular_set(r):
        if comp.is_sphere:
            d = comp.location.distance(q)
        else:
            d = abs(q - comp.location)
        best = min(best, d)
    return best
