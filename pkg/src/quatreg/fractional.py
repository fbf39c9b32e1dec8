"""Linear and regular fractional transformations of the quaternions.

A matrix is written in the layout ``A = [[a, c], [b, d]]`` (first row
``a, c``), and drives two maps:

* the linear fractional transformation ``F_A(q) = (qc + d)^{-1} (qa + b)``,
  a homeomorphism of ``H u {inf}`` with ``F_{AB} = F_B o F_A``;
* the regular fractional transformation ``(qc + d)^{-*} * (qa + b)``, the
  image of the identity under the right action ``f.A = (fc + d)^{-*} * (fa + b)``
  of invertible matrices on regular quotients.

Matrices preserving the form ``diag(1, -1)`` (the group Sp(1,1)) give the
regular Moebius transformations of the unit ball.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence, Union

import numpy as np

from .errors import DomainError, SingularMatrixError
from .quaternion import (INF, ONE, ZERO, ExtendedQuaternion, Infinity, Quaternion,
                         SliceSphere, as_quaternion)
from .quotient import RegularRational, eval_quotient, quotient_conjugate
from .series import RegularPolynomial, constant, linear

__all__ = [
    "MatrixH",
    "IDENTITY",
    "RHO",
    "HERMITIAN_FORM",
    "mat_mul",
    "mat_inverse",
    "is_invertible",
    "lft_eval",
    "lft_compose",
    "AffineMap",
    "Reciprocal",
    "RECIPROCAL",
    "generators_decompose",
    "compose_maps",
    "rft_quotient",
    "rft_eval",
    "act",
    "AffineForm",
    "PoleForm",
    "canonical_form",
    "AffineClass",
    "RealPole",
    "SpherePole",
    "classify_pole",
    "sp11_residual",
    "sp11_check",
    "sp11_normalize",
    "study_determinant",
    "sl2_normalize",
    "moebius_from_params",
    "moebius_params",
    "moebius_map_pair",
    "relation_transport_eval",
]

_INVERTIBILITY_TOL = 1e-12


@dataclass(frozen=True)
class MatrixH:
    """2x2 quaternionic matrix ``[[a, c], [b, d]]``.

    Positional arguments follow the rows, so ``MatrixH(a, c, b, d)`` reads
    like the matrix itself.
    """

    a: Quaternion
    c: Quaternion
    b: Quaternion
    d: Quaternion

    def __post_init__(self):
        for name in ("a", "c", "b", "d"):
            object.__setattr__(self, name, as_quaternion(getattr(self, name)))

    @classmethod
    def from_rows(cls, rows) -> MatrixH:
        (a, c), (b, d) = rows
        return cls(a, c, b, d)

    @classmethod
    def affine(cls, a, b) -> MatrixH:
        """Matrix of ``q -> qa + b``."""
        return cls(a, ZERO, b, ONE)

    @classmethod
    def scalar(cls, t) -> MatrixH:
        t = as_quaternion(t)
        return cls(t, ZERO, ZERO, t)

    def rows(self) -> list[list[Quaternion]]:
        return [[self.a, self.c], [self.b, self.d]]

    def entries(self) -> tuple[Quaternion, ...]:
        return (self.a, self.c, self.b, self.d)

    def scale(self) -> float:
        return max(abs(e) for e in self.entries())

    def left_scale(self, s) -> MatrixH:
        """The matrix ``s A`` (every entry multiplied by ``s`` on the left)."""
        s = as_quaternion(s)
        return MatrixH(s * self.a, s * self.c, s * self.b, s * self.d)

    def __matmul__(self, other: MatrixH) -> MatrixH:
        return mat_mul(self, other)

    def max_entry_diff(self, other: MatrixH) -> float:
        return max(abs(x - y) for x, y in zip(self.entries(), other.entries()))


IDENTITY = MatrixH(ONE, ZERO, ZERO, ONE)
RHO = MatrixH(ZERO, ONE, ONE, ZERO)
HERMITIAN_FORM = MatrixH(ONE, ZERO, ZERO, -ONE)


def mat_mul(A: MatrixH, B: MatrixH) -> MatrixH:
    return MatrixH(
        A.a * B.a + A.c * B.b, A.a * B.c + A.c * B.d,
        A.b * B.a + A.d * B.b, A.b * B.c + A.d * B.d,
    )


def _schur(A: MatrixH):
    """Pick the larger of ``a``, ``c`` as pivot; return (pivot_name, complement)."""
    if abs(A.c) >= abs(A.a):
        if A.c == ZERO:
            return None, ZERO
        return "c", A.b - A.d * A.c.inverse() * A.a
    return "a", A.d - A.b * A.a.inverse() * A.c


def is_invertible(A: MatrixH) -> bool:
    pivot, s = _schur(A)
    return pivot is not None and abs(s) > _INVERTIBILITY_TOL * (1.0 + A.scale()) ** 2


def mat_inverse(A: MatrixH) -> MatrixH:
    """Block inverse through the quaternionic Schur complement."""
    if not is_invertible(A):
        raise SingularMatrixError("matrix is not invertible")
    pivot, s = _schur(A)
    si = s.inverse()
    if pivot == "c":
        ci = A.c.inverse()
        return MatrixH(
            -(si * A.d * ci), si,
            ci + ci * A.a * si * A.d * ci, -(ci * A.a * si),
        )
    ai = A.a.inverse()
    return MatrixH(
        ai + ai * A.c * si * A.b * ai, -(ai * A.c * si),
        -(si * A.b * ai), si,
    )


def _is_zero(q: Quaternion, scale: float) -> bool:
    return abs(q) <= 4 * np.finfo(float).eps * scale


def lft_eval(A: MatrixH, q: ExtendedQuaternion) -> ExtendedQuaternion:
    """``F_A(q) = (qc + d)^{-1}(qa + b)`` on ``H u {inf}``.

    ``F_A(inf)`` is ``inf`` when ``c = 0`` and ``c^{-1} a`` otherwise;
    ``F_A(-d c^{-1}) = inf``.
    """
    if isinstance(q, Infinity):
        return INF if A.c == ZERO else A.c.inverse() * A.a
    q = as_quaternion(q)
    den = q * A.c + A.d
    if den == ZERO or _is_zero(den, abs(q) * abs(A.c) + abs(A.d)):
        return INF
    return den.inverse() * (q * A.a + A.b)


def lft_compose(A: MatrixH, B: MatrixH) -> MatrixH:
    """Matrix of ``F_B o F_A`` (the assignment ``A -> F_A`` reverses products)."""
    return mat_mul(A, B)


@dataclass(frozen=True)
class AffineMap:
    """``q -> q a + b``, fixing infinity."""

    a: Quaternion
    b: Quaternion

    def __call__(self, q: ExtendedQuaternion) -> ExtendedQuaternion:
        if isinstance(q, Infinity):
            return INF
        return q * self.a + self.b

    def matrix(self) -> MatrixH:
        return MatrixH.affine(self.a, self.b)


class Reciprocal:
    """``q -> q^{-1}`` exchanging 0 and infinity."""

    def __call__(self, q: ExtendedQuaternion) -> ExtendedQuaternion:
        if isinstance(q, Infinity):
            return ZERO
        if q == ZERO:
            return INF
        return q.inverse()

    def matrix(self) -> MatrixH:
        return RHO

    def __repr__(self):
        return "RECIPROCAL"


RECIPROCAL = Reciprocal()

Generator = Union[AffineMap, Reciprocal]


def generators_decompose(A: MatrixH) -> list[Generator]:
    """Write ``F_A`` as affine maps and reciprocals, applied left to right.

    For ``c != 0``: ``q -> qc + d``, reciprocal, ``q -> q(b - d c^{-1} a) + c^{-1} a``.
    For ``c = 0``: ``q -> qa + b``, reciprocal, ``q -> q d``, reciprocal.
    """
    if not is_invertible(A):
        raise SingularMatrixError("matrix is not invertible")
    if A.c != ZERO:
        ci = A.c.inverse()
        return [AffineMap(A.c, A.d), RECIPROCAL,
                AffineMap(A.b - A.d * ci * A.a, ci * A.a)]
    return [AffineMap(A.a, A.b), RECIPROCAL, AffineMap(A.d, ZERO), RECIPROCAL]


def compose_maps(maps: Sequence[Callable], q: ExtendedQuaternion) -> ExtendedQuaternion:
    for m in maps:
        q = m(q)
    return q


def rft_quotient(A: MatrixH) -> RegularRational:
    """``(qc + d)^{-*} * (qa + b)`` as a regular quotient."""
    return RegularRational(linear(A.c, A.d), linear(A.a, A.b))


def rft_eval(A: MatrixH, q) -> Quaternion:
    return eval_quotient(rft_quotient(A), q)


def act(r: RegularRational, A: MatrixH) -> RegularRational:
    """Right action ``r.A = (r c + d)^{-*} * (r a + b)``.

    With ``r = D^{-*} * N`` both ``r c + d`` and ``r a + b`` share the left
    factor ``D^{-*}``, which cancels, leaving
    ``(N c + D d)^{-*} * (N a + D b)``.
    """
    if not is_invertible(A):
        raise SingularMatrixError("matrix is not invertible")
    den = r.num * A.c + r.den * A.d
    num = r.num * A.a + r.den * A.b
    if den.is_zero():
        raise DomainError("action produced a zero denominator")
    return RegularRational(den, num)


@dataclass(frozen=True)
class AffineForm:
    """``q -> q a + b``."""

    a: Quaternion
    b: Quaternion

    def matrix(self) -> MatrixH:
        return MatrixH.affine(self.a, self.b)

    def __call__(self, q) -> Quaternion:
        return as_quaternion(q) * self.a + self.b


@dataclass(frozen=True)
class PoleForm:
    """``(q - p)^{-*} * (q a + b)``."""

    a: Quaternion
    b: Quaternion
    p: Quaternion

    def matrix(self) -> MatrixH:
        return MatrixH(self.a, ONE, self.b, -self.p)

    def __call__(self, q) -> Quaternion:
        return rft_eval(self.matrix(), q)

    def pointwise(self, q: ExtendedQuaternion) -> ExtendedQuaternion:
        """The linear fractional ``(q - p)^{-1}(q a + b)`` with the same data."""
        return lft_eval(self.matrix(), q)


CanonicalRFT = Union[AffineForm, PoleForm]


def canonical_form(A: MatrixH) -> CanonicalRFT:
    """Unique representative of the class ``{sA : s != 0}``."""
    if not is_invertible(A):
        raise SingularMatrixError("matrix is not invertible")
    if A.c == ZERO:
        di = A.d.inverse()
        return AffineForm(di * A.a, di * A.b)
    ci = A.c.inverse()
    return PoleForm(ci * A.a, ci * A.b, -(ci * A.d))


@dataclass(frozen=True)
class AffineClass:
    pass


@dataclass(frozen=True)
class RealPole:
    """Pole at a real point: the map agrees with a linear fractional one and
    extends to a homeomorphism of ``H u {inf}``."""

    x: float


@dataclass(frozen=True)
class SpherePole:
    """Pole on a sphere ``x + yS``: no continuous extension to ``H u {inf}``."""

    sphere: SliceSphere


def classify_pole(A: MatrixH, tol: float = 1e-12):
    form = canonical_form(A)
    if isinstance(form, AffineForm):
        return AffineClass()
    p = form.p
    if p.imag_norm() <= tol * (1.0 + abs(p)):
        return RealPole(p.w)
    return SpherePole(SliceSphere(p.w, p.imag_norm()))


def _form_product(A: MatrixH):
    """Entries of ``conj(A)^t H A``."""
    a, c, b, d = A.entries()
    return (a.conj() * a - b.conj() * b, a.conj() * c - b.conj() * d,
            c.conj() * a - d.conj() * b, c.conj() * c - d.conj() * d)


def sp11_residual(A: MatrixH) -> float:
    m00, m01, m10, m11 = _form_product(A)
    return max(abs(m00 - 1.0), abs(m01), abs(m10), abs(m11 + 1.0))


def sp11_check(A: MatrixH, tol: float = 1e-10) -> tuple[bool, float]:
    """Whether ``conj(A)^t H A = H`` with ``H = diag(1, -1)``, and the residual."""
    res = sp11_residual(A)
    return res < tol, res


def sp11_normalize(A: MatrixH) -> MatrixH:
    """Rescale by a positive real so that the ``(1,1)`` entry of
    ``conj(A)^t H A`` is 1; Sp(1,1) matrices up to real scale land in Sp(1,1)."""
    lam = _form_product(A)[0].w
    if not lam > 0:
        raise DomainError("matrix is not a real multiple of an Sp(1,1) element")
    s = 1.0 / math.sqrt(lam)
    return MatrixH(A.a * s, A.c * s, A.b * s, A.d * s)


def _complex_adjoint(q: Quaternion) -> np.ndarray:
    # q = (w + x i) + (y + z i) j
    z1, z2 = complex(q.w, q.x), complex(q.y, q.z)
    return np.array([[z1, z2], [-z2.conjugate(), z1.conjugate()]])


def study_determinant(A: MatrixH) -> float:
    """Determinant of the 4x4 complex matrix representing ``A`` (real, >= 0)."""
    big = np.block([[_complex_adjoint(A.a), _complex_adjoint(A.c)],
                    [_complex_adjoint(A.b), _complex_adjoint(A.d)]])
    return float(np.linalg.det(big).real)


def sl2_normalize(A: MatrixH) -> MatrixH:
    """Real rescaling to unit Study determinant; the transformation is unchanged."""
    det = study_determinant(A)
    if not det > 0:
        raise SingularMatrixError("matrix is not invertible")
    s = det ** -0.25
    return MatrixH(A.a * s, A.c * s, A.b * s, A.d * s)


def moebius_from_params(a, u, tol: float = 1e-12) -> MatrixH:
    """Matrix ``[[u, -conj(a)], [-a u, 1]]`` of ``(1 - q conj(a))^{-*} * (q - a) u``.

    A real multiple of an Sp(1,1) element; see :func:`sp11_normalize`.
    """
    a, u = as_quaternion(a), as_quaternion(u)
    if not abs(a) < 1.0:
        raise DomainError("|a| must be < 1")
    if abs(abs(u) - 1.0) > tol:
        raise DomainError("u must be a unit quaternion")
    return MatrixH(u, -a.conj(), -(a * u), ONE)


def moebius_params(A: MatrixH, tol: float = 1e-9) -> tuple[Quaternion, Quaternion]:
    """Recover ``(a, u)`` with ``F_A = (1 - q conj(a))^{-*} * (q - a) u``.

    Left-normalizing by ``d^{-1}`` (``|d| >= 1`` after Sp(1,1) scaling)
    gives ``u = d^{-1} a_A``, ``a = -conj(d^{-1} c_A)``; the remaining entry
    must equal ``-a u``. Raises :class:`DomainError` if ``A`` is not a
    scaled Sp(1,1) element or the recovered data are inconsistent.
    """
    A = sp11_normalize(A)
    ok, res = sp11_check(A, tol)
    if not ok:
        raise DomainError(f"matrix is not in Sp(1,1) up to scale (residual {res:.3e})")
    di = A.d.inverse()
    u = di * A.a
    a = -(di * A.c).conj()
    if abs(abs(u) - 1.0) > tol or not abs(a) < 1.0 or abs(di * A.b + a * u) > tol:
        raise DomainError("ill-conditioned Moebius parameters")
    return a, u


def moebius_map_pair(a, b) -> MatrixH:
    """Sp(1,1) product whose regular Moebius transformation sends ``a`` to ``b``.

    The three factors move ``a`` to 0, then 0 to ``|b|``, then rotate by
    ``b/|b|``; the rotation is dropped when ``b = 0``.
    """
    a, b = as_quaternion(a), as_quaternion(b)
    if not (abs(a) < 1.0 and abs(b) < 1.0):
        raise DomainError("a and b must lie in the open unit ball")
    nb = abs(b)
    to_zero = MatrixH(ONE, -a.conj(), -a, ONE)
    boost = MatrixH(ONE, Quaternion(nb), Quaternion(nb), ONE)
    result = mat_mul(to_zero, boost)
    if nb > 0.0:
        result = mat_mul(result, MatrixH(b / nb, ZERO, ZERO, ONE))
    return result


def relation_transport_eval(r: RegularRational, A: MatrixH, q) -> Quaternion:
    """``F_A(r(T(q)))`` with ``T`` the transport map of ``g = r c + d``.

    ``T(q) = g^c(q)^{-1} q g^c(q)``; for a polynomial ``r`` this is the
    polynomial transport of ``r c + d``. Evaluates ``r.A`` at ``q`` without
    using the action formula.
    """
    q = as_quaternion(q)
    g = RegularRational(r.den, r.num * A.c + r.den * A.d)
    gc_q = eval_quotient(quotient_conjugate(g), q)
    t = gc_q.inverse() * q * gc_q
    value = lft_eval(A, eval_quotient(r, t))
    return value
