import math

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from quatreg import Quaternion, RegularPolynomial

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")



@st.composite
def quaternions(draw, bound=1.0):
    vals = [draw(st.floats(-bound, bound, allow_nan=False, allow_infinity=False, allow_subnormal=False)) for _ in range(4)]
    return Quaternion(*vals)


@st.composite
def nonzero_quaternions(draw, bound=1.0, min_norm=1e-3):
    q = draw(quaternions(bound))
    if abs(q) < min_norm:
        q = Quaternion(min_norm) + q
    return q


@st.composite
def imaginary_units(draw):
    v = [draw(st.floats(-1, 1, allow_nan=False)) for _ in range(3)]
    n = math.sqrt(sum(c * c for c in v))
    if n < 1e-3:
        return Quaternion(0.0, 1.0)
    return Quaternion(0.0, *(c / n for c in v))


@st.composite
def polynomials(draw, max_degree=6, min_degree=0):
    deg = draw(st.integers(min_degree, max_degree))
    coeffs = [draw(quaternions()) for _ in range(deg + 1)]
    if abs(coeffs[-1]) < 1e-3:
        coeffs[-1] = coeffs[-1] + Quaternion(0.5)
    return RegularPolynomial(coeffs)


def qclose(a, b, tol):
    return abs(a - b) <= tol


@pytest.fixture
def approx_q():
    return qclose


def sphere_unit(theta, phi):
    return Quaternion(0.0, math.cos(theta), math.sin(theta) * math.cos(phi),
                      math.sin(theta) * math.sin(phi))


def sphere_scan(f, s, n=1000, seed=0):
    """Brute-force ``|f|`` over ``n`` random points of the sphere ``s``.

    Returns ``(values, units)`` for independent checks of reported zeros.
    """
    from quatreg import QuaternionSampler, eval_poly
    sampler = QuaternionSampler(seed)
    units = [sampler.imaginary_unit() for _ in range(n)]
    return [abs(eval_poly(f, s.point(u))) for u in units], units


def sphere_min(f, s, n=1000, seed=0):
    """Scan ``n`` points of ``s`` then refine the best one by least squares
    on the angles; returns ``(min |f|, minimizing point)``."""
    from scipy.optimize import least_squares
    from quatreg import eval_poly
    values, units = sphere_scan(f, s, n, seed)
    best = units[min(range(n), key=values.__getitem__)]
    theta0 = math.acos(max(-1.0, min(1.0, best.x)))
    phi0 = math.atan2(best.z, best.y)

    def resid(v):
        return list(eval_poly(f, s.point(sphere_unit(*v))))

    sol = least_squares(resid, [theta0, phi0], xtol=1e-15, ftol=1e-15, gtol=1e-15)
    point = s.point(sphere_unit(*sol.x))
    return abs(eval_poly(f, point)), point
