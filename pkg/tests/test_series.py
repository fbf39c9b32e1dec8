import pytest
from hypothesis import assume, given, strategies as st

from conftest import imaginary_units, polynomials, quaternions
from quatreg import (ConsistencyError, DegreeError, I, IDENTITY_POLY, J, K, MAX_DEGREE,
                     NotARootError, ONE, Quaternion, RegularPolynomial, SliceSphere,
                     constant, dbar_check, eval_poly, is_degenerate, left_divide_linear, linear,
                     monomial, regular_conjugate, sphere_affine_coeffs, star_mul, symmetrization)

Q_MINUS_I = linear(ONE, -I)
Q_MINUS_J = linear(ONE, -J)
PRODUCT = star_mul(Q_MINUS_I, Q_MINUS_J)


def test_normal_form_strips_trailing_zeros():
    f = RegularPolynomial([1, 2, 0, 0])
    assert f.degree == 1
    assert RegularPolynomial([0, 0]).is_zero()
    assert RegularPolynomial().degree == -1


def test_degree_cap():
    with pytest.raises(DegreeError):
        RegularPolynomial([1] * (MAX_DEGREE + 2))
    with pytest.raises(DegreeError):
        star_mul(monomial(40), monomial(30))


def test_eval_examples():
    assert eval_poly(monomial(2), J) == -ONE
    assert PRODUCT.coeffs == (K, -I - J, ONE)
    assert abs(eval_poly(PRODUCT, J) - 2 * K) < 1e-15
    c = Quaternion(1, 2, 3, 4)
    assert eval_poly(constant(c), Quaternion(0.3, 1, -2, 5)) == c


def test_star_mul_examples():
    f = RegularPolynomial([Quaternion(1, 2, 3, 4), Quaternion(0, 1, 0, 0)])
    assert star_mul(f, constant(ONE)) == f
    qi, qj = monomial(1, I), monomial(1, J)
    assert star_mul(qi, qj) == monomial(2, K)
    assert star_mul(qj, qi) == monomial(2, -K)


def test_operator_forms():
    assert Q_MINUS_I * Q_MINUS_J == PRODUCT
    assert IDENTITY_POLY - I == Q_MINUS_I
    assert (Q_MINUS_I * 2.0).coeffs == (-2 * I, 2 * ONE)
    assert (I * IDENTITY_POLY).coeffs == (Quaternion(), I)


def test_conjugate_examples():
    assert regular_conjugate(Q_MINUS_I) == linear(ONE, I)
    q2p1 = RegularPolynomial([1, 0, 1])
    assert regular_conjugate(q2p1) == q2p1
    assert regular_conjugate(monomial(1, ONE + J)) == monomial(1, ONE - J)


def test_symmetrization_examples():
    assert symmetrization(Q_MINUS_I) == RegularPolynomial([1, 0, 1])
    c = Quaternion(1, -1, 2, 0.5)
    assert symmetrization(constant(c)).coeffs[0].w == pytest.approx(c.norm2(), rel=1e-15)
    a, b = Quaternion(0.2, 1, -1, 0.5), Quaternion(-0.7, 0.1, 0.3, 2)
    got = symmetrization(linear(a, b))
    expected = RegularPolynomial([b.norm2(), b * a.conj() + a * b.conj(), a.norm2()])
    assert got.max_coeff_diff(expected) < 1e-14


def test_left_divide_examples():
    q2p1 = RegularPolynomial([1, 0, 1])
    assert left_divide_linear(q2p1, I) == linear(ONE, I)
    p = Quaternion(0.3, -1, 2, 0.1)
    assert left_divide_linear(linear(ONE, -p), p).max_coeff_diff(constant(ONE)) < 1e-15
    assert left_divide_linear(PRODUCT, I).max_coeff_diff(Q_MINUS_J) < 1e-15


def test_left_divide_at_zero_shifts():
    f = RegularPolynomial([0, I, J])
    assert left_divide_linear(f, Quaternion()) == RegularPolynomial([I, J])


def test_left_divide_rejects_non_roots():
    with pytest.raises(NotARootError) as info:
        left_divide_linear(PRODUCT, J)
    assert info.value.residual > 1.0


def test_sphere_affine_examples():
    b, c = sphere_affine_coeffs(monomial(2), SliceSphere(0, 1))
    assert abs(b + ONE) < 1e-15 and abs(c) < 1e-15 and is_degenerate(b, c)
    b, c = sphere_affine_coeffs(IDENTITY_POLY, SliceSphere(0.5, 2.0))
    assert abs(b - Quaternion(0.5)) < 1e-15 and abs(c - Quaternion(2.0)) < 1e-15
    assert not is_degenerate(b, c)
    b, c = sphere_affine_coeffs(PRODUCT, SliceSphere(0, 1))
    assert abs(b - (K - ONE)) < 1e-15 and abs(c + I + J) < 1e-15


def test_sphere_affine_detects_non_affine_input(monkeypatch):
    import quatreg.series as series
    f = RegularPolynomial([0, 0, 1])
    original = series.eval_poly
    # q i q is not regular: quadratic in I on each sphere
    monkeypatch.setattr(series, "eval_poly", lambda g, q: q * I * q if g is f else original(g, q))
    with pytest.raises(ConsistencyError):
        sphere_affine_coeffs(f, SliceSphere(0.3, 1.1))


def test_dbar_examples():
    assert dbar_check(monomial(2), ONE + I, I, 1e-5) < 1e-7
    assert dbar_check(constant(Quaternion(1, 2, 3, 4)), Quaternion(0.2, 0.5), J) < 1e-12
    assert dbar_check(PRODUCT, 2 * J, J, 1e-5) < 1e-7


def test_dbar_detects_non_regular_function():
    # q -> conj(q) is anti-holomorphic on each slice
    assert dbar_check(lambda q: q.conj(), Quaternion(0.5, 0.5), I) > 0.5


def test_domain_property():
    f, g = RegularPolynomial([I, J]), RegularPolynomial([K, ONE, I])
    assert not star_mul(f, g).is_zero()
    assert star_mul(f, RegularPolynomial()).is_zero()


@given(polynomials(), polynomials(), polynomials())
def test_associativity(f, g, h):
    assert star_mul(star_mul(f, g), h).max_coeff_diff(star_mul(f, star_mul(g, h))) < 1e-12


@given(polynomials(), polynomials(), polynomials(), st.floats(-3, 3))
def test_distributivity_and_bilinearity(f, g, h, t):
    assert star_mul(f, g + h).max_coeff_diff(star_mul(f, g) + star_mul(f, h)) < 1e-12
    assert star_mul(f + g, h).max_coeff_diff(star_mul(f, h) + star_mul(g, h)) < 1e-12
    assert star_mul(f * t, g).max_coeff_diff(star_mul(f, g) * t) < 1e-12


@given(polynomials(), polynomials())
def test_conjugate_reverses_products(f, g):
    lhs = regular_conjugate(star_mul(f, g))
    assert lhs.max_coeff_diff(star_mul(regular_conjugate(g), regular_conjugate(f))) < 1e-12


@given(polynomials())
def test_symmetrization_real_and_central(f):
    raw = star_mul(f, regular_conjugate(f))
    assert max((c.imag_norm() for c in raw.coeffs), default=0.0) < 1e-13
    assert symmetrization(f).max_coeff_diff(star_mul(regular_conjugate(f), f)) < 1e-12


@given(polynomials(), polynomials(), quaternions())
def test_product_zero_formula(f, g, p):
    fp = eval_poly(f, p)
    assume(abs(fp) > 1e-6)
    rhs = fp * eval_poly(g, fp.inverse() * p * fp)
    assert abs(eval_poly(star_mul(f, g), p) - rhs) < 1e-10


@given(polynomials(), st.floats(-1, 1), st.floats(0.05, 1.5), st.lists(imaginary_units(), min_size=20, max_size=20))
def test_sphere_affine_property(f, x, y, units):
    s = SliceSphere(x, y)
    b, c = sphere_affine_coeffs(f, s)
    assert max(abs(eval_poly(f, s.point(u)) - (b + u * c)) for u in units) < 1e-10


@given(polynomials(max_degree=5), quaternions())
def test_factorization_roundtrip(g, p):
    f = star_mul(linear(ONE, -p), g)
    assert star_mul(linear(ONE, -p), left_divide_linear(f, p)).max_coeff_diff(f) < 1e-11


@given(polynomials(), quaternions(), imaginary_units())
def test_dbar_vanishes_for_polynomials(f, q, unit):
    assert dbar_check(f, q, unit, 1e-5) < 1e-7
