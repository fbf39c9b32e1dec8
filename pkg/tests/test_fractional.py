import math

import pytest
from hypothesis import assume, given, strategies as st

from conftest import imaginary_units, nonzero_quaternions, polynomials, quaternions
from quatreg import (HERMITIAN_FORM, I, IDENTITY, INF, J, K, ONE, RECIPROCAL, RHO, ZERO,
                     AffineClass, AffineForm, AffineMap, DomainError, MatrixH, PoleForm,
                     Quaternion, QuaternionSampler, RealPole, RegularRational, SingularMatrixError,
                     SingularityError, SliceSphere, SpherePole, act, canonical_form, classify_pole,
                     compose_maps, eval_poly, eval_quotient, generators_decompose,
                     is_invertible, left_divide_linear, lft_compose, lft_eval, linear, mat_inverse,
                     mat_mul, moebius_from_params, moebius_map_pair, moebius_params,
                     relation_transport_eval, rft_eval, rft_quotient, sl2_normalize, sp11_check,
                     sp11_normalize, study_determinant)


@st.composite
def entries(draw):
    # exact zeros exercise the affine branches; tiny nonzero entries only
    # measure the conditioning of division by c
    q = draw(quaternions())
    return ZERO if abs(q) < 1e-3 else q


@st.composite
def matrices(draw):
    A = MatrixH(*(draw(entries()) for _ in range(4)))
    assume(is_invertible(A))
    return A


@st.composite
def moebius_matrices(draw):
    a = draw(quaternions(0.45))
    u = draw(nonzero_quaternions())
    return sp11_normalize(moebius_from_params(a, u / abs(u)))


def diag(x, y):
    return MatrixH(Quaternion(x), ZERO, ZERO, Quaternion(y))


def close_matrix(A, B, tol):
    return A.max_entry_diff(B) < tol


# matrices --------------------------------------------------------------------

def test_layout_names():
    A = MatrixH.from_rows([[1, 2], [3, 4]])
    assert (A.a.w, A.c.w, A.b.w, A.d.w) == (1, 2, 3, 4)
    assert A.rows() == [[A.a, A.c], [A.b, A.d]]


def test_mat_mul_examples():
    A = MatrixH(I, J, K, Quaternion(1, 1, 0, 0))
    assert mat_mul(IDENTITY, A) == A
    assert mat_mul(RHO, RHO) == IDENTITY
    assert mat_inverse(diag(2, 1)) == diag(0.5, 1)


def test_singular_matrix_rejected():
    with pytest.raises(SingularMatrixError):
        mat_inverse(MatrixH(ONE, ONE, ONE, ONE))
    with pytest.raises(SingularMatrixError):
        mat_inverse(MatrixH(ZERO, ZERO, ONE, ONE))
    # non-commutative: [[i, j], [1, 1]] would look singular if entries commuted
    assert is_invertible(MatrixH(I, J, I * J, J * J))


@given(matrices())
def test_inverse_property(A):
    cond = 1.0 + A.scale() * mat_inverse(A).scale()
    assert close_matrix(mat_mul(A, mat_inverse(A)), IDENTITY, 1e-11 * cond)
    assert close_matrix(mat_mul(mat_inverse(A), A), IDENTITY, 1e-11 * cond)


# linear fractional maps ------------------------------------------------------

def test_lft_examples():
    assert lft_eval(RHO, I) == -I
    a, b = Quaternion(1, 2, 0, -1), Quaternion(0, 0, 3, 1)
    q = Quaternion(0.2, 0.4, -0.1, 0.5)
    assert abs(lft_eval(MatrixH.affine(a, b), q) - (q * a + b)) < 1e-15
    A = MatrixH(I, J, K, Quaternion(1, 0, 1, 0))
    assert lft_eval(A, -(A.d * A.c.inverse())) is INF


def test_lft_infinity_conventions():
    A = MatrixH(I, J, K, ONE)
    assert abs(lft_eval(A, INF) - J.inverse() * I) < 1e-15
    assert lft_eval(MatrixH.affine(I, J), INF) is INF
    assert lft_eval(RHO, ZERO) is INF
    assert lft_eval(RHO, INF) == ZERO


def test_compose_examples():
    A = MatrixH(I, J, K, Quaternion(1, 0, 1, 0))
    q = Quaternion(0.3, -0.4, 0.1, 0.2)
    assert abs(lft_eval(lft_compose(A, mat_inverse(A)), q) - q) < 1e-14
    assert abs(lft_eval(lft_compose(RHO, RHO), q) - q) < 1e-15
    a1, b1, a2, b2 = I, J, Quaternion(2, 0, 0, 1), K
    C = lft_compose(MatrixH.affine(a1, b1), MatrixH.affine(a2, b2))
    assert close_matrix(C, MatrixH.affine(a1 * a2, b1 * a2 + b2), 1e-15)


@given(matrices(), matrices(), quaternions(2.0))
def test_antihomomorphism(A, B, q):
    inner = lft_eval(A, q)
    assume(inner is not INF and abs(inner) < 1e6)
    lhs, rhs = lft_eval(mat_mul(A, B), q), lft_eval(B, inner)
    assume(lhs is not INF and rhs is not INF)
    assert abs(lhs - rhs) < 1e-9 * max(1.0, abs(rhs)) * (1.0 + abs(inner))


@given(st.floats(0.01, 100) | st.floats(-100, -0.01), quaternions(3.0))
def test_kernel_scalars(t, q):
    assert abs(lft_eval(MatrixH.scalar(t), q) - q) < 1e-12 * max(1.0, abs(q))


def test_generators_examples():
    assert generators_decompose(RHO) == [AffineMap(ONE, ZERO), RECIPROCAL, AffineMap(ONE, ZERO)]
    gens = generators_decompose(MatrixH(ONE, ONE, ZERO, ONE))
    assert gens == [AffineMap(ONE, ONE), RECIPROCAL, AffineMap(-ONE, ONE)]
    affine = MatrixH.affine(I, J)
    assert len(generators_decompose(affine)) == 4
    q = Quaternion(0.5, 0.1, 0.2, -0.3)
    assert abs(compose_maps(generators_decompose(affine), q) - (q * I + J)) < 1e-15


@given(matrices(), quaternions(2.0))
def test_generators_reproduce_lft(A, q):
    direct = lft_eval(A, q)
    assume(direct is not INF and abs(direct) < 1e6)
    via = compose_maps(generators_decompose(A), q)
    assert abs(via - direct) < 1e-10 * max(1.0, abs(direct)) * (1.0 + A.scale() * mat_inverse(A).scale())


def test_generators_handle_infinity():
    A = MatrixH(I, J, ONE, K)
    assert compose_maps(generators_decompose(A), INF) == lft_eval(A, INF)


# regular fractional maps -----------------------------------------------------

def test_rft_examples():
    q = Quaternion(0.1, -0.7, 0.3, 0.2)
    assert abs(rft_eval(IDENTITY, q) - q) < 1e-15
    A = MatrixH(ONE, ONE, ZERO, -I)
    assert abs(rft_eval(A, 2 * J) - eval_quotient(RegularRational(linear(ONE, -I), linear(ONE, ZERO)), 2 * J)) < 1e-15
    a, b, d = I, J, Quaternion(1, 0, 1, 0)
    expected = q * (d.inverse() * a) + d.inverse() * b
    assert abs(rft_eval(MatrixH(a, ZERO, b, d), q) - expected) < 1e-15


def test_rft_singular_sphere():
    with pytest.raises(SingularityError) as info:
        rft_eval(MatrixH(ONE, ONE, ZERO, -I), K)
    assert info.value.location == SliceSphere(0.0, 1.0)


def test_rft_differs_from_lft_off_slice():
    # the regular and pointwise maps agree on the slice of the pole only
    A = MatrixH(ONE, ONE, ZERO, -I)
    q = 2 * J
    assert abs(rft_eval(A, q) - lft_eval(A, q)) > 0.1
    z = Quaternion(0.3, 2.0)
    assert abs(rft_eval(A, z) - lft_eval(A, z)) < 1e-15


def test_act_examples():
    r = RegularRational.identity()
    A = MatrixH(I, J, K, Quaternion(1, 0, 1, 0))
    q = Quaternion(0.2, 0.1, -0.5, 0.3)
    assert abs(eval_quotient(act(r, A), q) - rft_eval(A, q)) < 1e-14
    s = RegularRational(linear(I, ONE), linear(J, K))
    assert abs(eval_quotient(act(s, IDENTITY), q) - eval_quotient(s, q)) < 1e-15
    scalar = MatrixH.scalar(Quaternion(1, 2, -1, 0.5))
    assert abs(eval_quotient(act(r, scalar), q) - q) < 1e-14


@st.composite
def small_quotients(draw):
    den = draw(polynomials(max_degree=2))
    num = draw(polynomials(max_degree=2))
    assume(not den.is_zero())
    return RegularRational(den, num)


def _safe_eval(r, q):
    try:
        return eval_quotient(r, q)
    except SingularityError:
        return None


@given(small_quotients(), matrices(), matrices(), quaternions(1.0))
def test_right_action(r, A, B, q):
    lhs = _safe_eval(act(act(r, A), B), q)
    rhs = _safe_eval(act(r, mat_mul(A, B)), q)
    assume(lhs is not None and rhs is not None)
    assume(abs(rhs) < 1e4)
    assert abs(lhs - rhs) < 1e-9 * max(1.0, abs(rhs))


@given(matrices(), nonzero_quaternions(), quaternions(1.5))
def test_scalar_equivalence(A, c, q):
    lhs = _safe_eval(rft_quotient(A.left_scale(c)), q)
    rhs = _safe_eval(rft_quotient(A), q)
    assume(lhs is not None and rhs is not None and abs(rhs) < 1e4)
    assert abs(lhs - rhs) < 1e-10 * max(1.0, abs(rhs))


def test_relation_transport_examples():
    s = QuaternionSampler(3)
    M = sp11_normalize(moebius_from_params(Quaternion(0.2, 0.1, -0.3, 0.1), s.unit()))
    for _ in range(20):
        q = s.ball()
        assert abs(relation_transport_eval(RegularRational.identity(), M, q) - rft_eval(M, q)) < 1e-9
    r = RegularRational(linear(I, ONE), linear(J, K))
    q = Quaternion(0.2, 0.3, 0.1, -0.4)
    assert abs(relation_transport_eval(r, IDENTITY, q) - eval_quotient(r, q)) < 1e-14
    x = Quaternion(0.35)
    A = MatrixH(I, J, ONE, K)
    assert abs(relation_transport_eval(r, A, x) - eval_quotient(act(r, A), x)) < 1e-14


@given(small_quotients(), matrices(), quaternions(1.0))
def test_relation_matches_action(r, A, q):
    try:
        expected = eval_quotient(act(r, A), q)
        oracle = relation_transport_eval(r, A, q)
    except SingularityError:
        assume(False)
    assume(oracle is not INF and abs(expected) < 1e4)
    assert abs(oracle - expected) < 1e-9 * max(1.0, abs(expected))


# canonical forms and poles ---------------------------------------------------

def test_canonical_examples():
    assert canonical_form(diag(2, 1)) == AffineForm(Quaternion(2), ZERO)
    form = canonical_form(MatrixH(ONE, I, ZERO, ONE))
    assert isinstance(form, PoleForm)
    assert (form.a, form.b, form.p) == (-I, ZERO, I)


@given(matrices(), nonzero_quaternions())
def test_canonical_is_scale_invariant(A, c):
    f1, f2 = canonical_form(A), canonical_form(A.left_scale(c))
    assert type(f1) is type(f2)
    e1, e2 = f1.matrix(), f2.matrix()
    assert close_matrix(e1, e2, 1e-12 * max(1.0, e1.scale()))


@given(matrices(), quaternions(1.5))
def test_canonical_agrees_pointwise(A, q):
    v = _safe_eval(rft_quotient(A), q)
    assume(v is not None and abs(v) < 1e4)
    form = canonical_form(A)
    assert abs(form(q) - v) < 1e-10 * max(1.0, abs(v))


def test_classify_examples():
    assert classify_pole(MatrixH(I, ONE, J, Quaternion(-2.0))) == RealPole(2.0)
    assert classify_pole(MatrixH(I, ONE, J, -I)) == SpherePole(SliceSphere(0.0, 1.0))
    assert classify_pole(MatrixH.affine(I, J)) == AffineClass()


def test_real_pole_agrees_with_lft():
    A = MatrixH(Quaternion(0.5, 1, 0, 0), ONE, Quaternion(0, 0, 2, 1), Quaternion(-2.0))
    s = QuaternionSampler(11)
    for _ in range(50):
        q = s.cube(3.0)
        assert abs(rft_eval(A, q) - lft_eval(A, q)) < 1e-10


def test_sphere_pole_collapse():
    p = Quaternion(0.5, 0.6, 0.0, 0.8)
    f = linear(ONE, -p)
    s = QuaternionSampler(5)
    sphere = SliceSphere(0.5, 1.0)
    hits = 0
    for _ in range(40):
        q = sphere.point(s.imaginary_unit())
        if abs(q - p.conj()) < 1e-3:
            continue
        w = q - p.conj()
        assert abs(w.inverse() * q * w - p) < 1e-10
        hits += 1
    assert hits >= 20
    with pytest.raises(SingularityError):
        rft_eval(PoleForm(ONE, ZERO, p).matrix(), sphere.point(J))
    assert eval_poly(f, p) == ZERO


# Sp(1,1) and Moebius maps ----------------------------------------------------

def test_sp11_examples():
    assert sp11_check(IDENTITY)[0]
    assert sp11_check(HERMITIAN_FORM)[0]
    u = Quaternion(1, 2, -2, 4) / 5
    assert sp11_check(MatrixH(u, ZERO, ZERO, ONE))[0]
    assert not sp11_check(diag(2, 1))[0]


def test_moebius_examples():
    q = Quaternion(0.1, 0.2, -0.3, 0.1)
    assert abs(rft_eval(moebius_from_params(ZERO, ONE), q) - q) < 1e-15
    u = Quaternion(0, 0.6, 0.8, 0)
    assert abs(rft_eval(moebius_from_params(ZERO, u), q) - q * u) < 1e-15
    a = Quaternion(0.1, -0.2, 0.3, 0.4)
    assert abs(rft_eval(moebius_from_params(a, u), ZERO) + a * u) < 1e-15
    with pytest.raises(DomainError):
        moebius_from_params(Quaternion(1.0), ONE)
    with pytest.raises(DomainError):
        moebius_from_params(ZERO, Quaternion(2.0))


@given(quaternions(0.45), nonzero_quaternions())
def test_moebius_params_roundtrip(a, u):
    u = u / abs(u)
    M = moebius_from_params(a, u)
    assert sp11_check(sp11_normalize(M))[0]
    a2, u2 = moebius_params(M.left_scale(Quaternion(0.0, 0.0, 2.0, 0.0)))
    assert abs(a2 - a) < 1e-9 and abs(u2 - u) < 1e-9


def test_moebius_params_rejects_non_sp11():
    with pytest.raises(DomainError):
        moebius_params(MatrixH(ONE, J, ZERO, ONE))


@given(moebius_matrices())
def test_ball_preservation(M):
    s = QuaternionSampler(int(abs(M.a.w) * 1e6))
    for _ in range(20):
        q = s.ball(0.999)
        assert abs(rft_eval(M, q)) < 1.0
        e = s.unit()
        assert abs(abs(rft_eval(M, e)) - 1.0) < 1e-9


def test_map_pair_examples():
    q = Quaternion(0.1, 0.2, 0.3, 0.4)
    assert abs(rft_eval(moebius_map_pair(ZERO, ZERO), q) - q) < 1e-15
    assert abs(rft_eval(moebius_map_pair(I / 2, ZERO), I / 2)) < 1e-15
    assert abs(rft_eval(moebius_map_pair(I / 2, J / 2), I / 2) - J / 2) < 1e-9
    with pytest.raises(DomainError):
        moebius_map_pair(Quaternion(1.0), ZERO)


@given(quaternions(0.45), quaternions(0.45))
def test_map_pair_property(a, b):
    M = moebius_map_pair(a, b)
    assert sp11_check(sp11_normalize(M))[0]
    assert abs(rft_eval(M, a) - b) < 1e-9


@given(nonzero_quaternions())
def test_schwarz_factor(u):
    u = u / abs(u)
    f = RegularRational.identity()
    num = act(f, moebius_from_params(ZERO, u)).num
    g = left_divide_linear(num, ZERO)
    s = QuaternionSampler(2)
    for _ in range(10):
        assert abs(abs(eval_poly(g, s.cube(2.0))) - 1.0) < 1e-12


def test_sl2_normalization_preserves_map():
    A = MatrixH(I, J, K, Quaternion(2, 0, 1, 0))
    N = sl2_normalize(A)
    assert abs(study_determinant(N) - 1.0) < 1e-12
    q = Quaternion(0.3, 0.1, 0.2, 0.4)
    assert abs(lft_eval(N, q) - lft_eval(A, q)) < 1e-14
    assert abs(study_determinant(diag(2, 1)) - 4.0) < 1e-12
