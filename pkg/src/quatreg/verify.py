"""Seeded numerical audits of the algebraic identities, grouped in suites.

Each check draws random inputs from a :class:`QuaternionSampler`, records the
largest residual and compares it with its tolerance. Reports contain no
timings, so identical arguments give identical output.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Callable

from .errors import ConfigurationError, SingularityError
from .fractional import (IDENTITY, MatrixH, PoleForm, act, canonical_form, generators_decompose,
                         compose_maps, is_invertible, lft_eval, mat_inverse, mat_mul,
                         moebius_from_params, moebius_map_pair, relation_transport_eval,
                         rft_eval, sp11_check, sp11_normalize)
from .quaternion import INF, ONE, Infinity, Quaternion, SliceSphere, slice_decompose, sphere_transport_lemma
from .quotient import (RegularRational, distance_to_singular_set, eval_quotient,
                       quotient_relation_eval, transport)
from .sampling import QuaternionSampler
from .series import (RegularPolynomial, dbar_check, eval_poly, left_divide_linear, linear,
                     regular_conjugate, sphere_affine_coeffs, star_mul, symmetrization)
from .zeros import zero_set

__all__ = ["CheckResult", "SUITES", "run_suite", "suite_names"]


@dataclass
class CheckResult:
    name: str
    max_residual: float
    tolerance: float
    trials: int
    passed: bool


def random_poly(s: QuaternionSampler, max_deg: int, min_deg: int = 0) -> RegularPolynomial:
    deg = int(s.rng.integers(min_deg, max_deg + 1))
    return RegularPolynomial([s.cube() for _ in range(deg + 1)])


def random_matrix(s: QuaternionSampler) -> MatrixH:
    while True:
        A = MatrixH(s.cube(), s.cube(), s.cube(), s.cube())
        if is_invertible(A):
            return A


def random_moebius(s: QuaternionSampler) -> MatrixH:
    """A random Sp(1,1) element: canonical Moebius matrix times a unit scalar."""
    M = sp11_normalize(moebius_from_params(s.ball() * 0.95, s.unit()))
    return M.left_scale(s.unit())


def _rel(a: Quaternion, b: Quaternion) -> float:
    return abs(a - b) / max(1.0, abs(a), abs(b))


# algebra -------------------------------------------------------------------

def _assoc(s, n):
    worst = 0.0
    for _ in range(n):
        f, g, h = (random_poly(s, 6) for _ in range(3))
        worst = max(worst, star_mul(star_mul(f, g), h).max_coeff_diff(star_mul(f, star_mul(g, h))))
    return worst


def _distrib(s, n):
    worst = 0.0
    for _ in range(n):
        f, g, h = (random_poly(s, 6) for _ in range(3))
        t = s.uniform(-2, 2)
        worst = max(worst,
                    star_mul(f, g + h).max_coeff_diff(star_mul(f, g) + star_mul(f, h)),
                    star_mul(f + g, h).max_coeff_diff(star_mul(f, h) + star_mul(g, h)),
                    star_mul(f * t, g).max_coeff_diff(star_mul(f, g) * t),
                    star_mul(f, g * t).max_coeff_diff(star_mul(f, g) * t))
    return worst


def _conj_anti(s, n):
    worst = 0.0
    for _ in range(n):
        f, g = random_poly(s, 6), random_poly(s, 6)
        lhs = regular_conjugate(star_mul(f, g))
        rhs = star_mul(regular_conjugate(g), regular_conjugate(f))
        worst = max(worst, lhs.max_coeff_diff(rhs))
    return worst


def _sym_real(s, n):
    worst = 0.0
    for _ in range(n):
        f = random_poly(s, 6)
        raw = star_mul(f, regular_conjugate(f))
        worst = max(worst, max((c.imag_norm() for c in raw.coeffs), default=0.0))
    return worst


def _sym_central(s, n):
    worst = 0.0
    for _ in range(n):
        f = random_poly(s, 6)
        fs = symmetrization(f)
        worst = max(worst, fs.max_coeff_diff(star_mul(regular_conjugate(f), f)))
    return worst


def _product_zero(s, n):
    worst = 0.0
    for _ in range(n):
        f, g = random_poly(s, 6), random_poly(s, 6)
        p = s.ball()
        fp = eval_poly(f, p)
        if abs(fp) < 1e-8:
            continue
        lhs = eval_poly(star_mul(f, g), p)
        rhs = fp * eval_poly(g, fp.inverse() * p * fp)
        worst = max(worst, abs(lhs - rhs))
    return worst


def _sphere_affine(s, n):
    worst = 0.0
    for _ in range(n):
        f = random_poly(s, 6)
        sph = SliceSphere(s.uniform(-1, 1), s.uniform(0.1, 1))
        b, c = sphere_affine_coeffs(f, sph)
        for _ in range(20):
            unit = s.imaginary_unit()
            worst = max(worst, abs(eval_poly(f, sph.point(unit)) - (b + unit * c)))
    return worst


def _factor(s, n):
    worst = 0.0
    for _ in range(n):
        p = s.ball()
        f = star_mul(linear(ONE, -p), random_poly(s, 5))
        g = left_divide_linear(f, p)
        worst = max(worst, star_mul(linear(ONE, -p), g).max_coeff_diff(f))
    return worst


def _dbar_poly(s, n):
    worst = 0.0
    for _ in range(n):
        f = random_poly(s, 6)
        worst = max(worst, dbar_check(f, s.ball(), s.imaginary_unit(), 1e-5))
    return worst


def _lemma(s, n):
    worst = 0.0
    count = 0
    while count < n:
        sph = SliceSphere(s.uniform(-2, 2), s.uniform(0.05, 2))
        alpha, beta = sph.point(s.imaginary_unit()), sph.point(s.imaginary_unit())
        if abs(beta - alpha.conj()) <= 1e-3:
            continue
        count += 1
        worst = max(worst, abs(sphere_transport_lemma(alpha, beta) - alpha))
    return worst


# quotients ----------------------------------------------------------------

def _random_quotient_point(s, r, margin):
    while True:
        q = s.cube(2.0)
        if distance_to_singular_set(r, q) > margin:
            return q


def _quotient_oracle(s, n):
    worst = 0.0
    for _ in range(n):
        r = RegularRational(random_poly(s, 3, 1), random_poly(s, 3))
        q = _random_quotient_point(s, r, 0.05)
        worst = max(worst, _rel(eval_quotient(r, q), quotient_relation_eval(r, q)))
    return worst


def _transport_sphere(s, n):
    worst = 0.0
    for _ in range(n):
        f = random_poly(s, 4, 1)
        q = s.cube(2.0)
        x, y, _ = slice_decompose(q)
        tx, ty, _ = slice_decompose(transport(f, q))
        worst = max(worst, abs(tx - x), abs(ty - y))
    return worst


def _transport_real(s, n):
    worst = 0.0
    for _ in range(n):
        f = random_poly(s, 4, 1)
        x = s.uniform(-2, 2)
        worst = max(worst, abs(transport(f, Quaternion(x)) - Quaternion(x)))
    return worst


def _transport_inverse(s, n):
    worst = 0.0
    for _ in range(n):
        f = random_poly(s, 4, 1)
        q = s.cube(2.0)
        back = transport(regular_conjugate(f), transport(f, q))
        worst = max(worst, abs(back - q))
    return worst


def _reciprocal_unit(s, n):
    worst = 0.0
    for _ in range(n):
        f = random_poly(s, 3, 1)
        r = RegularRational(f, f)
        q = _random_quotient_point(s, r, 0.05)
        worst = max(worst, abs(eval_quotient(r, q) - ONE))
    return worst


def _sym_multiplicative(s, n):
    worst = 0.0
    for _ in range(n):
        f, h = random_poly(s, 4), random_poly(s, 4)
        worst = max(worst, symmetrization(star_mul(f, h)).max_coeff_diff(
            star_mul(symmetrization(f), symmetrization(h))))
    return worst


def _dbar_quotient(s, n):
    worst = 0.0
    for _ in range(n):
        r = RegularRational(random_poly(s, 2, 1), random_poly(s, 2))
        q = _random_quotient_point(s, r, 0.1)
        _, _, unit = slice_decompose(q)
        worst = max(worst, dbar_check(r, q, unit, 1e-5))
    return worst


# linear fractional transformations -----------------------------------------

def _well_conditioned(A: MatrixH, q) -> bool:
    if isinstance(q, Infinity):
        return False
    return abs(q * A.c + A.d) > 0.1 * (abs(q) * abs(A.c) + abs(A.d))


def _antihom(s, n):
    worst = 0.0
    count = 0
    while count < n:
        A, B = random_matrix(s), random_matrix(s)
        q = s.cube(2.0)
        fa = lft_eval(A, q)
        if not (_well_conditioned(A, q) and _well_conditioned(B, fa)):
            continue
        count += 1
        worst = max(worst, _rel(lft_eval(mat_mul(A, B), q), lft_eval(B, fa)))
    return worst


def _kernel(s, n):
    worst = 0.0
    for _ in range(n):
        t = s.uniform(0.1, 3.0) * (1 if s.uniform() > 0 else -1)
        q = s.cube(2.0)
        worst = max(worst, abs(lft_eval(MatrixH.scalar(t), q) - q))
    return worst


def _generators(s, n):
    worst = 0.0
    count = 0
    while count < n:
        A = random_matrix(s)
        if count % 4 == 0:
            A = MatrixH(A.a, Quaternion(), A.b, A.d)
        q = s.cube(2.0)
        if not _well_conditioned(A, q):
            continue
        count += 1
        worst = max(worst, _rel(compose_maps(generators_decompose(A), q), lft_eval(A, q)))
    return worst


def _mat_inverse(s, n):
    worst = 0.0
    for _ in range(n):
        A = random_matrix(s)
        worst = max(worst, mat_mul(A, mat_inverse(A)).max_entry_diff(IDENTITY))
    return worst


# right action -------------------------------------------------------------

def _safe_pair(f1, f2, q):
    try:
        return f1(q), f2(q)
    except SingularityError:
        return None


def _conditioned_point(s, r: RegularRational, margin: float = 0.05):
    for _ in range(100):
        q = s.cube(1.5)
        ds = symmetrization(r.den)
        if abs(eval_poly(ds, q)) > margin * ds.magnitude_at(abs(q)):
            return q
    return None


def _right_action(s, n):
    worst = 0.0
    for _ in range(n):
        r = RegularRational(random_poly(s, 2, 1), random_poly(s, 2))
        A, B = random_matrix(s), random_matrix(s)
        left, right = act(act(r, A), B), act(r, mat_mul(A, B))
        for _ in range(20):
            q = _conditioned_point(s, right)
            if q is None:
                continue
            vals = _safe_pair(left, right, q)
            if vals:
                worst = max(worst, _rel(*vals))
    return worst


def _scalar_equivalence(s, n):
    worst = 0.0
    for _ in range(n):
        A = random_matrix(s)
        c = s.cube()
        r1, r2 = act(RegularRational.identity(), A), act(RegularRational.identity(), A.left_scale(c))
        q = _conditioned_point(s, r1)
        if q is None:
            continue
        vals = _safe_pair(r1, r2, q)
        if vals:
            worst = max(worst, _rel(*vals))
    return worst


def _relation(s, n):
    worst = 0.0
    count = 0
    while count < n:
        r = RegularRational(random_poly(s, 2), random_poly(s, 2, 1))
        A = random_matrix(s)
        ra = act(r, A)
        q = _conditioned_point(s, ra)
        if q is None or _conditioned_point(s, r) is None:
            continue
        try:
            lhs = eval_quotient(ra, q)
            rhs = relation_transport_eval(r, A, q)
        except SingularityError:
            continue
        if isinstance(rhs, Infinity):
            continue
        count += 1
        worst = max(worst, _rel(lhs, rhs))
    return worst


def _real_pole(s, n):
    worst = 0.0
    for _ in range(n):
        form = PoleForm(s.cube(), s.cube(), Quaternion(s.uniform(-2, 2)))
        q = s.cube(2.0)
        if abs(q - form.p) < 0.05:
            continue
        worst = max(worst, _rel(form(q), form.pointwise(q)))
    return worst


def _sphere_collapse(s, n):
    worst = 0.0
    for _ in range(n):
        sph = SliceSphere(s.uniform(-2, 2), s.uniform(0.1, 2))
        p = sph.point(s.imaginary_unit())
        den = linear(ONE, -p)
        for _ in range(20):
            q = sph.point(s.imaginary_unit())
            if abs(q - p.conj()) < 1e-3:
                continue
            worst = max(worst, abs(transport(den, q) - p))
    return worst


# Moebius transformations ----------------------------------------------------

def _sp11_membership(s, n):
    return max(sp11_check(random_moebius(s))[1] for _ in range(n))


def _ball_interior(s, n):
    # number of interior samples sent to the closed exterior
    escapes = 0
    for _ in range(n):
        A = random_moebius(s)
        escapes += sum(abs(rft_eval(A, s.ball())) >= 1.0 for _ in range(20))
    return escapes


def _ball_boundary(s, n):
    worst = 0.0
    for _ in range(n):
        A = random_moebius(s)
        for _ in range(20):
            worst = max(worst, abs(abs(rft_eval(A, s.unit())) - 1.0))
    return worst


def _map_pair(s, n):
    worst = 0.0
    for _ in range(n):
        a, b = s.ball(), s.ball()
        worst = max(worst, abs(rft_eval(moebius_map_pair(a, b), a) - b))
    return worst


def _schwarz(s, n):
    worst = 0.0
    for _ in range(n):
        u = s.unit()
        f = linear(u, Quaternion())
        g = left_divide_linear(f, Quaternion())
        for _ in range(5):
            worst = max(worst, abs(abs(eval_poly(g, s.ball())) - 1.0))
    return worst


# zeros ----------------------------------------------------------------------

def _random_product(s, k):
    f = RegularPolynomial([ONE])
    for _ in range(k):
        f = star_mul(f, linear(ONE, -s.cube(1.5)))
    return f


def _zero_soundness(s, n):
    worst = 0.0
    for _ in range(n):
        f = _random_product(s, int(s.rng.integers(1, 5)))
        for z in zero_set(f).isolated:
            worst = max(worst, abs(eval_poly(f, z.point)) / f.scale())
    return worst


def _zero_completeness(s, n):
    worst = 0.0
    for _ in range(n):
        k = int(s.rng.integers(1, 5))
        f = _random_product(s, k)
        worst = max(worst, abs(zero_set(f).total_multiplicity() - k))
    return worst


def _zero_examples(s, n):
    from .quaternion import I, J
    zs = zero_set(RegularPolynomial([1, 0, 1]))
    if zs.isolated or len(zs.spherical) != 1:
        return math.inf
    sph = zs.spherical[0].sphere
    res = math.hypot(sph.x, sph.y - 1.0)
    zs = zero_set(star_mul(linear(ONE, -I), linear(ONE, -J)))
    if zs.spherical or len(zs.isolated) != 1:
        return math.inf
    return max(res, abs(zs.isolated[0].point - I))


def _product_zero_law(s, n):
    worst = 0.0
    for _ in range(n):
        f, g = _random_product(s, 2), _random_product(s, 2)
        for z in zero_set(star_mul(f, g)).isolated:
            p = z.point
            fp = eval_poly(f, p)
            if abs(fp) < 1e-8:
                continue
            worst = max(worst, abs(eval_poly(g, fp.inverse() * p * fp)) / g.scale())
    return worst


Check = tuple[str, Callable, float, int]

SUITES: dict[str, list[Check]] = {
    "algebra": [
        ("star_associativity", _assoc, 1e-12, 200),
        ("distributivity_bilinearity", _distrib, 1e-12, 200),
        ("conjugate_antimultiplicative", _conj_anti, 1e-12, 200),
        ("symmetrization_real", _sym_real, 1e-12, 200),
        ("symmetrization_central", _sym_central, 1e-12, 200),
        ("sphere_affine", _sphere_affine, 1e-10, 50),
        ("factorization_roundtrip", _factor, 1e-11, 200),
        ("dbar_polynomial", _dbar_poly, 1e-7, 100),
        ("sphere_transport_lemma", _lemma, 1e-12, 200),
    ],
    "quotient": [
        ("definition_vs_transport_formula", _quotient_oracle, 1e-9, 500),
        ("transport_preserves_spheres", _transport_sphere, 1e-10, 500),
        ("transport_fixes_reals", _transport_real, 1e-13, 500),
        ("transport_inverse", _transport_inverse, 1e-10, 500),
        ("reciprocal_times_self", _reciprocal_unit, 1e-10, 200),
        ("symmetrization_multiplicative", _sym_multiplicative, 1e-11, 200),
        ("dbar_quotient", _dbar_quotient, 1e-7, 100),
    ],
    "antihom": [
        ("antihomomorphism", _antihom, 1e-9, 200),
        ("kernel_scalars", _kernel, 1e-12, 200),
        ("generators_decomposition", _generators, 1e-10, 200),
        ("matrix_inverse", _mat_inverse, 1e-11, 200),
    ],
    "action": [
        ("right_action", _right_action, 1e-9, 100),
        ("scalar_equivalence", _scalar_equivalence, 1e-10, 200),
        ("relation_transport", _relation, 1e-9, 200),
        ("real_pole_is_linear_fractional", _real_pole, 1e-10, 100),
        ("sphere_pole_collapse", _sphere_collapse, 1e-10, 20),
    ],
    "sp11": [
        ("sp11_membership", _sp11_membership, 1e-10, 50),
        ("ball_interior_escapes", _ball_interior, 0.5, 50),
        ("ball_boundary", _ball_boundary, 1e-9, 50),
        ("map_pair", _map_pair, 1e-9, 100),
        ("schwarz_factor_unimodular", _schwarz, 1e-12, 50),
    ],
    "zeros": [
        ("reference_zero_sets", _zero_examples, 1e-12, 1),
        ("zero_soundness", _zero_soundness, 1e-8, 100),
        ("zero_count_completeness", _zero_completeness, 0.5, 100),
        ("product_zero_formula", _product_zero, 1e-10, 200),
        ("product_zero_law", _product_zero_law, 1e-8, 100),
    ],
}


def suite_names() -> list[str]:
    return list(SUITES) + ["all"]


def run_suite(name: str, seed: int = 7, trials: int | None = None,
              tol: float | None = None) -> dict:
    """Run one suite (or ``"all"``) and return a JSON-ready report.

    ``trials`` overrides every check's sample count and ``tol`` every
    tolerance. The report's ``passed`` flag is the conjunction of all checks.
    """
    if name == "all":
        names = list(SUITES)
    elif name in SUITES:
        names = [name]
    else:
        raise ConfigurationError(f"unknown suite {name!r}")
    report = {"suite": name, "seed": seed, "trials": trials, "suites": {}}
    passed = True
    for suite in names:
        results = []
        for idx, (check, fn, default_tol, default_n) in enumerate(SUITES[suite]):
            n = default_n if trials is None else trials
            limit = default_tol if tol is None else tol
            sampler = QuaternionSampler([seed, idx, sum(map(ord, suite))])
            res = float(fn(sampler, n))
            ok = res < limit
            passed &= ok
            results.append(asdict(CheckResult(check, res, limit, n, ok)))
        report["suites"][suite] = results
    report["passed"] = passed
    return report
