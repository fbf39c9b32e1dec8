"""Zero sets of regular polynomials.

The zeros of ``f`` sit on the spheres ``x + yS`` (or real points) where the
real polynomial ``f^s`` vanishes. Each conjugate pair ``x +- iy`` of roots of
``f^s`` is resolved on its sphere through the affine form
``f(x + yI) = b + I c``: either ``b = c = 0`` and the whole sphere is a zero,
or ``I = -b c^{-1}`` gives the single zero on that sphere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import ConsistencyError, ConvergenceError, DomainError
from .quaternion import Quaternion, SliceSphere
from .series import (RegularPolynomial, eval_poly, regular_conjugate,
                     sphere_affine_coeffs, symmetrization)

__all__ = [
    "real_poly_roots",
    "IsolatedZero",
    "SphericalZero",
    "ZeroSet",
    "zero_set",
    "resolve_on_sphere",
    "conjugate_zero_pairing",
]

_EPS = np.finfo(float).eps


def _horner_with_derivative(coeffs_desc: np.ndarray, z: np.ndarray):
    p = np.zeros_like(z)
    dp = np.zeros_like(z)
    for c in coeffs_desc:
        dp = dp * z + p
        p = p * z + c
    return p, dp


def _magnitude(coeffs_desc: np.ndarray, z) -> np.ndarray:
    return np.polyval(np.abs(coeffs_desc), np.abs(z))


def _initial_guesses(desc: np.ndarray, rng: np.random.Generator, attempt: int) -> np.ndarray:
    """Starting points on circles whose radii come from the upper convex
    hull of ``(k, log|a_k|)``, so roots of very different sizes each get
    their own circle."""
    n = len(desc) - 1
    asc = np.abs(desc[::-1])
    pts = [(k, math.log(v)) for k, v in enumerate(asc) if v > 0]
    hull: list[tuple[int, float]] = []
    for pt in pts:
        while len(hull) >= 2:
            (x0, y0), (x1, y1) = hull[-2], hull[-1]
            if (y1 - y0) * (pt[0] - x0) <= (pt[1] - y0) * (x1 - x0):
                hull.pop()
            else:
                break
        hull.append(pt)
    z = []
    offset = 0.4 + rng.uniform(0, 2 * math.pi) * (attempt > 0)
    for (i, yi), (j, yj) in zip(hull, hull[1:]):
        m = j - i
        radius = math.exp((yi - yj) / m)
        if attempt:
            radius *= rng.uniform(0.5, 1.5)
        angles = 2 * math.pi * np.arange(m) / m + offset + 2 * math.pi * i / n
        z.append(radius * np.exp(1j * angles))
    return np.concatenate(z)


def _aberth(coeffs_desc: np.ndarray, max_iter: int, rng: np.random.Generator,
            restarts: int = 3) -> np.ndarray:
    monic = coeffs_desc / coeffs_desc[0]
    last_residual = None
    for attempt in range(restarts + 1):
        z = _initial_guesses(monic, rng, attempt)
        history = []
        for _ in range(max_iter):
            p, dp = _horner_with_derivative(monic, z)
            with np.errstate(divide="ignore", invalid="ignore"):
                ratio = np.where(p == 0, 0.0, p / dp)
                diff = z[:, None] - z[None, :]
                np.fill_diagonal(diff, 1.0)
                inv = 1.0 / diff
                np.fill_diagonal(inv, 0.0)
                corr = ratio / (1.0 - ratio * inv.sum(axis=1))
            corr = np.where(np.isfinite(corr), corr, 0.0)
            z = z - corr
            step = float(np.max(np.abs(corr) / np.maximum(np.abs(z), 1e-300)))
            if step <= 4 * _EPS:
                break
            history.append(step)
            # stagnation: no progress over the last 10 sweeps
            if len(history) > 30 and min(history[-10:]) >= 0.5 * min(history[:-10]):
                break
        residual = np.abs(np.polyval(monic, z)) / _magnitude(monic, z)
        last_residual = residual
        if np.all(np.isfinite(z)) and np.all(residual < 1e-9):
            return z
    raise ConvergenceError("root finder failed to converge", residuals=last_residual)


def _derivative_desc(coeffs_desc: np.ndarray, order: int) -> np.ndarray:
    d = coeffs_desc
    for _ in range(order):
        d = np.polyder(d)
    return d


def _polish(coeffs_desc: np.ndarray, c: complex, mult: int) -> complex:
    """Newton on the (mult-1)-th derivative, where the root is simple."""
    d = _derivative_desc(coeffs_desc, mult - 1)
    dd = np.polyder(d)
    if len(dd) == 0:
        return c
    start = c
    for _ in range(20):
        fd = np.polyval(dd, c)
        if fd == 0:
            break
        step = np.polyval(d, c) / fd
        # stay inside the merge neighbourhood
        if not np.isfinite(step) or abs(c - step - start) > 2e-3 * max(1.0, abs(start)):
            break
        c = c - step
        if abs(step) <= 2 * _EPS * max(1.0, abs(c)):
            break
    return complex(c)


def _merge_is_consistent(coeffs_desc: np.ndarray, c: complex, mult: int) -> bool:
    for k in range(mult):
        d = _derivative_desc(coeffs_desc, k)
        scale = _magnitude(d, c)
        if scale > 0 and abs(np.polyval(d, c)) > 1e-12 * scale:
            return False
    return True


def _single_linkage(points: list[complex], radius: float) -> list[list[complex]]:
    groups: list[list[complex]] = []
    for root in sorted(points, key=lambda v: (v.real, v.imag)):
        tol = radius * max(1.0, abs(root))
        hits = [g for g in groups if min(abs(root - v) for v in g) <= tol]
        merged = [root]
        for g in hits:
            merged.extend(g)
            groups.remove(g)
        groups.append(merged)
    return groups


def _peel(coeffs_desc, points: list[complex], radius: float, weight: int):
    """Split a group of approximations into roots, highest multiplicity
    first: a candidate of multiplicity ``m`` must pass the derivative test
    and then claims the ``weight * m`` nearest approximations."""
    out = []
    remaining = list(points)
    while remaining:
        top = -(-len(remaining) // weight)
        starts = [complex(np.mean(g)) for g in _single_linkage(remaining, radius)] + remaining
        found = None
        for m in range(top, 0, -1):
            for start in starts:
                c = _polish(coeffs_desc, start, m)
                if _merge_is_consistent(coeffs_desc, c, m):
                    found = (c, m)
                    break
            if found:
                break
        if found is None:
            # nothing passes: keep the plain fixed-radius clusters
            out.extend((_polish(coeffs_desc, complex(np.mean(g)), max(1, len(g) // weight)), len(g))
                       for g in _single_linkage(remaining, radius))
            break
        c, m = found
        remaining.sort(key=lambda v: abs(v - c))
        take = min(weight * m, len(remaining))
        out.append((c, take))
        remaining = remaining[take:]
    return out


def _cluster(z: np.ndarray, coeffs_desc: np.ndarray, radius: float,
             weight: int = 1) -> list[tuple[complex, int]]:
    """Group approximations into roots; returns ``(root, count)``.

    Every root is expected ``weight`` times per unit of multiplicity.
    Approximations within ``radius`` are merged outright; wider groups (up
    to 1e-3) are merged only when the derivatives vanish at the polished
    centre, and are otherwise split by :func:`_peel`.
    """
    groups = _single_linkage(list(z), radius)
    means = [(complex(np.mean(g)), g) for g in groups]
    wide: list[list[tuple[complex, list[complex]]]] = []
    for cl in means:
        tol = 1e-3 * max(1.0, abs(cl[0]))
        hits = [g for g in wide if min(abs(cl[0] - v[0]) for v in g) <= tol]
        merged = [cl]
        for g in hits:
            merged.extend(g)
            wide.remove(g)
        wide.append(merged)
    result = []
    for g in wide:
        pts = [p for _, members in g for p in members]
        m = max(1, -(-len(pts) // weight))
        c = _polish(coeffs_desc, complex(np.mean(pts)), m)
        if len(g) == 1 or _merge_is_consistent(coeffs_desc, c, m):
            result.append((c, len(pts)))
        else:
            result.extend(_peel(coeffs_desc, pts, radius, weight))
    return result


def _conjugate_roots(z: np.ndarray, desc: np.ndarray, radius: float) -> list[tuple[complex, int]]:
    """Roots of a real polynomial from its approximations ``z``.

    Clustering runs on ``z`` together with its mirror image, so the grouping
    is symmetric under conjugation and each root is seen twice per unit of
    multiplicity.
    """
    clusters = _cluster(np.concatenate([z, z.conj()]), desc, radius, weight=2)
    reals: dict[float, int] = {}
    out = []
    for c, count in clusters:
        if abs(c.imag) <= radius * max(1.0, abs(c)):
            # a real root, or one half of a mirrored pair collapsing onto the axis
            reals[c.real] = reals.get(c.real, 0) + count
        elif c.imag > 0:
            if count % 2:
                raise ConvergenceError("root cluster is not conjugate-symmetric; roots too close to resolve")
            out.append((c, count // 2))
            out.append((c.conjugate(), count // 2))
    for x, count in reals.items():
        if count % 2:
            raise ConvergenceError("root cluster is not conjugate-symmetric; roots too close to resolve")
        out.append((complex(x, 0.0), count // 2))
    return out


def real_poly_roots(coeffs: Sequence[float], max_iter: int = 200, seed: int = 0,
                    cluster_radius: float = 1e-6) -> list[tuple[complex, int]]:
    """All complex roots, with multiplicity, of a real polynomial.

    Parameters
    ----------
    coeffs : sequence of float
        Coefficients in ascending degree.
    max_iter : int
        Sweeps of the simultaneous (Aberth) iteration per attempt.
    seed : int
        Seed for the perturbed restarts used when an attempt stagnates.
    cluster_radius : float
        Relative radius under which approximations are merged into one
        multiple root.

    Returns
    -------
    list of (complex, int)
        Distinct roots and multiplicities, sorted by real then imaginary part.
        Non-real roots come in exact conjugate pairs.
    """
    a = np.asarray(coeffs, dtype=float)
    if a.size:
        # negligible (e.g. subnormal) coefficients only destroy precision
        a = np.where(np.abs(a) < 1e-250 * np.abs(a).max(), 0.0, a)
    nz = np.nonzero(a)[0]
    if len(nz) == 0 or nz[-1] < 1:
        raise DomainError("need a polynomial of degree >= 1")
    a = a[: nz[-1] + 1]
    zero_mult = int(nz[0])
    a = a[zero_mult:]
    out: list[tuple[complex, int]] = []
    if zero_mult:
        out.append((0j, zero_mult))
    if len(a) > 1:
        desc = a[::-1].astype(complex)
        rng = np.random.default_rng(seed)
        z = _aberth(desc, max_iter, rng)
        roots = _conjugate_roots(z, desc, cluster_radius)
        if zero_mult:
            # roots within the cluster radius of an exact zero join it
            near = [r for r in roots if abs(r[0]) <= cluster_radius]
            roots = [r for r in roots if abs(r[0]) > cluster_radius]
            out[0] = (0j, zero_mult + sum(m for _, m in near))
        out.extend(roots)
    scale = np.abs(a).max()
    for root, _ in out:
        r = abs(np.polyval(a[::-1], root)) if root != 0 else 0.0
        if r > 1e-9 * max(scale, _magnitude(a[::-1], root)):
            raise ConvergenceError(f"root {root} has residual {r:.3e}", residuals=[r])
    out.sort(key=lambda t: (t[0].real, t[0].imag))
    return out


class IsolatedZero(NamedTuple):
    point: Quaternion
    multiplicity: int
    # non-real zero whose sphere carries a multiple root of f^s
    flagged: bool = False


class SphericalZero(NamedTuple):
    sphere: SliceSphere
    multiplicity: int


@dataclass(frozen=True)
class ZeroSet:
    """Zeros of a regular polynomial.

    Multiplicities count the roots of ``f^s`` lying on each component, halved:
    they add up to ``deg f``.
    """

    isolated: tuple[IsolatedZero, ...]
    spherical: tuple[SphericalZero, ...]

    def total_multiplicity(self) -> int:
        return sum(z.multiplicity for z in self.isolated) + sum(
            s.multiplicity for s in self.spherical)

    def points(self) -> list[Quaternion]:
        return [z.point for z in self.isolated]

    def spheres(self) -> list[SliceSphere]:
        return [s.sphere for s in self.spherical]


def resolve_on_sphere(f: RegularPolynomial, s: SliceSphere, tol: float = 1e-7,
                      strict: bool = False):
    """The zero of ``f`` on ``s``: a Quaternion, ``s`` itself when ``f``
    vanishes on the whole sphere, or ``None``.

    With ``strict`` the sphere is known to carry a zero and failure to find
    one raises :class:`ConsistencyError`.
    """
    b, c = sphere_affine_coeffs(f, s)
    scale = tol * max(1.0, f.magnitude_at(math.hypot(s.x, s.y)))
    if abs(c) <= scale:
        if abs(b) <= scale:
            return s
        if strict:
            raise ConsistencyError("f^s vanishes on a degenerate sphere where f does not")
        return None
    unit = -(b * c.inverse())
    if abs(unit * unit + 1.0) > 1e-8:
        if strict:
            raise ConsistencyError(f"recovered unit {unit} does not square to -1")
        return None
    return s.point(unit.imag / unit.imag_norm())


def zero_set(f: RegularPolynomial, **root_options) -> ZeroSet:
    """Real points, isolated non-real zeros and zero spheres of ``f``."""
    if f.is_zero():
        raise DomainError("the zero polynomial vanishes everywhere")
    if f.degree == 0:
        return ZeroSet((), ())
    fs = symmetrization(f)
    isolated, spherical = [], []
    for root, mult in real_poly_roots(fs.real_coeffs(), **root_options):
        if root.imag == 0.0:
            if mult % 2:
                raise ConsistencyError(f"real root {root.real} of f^s has odd multiplicity")
            isolated.append(IsolatedZero(Quaternion(root.real), mult // 2))
        elif root.imag > 0:
            s = SliceSphere(root.real, root.imag)
            z = resolve_on_sphere(f, s, strict=True)
            if isinstance(z, SliceSphere):
                spherical.append(SphericalZero(s, mult))
            else:
                isolated.append(IsolatedZero(z, mult, mult > 1))
    return ZeroSet(tuple(isolated), tuple(spherical))


def conjugate_zero_pairing(f: RegularPolynomial, s: SliceSphere):
    """Zeros of ``f`` and of ``f^c`` on the sphere ``s``.

    Each entry is a Quaternion, the sphere itself (vanishing identically),
    or ``None``; the two entries are always of the same kind.
    """
    zf = resolve_on_sphere(f, s)
    zc = resolve_on_sphere(regular_conjugate(f), s)
    if (zf is None) != (zc is None) or isinstance(zf, SliceSphere) != isinstance(zc, SliceSphere):
        raise ConsistencyError("zeros of f and f^c on a sphere do not correspond")
    return zf, zc
