"""Two independent ways to find zeros.

The bracketed path solves R(x) = Q_n(x) - c Q_{n-1}(x) by bisection inside
intervals cut out by the zeros of Q_n and Q_{n-1}, then lifts each x to z.
The oracle path ignores all structure and runs Aberth-Ehrlich simultaneous
iteration on the monomial coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .chebyshev import ChebKind, cheb_coeffs, cheb_series_eval, cheb_zeros, max_abs_on_interval
from .errors import NoConvergence
from .families import BOUNDARY_TOL, EVEN, ODD, FamilySpec, construct, thresholds, _near
from .polynomial import DensePolynomial
from .transform import CircleZero, palindromic_residual, theta_from_x, z_pair_from_x

BISECT_MAX_ITER = 200
ORACLE_TOL = 1e-12
ORACLE_MAX_ITER = 500
ORACLE_ANGLE = 0.4
NEWTON_STEPS = 3
CIRCLE_TOL = 1e-7
RESIDUAL_TOL = 1e-9
_EPS = np.finfo(float).eps


def r_coeffs(n: int, c) -> list:
    """Coefficients of R = Q_n - c Q_{n-1} in the Q basis."""
    coeffs = [0.0] * (n + 1)
    coeffs[n] = 1.0
    coeffs[n - 1] = -float(c)
    return coeffs


def r_eval(kind: ChebKind, n: int, c, x):
    return cheb_series_eval(kind, r_coeffs(n, c), x)


def r_monomial(kind: ChebKind | str, n: int, c) -> DensePolynomial:
    kind = ChebKind.parse(kind)
    return cheb_coeffs(kind, n) - cheb_coeffs(kind, n - 1).scale(c)


def r_scale(kind: ChebKind | str, n: int, c, x: float) -> float:
    """Magnitude against which |R(x)| is judged: the size of the two terms
    of R near x."""
    if abs(x) <= 1:
        return max_abs_on_interval(kind, n) + abs(float(c)) * max_abs_on_interval(kind, n - 1)
    kind = ChebKind.parse(kind)
    unit_n = [0] * n + [1]
    unit_m = [0] * (n - 1) + [1]
    return abs(cheb_series_eval(kind, unit_n, x)) + abs(float(c)) * abs(
        cheb_series_eval(kind, unit_m, x)
    )


def bisect(f: Callable[[float], float], a: float, b: float, max_iter: int = BISECT_MAX_ITER) -> float:
    """Root of f in [a, b] given a sign change; stops when the bracket can
    no longer shrink in binary64."""
    fa, fb = f(a), f(b)
    if fa == 0:
        return a
    if fb == 0:
        return b
    if np.sign(fa) == np.sign(fb):
        raise ValueError(f"no sign change on [{a}, {b}]")
    for _ in range(max_iter):
        m = 0.5 * (a + b)
        if m <= a or m >= b:
            break
        fm = f(m)
        if fm == 0:
            return m
        if np.sign(fm) == np.sign(fa):
            a, fa = m, fm
        else:
            b, fb = m, fm
    return a if abs(fa) <= abs(fb) else b


def bisect_many(f, a: np.ndarray, b: np.ndarray, max_iter: int = BISECT_MAX_ITER) -> np.ndarray:
    """Vectorised :func:`bisect` over independent sign-change brackets."""
    a = np.array(a, dtype=float)
    b = np.array(b, dtype=float)
    fa = f(a)
    fb = f(b)
    for _ in range(max_iter):
        m = 0.5 * (a + b)
        live = (m > a) & (m < b)
        if not live.any():
            break
        fm = f(m)
        left = (np.sign(fm) == np.sign(fa)) & live
        right = ~left & live
        a = np.where(left, m, a)
        fa = np.where(left, fm, fa)
        b = np.where(right, m, b)
        fb = np.where(right, fm, fb)
    return np.where(np.abs(fa) <= np.abs(fb), a, b)


def brackets(kind: ChebKind | str, n: int, c) -> list[tuple[float, float]]:
    """Intervals that each hold exactly one zero of R inside [-1, 1].

    For c > 0 the i-th zero sits between the i-th zeros of Q_n and
    Q_{n-1}, and the top one is above the last zero of Q_n; for c < 0 the
    picture is mirrored. The outer interval is closed at +-1 and is only
    listed when R changes sign across it.
    """
    kind = ChebKind.parse(kind)
    zn = cheb_zeros(kind, n)
    zm = cheb_zeros(kind, n - 1) if n > 1 else np.empty(0)
    out = []
    if c > 0:
        for i in range(n - 1):
            out.append((float(zn[i]), float(zm[i])))
        out.append((float(zn[-1]), 1.0))
    else:
        out.append((-1.0, float(zn[0])))
        for i in range(1, n):
            out.append((float(zm[i - 1]), float(zn[i])))
    return out


def interior_roots(kind: ChebKind | str, n: int, c) -> list[float]:
    """Zeros of R strictly inside (-1, 1), ascending.

    c = 0 gives the zeros of Q_n itself.
    """
    kind = ChebKind.parse(kind)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if c == 0:
        return [float(x) for x in cheb_zeros(kind, n)]
    f = lambda x: r_eval(kind, n, c, x)
    lo, hi = (np.array(v) for v in zip(*brackets(kind, n, c)))
    f_lo, f_hi = f(lo), f(hi)
    ok = (np.sign(f_lo) * np.sign(f_hi)) < 0
    inner = (np.abs(lo) != 1.0) & (np.abs(hi) != 1.0)
    if np.any(~ok & inner):
        raise RuntimeError(f"an interlacing bracket for {kind.value}, n={n}, c={c} holds no sign change")
    # a failing outer bracket means the zero reached or crossed +-1
    xs = bisect_many(f, lo[ok], hi[ok])
    roots = [float(x) for x in xs if -1.0 < x < 1.0]
    return sorted(roots)


def cauchy_bound(poly: DensePolynomial) -> float:
    a = poly.to_array()
    return 1.0 + float(np.max(np.abs(a[:-1]))) / abs(a[-1])


def exterior_root(kind: ChebKind | str, n: int, c, boundary_tol: float = BOUNDARY_TOL) -> Optional[float]:
    """The one zero of R outside [-1, 1], when c is beyond a threshold."""
    kind = ChebKind.parse(kind)
    f_minus, f_plus = thresholds(kind, n)
    if _near(c, f_plus, boundary_tol) or _near(c, f_minus, boundary_tol):
        return None
    if f_minus <= c <= f_plus:
        return None
    f = lambda x: float(r_eval(kind, n, c, x))
    bound = cauchy_bound(r_monomial(kind, n, float(c)))
    sign = 1.0 if c > f_plus else -1.0
    for _ in range(11):
        a, b = sorted((sign * 1.0, sign * bound))
        if np.sign(f(a)) != np.sign(f(b)):
            return float(bisect(f, a, b))
        bound *= 2
    raise RuntimeError(f"no sign change for the exterior zero of {kind.value}, n={n}, c={c}")


def r_roots(kind: ChebKind | str, n: int, c, boundary_tol: float = BOUNDARY_TOL) -> list[float]:
    """All n zeros of R, ascending; a threshold value of c puts one at +-1."""
    kind = ChebKind.parse(kind)
    xs = interior_roots(kind, n, c)
    ext = exterior_root(kind, n, c, boundary_tol)
    if ext is not None:
        xs.append(ext)
    f_minus, f_plus = thresholds(kind, n)
    if _near(c, f_plus, boundary_tol):
        xs = [x for x in xs if x < 1.0] + [1.0]
    elif _near(c, f_minus, boundary_tol):
        xs = [-1.0] + [x for x in xs if x > -1.0]
    return sorted(xs)


# ---------------------------------------------------------------------------
# oracle


def _newton_corrections(a: np.ndarray, z: np.ndarray):
    """P(z)/P'(z) and a rounding-error bound on P(z) for each z.

    For |z| > 1 the reversed polynomial is evaluated at 1/z, which keeps
    the arithmetic in range.
    """
    d = len(a) - 1
    inside = np.abs(z) <= 1
    w = np.where(inside, z, 1 / np.where(z == 0, 1, z))
    coeffs = np.where(inside[:, None], a[None, :], a[None, ::-1])  # ascending in w
    powers = np.ones((len(z), d + 1), dtype=complex)
    if d:
        powers[:, 1:] = np.cumprod(np.broadcast_to(w[:, None], (len(z), d)), axis=1)
    p = np.sum(coeffs * powers, axis=1)
    dp = np.sum(coeffs[:, 1:] * np.arange(1, d + 1) * powers[:, :-1], axis=1)
    err = np.sum(np.abs(coeffs) * np.abs(powers), axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        # inside: N = p/dp. outside: P(z) = z^d rev(w), so
        # P/P' = z / (d - w rev'(w)/rev(w))
        n_in = p / dp
        n_out = z / (d - w * dp / p)
    n_corr = np.where(inside, n_in, n_out)
    n_corr = np.where(p == 0, 0, n_corr)
    return n_corr, np.abs(p), 4 * _EPS * err


def _scaled_values(a: np.ndarray, z: np.ndarray):
    """|P(z)| / max(1,|z|)^d and its rounding bound, vectorised."""
    _, val, err = _newton_corrections(a, z)
    return val, err


def _inclusion_radii(a: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Radii d |W_i| of the Weierstrass inclusion disks, padded by the
    rounding bound on P(z_i)."""
    d = len(a) - 1
    if d == 1:
        return np.zeros(1)
    diff = z[:, None] - z[None, :]
    np.fill_diagonal(diff, 1.0)
    out = np.empty(d)
    for i in range(d):
        zi = z[i]
        if abs(zi) <= 1:
            val = abs(np.polyval(a[::-1], zi))
            err = 4 * _EPS * np.polyval(np.abs(a[::-1]), abs(zi))
            denom = abs(a[-1]) * np.prod(np.abs(diff[i]))
        else:
            # divide numerator and denominator by |z_i|^d
            wi = 1 / zi
            val = abs(np.polyval(a, wi))
            err = 4 * _EPS * np.polyval(np.abs(a), abs(wi))
            denom = abs(a[-1]) * np.prod(np.abs(diff[i]) / abs(zi))
        out[i] = d * (val + err) / denom if denom > 0 else np.inf
    return out


def _refine_multiple(a: np.ndarray, z0: complex, m: int) -> complex:
    """Newton on the (m-1)-th derivative, where an m-fold zero of P is simple."""
    desc = np.polyder(a[::-1], m - 1)
    ddesc = np.polyder(desc)
    z = z0
    cur = abs(np.polyval(desc, z))
    for _ in range(2 * NEWTON_STEPS):
        slope = np.polyval(ddesc, z)
        if slope == 0 or cur == 0:
            break
        cand = z - np.polyval(desc, z) / slope
        new = abs(np.polyval(desc, cand))
        if not np.isfinite(cand) or new >= cur:
            break
        z, cur = cand, new
    return complex(z)


def _clusters(z: np.ndarray, radii: np.ndarray, min_gap: float) -> list[list[int]]:
    """Connected components of overlapping disks (single linkage)."""
    d = len(z)
    parent = list(range(d))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(d):
        for j in range(i + 1, d):
            gap = abs(z[i] - z[j])
            if gap < min_gap * max(1.0, abs(z[i])) or gap <= radii[i] + radii[j]:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(d):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


def all_roots_monomial(
    P: DensePolynomial | Sequence,
    tol: float = ORACLE_TOL,
    max_iter: int = ORACLE_MAX_ITER,
) -> list[complex]:
    """All complex zeros of P with multiplicity, by Aberth-Ehrlich iteration.

    Start points are spread on the circle of the Cauchy bound, rotated by a
    fixed 0.4 rad. A point stops moving once its step falls below ``tol``
    or its residual drops to the rounding level. Approximations whose
    inclusion disks overlap (or that lie closer than ``10 * tol``) are
    merged into one multiple zero placed at their centroid; isolated ones
    get a few Newton steps.
    """
    poly = P if isinstance(P, DensePolynomial) else DensePolynomial(tuple(P))
    if poly.degree < 1:
        raise ValueError("need a polynomial of degree >= 1")
    a = poly.to_array(complex)
    d = poly.degree
    if d == 1:
        return [complex(-a[0] / a[1])]
    radius = cauchy_bound(poly)
    k = np.arange(d)
    z = radius * np.exp(1j * (2 * np.pi * k / d + ORACLE_ANGLE))
    active = np.ones(d, dtype=bool)
    for _ in range(max_iter):
        idx = np.nonzero(active)[0]
        n_corr, val, err = _newton_corrections(a, z[idx])
        diff = z[idx, None] - z[None, :]
        diff[np.arange(len(idx)), idx] = 1.0
        inv = 1.0 / diff
        inv[np.arange(len(idx)), idx] = 0.0
        s = inv.sum(axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = n_corr / (1 - n_corr * s)
        step = np.where(np.isfinite(step), step, n_corr)
        z[idx] = z[idx] - step
        done = (np.abs(step) <= tol * np.maximum(1.0, np.abs(z[idx]))) | (val <= err)
        active[idx[done]] = False
        if not active.any():
            break
    else:
        val, _ = _scaled_values(a, z)
        raise NoConvergence(
            f"Aberth iteration did not settle after {max_iter} sweeps", roots=z.copy(), residuals=val
        )

    radii = _inclusion_radii(a, z)
    out = z.copy()
    for group in _clusters(z, radii, 10 * tol):
        if len(group) == 1:
            i = group[0]
            zi = z[i]
            for _ in range(NEWTON_STEPS):
                corr, cur, _ = _newton_corrections(a, np.array([zi]))
                cand = zi - corr[0]
                _, new, _ = _newton_corrections(a, np.array([cand]))
                if not np.isfinite(cand) or new[0] >= cur[0]:
                    break
                zi = cand
            if abs(zi.imag) <= radii[i] and np.all(a.imag == 0):
                zi = complex(zi.real, 0.0)
            out[i] = zi
        else:
            centre = _refine_multiple(a, complex(z[group].mean()), len(group))
            if abs(centre.imag) <= max(radii[group]) and np.all(a.imag == 0):
                centre = complex(centre.real, 0.0)
            out[group] = centre
    return [complex(v) for v in out]


# ---------------------------------------------------------------------------
# root sets


@dataclass(frozen=True)
class RootSet:
    circle: tuple[CircleZero, ...]
    real_off: tuple[float, ...]
    residuals: tuple[float, ...]
    complex_off: tuple[complex, ...] = ()

    def points(self) -> list[complex]:
        """Every zero as a complex number, with multiplicity."""
        out = []
        for cz in self.circle:
            out.extend(cz.points())
        out.extend(complex(v) for v in self.real_off)
        for w in self.complex_off:
            out.append(w)
        return out

    @property
    def circle_count(self) -> int:
        return sum(cz.count for cz in self.circle)

    def to_dict(self) -> dict:
        return {
            "circle": [{"theta": cz.theta, "multiplicity": cz.multiplicity} for cz in self.circle],
            "real_off": list(self.real_off),
            "complex_off": [[w.real, w.imag] for w in self.complex_off],
            "residuals": list(self.residuals),
        }


def _merge_circle(zeros: list[CircleZero]) -> tuple[CircleZero, ...]:
    merged: dict[float, int] = {}
    for cz in zeros:
        merged[cz.theta] = merged.get(cz.theta, 0) + cz.multiplicity
    return tuple(CircleZero(t, m) for t, m in sorted(merged.items()))


def _residuals(P: DensePolynomial, circle, real_off, complex_off) -> tuple[float, ...]:
    pts = [complex(np.cos(cz.theta), np.sin(cz.theta)) for cz in circle]
    pts += [complex(v) for v in real_off] + list(complex_off)
    return tuple(palindromic_residual(P, w) for w in pts)


def rootset_from_points(P: DensePolynomial, points: Sequence[complex], circle_tol: float = CIRCLE_TOL) -> RootSet:
    """Sort raw zeros into circle pairs, real off-circle zeros and the rest.

    Circle zeros with negative imaginary part are dropped in favour of
    their conjugate; zeros at +-1 keep their multiplicity.
    """
    circle = []
    real_off = []
    complex_off = []
    for w in points:
        r = abs(w)
        if abs(r - 1) < circle_tol:
            if w.imag < 0 and abs(w.imag) > circle_tol:
                continue
            if abs(w.imag) <= circle_tol:
                circle.append(CircleZero(0.0 if w.real > 0 else math.pi, 1))
            else:
                circle.append(CircleZero(math.atan2(w.imag, w.real), 1))
        elif abs(w.imag) <= circle_tol * max(1.0, r):
            real_off.append(float(w.real))
        else:
            complex_off.append(complex(w))
    merged = _merge_circle(circle)
    real_off.sort()
    complex_off.sort(key=lambda w: (w.real, w.imag))
    return RootSet(merged, tuple(real_off), _residuals(P, merged, real_off, complex_off), tuple(complex_off))


def analytic_rootset(spec: FamilySpec, boundary_tol: float = BOUNDARY_TOL) -> RootSet:
    """Zeros of the member of ``spec`` from the bracketed x-roots."""
    P = construct(spec)
    c = spec.c_alpha
    circle = []
    real_off = []
    for x in r_roots(spec.kind, spec.n, c, boundary_tol):
        if x == 1.0 or x == -1.0:
            circle.append(CircleZero(0.0 if x > 0 else math.pi, 2))
        elif -1.0 < x < 1.0:
            circle.append(CircleZero(theta_from_x(x), 1))
        else:
            big, small = z_pair_from_x(x)
            real_off.extend([big.real, small.real])
    if spec.parity == ODD:
        circle.append(CircleZero(math.pi, 1))
    merged = _merge_circle(circle)
    real_off.sort()
    return RootSet(merged, tuple(real_off), _residuals(P, merged, real_off, []))


def full_rootset(
    P: DensePolynomial,
    spec: Optional[FamilySpec] = None,
    tol: float = ORACLE_TOL,
    max_iter: int = ORACLE_MAX_ITER,
    circle_tol: float = CIRCLE_TOL,
) -> RootSet:
    """Zeros of P: through the family structure when ``spec`` is given,
    otherwise through the oracle."""
    if spec is not None:
        built = construct(spec)
        if built.coeffs != tuple(P.coeffs):
            scale = max(built.max_abs(), 1.0)
            if len(built.coeffs) != len(P.coeffs) or any(
                abs(x - y) > 1e-9 * scale for x, y in zip(built.coeffs, P.coeffs)
            ):
                raise ValueError("spec does not generate the given polynomial")
        return analytic_rootset(spec)
    return rootset_from_points(P, all_roots_monomial(P, tol, max_iter), circle_tol)
