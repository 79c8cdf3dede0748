"""Self-reciprocal polynomials and the fold z -> x = (z + 1/z)/2.

An even-degree self-reciprocal P of degree 2n is written as 2 z**n C(x) with
C a combination of first-kind Chebyshev polynomials,

    C(x) = p_{2n} T_n(x) + ... + p_{n+1} T_1(x) + (p_n / 2) T_0(x),

because (z**j + z**-j)/2 = T_j(x). Odd-degree ones always carry the factor
(z + 1) and are reduced to the even case by synthetic division.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .chebyshev import ChebKind, cheb_coeffs, cheb_series_eval
from .errors import (
    EvenDegree,
    NotSelfReciprocal,
    OddDegree,
    OutOfRange,
    ResidualTooLarge,
    ZeroInput,
    ZeroLeading,
)
from .polynomial import DensePolynomial, exact_div, is_exact, synthetic_division

SR_TOL = 1e-9
DIVISION_TOL = 1e-12
ARCCOS_CLAMP = 1e-12


@dataclass(frozen=True, eq=True)
class SelfReciprocalPoly(DensePolynomial):
    """Real polynomial with p_i == p_{d-i}. Construction checks the symmetry
    exactly; use :func:`make_self_reciprocal` for noisy input."""

    def __post_init__(self):
        super().__post_init__()
        c = self.coeffs
        if len(c) < 2:
            raise ValueError("self-reciprocal polynomials have degree >= 1")
        if any(c[i] != c[-1 - i] for i in range(len(c) // 2)):
            raise NotSelfReciprocal(f"coefficients are not palindromic: {list(c)}")

    @property
    def parity(self) -> str:
        return "even" if self.degree % 2 == 0 else "odd"

    @property
    def half_degree(self) -> int:
        return self.degree // 2


@dataclass(frozen=True)
class ChebCombination:
    """C(x) = sum_j t[j] T_j(x)."""

    t: tuple

    def __post_init__(self):
        t = tuple(self.t)
        if not t or t[-1] == 0:
            raise ValueError("top Chebyshev coefficient must be nonzero")
        object.__setattr__(self, "t", t)

    @property
    def n(self) -> int:
        return len(self.t) - 1

    def __call__(self, x):
        return cheb_series_eval(ChebKind.T, self.t, x)


@dataclass(frozen=True, order=True)
class CircleZero:
    """The conjugate pair exp(+-i theta); theta in {0, pi} is the single
    real zero at +1 or -1."""

    theta: float
    multiplicity: int = 1

    @property
    def is_real(self) -> bool:
        return self.theta == 0.0 or self.theta == math.pi

    @property
    def count(self) -> int:
        return self.multiplicity * (1 if self.is_real else 2)

    def points(self) -> list[complex]:
        if self.is_real:
            z = 1.0 if self.theta == 0.0 else -1.0
            return [complex(z)] * self.multiplicity
        z = cmath.exp(1j * self.theta)
        return [z, z.conjugate()] * self.multiplicity


def _raw_coeffs(coeffs) -> tuple:
    if isinstance(coeffs, DensePolynomial):
        return coeffs.coeffs
    return tuple(coeffs)


def make_self_reciprocal(coeffs, tolerance: float = SR_TOL) -> SelfReciprocalPoly:
    """Validate and symmetrize a coefficient vector.

    Exact (int/Fraction) input must be palindromic exactly; otherwise pairs
    may differ by ``tolerance * max|p_j|`` and are replaced by their mean.
    """
    c = list(_raw_coeffs(coeffs))
    if len(c) < 2:
        raise ValueError("self-reciprocal polynomials have degree >= 1")
    if c[-1] == 0:
        raise ZeroLeading("leading coefficient is zero")
    if tolerance < 0:
        raise ValueError("tolerance must be nonnegative")
    exact = all(is_exact(v) for v in c)
    scale = max(abs(v) for v in c)
    d = len(c) - 1
    for i in range(len(c) // 2):
        a, b = c[i], c[d - i]
        gap = abs(a - b)
        if gap == 0:
            continue
        if exact or gap > tolerance * scale:
            raise NotSelfReciprocal(
                f"p_{i} = {a} differs from p_{d - i} = {b} (|diff| = {float(gap):.3g})"
            )
        c[i] = c[d - i] = (a + b) / 2
    return SelfReciprocalPoly(tuple(c))


def _half(v):
    return Fraction(v, 2) if isinstance(v, int) else v / 2


def to_cheb(P: SelfReciprocalPoly) -> ChebCombination:
    if P.degree % 2:
        raise OddDegree("to_cheb needs an even degree; factor out (z + 1) first")
    n = P.half_degree
    p = P.coeffs
    return ChebCombination(tuple([_half(p[n])] + [p[n + j] for j in range(1, n + 1)]))


def from_cheb(C: ChebCombination) -> SelfReciprocalPoly:
    n = C.n
    t = C.t
    upper = [2 * t[0]] + [t[j] for j in range(1, n + 1)]
    return SelfReciprocalPoly(tuple(upper[:0:-1] + upper))


def cheb_to_monomial(C: ChebCombination | Sequence) -> DensePolynomial:
    """Expand sum t_j T_j(x) in powers of x. A raw sequence may carry
    trailing zeros; they are dropped."""
    t = C.t if isinstance(C, ChebCombination) else tuple(C)
    out = DensePolynomial((0,))
    for j, tj in enumerate(t):
        if tj != 0:
            out = out + cheb_coeffs(ChebKind.T, j).scale(tj)
    return out


def factor_odd(S: SelfReciprocalPoly, tolerance: float = DIVISION_TOL):
    """Split an odd-degree S as scale * (z + 1) * P with P monic.

    Returns ``(scale, P)``.
    """
    if S.degree % 2 == 0:
        raise EvenDegree("factor_odd needs an odd degree")
    quotient, remainder = synthetic_division(S, -1)
    if abs(remainder) > tolerance * S.norm1():
        raise ResidualTooLarge(f"S(-1) = {float(remainder):.3g} does not vanish")
    scale = S.leading
    monic = [exact_div(q, scale) for q in quotient.coeffs]
    return scale, make_self_reciprocal(monic, tolerance=SR_TOL)


def x_from_z(z: complex) -> complex:
    if z == 0:
        raise ZeroInput("x = (z + 1/z)/2 is undefined at z = 0")
    z = complex(z)
    return (z + 1 / z) / 2


def z_pair_from_x(x: float) -> tuple[complex, complex]:
    """Both solutions of z**2 - 2xz + 1 = 0.

    Inside [-1, 1] this is the conjugate pair x +- i sqrt(1 - x**2); outside
    it is the real reciprocal pair, larger magnitude first.
    """
    x = float(x)
    if abs(x) <= 1:
        s = math.sqrt((1 - x) * (1 + x))
        return complex(x, s), complex(x, -s)
    big = x + math.copysign(math.sqrt((x - 1) * (x + 1)), x)
    return complex(big), complex(1 / big)


def theta_from_x(x: float) -> float:
    if abs(x) > 1 + ARCCOS_CLAMP:
        raise OutOfRange(f"|x| = {abs(x)} exceeds 1")
    return math.acos(min(1.0, max(-1.0, float(x))))


def thetas_from_xs(xs: Iterable[float]) -> list[CircleZero]:
    """Map zeros of C in [-1, 1] to circle arguments, increasing in theta."""
    zeros = [CircleZero(theta_from_x(x), 1) for x in xs]
    return sorted(zeros)


def palindromic_residual(P: DensePolynomial, z: complex) -> float:
    """|P(z)| scaled by max(1, |z|)**-d.

    For |z| > 1 this is the residual of the reversed polynomial at 1/z,
    which keeps the measure comparable across a reciprocal pair.
    """
    z = complex(z)
    if abs(z) <= 1:
        return abs(P(z))
    w = 1 / z
    return abs(DensePolynomial(P.coeffs[::-1])(w))


def _parse_number(token: str):
    token = token.strip()
    try:
        return int(token)
    except ValueError:
        pass
    if "/" in token:
        return Fraction(token)
    return float(token)


def parse_coefficients(text: str) -> list:
    """JSON array of numbers, or plain text with one coefficient per line
    (ascending degree). Blank lines and ``#`` comments are ignored."""
    stripped = text.strip()
    if stripped.startswith("["):
        values = json.loads(stripped)
        if not isinstance(values, list) or not all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in values
        ):
            raise ValueError("coefficient JSON must be a flat array of numbers")
        return values
    out = []
    for line in stripped.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(_parse_number(line))
    if not out:
        raise ValueError("no coefficients found")
    return out


def load_coefficients(path: str | Path) -> list:
    return parse_coefficients(Path(path).read_text())


def load_self_reciprocal(path: str | Path, tolerance: float = SR_TOL) -> SelfReciprocalPoly:
    return make_self_reciprocal(load_coefficients(path), tolerance)
