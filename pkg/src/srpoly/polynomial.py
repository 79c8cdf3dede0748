"""Dense real polynomials in the monomial basis.

Coefficients are stored ascending (index j is the coefficient of x**j) and
kept as the Python numbers they were built from, so integer and Fraction
inputs stay exact through construction, multiplication and division.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

import numpy as np

# Coefficients this large stop being exactly representable in binary64.
EXACT_LIMIT = 2**53


def is_exact(x) -> bool:
    return isinstance(x, Rational) and not isinstance(x, bool)


def exact_div(a, b):
    """Divide, staying in Fraction arithmetic when both operands are exact."""
    if is_exact(a) and is_exact(b):
        q = Fraction(a) / Fraction(b)
        return int(q) if q.denominator == 1 else q
    return a / b


def simplify(x):
    """Collapse integral Fractions to int; leave everything else alone."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


@dataclass(frozen=True, eq=True)
class DensePolynomial:
    coeffs: tuple

    def __post_init__(self):
        c = tuple(simplify(v) for v in self.coeffs)
        if not c:
            raise ValueError("a polynomial needs at least one coefficient")
        while len(c) > 1 and c[-1] == 0:
            c = c[:-1]
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_iterable(cls, values: Iterable) -> "DensePolynomial":
        return cls(tuple(values))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self):
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return self.degree == 0 and self.coeffs[0] == 0

    def is_exact(self) -> bool:
        return all(is_exact(v) for v in self.coeffs)

    def norm1(self) -> float:
        return float(sum(abs(v) for v in self.coeffs))

    def to_array(self, dtype=float) -> np.ndarray:
        return np.array([float(v) for v in self.coeffs], dtype=dtype)

    def __call__(self, x):
        acc = 0 * x
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def derivative(self) -> "DensePolynomial":
        if self.degree == 0:
            return DensePolynomial((0,))
        return DensePolynomial(tuple(j * a for j, a in enumerate(self.coeffs) if j))

    def scale(self, factor) -> "DensePolynomial":
        return DensePolynomial(tuple(factor * a for a in self.coeffs))

    def __add__(self, other: "DensePolynomial") -> "DensePolynomial":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return DensePolynomial(
            tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))
        )

    def __neg__(self) -> "DensePolynomial":
        return self.scale(-1)

    def __sub__(self, other: "DensePolynomial") -> "DensePolynomial":
        return self + (-other)

    def __mul__(self, other) -> "DensePolynomial":
        if not isinstance(other, DensePolynomial):
            return self.scale(other)
        a, b = self.coeffs, other.coeffs
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return DensePolynomial(tuple(out))

    __rmul__ = __mul__

    def max_abs(self) -> float:
        return float(max(abs(v) for v in self.coeffs))

    def exactly_representable(self) -> bool:
        """True when every coefficient is an integer below 2**53 in magnitude."""
        return all(
            (isinstance(v, int) or (isinstance(v, float) and v.is_integer()))
            and abs(v) < EXACT_LIMIT
            for v in self.coeffs
        )


def synthetic_division(poly: DensePolynomial | Sequence, root) -> tuple[DensePolynomial, object]:
    """Divide by (z - root). Returns (quotient, remainder)."""
    coeffs = poly.coeffs if isinstance(poly, DensePolynomial) else tuple(poly)
    if len(coeffs) < 2:
        raise ValueError("cannot divide a constant by a linear factor")
    acc = coeffs[-1]
    quot = [acc]
    for a in reversed(coeffs[1:-1]):
        acc = a + root * acc
        quot.append(acc)
    remainder = coeffs[0] + root * acc
    quot.reverse()
    return DensePolynomial(tuple(quot)), remainder


def root_multiplicity(poly: DensePolynomial, root, tol: float, scale: float | None = None) -> tuple[int, list]:
    """Count how many times (z - root) divides ``poly``.

    A division counts when ``|remainder| <= tol * scale``; ``scale`` defaults to
    the 1-norm of ``poly``. Returns the multiplicity and the list of all
    remainders seen, including the first one that failed.
    """
    if scale is None:
        scale = poly.norm1()
    q = poly
    remainders = []
    mult = 0
    while q.degree >= 1:
        q_next, r = synthetic_division(q, root)
        remainders.append(abs(r))
        if abs(r) > tol * scale:
            break
        mult += 1
        q = q_next
    return mult, remainders
