"""Chebyshev polynomials of the first, second, third and fourth kinds.

All four kinds share the recurrence Q_k = 2x Q_{k-1} - Q_{k-2} and differ only
in Q_1 (Q_0 = 1 for all of them):

    T_1 = x,  U_1 = 2x,  V_1 = 2x - 1,  W_1 = 2x + 1.
"""

from __future__ import annotations

import enum
import math
from functools import lru_cache
from typing import Sequence

import numpy as np

from .polynomial import DensePolynomial


class ChebKind(str, enum.Enum):
    T = "T"
    U = "U"
    V = "V"
    W = "W"

    @classmethod
    def parse(cls, value) -> "ChebKind":
        if isinstance(value, cls):
            return value
        return cls(str(value).upper())


# Q_1 = 2x + shift, except T where Q_1 = x.
_Q1 = {
    ChebKind.T: (0, 1),
    ChebKind.U: (0, 2),
    ChebKind.V: (-1, 2),
    ChebKind.W: (1, 2),
}


@lru_cache(maxsize=None)
def _int_coeffs(kind: ChebKind, n: int) -> tuple[int, ...]:
    if n < 0:
        return (0,)
    if n == 0:
        return (1,)
    if n == 1:
        return _Q1[kind]
    a = _int_coeffs(kind, n - 1)
    b = _int_coeffs(kind, n - 2)
    out = [0] * (n + 1)
    for j, v in enumerate(a):
        out[j + 1] += 2 * v
    for j, v in enumerate(b):
        out[j] -= v
    return tuple(out)


def cheb_coeffs(kind: ChebKind | str, n: int) -> DensePolynomial:
    """Monomial coefficients (ascending) of Q_n for the given kind.

    The coefficients are Python ints and therefore exact for every n; they
    survive conversion to binary64 unchanged for n <= 30.
    """
    if n < 0:
        raise ValueError(f"degree must be nonnegative, got {n}")
    return DensePolynomial(_int_coeffs(ChebKind.parse(kind), n))


def cheb_series_eval(kind: ChebKind | str, coeffs: Sequence, x):
    """Evaluate sum_k coeffs[k] * Q_k(x) by Clenshaw's backward recurrence.

    ``x`` may be a scalar (real or complex) or a numpy array.
    """
    kind = ChebKind.parse(kind)
    x = np.asarray(x) if isinstance(x, (list, tuple)) else x
    b1 = 0 * x
    b2 = 0 * x
    for a in reversed(list(coeffs)[1:]):
        b1, b2 = a + 2 * x * b1 - b2, b1
    a0 = coeffs[0] if len(coeffs) else 0
    b0 = a0 + 2 * x * b1 - b2
    # sum = b0*Q_0 + b1*(Q_1 - 2x Q_0)
    if kind is ChebKind.T:
        return b0 - x * b1
    if kind is ChebKind.U:
        return b0
    if kind is ChebKind.V:
        return b0 - b1
    return b0 + b1


def cheb_eval(kind: ChebKind | str, n: int, x):
    if n < 0:
        raise ValueError(f"degree must be nonnegative, got {n}")
    unit = [0] * n + [1]
    return cheb_series_eval(kind, unit, x)


def cheb_trig(kind: ChebKind | str, n: int, theta):
    """Trigonometric definition of Q_n(cos theta); undefined where the
    denominator vanishes."""
    kind = ChebKind.parse(kind)
    if kind is ChebKind.T:
        return np.cos(n * theta)
    if kind is ChebKind.U:
        return np.sin((n + 1) * theta) / np.sin(theta)
    if kind is ChebKind.V:
        return np.cos((n + 0.5) * theta) / np.cos(theta / 2)
    return np.sin((n + 0.5) * theta) / np.sin(theta / 2)


def cheb_zeros(kind: ChebKind | str, n: int) -> np.ndarray:
    """The n zeros of Q_n, ascending, all inside (-1, 1)."""
    kind = ChebKind.parse(kind)
    if n < 1:
        raise ValueError(f"Q_{n} has no zeros")
    k = np.arange(1, n + 1)
    if kind is ChebKind.T:
        theta = (2 * k - 1) * math.pi / (2 * n)
    elif kind is ChebKind.U:
        theta = k * math.pi / (n + 1)
    elif kind is ChebKind.V:
        theta = (2 * k - 1) * math.pi / (2 * n + 1)
    else:
        theta = 2 * k * math.pi / (2 * n + 1)
    xs = np.cos(theta)[::-1].copy()
    # cos(pi/2) is 6e-17, not 0
    xs[np.abs(xs) < 1e-15] = 0.0
    resid = np.abs(cheb_eval(kind, n, xs))
    bound = 1e-12 * max(1.0, float(n) ** 2)
    if np.any(resid > bound):
        raise RuntimeError(f"closed-form zeros of {kind.value}_{n} fail re-evaluation")
    return xs


def leading_coefficient(kind: ChebKind | str, n: int) -> int:
    kind = ChebKind.parse(kind)
    if n == 0:
        return 1
    return 2 ** (n - 1) if kind is ChebKind.T else 2**n


def value_at_one(kind: ChebKind | str, n: int) -> int:
    """Q_n(1), which is positive for every kind."""
    kind = ChebKind.parse(kind)
    return {ChebKind.T: 1, ChebKind.U: n + 1, ChebKind.V: 1, ChebKind.W: 2 * n + 1}[kind]


def value_at_minus_one(kind: ChebKind | str, n: int) -> int:
    kind = ChebKind.parse(kind)
    sign = -1 if n % 2 else 1
    return sign * {ChebKind.T: 1, ChebKind.U: n + 1, ChebKind.V: 2 * n + 1, ChebKind.W: 1}[kind]


def max_abs_on_interval(kind: ChebKind | str, n: int) -> int:
    """max |Q_n(x)| over [-1, 1]; attained at an endpoint."""
    return max(value_at_one(kind, n), abs(value_at_minus_one(kind, n)))


def two_t_identity(kind: ChebKind | str, n: int) -> tuple[DensePolynomial, DensePolynomial]:
    """Both sides of the identity writing 2 T_n through two consecutive
    members of another kind:

        U: 2T_n = U_n - U_{n-2}
        V: 2T_n = V_n + V_{n-1}
        W: 2T_n = W_n - W_{n-1}
    """
    kind = ChebKind.parse(kind)
    if kind is ChebKind.T:
        raise ValueError("the identity relates T to U, V or W")
    if n < 1 or (kind is ChebKind.U and n < 2):
        raise ValueError(f"identity for {kind.value} needs a larger n, got {n}")
    left = cheb_coeffs(ChebKind.T, n).scale(2)
    q_n = cheb_coeffs(kind, n)
    if kind is ChebKind.U:
        right = q_n - cheb_coeffs(kind, n - 2)
    elif kind is ChebKind.V:
        right = q_n + cheb_coeffs(kind, n - 1)
    else:
        right = q_n - cheb_coeffs(kind, n - 1)
    return left, right


@lru_cache(maxsize=None)
def t_basis_expansion(kind: ChebKind, n: int) -> tuple[int, ...]:
    """Coefficients of Q_n in the first-kind basis T_0..T_n.

    Obtained by telescoping the two-T identities, e.g.
    U_n = 2T_n + 2T_{n-2} + ... ending in T_0 (n even) or 2T_1 (n odd).
    """
    kind = ChebKind.parse(kind)
    out = [0] * (n + 1)
    if kind is ChebKind.T:
        out[n] = 1
        return tuple(out)
    if n == 0:
        out[0] = 1
        return tuple(out)
    if kind is ChebKind.U:
        if n == 1:
            return (0, 2)
        rest = t_basis_expansion(kind, n - 2)
        sign = 1
    elif kind is ChebKind.V:
        rest = t_basis_expansion(kind, n - 1)
        sign = -1
    else:
        rest = t_basis_expansion(kind, n - 1)
        sign = 1
    for j, v in enumerate(rest):
        out[j] += sign * v
    out[n] += 2
    return tuple(out)
