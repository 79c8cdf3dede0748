import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from srpoly.chebyshev import (
    ChebKind,
    cheb_coeffs,
    cheb_eval,
    cheb_series_eval,
    cheb_trig,
    cheb_zeros,
    leading_coefficient,
    t_basis_expansion,
    two_t_identity,
)
from srpoly.polynomial import DensePolynomial

KINDS = list(ChebKind)


@pytest.mark.parametrize(
    "kind, n, expected",
    [
        ("T", 1, [0, 1]),
        ("T", 2, [-1, 0, 2]),
        ("U", 2, [-1, 0, 4]),
        ("W", 1, [1, 2]),
        ("V", 1, [-1, 2]),
        ("T", 0, [1]),
    ],
)
def test_cheb_coeffs_examples(kind, n, expected):
    assert list(cheb_coeffs(kind, n).coeffs) == expected


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("n", range(0, 9))
def test_cheb_coeffs_match_trig_definition_fit(kind, n):
    # interpolate the trigonometric definition at n+1 interior nodes
    theta = np.linspace(0.3, 2.8, n + 1)
    fit = np.polyfit(np.cos(theta), cheb_trig(kind, n, theta), n)[::-1]
    assert np.allclose(fit, cheb_coeffs(kind, n).to_array(), atol=1e-6)


def test_u2_against_sine_quotient():
    for x in (0.0, 0.5):
        theta = math.acos(x)
        assert cheb_coeffs("U", 2)(x) == pytest.approx(math.sin(3 * theta) / math.sin(theta), abs=1e-14)
    assert cheb_coeffs("U", 2)(1) == 3


@pytest.mark.parametrize(
    "kind, n, x, expected",
    [("T", 5, 1.0, 1.0), ("U", 3, 0.0, 0.0), ("V", 2, 1.0, 1.0), ("W", 2, -1.0, 1.0)],
)
def test_cheb_eval_examples(kind, n, x, expected):
    assert cheb_eval(kind, n, x) == pytest.approx(expected, abs=1e-15)


def _trig_mp(kind, n, x):
    # trigonometric quotients in 40-digit arithmetic at the exact float x
    with mpmath.workdps(40):
        t = mpmath.acos(mpmath.mpf(x))
        if kind == "T":
            v = mpmath.cos(n * t)
        elif kind == "U":
            v = mpmath.sin((n + 1) * t) / mpmath.sin(t)
        elif kind == "V":
            v = mpmath.cos((n + mpmath.mpf(1) / 2) * t) / mpmath.cos(t / 2)
        else:
            v = mpmath.sin((n + mpmath.mpf(1) / 2) * t) / mpmath.sin(t / 2)
        return float(v)


@pytest.mark.parametrize("kind", "TUVW")
def test_cheb_eval_matches_trig_on_interval(kind):
    xs = np.cos(np.linspace(0.01, math.pi - 0.01, 60))
    for n in range(0, 31):
        got = cheb_eval(kind, n, xs)
        want = np.array([_trig_mp(kind, n, x) for x in xs])
        assert np.max(np.abs(got - want)) < 1e-12


def test_cheb_trig_agrees_away_from_endpoints():
    theta = np.linspace(0.3, math.pi - 0.3, 50)
    for kind in KINDS:
        for n in range(0, 11):
            assert np.allclose(cheb_eval(kind, n, np.cos(theta)), cheb_trig(kind, n, theta), atol=1e-12)


@pytest.mark.parametrize("kind", KINDS)
def test_cheb_eval_matches_coefficients(kind):
    xs = np.cos((2 * np.arange(1, 65) - 1) * math.pi / 128)
    for n in range(0, 31):
        poly = cheb_coeffs(kind, n)
        # integer coefficients at the exact binary value of x: no rounding
        direct = np.array([float(poly(Fraction(x))) for x in xs])
        clen = cheb_eval(kind, n, xs)
        scale = max(1.0, np.max(np.abs(direct)))
        assert np.max(np.abs(direct - clen)) <= 1e-10 * scale


def test_cheb_series_eval_complex_argument():
    z = 0.3 + 0.4j
    coeffs = [1, -2, 0.5]
    direct = sum(c * cheb_coeffs("T", k)(z) for k, c in enumerate(coeffs))
    assert abs(cheb_series_eval("T", coeffs, z) - direct) < 1e-14


@pytest.mark.parametrize(
    "kind, n, expected",
    [("U", 1, [0.0]), ("T", 2, [-math.sqrt(2) / 2, math.sqrt(2) / 2]), ("V", 1, [0.5])],
)
def test_cheb_zeros_examples(kind, n, expected):
    assert np.allclose(cheb_zeros(kind, n), expected, atol=1e-15)


@pytest.mark.parametrize("kind", KINDS)
def test_cheb_zeros_are_zeros_and_interlace(kind):
    prev = None
    for n in range(1, 31):
        zs = cheb_zeros(kind, n)
        assert len(zs) == n
        assert np.all(np.diff(zs) > 0)
        assert np.all(np.abs(zs) < 1)
        assert np.max(np.abs(cheb_eval(kind, n, zs))) < 1e-12
        if prev is not None:
            # zeros of degree n-1 separate those of degree n
            assert np.all(zs[:-1] < prev) and np.all(prev < zs[1:])
        prev = zs


def test_cheb_zeros_rejects_degree_zero():
    with pytest.raises(ValueError):
        cheb_zeros("T", 0)


@pytest.mark.parametrize(
    "kind, n, value",
    [("U", 2, [-2, 0, 4]), ("V", 1, [0, 2]), ("W", 1, [0, 2])],
)
def test_two_t_identity_examples(kind, n, value):
    left, right = two_t_identity(kind, n)
    assert list(left.coeffs) == value
    assert list(right.coeffs) == value


@pytest.mark.parametrize("kind", ["U", "V", "W"])
def test_two_t_identity_exact_up_to_30(kind):
    for n in range(2, 31):
        left, right = two_t_identity(kind, n)
        assert left == right
        assert all(isinstance(v, int) for v in left.coeffs + right.coeffs)


def test_two_t_identity_preconditions():
    with pytest.raises(ValueError):
        two_t_identity("U", 1)
    with pytest.raises(ValueError):
        two_t_identity("T", 3)


@pytest.mark.parametrize("kind", KINDS)
def test_leading_coefficients(kind):
    for n in range(1, 31):
        lead = cheb_coeffs(kind, n).leading
        assert lead == leading_coefficient(kind, n)
        assert lead == (2 ** (n - 1) if kind is ChebKind.T else 2**n)


def test_exactness_flag():
    assert cheb_coeffs("U", 30).exactly_representable()
    assert not cheb_coeffs("U", 60).exactly_representable()


@pytest.mark.parametrize("kind", KINDS)
def test_t_basis_expansion_reproduces_polynomial(kind):
    for n in range(0, 16):
        t = t_basis_expansion(kind, n)
        total = DensePolynomial((0,))
        for j, tj in enumerate(t):
            total = total + cheb_coeffs("T", j).scale(tj)
        assert total == cheb_coeffs(kind, n)
