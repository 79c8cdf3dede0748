import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from srpoly.errors import EvenDegree, NotSelfReciprocal, OddDegree, OutOfRange, ResidualTooLarge, ZeroInput, ZeroLeading
from srpoly.polynomial import DensePolynomial
from srpoly.transform import (
    ChebCombination,
    CircleZero,
    SelfReciprocalPoly,
    cheb_to_monomial,
    factor_odd,
    from_cheb,
    load_self_reciprocal,
    make_self_reciprocal,
    palindromic_residual,
    parse_coefficients,
    theta_from_x,
    thetas_from_xs,
    to_cheb,
    x_from_z,
    z_pair_from_x,
)


def sr(*c):
    return make_self_reciprocal(list(c), 0)


# --- construction -------------------------------------------------------


def test_make_self_reciprocal_examples():
    assert sr(1, 0, 1).coeffs == (1, 0, 1)
    assert sr(1, -2, 0, -2, 1).degree == 4
    with pytest.raises(NotSelfReciprocal):
        sr(1, 2, 3)


def test_zero_leading_rejected():
    with pytest.raises(ZeroLeading):
        make_self_reciprocal([0, 1, 0], 0)


def test_float_input_is_symmetrized_within_tolerance():
    P = make_self_reciprocal([1.0, 2.0, 1.0 + 1e-12], 1e-9)
    assert P.coeffs[0] == P.coeffs[2]
    with pytest.raises(NotSelfReciprocal):
        make_self_reciprocal([1.0, 2.0, 1.0 + 1e-6], 1e-9)


def test_integer_input_requires_exact_match():
    with pytest.raises(NotSelfReciprocal):
        make_self_reciprocal([1, 2, 2], 1.0)


def test_negative_tolerance_rejected():
    with pytest.raises(ValueError):
        make_self_reciprocal([1, 1], -1)


def test_direct_type_checks_symmetry():
    with pytest.raises(NotSelfReciprocal):
        SelfReciprocalPoly((1, 2))
    P = SelfReciprocalPoly((1, 3, 3, 1))
    assert P.parity == "odd" and P.half_degree == 1


# --- Chebyshev fold -------------------------------------------------------


@pytest.mark.parametrize(
    "coeffs, t",
    [
        ((1, 0, 1), (0, 1)),
        ((1, -1, 0, -1, 1), (0, -1, 1)),
        ((2, 3, 2), (Fraction(3, 2), 2)),
    ],
)
def test_to_cheb_examples(coeffs, t):
    assert to_cheb(sr(*coeffs)).t == t


@pytest.mark.parametrize(
    "t, coeffs",
    [((0, 1), (1, 0, 1)), ((0, -1, 1), (1, -1, 0, -1, 1)), ((1, 2, 2), (2, 2, 2, 2, 2))],
)
def test_from_cheb_examples(t, coeffs):
    assert from_cheb(ChebCombination(t)).coeffs == coeffs


def test_to_cheb_rejects_odd():
    with pytest.raises(OddDegree):
        to_cheb(sr(1, 1))


@pytest.mark.parametrize(
    "t, mono",
    [((0, 1), (0, 1)), ((0, -1, 1), (-1, -1, 2)), ((1, 0, 0), None), ((1,), (1,))],
)
def test_cheb_to_monomial_examples(t, mono):
    if mono is None:
        # a combination needs a nonzero top coefficient; the raw sequence is fine
        with pytest.raises(ValueError):
            ChebCombination(t)
        assert cheb_to_monomial(t).coeffs == (1,)
    else:
        assert cheb_to_monomial(ChebCombination(t)).coeffs == mono


def test_cheb_to_monomial_exact_at_high_degree():
    t = tuple(range(1, 32))
    poly = cheb_to_monomial(ChebCombination(t))
    assert all(isinstance(v, int) for v in poly.coeffs)
    x = Fraction(3, 7)
    # compare with an exact Clenshaw-free sum via the trig identity T_j(cos a)
    direct = sum(tj * DensePolynomial(tuple(_t_int(j)))(x) for j, tj in enumerate(t))
    assert poly(x) == direct


def _t_int(j):
    prev, cur = [1], [0, 1]
    if j == 0:
        return prev
    for _ in range(j - 1):
        nxt = [0] + [2 * v for v in cur]
        for i, v in enumerate(prev):
            nxt[i] -= v
        prev, cur = cur, nxt
    return cur


palindromes = st.lists(st.integers(-50, 50), min_size=2, max_size=16).filter(lambda h: h[-1] != 0)


def _from_half(h):
    # h[0] is the middle coefficient, h[-1] the leading one
    return make_self_reciprocal(h[::-1] + h[1:], 0)


@settings(max_examples=200, deadline=None)
@given(palindromes)
def test_round_trip_exact(h):
    P = _from_half(h)
    assert from_cheb(to_cheb(P)) == P


@settings(max_examples=100, deadline=None)
@given(palindromes, st.floats(0, 2 * math.pi))
def test_fold_identity_on_circle(h, phi):
    P = _from_half(h)
    C = to_cheb(P)
    n = P.half_degree
    z = cmath.exp(1j * phi)
    lhs = P(complex(z))
    rhs = 2 * z**n * C(x_from_z(z).real)
    assert abs(lhs - rhs) < 1e-10 * P.norm1()


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(-10, 10), min_size=2, max_size=12).filter(lambda t: abs(t[-1]) > 1e-3))
def test_round_trip_float(t):
    C = ChebCombination(tuple(t))
    back = to_cheb(from_cheb(C)).t
    assert np.allclose(back, t, rtol=1e-14, atol=0)


def test_monomial_expansion_matches_fold():
    C = ChebCombination((Fraction(1, 2), -3, 0, 5))
    mono = cheb_to_monomial(C)
    for x in np.linspace(-1, 1, 11):
        assert abs(mono(x) - C(x)) < 1e-12


# --- odd factorization ----------------------------------------------------


@pytest.mark.parametrize(
    "coeffs, scale, monic",
    [
        ((1, 0, 0, 1), 1, (1, -1, 1)),
        ((1, 2, 2, 1), 1, (1, 1, 1)),
        ((2, 2, 2, 2, 2, 2), 2, (1, 0, 1, 0, 1)),
    ],
)
def test_factor_odd_examples(coeffs, scale, monic):
    s, P = factor_odd(sr(*coeffs))
    assert s == scale
    assert P.coeffs == monic
    # re-multiplication reproduces S
    assert (DensePolynomial((1, 1)) * P).scale(s).coeffs == coeffs


def test_factor_odd_rejects_even_and_bad_input():
    with pytest.raises(EvenDegree):
        factor_odd(sr(1, 0, 1))
    # palindromic S always vanishes at -1, so force a failing remainder through the base type
    bad = SelfReciprocalPoly.__new__(SelfReciprocalPoly)
    object.__setattr__(bad, "coeffs", (1.0, 0.5, 0.0, 1.0))
    with pytest.raises(ResidualTooLarge):
        factor_odd(bad)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(-5, 5), min_size=2, max_size=10).filter(lambda h: abs(h[-1]) > 0.1))
def test_factor_odd_remultiplies(h):
    P = make_self_reciprocal(h[::-1] + h[1:], 0)
    S = make_self_reciprocal((DensePolynomial((1, 1)) * P).coeffs, 1e-9)
    s, Q = factor_odd(S)
    back = (DensePolynomial((1, 1)) * Q).scale(s)
    assert np.max(np.abs(back.to_array() - S.to_array())) <= 1e-13 * S.max_abs() * S.degree


# --- zero maps ------------------------------------------------------------


def test_x_from_z_examples():
    assert x_from_z(1j) == 0
    with pytest.raises(ZeroInput):
        x_from_z(0)


def test_z_pair_examples():
    assert z_pair_from_x(0) == (1j, -1j)
    big, small = z_pair_from_x(1.3660254)
    assert big.real == pytest.approx(2.2966, abs=1e-4)
    assert small.real == pytest.approx(0.4354, abs=1e-4)
    assert abs(big * small - 1) < 1e-12


@settings(max_examples=300, deadline=None)
@given(st.floats(-1e6, 1e6))
def test_z_pair_product_is_one(x):
    a, b = z_pair_from_x(x)
    assert abs(a * b - 1) < 1e-13
    for z in (a, b):
        assert abs(x_from_z(z) - x) <= 1e-12 * max(1, abs(x))


def test_thetas_from_xs_examples():
    assert [z.theta for z in thetas_from_xs([0])] == [pytest.approx(math.pi / 2)]
    assert [z.theta for z in thetas_from_xs([-1, 1])] == [0.0, math.pi]
    got = [z.theta for z in thetas_from_xs([-0.6474, 0.7724])]
    # arccos values computed independently: 0.688185, 2.274964
    assert got == [pytest.approx(0.68818509, abs=1e-7), pytest.approx(2.27496440, abs=1e-7)]
    assert got == [pytest.approx(0.6877, abs=2e-3), pytest.approx(2.2744, abs=2e-3)]


def test_theta_clamp_and_range():
    assert theta_from_x(1 + 5e-13) == 0.0
    assert theta_from_x(-1 - 5e-13) == math.pi
    with pytest.raises(OutOfRange):
        thetas_from_xs([1.01])


def test_circle_zero_points():
    assert CircleZero(math.pi, 2).count == 2
    assert CircleZero(math.pi, 2).points() == [-1, -1]
    pts = CircleZero(math.pi / 3).points()
    assert len(pts) == 2 and abs(pts[0] - pts[1].conjugate()) < 1e-15


def test_palindromic_residual_is_symmetric():
    P = sr(1, -5, 1)
    big, small = z_pair_from_x(2.5)
    assert palindromic_residual(P, big) < 1e-14
    assert palindromic_residual(P, small) < 1e-14


# --- files ----------------------------------------------------------------


def test_parse_json_and_text():
    assert parse_coefficients("[1, -2.5, 1]") == [1, -2.5, 1]
    assert parse_coefficients("# header\n1\n\n3/2 # half\n1\n") == [1, Fraction(3, 2), 1]
    with pytest.raises(ValueError):
        parse_coefficients('["a"]')
    with pytest.raises(ValueError):
        parse_coefficients("# nothing\n")


def test_load_self_reciprocal(tmp_path):
    f = tmp_path / "p.txt"
    f.write_text("0.1\n0.3\n0.1000000000001\n")
    P = load_self_reciprocal(f)
    assert P.coeffs[0] == P.coeffs[2]
