"""The eight acceptance criteria, one test each, at their stated
tolerances. A PASS/FAIL line per criterion is printed at the end of the
pytest run (see conftest.py)."""

import io
import random
import time
from fractions import Fraction

import numpy as np
import pytest

from srpoly.chebyshev import ChebKind, cheb_coeffs, two_t_identity
from srpoly.cli import main
from srpoly.errors import Degenerate
from srpoly.families import EVEN, ODD, Case, FamilySpec, classify, construct, construct_even, construct_odd, spec_from_c, thresholds
from srpoly.polynomial import DensePolynomial, root_multiplicity
from srpoly.transform import factor_odd
from srpoly.verify import (
    boundary_specs,
    check_classification,
    check_interlacing,
    identity_audit,
    random_interlacing_inputs,
    random_specs,
    sweep,
)

KINDS = list(ChebKind)


def test_criterion_1_identity_audit():
    """identity audit"""
    start = time.perf_counter()
    report = identity_audit(30)
    elapsed = time.perf_counter() - start
    assert report.overall, report.failures()
    for kind in ("U", "V", "W"):
        for n in range(2 if kind == "U" else 1, 31):
            left, right = two_t_identity(kind, n)
            assert left.coeffs == right.coeffs
    got = {ch.name: ch for ch in report.checks}
    assert got["cheb_round_trip"].measured == 0
    assert elapsed < 1.0, f"audit took {elapsed:.2f} s"


def test_criterion_2_classification_vs_oracle():
    """classification vs oracle"""
    specs = random_specs(200, 42) + boundary_specs()
    assert len(specs) >= 800
    assert {s.parity for s in specs} == {EVEN, ODD}
    assert {s.kind for s in specs} == set(KINDS)
    assert all(2 <= s.n <= 20 for s in specs)
    assert {classify(s).case for s in specs} == set(Case)
    start = time.perf_counter()
    mismatches = []
    worst = 0.0
    for spec in specs:
        report = check_classification(spec)
        checks = {ch.name: ch for ch in report.checks}
        worst = max(worst, checks["analytic_vs_oracle"].measured)
        if not report.overall:
            mismatches.append((spec, [c.name for c in report.failures()]))
    elapsed = time.perf_counter() - start
    assert mismatches == []
    assert worst <= 1e-8
    assert elapsed < 30.0, f"{len(specs)} members took {elapsed:.1f} s"


def test_criterion_3_thresholds_exact():
    """thresholds exact"""
    for n in range(2, 101):
        assert thresholds("U", n) == (-Fraction(n + 1, n), Fraction(n + 1, n))
        assert thresholds("V", n)[0] == -Fraction(2 * n + 1, 2 * n - 1)
        assert thresholds("W", n)[1] == Fraction(2 * n + 1, 2 * n - 1)
        assert thresholds("T", n) == (-1, 1)
        assert thresholds("V", n)[1] == 1 and thresholds("W", n)[0] == -1
        for kind in KINDS:
            # independent: Q_n(+-1) / Q_{n-1}(+-1) from the integer coefficients
            Q, Qm = cheb_coeffs(kind, n), cheb_coeffs(kind, n - 1)
            fm, fp = thresholds(kind, n)
            assert isinstance(fm, Fraction) and isinstance(fp, Fraction)
            assert (fm, fp) == (Fraction(Q(-1), Qm(-1)), Fraction(Q(1), Qm(1)))


def test_criterion_4_boundary_multiplicities():
    """boundary multiplicities"""
    for kind in KINDS:
        for n in (2, 5, 10):
            fm, fp = thresholds(kind, n)
            even = construct(spec_from_c(kind, n, fp, 1, EVEN))
            mult, rems = root_multiplicity(even, 1, 1e-10)
            scale = even.norm1()
            assert rems[0] <= 1e-10 * scale and rems[1] <= 1e-10 * scale
            assert rems[2] > 1e-6 * scale
            assert mult == 2
            odd = construct(spec_from_c(kind, n, fm, 1, ODD))
            mult, rems = root_multiplicity(odd, -1, 1e-10)
            scale = odd.norm1()
            assert all(r <= 1e-10 * scale for r in rems[:3])
            assert rems[3] > 1e-6 * scale
            assert mult == 3
    member = construct_even(FamilySpec("T", 2, 1, -1))
    z_minus_1 = DensePolynomial((-1, 1))
    assert member.coeffs == (z_minus_1 * z_minus_1 * DensePolynomial((1, 1, 1))).coeffs


def test_criterion_5_interlacing():
    """interlacing"""
    inputs = random_interlacing_inputs(200, 42)
    assert len(inputs) == 200
    failures = []
    escapes = 0
    for kind, n, c in inputs:
        report = check_interlacing(kind, n, c)
        names = {ch.name for ch in report.checks}
        assert {"brackets", "escape_count", "shohat_count"} <= names
        fm, fp = thresholds(kind, n)
        escapes += c < fm or c > fp
        if not report.overall:
            failures.append((kind.value, n, c, [ch.name for ch in report.failures()]))
    assert failures == []
    # both sides of the criterion are exercised
    assert 0 < escapes < 200


def test_criterion_6_monotonicity_sweep():
    """monotonicity sweep"""
    directions = {}
    for kind in KINDS:
        fm, fp = (float(v) for v in thresholds(kind, 10))
        step = (fp - fm) / 101
        table = sweep(kind, 10, fm + step, fp - step, 100, refine=False)
        assert len(table.c_grid) == 100
        assert 0.0 not in table.c_grid
        assert all(fm < c < fp for c in table.c_grid)
        assert all(case == Case.ALL_ON_CIRCLE.value for case in table.cases)
        for i in range(10):
            assert np.all(np.diff(table.series(i)) > 0), f"{kind.value} x_{i + 1}"
            assert np.all(np.diff(table.series(i)) >= -1e-12)
        assert all(table.strictly_increasing())
        directions[kind.value] = set(table.theta_directions())
    # theta = arccos x, so it moves opposite to x; the same for every kind
    assert len({frozenset(d) for d in directions.values()}) == 1
    assert directions["T"] == {"decreasing"}


def test_criterion_7_odd_even_consistency():
    """odd/even consistency"""
    rng = random.Random(42)
    done = 0
    while done < 100:
        kind = rng.choice(KINDS)
        n = rng.randint(2, 20)
        lead = rng.choice([-1, 1]) * 10 ** rng.uniform(-1, 1)
        nxt = rng.uniform(-10, 10)
        try:
            spec = FamilySpec(kind, n, lead, nxt, ODD)
        except Degenerate:
            continue
        even = construct_even(spec.even_counterpart())
        monic = DensePolynomial(tuple(v / lead for v in even.coeffs))
        expect = (DensePolynomial((1, 1)) * monic).scale(lead).to_array()
        S = construct_odd(spec)
        got = S.to_array()
        assert np.max(np.abs(got - expect)) <= 1e-12 * np.max(np.abs(expect))
        scale, P = factor_odd(S)
        assert scale == lead
        assert np.max(np.abs(P.to_array() - monic.to_array())) <= 1e-12 * np.max(np.abs(monic.to_array()))
        done += 1


def test_criterion_8_determinism():
    """determinism"""
    outputs = []
    for _ in range(2):
        buf = io.StringIO()
        code = main(["verify", "--seed", "42"], stdout=buf)
        assert code == 0
        outputs.append(buf.getvalue().encode())
    assert outputs[0] == outputs[1]
    assert len(outputs[0]) > 0
