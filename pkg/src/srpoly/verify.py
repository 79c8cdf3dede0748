"""Executable checks of the zero-structure claims, with JSON/CSV reports."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from .chebyshev import ChebKind, cheb_zeros, two_t_identity
from .errors import Degenerate, NoConvergence
from .families import (
    BOUNDARY_TOL,
    EVEN,
    ODD,
    Case,
    FamilySpec,
    case_for_c,
    classify,
    construct,
    spec_from_c,
    thresholds,
)
from .polynomial import DensePolynomial, root_multiplicity
from .roots import (
    CIRCLE_TOL,
    ORACLE_MAX_ITER,
    ORACLE_TOL,
    RESIDUAL_TOL,
    all_roots_monomial,
    analytic_rootset,
    r_monomial,
    r_roots,
    rootset_from_points,
)
from .transform import (
    SelfReciprocalPoly,
    from_cheb,
    theta_from_x,
    to_cheb,
    x_from_z,
    z_pair_from_x,
)

AGREEMENT_TOL = 1e-8
MULTIPLICITY_TOL = 1e-10
RECIPROCAL_TOL = 1e-10
MONOTONE_SLACK = 1e-12
REFINE_OFFSETS = (-1e-3, -5e-4, 0.0, 5e-4, 1e-3)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    measured: object
    tolerance: object = None

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": bool(self.passed),
            "measured": _json_value(self.measured),
            "tolerance": _json_value(self.tolerance),
        }


@dataclass
class VerifyReport:
    subject: dict
    checks: list[Check] = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return all(ch.passed for ch in self.checks)

    def add(self, name: str, passed, measured, tolerance=None) -> bool:
        self.checks.append(Check(name, bool(passed), measured, tolerance))
        return bool(passed)

    def failures(self) -> list[Check]:
        return [ch for ch in self.checks if not ch.passed]

    def to_dict(self) -> dict:
        return {
            "subject": {k: _json_value(v) for k, v in self.subject.items()},
            "checks": [ch.to_dict() for ch in self.checks],
            "overall": self.overall,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"


def _json_value(v):
    if v is None or isinstance(v, (bool, str)):
        return v
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, Fraction):
        return int(v) if v.denominator == 1 else float(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if math.isnan(v) or math.isinf(v):
            return repr(v)
        return v
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, dict):
        return {str(k): _json_value(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_json_value(x) for x in v]
    return str(v)


def match_distance(a: Sequence[complex], b: Sequence[complex]) -> float:
    """Largest per-root distance under the best one-to-one pairing."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if len(a) != len(b):
        return math.inf
    if len(a) == 0:
        return 0.0
    dist = np.abs(a[:, None] - b[None, :])
    rows, cols = linear_sum_assignment(dist)
    return float(dist[rows, cols].max())


def boundary_multiplicities(P: DensePolynomial, tol: float = MULTIPLICITY_TOL) -> tuple[int, int]:
    """How often (z - 1) and (z + 1) divide P, by repeated synthetic division."""
    plus, _ = root_multiplicity(P, 1, tol)
    minus, _ = root_multiplicity(P, -1, tol)
    return plus, minus


def derivative_profile(P: DensePolynomial, point, mult: int) -> tuple[float, float]:
    """Largest |P^(k)(point)| / k! for k < mult, and the same for k = mult,
    both relative to the 1-norm of P."""
    scale = P.norm1()
    q = P
    vals = []
    factorial = 1
    for k in range(mult + 1):
        if k:
            factorial *= k
        vals.append(abs(q(point)) / factorial / scale)
        q = q.derivative()
    return float(max(vals[:mult])), float(vals[mult])


def check_classification(
    spec: FamilySpec,
    tol: float = CIRCLE_TOL,
    boundary_tol: float = BOUNDARY_TOL,
    solver_tol: float = ORACLE_TOL,
    max_iter: int = ORACLE_MAX_ITER,
) -> VerifyReport:
    """Predicted zero layout of ``spec`` against the oracle's zeros."""
    report = VerifyReport({"spec": spec.to_dict()})
    pred = classify(spec, boundary_tol)
    P = construct(spec)
    try:
        raw = all_roots_monomial(P, solver_tol, max_iter)
    except NoConvergence as exc:
        report.add("oracle.converged", False, str(exc))
        return report
    report.add("oracle.converged", True, len(raw))
    found = rootset_from_points(P, raw, tol)

    plus, minus = boundary_multiplicities(P)
    odd_extra = 1 if spec.parity == ODD else 0
    if plus >= 2:
        boundary, inferred = plus, Case.BOUNDARY_PLUS_ONE
    elif minus >= 2 + odd_extra:
        boundary, inferred = minus, Case.BOUNDARY_MINUS_ONE
    else:
        boundary, inferred = 0, None

    on = found.circle_count
    off_real = list(found.real_off)
    off = len(off_real) + len(found.complex_off)
    if inferred is None:
        if off == 0:
            inferred = Case.ALL_ON_CIRCLE
        elif off == 2 and not found.complex_off and all(v > 0 for v in off_real):
            inferred = Case.TWO_REAL_POSITIVE
        elif off == 2 and not found.complex_off and all(v < 0 for v in off_real):
            inferred = Case.TWO_REAL_NEGATIVE

    report.add("case", inferred == pred.case, inferred.value if inferred else "unrecognised", pred.case.value)
    report.add("on_circle_count", on - boundary == pred.on_circle_count, on - boundary, pred.on_circle_count)
    report.add("off_circle_count", off == pred.off_circle_count, off, pred.off_circle_count)
    report.add(
        "boundary_multiplicity", boundary == pred.boundary_multiplicity, boundary, pred.boundary_multiplicity
    )
    if off_real:
        report.add("off_circle_real", not found.complex_off, len(found.complex_off), 0)
    if len(off_real) == 2:
        prod = off_real[0] * off_real[1]
        report.add("reciprocal_pair", abs(prod - 1) < RECIPROCAL_TOL, abs(prod - 1), RECIPROCAL_TOL)
    if boundary:
        point = 1 if inferred is Case.BOUNDARY_PLUS_ONE else -1
        _, rems = root_multiplicity(P, point, MULTIPLICITY_TOL)
        scale = P.norm1()
        report.add(
            "boundary_remainders",
            all(r <= MULTIPLICITY_TOL * scale for r in rems[:boundary]),
            [float(r) / scale for r in rems],
            MULTIPLICITY_TOL,
        )
        vanish, nonzero = derivative_profile(P, point, boundary)
        report.add("boundary_derivatives", vanish <= MULTIPLICITY_TOL and nonzero > MULTIPLICITY_TOL,
                   [vanish, nonzero], MULTIPLICITY_TOL)

    predicted = analytic_rootset(spec, boundary_tol)
    dist = match_distance(predicted.points(), raw)
    report.add("analytic_vs_oracle", dist <= AGREEMENT_TOL, dist, AGREEMENT_TOL)
    scale = P.norm1()
    worst = max(found.residuals) / scale if found.residuals else 0.0
    report.add("oracle_residual", worst < RESIDUAL_TOL, worst, RESIDUAL_TOL)
    return report


def check_interlacing(
    kind: ChebKind | str,
    n: int,
    c,
    boundary_tol: float = BOUNDARY_TOL,
) -> VerifyReport:
    """Oracle zeros of R = Q_n - c Q_{n-1} against the interlacing brackets."""
    kind = ChebKind.parse(kind)
    report = VerifyReport({"kind": kind.value, "n": n, "c": c})
    if c == 0:
        raise ValueError("interlacing brackets need c != 0")
    f_minus, f_plus = thresholds(kind, n)
    try:
        raw = np.array(all_roots_monomial(r_monomial(kind, n, float(c))))
    except NoConvergence as exc:
        report.add("oracle.converged", False, str(exc))
        return report
    imag = float(np.max(np.abs(raw.imag)))
    report.add("real", imag < 1e-7, imag, 1e-7)
    xs = np.sort(raw.real)
    gaps = np.diff(xs)
    min_gap = float(gaps.min()) if len(gaps) else math.inf
    report.add("distinct", min_gap > 1e-9, min_gap, 1e-9)

    zn = cheb_zeros(kind, n)
    zm = cheb_zeros(kind, n - 1) if n > 1 else np.empty(0)
    inside = []
    if c > 0:
        for i in range(n - 1):
            inside.append(zn[i] < xs[i] < zm[i])
        inside.append(xs[n - 1] > zn[n - 1])
    else:
        inside.append(xs[0] < zn[0])
        for i in range(1, n):
            inside.append(zm[i - 1] < xs[i] < zn[i])
    report.add("brackets", all(inside), sum(1 for ok in inside if not ok), 0)

    escaped = [x for x in xs if abs(x) > 1]
    outside = c > f_plus or c < f_minus
    on_edge = case_for_c(kind, n, c, boundary_tol) in (Case.BOUNDARY_PLUS_ONE, Case.BOUNDARY_MINUS_ONE)
    if not on_edge:
        expected = 1 if outside else 0
        report.add("escape_count", len(escaped) == expected, len(escaped), expected)
        if outside and len(escaped) == 1:
            right_side = escaped[0] > 1 if c > 0 else escaped[0] < -1
            report.add("escape_side", right_side, float(escaped[0]), "x > 1" if c > 0 else "x < -1")
    interior = int(sum(1 for x in xs if -1 < x < 1))
    report.add("shohat_count", interior >= n - 1, interior, n - 1)
    bracketed = r_roots(kind, n, c, boundary_tol)
    dist = float(np.max(np.abs(np.array(bracketed) - xs))) if len(bracketed) == len(xs) else math.inf
    report.add("bisection_vs_oracle", dist <= AGREEMENT_TOL, dist, AGREEMENT_TOL)
    return report


@dataclass
class SweepTable:
    c_grid: tuple[float, ...]
    x: tuple[tuple[float, ...], ...]
    theta: tuple[tuple[float, ...], ...]
    cases: tuple[str, ...]

    @property
    def n(self) -> int:
        return len(self.x[0]) if self.x else 0

    def series(self, i: int) -> np.ndarray:
        """x_{i+1}(c) over the grid."""
        return np.array([row[i] for row in self.x])

    def theta_series(self, i: int) -> np.ndarray:
        return np.array([row[i] for row in self.theta])

    def monotone(self, slack: float = MONOTONE_SLACK) -> list[bool]:
        """Per index: x_i(c) never drops by more than ``slack``."""
        return [bool(np.all(np.diff(self.series(i)) >= -slack)) for i in range(self.n)]

    def strictly_increasing(self) -> list[bool]:
        return [bool(np.all(np.diff(self.series(i)) > 0)) for i in range(self.n)]

    def theta_directions(self, slack: float = MONOTONE_SLACK) -> list[str]:
        out = []
        for i in range(self.n):
            t = self.theta_series(i)
            t = t[~np.isnan(t)]
            d = np.diff(t)
            if len(d) == 0:
                out.append("undefined")
            elif np.all(d <= slack):
                out.append("decreasing")
            elif np.all(d >= -slack):
                out.append("increasing")
            else:
                out.append("mixed")
        return out

    def header(self) -> list[str]:
        n = self.n
        return ["c"] + [f"x_{i}" for i in range(1, n + 1)] + [f"theta_{i}" for i in range(1, n + 1)] + ["case"]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.header())
        for c, xs, ts, case in zip(self.c_grid, self.x, self.theta, self.cases):
            w.writerow([repr(float(c))] + [repr(float(v)) for v in xs] + [repr(float(v)) for v in ts] + [case])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "SweepTable":
        rows = list(csv.reader(io.StringIO(text)))
        header, body = rows[0], rows[1:]
        n = (len(header) - 2) // 2
        if header != ["c"] + [f"x_{i}" for i in range(1, n + 1)] + [f"theta_{i}" for i in range(1, n + 1)] + ["case"]:
            raise ValueError("unexpected sweep CSV header")
        c_grid, xs, ts, cases = [], [], [], []
        for row in body:
            c_grid.append(float(row[0]))
            xs.append(tuple(float(v) for v in row[1 : n + 1]))
            ts.append(tuple(float(v) for v in row[n + 1 : 2 * n + 1]))
            cases.append(row[-1])
        return cls(tuple(c_grid), tuple(xs), tuple(ts), tuple(cases))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SweepTable):
            return NotImplemented
        return (
            self.c_grid == other.c_grid
            and self.cases == other.cases
            and np.array_equal(np.array(self.x), np.array(other.x))
            and np.array_equal(np.array(self.theta), np.array(other.theta), equal_nan=True)
        )


def sweep_grid(kind: ChebKind | str, n: int, c_min: float, c_max: float, steps: int, refine: bool = True) -> list[float]:
    """Uniform grid on [c_min, c_max] without c = 0, plus five points
    clustered around each threshold that lies strictly inside the range."""
    if not c_min < c_max:
        raise ValueError("need c_min < c_max")
    if steps < 2:
        raise ValueError("need at least two grid points")
    grid = [float(v) for v in np.linspace(c_min, c_max, steps)]
    if refine:
        for f in thresholds(kind, n):
            f = float(f)
            if c_min < f < c_max:
                grid.extend(f + off for off in REFINE_OFFSETS if c_min <= f + off <= c_max)
    gap = 1e-12 * (c_max - c_min)
    return sorted({v for v in grid if abs(v) > gap})


def sweep(
    kind: ChebKind | str,
    n: int,
    c_min: float,
    c_max: float,
    steps: int,
    refine: bool = True,
    boundary_tol: float = BOUNDARY_TOL,
) -> SweepTable:
    """Zeros x_i(c) of R and their arguments theta_i = arccos x_i along a
    grid of c; theta is NaN where |x_i| > 1."""
    kind = ChebKind.parse(kind)
    grid = sweep_grid(kind, n, c_min, c_max, steps, refine)
    xs, ts, cases = [], [], []
    for c in grid:
        roots = r_roots(kind, n, c, boundary_tol)
        xs.append(tuple(float(x) for x in roots))
        ts.append(tuple(theta_from_x(x) if abs(x) <= 1 else math.nan for x in roots))
        cases.append(case_for_c(kind, n, c, boundary_tol).value)
    return SweepTable(tuple(grid), tuple(xs), tuple(ts), tuple(cases))


def check_sweep(table: SweepTable, subject: dict) -> VerifyReport:
    report = VerifyReport(dict(subject))
    mono = table.monotone()
    report.add("x_nondecreasing", all(mono), sum(1 for m in mono if not m), MONOTONE_SLACK)
    directions = table.theta_directions()
    # recorded, not asserted
    report.add("theta_direction", True, ",".join(sorted(set(directions))), None)
    return report


def identity_audit(n_max: int = 30, seed: int = 0, samples: int = 100) -> VerifyReport:
    """Two-T identities in integer arithmetic, the T-basis round trip on
    random integer palindromes, and reciprocal-pair products."""
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    report = VerifyReport({"audit": "identities", "n_max": n_max, "seed": seed, "samples": samples})
    for kind in (ChebKind.U, ChebKind.V, ChebKind.W):
        start = 2 if kind is ChebKind.U else 1
        bad = sum(1 for n in range(start, n_max + 1) if two_t_identity(kind, n)[0] != two_t_identity(kind, n)[1])
        report.add(f"two_t_identity.{kind.value}", bad == 0, bad, 0)

    rng = np.random.default_rng(seed)
    round_trip_bad = 0
    fold_worst = 0.0
    for _ in range(samples):
        n = int(rng.integers(1, 21))
        half = [int(v) for v in rng.integers(-50, 51, size=n + 1)]
        if half[-1] == 0:
            half[-1] = 1
        coeffs = tuple(half[::-1] + half[1:])
        P = SelfReciprocalPoly(coeffs)
        C = to_cheb(P)
        if from_cheb(C).coeffs != P.coeffs:
            round_trip_bad += 1
        for theta in rng.uniform(0, math.pi, size=4):
            z = complex(math.cos(theta), math.sin(theta))
            lhs = P(z)
            rhs = 2 * z**n * C(x_from_z(z))
            fold_worst = max(fold_worst, abs(lhs - rhs) / P.norm1())
    report.add("cheb_round_trip", round_trip_bad == 0, round_trip_bad, 0)
    report.add("fold_identity", fold_worst < 1e-10, fold_worst, 1e-10)

    fixed = SelfReciprocalPoly((1, -2, 0, -2, 1))
    report.add("cheb_round_trip.fixed", from_cheb(to_cheb(fixed)) == fixed, list(fixed.coeffs), None)

    worst = 0.0
    for x in rng.uniform(-3, 3, size=samples):
        z1, z2 = z_pair_from_x(x)
        worst = max(worst, abs(z1 * z2 - 1))
    report.add("z_pair_product", worst < 1e-13, worst, 1e-13)
    return report


# ---------------------------------------------------------------------------
# randomized suite


def random_specs(cases_per_kind: int, seed: int, n_range: tuple[int, int] = (2, 20)) -> list[FamilySpec]:
    """Family members with c = f +- delta, f a threshold and delta
    log-uniform on [1e-3, 10]; parity and the sign of lead are random."""
    rng = np.random.default_rng(seed)
    out = []
    for kind in ChebKind:
        made = 0
        while made < cases_per_kind:
            n = int(rng.integers(n_range[0], n_range[1] + 1))
            parity = EVEN if rng.random() < 0.5 else ODD
            f = float(thresholds(kind, n)[int(rng.integers(0, 2))])
            delta = 10 ** rng.uniform(-3, 1) * (1 if rng.random() < 0.5 else -1)
            lead = float((1 if rng.random() < 0.5 else -1) * 10 ** rng.uniform(-1, 1))
            c = f + delta
            if abs(c) < 1e-3:
                continue
            try:
                spec = spec_from_c(kind, n, c, lead, parity)
            except Degenerate:
                continue
            out.append(spec)
            made += 1
    return out


def boundary_specs(ns: Iterable[int] = (2, 5, 10)) -> list[FamilySpec]:
    """Exact-rational members sitting on each threshold, both parities."""
    out = []
    for kind in ChebKind:
        for n in ns:
            for f in thresholds(kind, n):
                for parity in (EVEN, ODD):
                    out.append(spec_from_c(kind, n, f, 1, parity))
    return out


def random_interlacing_inputs(count: int, seed: int, n_range: tuple[int, int] = (2, 20)):
    rng = np.random.default_rng(seed + 1)
    out = []
    kinds = list(ChebKind)
    while len(out) < count:
        kind = kinds[len(out) % 4]
        n = int(rng.integers(n_range[0], n_range[1] + 1))
        f = float(thresholds(kind, n)[int(rng.integers(0, 2))])
        c = f + 10 ** rng.uniform(-3, 1) * (1 if rng.random() < 0.5 else -1)
        if abs(c) < 1e-3:
            continue
        out.append((kind, n, c))
    return out


def _aggregate(report: VerifyReport, prefix: str, subreports: list[tuple[str, VerifyReport]]) -> list[str]:
    """Fold per-input reports into one check per (prefix, check name)."""
    by_name: dict[str, list[Check]] = {}
    failed = []
    for key, sub in subreports:
        for ch in sub.checks:
            by_name.setdefault(ch.name, []).append(ch)
        if not sub.overall:
            failed.append(key)
    for name in sorted(by_name):
        checks = by_name[name]
        bad = sum(1 for ch in checks if not ch.passed)
        numeric = [float(ch.measured) for ch in checks if isinstance(ch.measured, (float, np.floating))]
        words = [ch.measured for ch in checks if isinstance(ch.measured, str)]
        tolerance = checks[0].tolerance
        if numeric and len(numeric) == len(checks):
            measured = max(numeric)
        elif words and len(words) == len(checks) and bad == 0:
            measured, tolerance = ",".join(sorted(set(words))), None
        else:
            measured, tolerance = bad, 0
        report.add(f"{prefix}.{name}", bad == 0, measured, tolerance)
    return failed


def run_suite(cases_per_kind: int = 200, seed: int = 42, n_range: tuple[int, int] = (2, 20)) -> VerifyReport:
    """Randomized plus fixed verification; deterministic for a given seed."""
    report = VerifyReport(
        {"suite": "verify", "seed": seed, "cases_per_kind": cases_per_kind, "n_range": list(n_range)}
    )
    specs = random_specs(cases_per_kind, seed, n_range) + boundary_specs()
    subs = []
    case_counts: dict[str, int] = {}
    for i, spec in enumerate(specs):
        key = f"{i:05d}:{spec.kind.value}:n={spec.n}:{spec.parity}"
        subs.append((key, check_classification(spec)))
        case = classify(spec).case.value
        case_counts[case] = case_counts.get(case, 0) + 1
    failed = _aggregate(report, "classification", subs)
    report.add("classification.cases_covered", len(case_counts) == len(Case), case_counts, len(Case))

    inter = []
    for i, (kind, n, c) in enumerate(random_interlacing_inputs(cases_per_kind, seed, n_range)):
        inter.append((f"{i:05d}:{kind.value}:n={n}:c={c!r}", check_interlacing(kind, n, c)))
    failed += _aggregate(report, "interlacing", inter)

    for kind in ChebKind:
        f_minus, f_plus = (float(v) for v in thresholds(kind, 10))
        table = sweep(kind, 10, f_minus - 1.0, f_plus + 1.0, 60)
        failed += _aggregate(report, f"sweep.{kind.value}", [(kind.value, check_sweep(table, {}))])

    audit = identity_audit(30, seed)
    failed += _aggregate(report, "identities", [("audit", audit)])
    report.subject["failed_inputs"] = failed
    report.subject["inputs"] = len(specs) + len(inter)
    return report
