"""The four classes of self-reciprocal polynomials built from order-one
quasi-orthogonal Chebyshev combinations, and their zero classification.

A family member of half-degree n is fixed by its kind, its leading
coefficient and one more free coefficient. Its fold C(x) is proportional to

    R(x) = Q_n(x) - c Q_{n-1}(x)

for the Chebyshev kind Q in {T, U, V, W}; everything about the zeros of the
member follows from where c sits relative to the pair Q_n(+-1)/Q_{n-1}(+-1).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from fractions import Fraction
from numbers import Real

from .chebyshev import ChebKind, t_basis_expansion
from .errors import Degenerate, NoMatch, ZeroLeading
from .polynomial import exact_div, is_exact, simplify
from .transform import ChebCombination, SelfReciprocalPoly

BOUNDARY_TOL = 1e-12
DETECT_TOL = 1e-9

EVEN = "even"
ODD = "odd"


class Case(str, enum.Enum):
    ALL_ON_CIRCLE = "AllOnCircle"
    TWO_REAL_NEGATIVE = "TwoRealNegative"
    TWO_REAL_POSITIVE = "TwoRealPositive"
    BOUNDARY_PLUS_ONE = "BoundaryPlusOne"
    BOUNDARY_MINUS_ONE = "BoundaryMinusOne"


@dataclass(frozen=True)
class FamilySpec:
    """Generator of one family member.

    ``lead`` is the top coefficient. ``next`` is the free coefficient: for
    even parity it is p_{2n-1}; for odd parity it is s_{2n-1} (kinds T, W) or
    s_{2n} (kinds U, V). n is the half-degree of the even part.
    """

    kind: ChebKind
    n: int
    lead: Real
    next: Real
    parity: str = EVEN

    def __post_init__(self):
        object.__setattr__(self, "kind", ChebKind.parse(self.kind))
        object.__setattr__(self, "lead", simplify(self.lead))
        object.__setattr__(self, "next", simplify(self.next))
        if self.parity not in (EVEN, ODD):
            raise ValueError(f"parity must be 'even' or 'odd', got {self.parity!r}")
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"half-degree must be a positive integer, got {self.n}")
        object.__setattr__(self, "n", int(self.n))
        if self.lead == 0:
            raise ZeroLeading("leading coefficient must be nonzero")
        _check_nondegenerate(self.kind, self.lead, self.even_next)

    @property
    def degree(self) -> int:
        return 2 * self.n + (1 if self.parity == ODD else 0)

    @property
    def even_next(self):
        """p_{2n-1} of the even part P, where S = (z + 1) P for odd members."""
        if self.parity == EVEN:
            return self.next
        if self.kind is ChebKind.T:
            return self.next
        if self.kind is ChebKind.W:
            return exact_div(self.next, 2)
        return simplify(self.next - self.lead)

    def even_counterpart(self) -> "FamilySpec":
        return FamilySpec(self.kind, self.n, self.lead, self.even_next, EVEN)

    @property
    def c_alpha(self):
        return compute_c(self.kind, self.lead, self.even_next)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "n": self.n,
            "lead": _plain(self.lead),
            "next": _plain(self.next),
            "parity": self.parity,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "FamilySpec":
        return cls(d["kind"], d["n"], d["lead"], d["next"], d.get("parity", EVEN))


def _plain(x):
    """JSON-friendly number: int when integral and exact, float otherwise."""
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else float(x)
    return float(x)


def _check_nondegenerate(kind: ChebKind, lead, even_next) -> None:
    if kind is ChebKind.T and even_next == 0:
        raise Degenerate("class T needs a nonzero subleading coefficient")
    if kind is ChebKind.V and lead == -even_next:
        raise Degenerate(
            "class V with p_2n = -p_2n-1 reduces to a plain V_n; "
            "its coefficients fit class U instead"
        )
    if kind is ChebKind.W and lead == even_next:
        raise Degenerate(
            "class W with p_2n = p_2n-1 reduces to a plain W_n; "
            "its coefficients fit class U instead"
        )


def _even_pattern(kind: ChebKind, n: int, a, b) -> list:
    d = 2 * n
    p = [0] * (d + 1)
    p[0] = p[d] = a
    if kind is ChebKind.T:
        p[1] = p[d - 1] = b
    elif kind is ChebKind.U:
        for j in range(d + 1):
            p[j] = a if (d - j) % 2 == 0 else b
    elif kind is ChebKind.V:
        for j in range(1, d):
            p[j] = b if (d - 1 - j) % 2 == 0 else -b
    else:
        for j in range(1, d):
            p[j] = b
    return p


def construct_even(spec: FamilySpec) -> SelfReciprocalPoly:
    if spec.parity != EVEN:
        raise ValueError("construct_even needs an even-parity spec")
    return SelfReciprocalPoly(tuple(_even_pattern(spec.kind, spec.n, spec.lead, spec.next)))


def construct_odd(spec: FamilySpec) -> SelfReciprocalPoly:
    """S = (z + 1) P where P is the even member with the same lead."""
    if spec.parity != ODD:
        raise ValueError("construct_odd needs an odd-parity spec")
    p = _even_pattern(spec.kind, spec.n, spec.lead, spec.even_next)
    s = [0] * (len(p) + 1)
    for j, v in enumerate(p):
        s[j] += v
        s[j + 1] += v
    return SelfReciprocalPoly(tuple(s))


def construct(spec: FamilySpec) -> SelfReciprocalPoly:
    return construct_even(spec) if spec.parity == EVEN else construct_odd(spec)


def compute_c(kind: ChebKind | str, lead, next):
    """The c in R = Q_n - c Q_{n-1}, from the two top coefficients of the
    even member."""
    kind = ChebKind.parse(kind)
    if lead == 0:
        raise ZeroLeading("leading coefficient must be nonzero")
    ratio = exact_div(next, lead)
    if kind in (ChebKind.T, ChebKind.U):
        c = -ratio
    elif kind is ChebKind.V:
        c = -(ratio + 1)
    else:
        c = 1 - ratio
    return simplify(c)


def thresholds(kind: ChebKind | str, n: int) -> tuple[Fraction, Fraction]:
    """(Q_n(-1)/Q_{n-1}(-1), Q_n(1)/Q_{n-1}(1)) as exact rationals."""
    kind = ChebKind.parse(kind)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    one = Fraction(1)
    if kind is ChebKind.T:
        return -one, one
    if kind is ChebKind.U:
        f = Fraction(n + 1, n)
        return -f, f
    if kind is ChebKind.V:
        return -Fraction(2 * n + 1, 2 * n - 1), one
    return -one, Fraction(2 * n + 1, 2 * n - 1)


@dataclass(frozen=True)
class Classification:
    c_alpha: Real
    f_minus: Fraction
    f_plus: Fraction
    case: Case
    on_circle_count: int
    off_circle_count: int
    boundary_multiplicity: int

    @property
    def degree(self) -> int:
        return self.on_circle_count + self.off_circle_count + self.boundary_multiplicity

    def to_dict(self) -> dict:
        return {
            "c_alpha": _plain(self.c_alpha),
            "f_minus": _plain(self.f_minus),
            "f_plus": _plain(self.f_plus),
            "case": self.case.value,
            "on_circle_count": self.on_circle_count,
            "off_circle_count": self.off_circle_count,
            "boundary_multiplicity": self.boundary_multiplicity,
        }


def _near(c, f, tol: float) -> bool:
    if is_exact(c):
        return c == f
    return abs(float(c) - float(f)) <= tol * max(1.0, abs(float(f)))


def case_for_c(kind: ChebKind | str, n: int, c, boundary_tol: float = BOUNDARY_TOL) -> Case:
    f_minus, f_plus = thresholds(kind, n)
    if _near(c, f_plus, boundary_tol):
        return Case.BOUNDARY_PLUS_ONE
    if _near(c, f_minus, boundary_tol):
        return Case.BOUNDARY_MINUS_ONE
    if c > f_plus:
        return Case.TWO_REAL_POSITIVE
    if c < f_minus:
        return Case.TWO_REAL_NEGATIVE
    return Case.ALL_ON_CIRCLE


def classify(spec: FamilySpec, boundary_tol: float = BOUNDARY_TOL) -> Classification:
    """Predicted zero layout of the member generated by ``spec``.

    Off-circle zeros come as one real reciprocal pair. Boundary cases put a
    double zero at z = +1 or z = -1; odd members always carry an extra
    simple zero at z = -1, which makes the z = -1 boundary a triple zero.
    The circle count excludes the boundary zeros.
    """
    c = spec.c_alpha
    f_minus, f_plus = thresholds(spec.kind, spec.n)
    case = case_for_c(spec.kind, spec.n, c, boundary_tol)
    n = spec.n
    odd = 1 if spec.parity == ODD else 0
    if case is Case.ALL_ON_CIRCLE:
        on, off, mult = 2 * n + odd, 0, 0
    elif case in (Case.TWO_REAL_NEGATIVE, Case.TWO_REAL_POSITIVE):
        on, off, mult = 2 * n - 2 + odd, 2, 0
    elif case is Case.BOUNDARY_PLUS_ONE:
        on, off, mult = 2 * n - 2 + odd, 0, 2
    else:
        on, off, mult = 2 * n - 2, 0, 2 + odd
    return Classification(c, f_minus, f_plus, case, on, off, mult)


def _free_coefficient(kind: ChebKind, coeffs: tuple, parity: str, n: int):
    if parity == EVEN:
        return coeffs[2 * n - 1]
    if kind in (ChebKind.T, ChebKind.W):
        return coeffs[2 * n - 1]
    return coeffs[2 * n]


def _close(a: tuple, b: tuple, tol: float, scale: float) -> bool:
    if len(a) != len(b):
        return False
    if all(is_exact(v) for v in a + b):
        return a == b
    return all(abs(x - y) <= tol * scale for x, y in zip(a, b))


def match_classes(P: SelfReciprocalPoly, tol: float = DETECT_TOL) -> list[FamilySpec]:
    """Every family spec whose member reproduces P, in the order T, U, V, W."""
    d = P.degree
    parity = EVEN if d % 2 == 0 else ODD
    n = d // 2
    if (parity == EVEN and d < 4) or (parity == ODD and d < 3):
        raise NoMatch(f"degree {d} is too small for family detection")
    coeffs = P.coeffs
    lead = coeffs[-1]
    scale = P.max_abs()
    found = []
    for kind in ChebKind:
        nxt = _free_coefficient(kind, coeffs, parity, n)
        try:
            spec = FamilySpec(kind, n, lead, nxt, parity)
        except Degenerate:
            continue
        if _close(construct(spec).coeffs, coeffs, tol, scale):
            found.append(spec)
    return found


def detect_class(P: SelfReciprocalPoly, tol: float = DETECT_TOL) -> FamilySpec:
    """The family of P. A fit to class U wins over any other fit, which is
    how degenerate V and W members (plain V_n, W_n) get reported."""
    matches = match_classes(P, tol)
    if not matches:
        raise NoMatch(f"coefficients fit none of the four classes: {list(P.coeffs)}")
    for spec in matches:
        if spec.kind is ChebKind.U:
            return spec
    return matches[0]


def quasi_in_T_basis(kind: ChebKind | str, n: int, c0, c1) -> ChebCombination:
    """c0 Q_n + c1 Q_{n-1} expanded in T_0..T_n."""
    kind = ChebKind.parse(kind)
    if c0 == 0 or c1 == 0:
        raise ValueError("order-one combinations need c0 * c1 != 0")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    top = t_basis_expansion(kind, n)
    low = t_basis_expansion(kind, n - 1) + (0,)
    return ChebCombination(tuple(simplify(c0 * a + c1 * b) for a, b in zip(top, low)))


def spec_from_quasi(kind: ChebKind | str, n: int, c0, c1) -> FamilySpec:
    """The even member whose fold is c0 Q_n + c1 Q_{n-1}."""
    t = quasi_in_T_basis(kind, n, c0, c1).t
    return FamilySpec(kind, n, t[n], t[n - 1], EVEN)


def spec_from_c(kind: ChebKind | str, n: int, c, lead=1, parity: str = EVEN) -> FamilySpec:
    """Inverse of :func:`compute_c`: the spec with the given lead and c."""
    kind = ChebKind.parse(kind)
    if kind in (ChebKind.T, ChebKind.U):
        b = -c * lead
    elif kind is ChebKind.V:
        b = -(c + 1) * lead
    else:
        b = (1 - c) * lead
    if parity == EVEN:
        return FamilySpec(kind, n, lead, b, EVEN)
    if kind is ChebKind.T:
        nxt = b
    elif kind is ChebKind.W:
        nxt = 2 * b
    else:
        nxt = b + lead
    return FamilySpec(kind, n, lead, nxt, ODD)
