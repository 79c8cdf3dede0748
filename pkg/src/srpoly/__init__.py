"""Self-reciprocal polynomials generated by order-one quasi-orthogonal
Chebyshev combinations: construction, zero classification and numerical
verification."""

from .chebyshev import ChebKind, cheb_coeffs, cheb_eval, cheb_zeros, two_t_identity
from .errors import (
    Degenerate,
    EvenDegree,
    NoConvergence,
    NoMatch,
    NotSelfReciprocal,
    OddDegree,
    OutOfRange,
    ResidualTooLarge,
    ZeroInput,
    ZeroLeading,
)
from .families import (
    Case,
    Classification,
    FamilySpec,
    classify,
    compute_c,
    construct,
    construct_even,
    construct_odd,
    detect_class,
    quasi_in_T_basis,
    spec_from_c,
    thresholds,
)
from .polynomial import DensePolynomial
from .roots import RootSet, all_roots_monomial, exterior_root, full_rootset, interior_roots
from .transform import (
    ChebCombination,
    CircleZero,
    SelfReciprocalPoly,
    cheb_to_monomial,
    factor_odd,
    from_cheb,
    make_self_reciprocal,
    thetas_from_xs,
    to_cheb,
    x_from_z,
    z_pair_from_x,
)
from .verify import VerifyReport, SweepTable, check_classification, check_interlacing, identity_audit, sweep

__version__ = "0.1.0"
