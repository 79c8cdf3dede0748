"""Command-line entry point: ``srpoly <subcommand> ...``.

Exit codes: 0 success, 1 a verification check failed, 2 usage or input
error, 3 root-finder did not converge.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import families, roots, verify
from .chebyshev import ChebKind, cheb_coeffs, cheb_zeros
from .errors import NoConvergence, SRPolyError
from .families import EVEN, ODD, FamilySpec, classify, construct, detect_class, match_classes, spec_from_c
from .transform import SR_TOL, load_self_reciprocal

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE, EXIT_NO_CONVERGENCE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def parse_number(text: str):
    """int, then p/q as a Fraction, then float."""
    text = text.strip()
    try:
        return int(text)
    except ValueError:
        pass
    try:
        if "/" in text:
            return Fraction(text)
        return float(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")


def _plain(x):
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else float(x)
    return x


def _dumps(obj, compact: bool = False) -> str:
    if compact:
        return json.dumps(obj, separators=(",", ":")) + "\n"
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _add_family_args(p: argparse.ArgumentParser, allow_file: bool = True) -> None:
    p.add_argument("--kind", choices=[k.value for k in ChebKind], type=str.upper)
    p.add_argument("--n", type=int, help="half-degree of the even part")
    p.add_argument("--lead", type=parse_number, help="leading coefficient")
    p.add_argument("--next", dest="next_", type=parse_number, help="free subleading coefficient")
    p.add_argument("--c", dest="c", type=parse_number, help="give c directly instead of --next")
    p.add_argument("--parity", choices=[EVEN, ODD], default=EVEN)
    if allow_file:
        p.add_argument("--coeffs", help="coefficient file: JSON array or one number per line, ascending")
        p.add_argument("--sr-tol", type=float, default=SR_TOL, help="palindrome tolerance for file input")


def _spec_from_flags(args) -> FamilySpec:
    missing = [name for name in ("kind", "n") if getattr(args, name) is None]
    if missing:
        raise UsageError(f"missing --{' --'.join(missing)}")
    if args.c is not None and args.next_ is not None:
        raise UsageError("give either --next or --c, not both")
    lead = 1 if args.lead is None else args.lead
    if args.c is not None:
        return spec_from_c(args.kind, args.n, args.c, lead, args.parity)
    if args.next_ is None or args.lead is None:
        raise UsageError("need --lead and --next (or --c)")
    return FamilySpec(args.kind, args.n, args.lead, args.next_, args.parity)


def _has_flags(args) -> bool:
    return any(getattr(args, k, None) is not None for k in ("kind", "n", "lead", "next_", "c"))


def _input(args, detect_tol: float = families.DETECT_TOL):
    """(polynomial, spec or None) from exactly one of flags / --coeffs."""
    from_file = getattr(args, "coeffs", None) is not None
    if from_file and _has_flags(args):
        raise UsageError("give family flags or --coeffs, not both")
    if from_file:
        try:
            P = load_self_reciprocal(args.coeffs, args.sr_tol)
        except OSError as exc:
            raise UsageError(f"cannot read {args.coeffs}: {exc.strerror}")
        return P, None
    if not _has_flags(args):
        raise UsageError("no input: give family flags or --coeffs")
    spec = _spec_from_flags(args)
    return construct(spec), spec


def cmd_gen(args, out) -> int:
    if getattr(args, "coeffs", None):
        raise UsageError("gen builds from flags only")
    spec = _spec_from_flags(args)
    P = construct(spec)
    coeffs = [_plain(v) for v in P.coeffs]
    if args.format == "text":
        out.write("".join(f"{v!r}\n" for v in coeffs))
    else:
        out.write(_dumps(coeffs, compact=True))
    return EXIT_OK


def cmd_detect(args, out) -> int:
    if args.coeffs is None:
        raise UsageError("detect needs --coeffs")
    P = load_self_reciprocal(args.coeffs, args.sr_tol)
    spec = detect_class(P, args.tol)
    alternatives = sorted(s.kind.value for s in match_classes(P, args.tol) if s.kind is not spec.kind)
    doc = spec.to_dict()
    doc["alternatives"] = alternatives
    if args.format == "text":
        out.write(f"{spec.kind.value} n={spec.n} lead={doc['lead']} next={doc['next']} {spec.parity}\n")
    else:
        out.write(_dumps(doc))
    return EXIT_OK


def cmd_classify(args, out) -> int:
    P, spec = _input(args)
    if spec is None:
        spec = detect_class(P, args.tol)
    cls = classify(spec, args.boundary_tol)
    doc = cls.to_dict()
    doc["spec"] = spec.to_dict()
    if args.format == "text":
        out.write(
            f"{doc['case']} c={doc['c_alpha']!r} thresholds=({doc['f_minus']!r}, {doc['f_plus']!r}) "
            f"on={doc['on_circle_count']} off={doc['off_circle_count']} boundary={doc['boundary_multiplicity']}\n"
        )
    else:
        out.write(_dumps(doc))
    return EXIT_OK


def cmd_roots(args, out) -> int:
    P, spec = _input(args)
    if args.method == "bracket":
        if spec is None:
            spec = detect_class(P, args.tol)
        rs = roots.full_rootset(P, spec)
    else:
        rs = roots.full_rootset(P, None, args.solver_tol, args.max_iter, args.circle_tol)
    doc = rs.to_dict()
    doc["method"] = args.method
    doc["degree"] = P.degree
    if args.format == "text":
        for cz in rs.circle:
            out.write(f"theta {cz.theta!r} x{cz.multiplicity}\n")
        for v in rs.real_off:
            out.write(f"real {v!r}\n")
        for w in rs.complex_off:
            out.write(f"complex {w.real!r} {w.imag!r}\n")
    else:
        out.write(_dumps(doc))
    return EXIT_OK


def cmd_sweep(args, out) -> int:
    table = verify.sweep(args.kind, args.n, args.c_min, args.c_max, args.steps, not args.no_refine, args.boundary_tol)
    if args.format == "json":
        out.write(
            _dumps(
                {
                    "c": list(table.c_grid),
                    "x": [list(r) for r in table.x],
                    "theta": [[verify._json_value(v) for v in r] for r in table.theta],
                    "case": list(table.cases),
                    "x_nondecreasing": table.monotone(),
                    "theta_direction": table.theta_directions(),
                }
            )
        )
    else:
        out.write(table.to_csv())
    return EXIT_OK if all(table.monotone()) else EXIT_CHECK_FAILED


def cmd_verify(args, out) -> int:
    report = verify.run_suite(args.cases, args.seed, (args.n_min, args.n_max))
    out.write(report.to_json())
    return EXIT_OK if report.overall else EXIT_CHECK_FAILED


def cmd_cheb(args, out) -> int:
    doc = {"kind": args.kind, "n": args.n, "coeffs": list(cheb_coeffs(args.kind, args.n).coeffs)}
    if args.zeros:
        if args.n < 1:
            raise UsageError("zeros need --n >= 1")
        doc["zeros"] = [float(x) for x in cheb_zeros(args.kind, args.n)]
    out.write(_dumps(doc))
    return EXIT_OK


def cmd_identities(args, out) -> int:
    report = verify.identity_audit(args.n_max, args.seed)
    out.write(report.to_json())
    return EXIT_OK if report.overall else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="srpoly",
        description="Self-reciprocal polynomials from Chebyshev quasi-orthogonal combinations.",
    )
    parser.add_argument("--output", "-o", help="write to this file instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="build a family member")
    _add_family_args(p)
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("detect", help="find the family of a coefficient file")
    p.add_argument("--coeffs")
    p.add_argument("--sr-tol", type=float, default=SR_TOL)
    p.add_argument("--tol", type=float, default=families.DETECT_TOL)
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("classify", help="predicted zero layout")
    _add_family_args(p)
    p.add_argument("--tol", type=float, default=families.DETECT_TOL, help="detection tolerance")
    p.add_argument("--boundary-tol", type=float, default=families.BOUNDARY_TOL)
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("roots", help="zeros of a member or a coefficient file")
    _add_family_args(p)
    p.add_argument("--method", choices=["bracket", "oracle"], default="bracket")
    p.add_argument("--tol", type=float, default=families.DETECT_TOL, help="detection tolerance")
    p.add_argument("--solver-tol", type=float, default=roots.ORACLE_TOL)
    p.add_argument("--max-iter", type=int, default=roots.ORACLE_MAX_ITER)
    p.add_argument("--circle-tol", type=float, default=roots.CIRCLE_TOL)
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("sweep", help="zeros of Q_n - c Q_{n-1} along a grid of c, as CSV")
    p.add_argument("--kind", choices=[k.value for k in ChebKind], type=str.upper, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--c-min", type=float, required=True)
    p.add_argument("--c-max", type=float, required=True)
    p.add_argument("--steps", type=int, default=50)
    p.add_argument("--no-refine", action="store_true", help="skip the extra points around thresholds")
    p.add_argument("--boundary-tol", type=float, default=families.BOUNDARY_TOL)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="randomized and fixed verification suite")
    p.add_argument("--cases", type=int, default=200, help="random members per kind")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=20)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cheb", help="coefficients and zeros of one Chebyshev polynomial")
    p.add_argument("--kind", choices=[k.value for k in ChebKind], type=str.upper, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--zeros", action="store_true")
    p.set_defaults(func=cmd_cheb)

    p = sub.add_parser("identities", help="audit the Chebyshev identities and the T-basis fold")
    p.add_argument("--n-max", type=int, default=30)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_identities)
    return parser


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.output:
            with open(args.output, "w") as fh:
                return args.func(args, fh)
        return args.func(args, stdout)
    except UsageError as exc:
        stderr.write(f"srpoly {args.command}: {exc}\n")
        return EXIT_USAGE
    except (SRPolyError, ValueError) as exc:
        stderr.write(f"srpoly {args.command}: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        stderr.write(f"srpoly {args.command}: {exc.filename}: {exc.strerror}\n")
        return EXIT_USAGE
    except NoConvergence as exc:
        stderr.write(f"srpoly {args.command}: {exc}\n")
        return EXIT_NO_CONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
