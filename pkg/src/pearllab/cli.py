"""Command-line interface: ``pearllab <subcommand> ...``.

Exit codes: 0 success (flagged checks allowed), 1 a check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys

from . import checks, clifford, geom, pearl, quantum, rh
from .complexes import homology_over_Z
from .config import Settings
from .exact import format_poly, poly_eval, smith_normal_form


class UsageError(Exception):
    pass


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(s) for s in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _signs(text: str) -> pearl.SignChoice:
    try:
        return pearl.SignChoice.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def cmd_hf(args, out) -> int:
    h = pearl.floer_cohomology(args.signs, args.zeta, args.char)
    if args.char == 0:
        out.write(f"HF^0 = {h.even}, HF^1 = {h.odd}\n")
    else:
        out.write(f"dim HF^0 = {h.even}, dim HF^1 = {h.odd} over F_{args.char}\n")
    det = pearl.floer_determinant(args.signs, args.zeta)
    out.write(f"det(d: odd -> even) = {det}; 8Z - 3XY = {args.signs.formula_value()}\n")
    return 0


def cmd_morse(args, out) -> int:
    M = pearl.morse_matrix()
    snf = smith_normal_form(M)
    h = homology_over_Z(pearl.morse_complex())
    for i, row in enumerate(M.to_ints()):
        terms = " + ".join(f"{c if c != 1 else ''}x{j + 1}" for j, c in enumerate(row) if c)
        out.write(f"d x{i + 1}' = {terms}\n")
    out.write(f"SNF: diag{tuple(snf.invariant_factors)}\n")
    out.write(f"H^even = {h.even}, H^odd = {h.odd}\n")
    return 0


def cmd_qh(args, out) -> int:
    pres = quantum.get_presentation(args.config)
    poly = quantum.c1_char_poly(pres)
    out.write(f"char poly: {format_poly(poly)}\n")
    published = quantum.PUBLISHED_CHAR_POLYS[pres.name]
    if published != poly:
        out.write(f"flagged: published table lists {format_poly(published)}\n")
    if args.char:
        out.write(f"spectrum mod {args.char}: {sorted(quantum.spectrum_mod_p(pres, args.char))}\n")
    return 0


def cmd_m0(args, out) -> int:
    pres = quantum.get_presentation(args.config)
    value = poly_eval(quantum.c1_char_poly(pres), args.value)
    ok = quantum.eigenvalue_test(args.value, pres, args.char)
    out.write(f"chi({args.value}) = {value}; eigenvalue mod {args.char}: {'yes' if ok else 'no'}\n")
    return 0


def cmd_clifford(args, out) -> int:
    form = clifford.load_form(args.form) if args.form else None
    p = form.p if form else 5
    s = checks.clifford_summary(args.zeta, p, form, args.settings.seed)
    for key, val in s.items():
        out.write(f"{key}: {val}\n")
    return 0


def cmd_disc(args, out) -> int:
    d = geom.axial_disc(args.kind, args.samples)
    w = geom.maslov_via_winding(d, args.settings.winding_tol)
    out.write(f"winding = {w.winding:.9f}\nmaslov = {w.maslov}\n")
    out.write(f"max boundary moment map = {geom.boundary_moment_error(d):.2e}\n")
    out.write(f"H_1 class of boundary = {geom.h1_class(d.monodromy)} in Z/4\n")
    return 0


def cmd_intersect(args, out) -> int:
    res = geom.torus_chiang_intersection(tol=args.settings.residual_tol)
    for f in res.families:
        out.write(f"theta = ({f.theta1:.12f} + phi, phi, {f.theta3:.12f} + phi), residual {f.residual:.1e}\n")
    out.write(f"families: {len(res.families)}; perturbed intersection points: {res.perturbed_count}\n")
    return 0


def cmd_rh(args, out) -> int:
    d = rh.oh_dimensions(args.kappa)
    out.write(f"ker = {d.ker}, coker = {d.coker}, index = {d.index}\n")
    out.write(f"regular: {rh.is_regular(args.kappa)}, nonnegative: {rh.is_nonneg(args.kappa)}\n")
    return 0


def cmd_caseb(args, out) -> int:
    c = geom.case_b_contradiction()
    out.write(f"rank = {c.rank}, augmented rank = {c.augmented_rank}\n")
    out.write(f"certificate y = ({', '.join(str(v) for v in c.certificate)}), y.b = {c.certificate_value}\n")
    out.write("inconsistent\n" if c.inconsistent else "consistent\n")
    return 0


def cmd_verify_all(args, out) -> int:
    records = checks.run_all(args.settings)
    out.write(checks.to_json(records) if args.json else checks.to_table(records))
    return checks.exit_code(records)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pearllab", description="Floer-theoretic computations for the Chiang Lagrangian.")
    parser.add_argument("--settings", metavar="FILE", help="TOML file overriding the numerical settings")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hf", help="Floer cohomology of the pearl complex")
    p.add_argument("--signs", type=_signs, default=pearl.SignChoice())
    p.add_argument("--zeta", type=int, default=1)
    p.add_argument("--char", type=int, default=0, help="0 for Z, else a prime")
    p.set_defaults(func=cmd_hf)

    p = sub.add_parser("morse", help="Morse differential and cohomology of L_Delta")
    p.set_defaults(func=cmd_morse)

    p = sub.add_parser("qh", help="characteristic polynomial of c1*")
    p.add_argument("--config", required=True, choices=["delta", "T", "O", "I"])
    p.add_argument("--char", type=int, default=0)
    p.set_defaults(func=cmd_qh)

    p = sub.add_parser("m0-test", help="is a value an eigenvalue of c1* mod p")
    p.add_argument("--value", type=int, required=True)
    p.add_argument("--config", required=True, choices=["delta", "T", "O", "I"])
    p.add_argument("--char", type=int, required=True)
    p.set_defaults(func=cmd_m0)

    p = sub.add_parser("clifford", help="Clifford algebra invariants")
    p.add_argument("--zeta", type=int, default=1)
    p.add_argument("--form", metavar="FILE", help="TOML file with 'matrix' and 'p'")
    p.set_defaults(func=cmd_clifford)

    p = sub.add_parser("disc", help="Maslov index of an axial disc by winding number")
    p.add_argument("--kind", required=True, choices=sorted(geom.AXIAL))
    p.add_argument("--samples", type=int, default=None)
    p.set_defaults(func=cmd_disc)

    p = sub.add_parser("intersect", help="Clifford torus meets the Chiang Lagrangian")
    p.set_defaults(func=cmd_intersect)

    p = sub.add_parser("rh", help="kernel and cokernel from partial indices")
    p.add_argument("--kappa", type=_ints, required=True)
    p.set_defaults(func=cmd_rh)

    p = sub.add_parser("caseb", help="inconsistency certificate for the case (b) system")
    p.set_defaults(func=cmd_caseb)

    p = sub.add_parser("verify-all", help="run every check")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify_all)
    return parser


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.settings = Settings.load(args.settings)
        if getattr(args, "samples", None) is None and args.command == "disc":
            args.samples = args.settings.samples
        return args.func(args, out)
    except (ValueError, KeyError, OSError) as exc:
        sys.stderr.write(f"pearllab {args.command}: error: {exc}\n")
        return 2


def main(argv=None) -> int:
    try:
        return run(argv)
    except SystemExit as exc:
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
