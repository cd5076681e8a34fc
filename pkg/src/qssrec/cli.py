"""Command-line entry point: ``qssrec {analyze,reconstruct,golden,audit}``.

Exit codes: 0 success, 1 input error, 2 verification mismatch,
3 precondition violation (e.g. a share set that is not qualified).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .golden import run_golden
from .io import (
    CodeFormatError,
    load_five_qubit_code,
    load_five_qubit_codewords,
    parse_secret,
    read_code,
    read_state,
    write_state,
)
from .oracle import (
    EnumerationBudgetError,
    audit_dimensions,
    brute_force_erasure_check,
    full_access_structure,
    subsets_by_mask,
)
from .qstate import DEFAULT_TOL
from .reconstruct import build_u_rec
from .symplectic import NotQualifiedError, SharePartition, analyze

EXIT_OK, EXIT_INPUT, EXIT_MISMATCH, EXIT_PRECONDITION = 0, 1, 2, 3


class InputError(Exception):
    pass


def _parse_J(text, n):
    try:
        J = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise InputError(f"--J expects comma-separated integers, got {text!r}") from exc
    if any(not 1 <= j <= n for j in J):
        raise InputError(f"--J indices must lie in 1..{n}")
    return SharePartition(n, tuple(J))


def _load_code(args):
    if args.code is None:
        raise InputError("--code is required")
    try:
        return read_code(args.code)
    except OSError as exc:
        raise InputError(str(exc)) from exc


def _load_codewords(args, code):
    if not getattr(args, "codewords", None):
        return None
    try:
        words = [read_state(p, args.tol) for p in args.codewords]
    except OSError as exc:
        raise InputError(str(exc)) from exc
    if len(words) != code.q**code.k or any((w.q, w.m) != (code.q, code.n) for w in words):
        raise InputError(f"need {code.q ** code.k} codeword files of {code.n} qudits each")
    return words


def _emit(args, payload, lines):
    if args.json:
        print(json.dumps(payload, indent=2, default=str))
    else:
        print("\n".join(lines))


def cmd_analyze(args):
    code = _load_code(args)
    if args.all:
        codewords = _load_codewords(args, code)
        report = full_access_structure(code, codewords=codewords, tol=args.tol)
        _emit(args, report.as_dict(), report.lines())
        summary = (f"qualified={len(report.qualified_sets())} forbidden={len(report.forbidden_sets())} "
                   f"intermediate={len(report.intermediate_sets())} consistent={report.consistent}")
        print(summary, file=sys.stderr)
        return EXIT_OK if report.consistent else EXIT_MISMATCH
    if args.J is None:
        raise InputError("analyze needs --J or --all")
    part = _parse_J(args.J, code.n)
    a = analyze(code, part)
    try:
        brute = brute_force_erasure_check(code, part.Jbar)
    except EnumerationBudgetError:
        brute = None
    verdict = "qualified" if a.qualified else "not-qualified"
    line = (f"J={part} {verdict} ell={a.ell} dim_C_J={a.dim_C_J} dim_C_Jbar={a.dim_C_Jbar} "
            f"ell_equals_Jbar={'yes' if a.ell_equals_Jbar else 'no'} "
            f"brute={'skipped' if brute is None else ('Q' if brute else 'not-Q')}")
    payload = {"J": list(part.J), "qualified": a.qualified, "ell": a.ell, "dim_C_J": a.dim_C_J,
               "dim_C_Jbar": a.dim_C_Jbar, "ell_equals_Jbar": a.ell_equals_Jbar, "brute": brute}
    _emit(args, payload, [line])
    return EXIT_MISMATCH if brute is not None and brute != a.qualified else EXIT_OK


def cmd_reconstruct(args):
    code = _load_code(args)
    if args.J is None or args.secret is None:
        raise InputError("reconstruct needs --J and --secret")
    part = _parse_J(args.J, code.n)
    alpha = parse_secret(args.secret, code.q, code.k, args.tol)
    if abs(np.vdot(alpha, alpha).real - 1) > args.tol:
        print(f"error: secret is not normalised (squared norm {np.vdot(alpha, alpha).real:.12g})", file=sys.stderr)
        return EXIT_PRECONDITION
    if not code.field.is_prime:
        print(f"error: state simulation needs a prime field, got q={code.q}", file=sys.stderr)
        return EXIT_PRECONDITION
    codewords = _load_codewords(args, code)
    try:
        plan = build_u_rec(code, part, codewords, tol=args.tol)
    except NotQualifiedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    report = plan.reconstruct(alpha)
    if args.emit_state:
        write_state(report.output_state, args.emit_state)
    payload = dict(report.as_dict(), J=list(part.J), ell=plan.analysis.ell,
                   unitarity_error=plan.unitarity_error())
    lines = [f"J={part} ell={plan.analysis.ell} secret_register={','.join(map(str, report.secret_register))}",
             f"secret_fidelity={report.secret_fidelity:.12f}",
             f"purity={report.purity_of_secret_register:.12f}",
             f"residual_entanglement={report.residual_entanglement:.3e}"]
    _emit(args, payload, lines)
    return EXIT_OK if report.secret_fidelity >= 1 - args.tol else EXIT_MISMATCH


def cmd_golden(args):
    code = load_five_qubit_code() if args.code is None else _load_code(args)
    if args.codewords:
        codewords = _load_codewords(args, code)
    else:
        codewords = load_five_qubit_codewords(args.tol)
    results = run_golden(code, codewords, tol=args.tol)
    _emit(args, [r.__dict__ for r in results], [r.line() for r in results])
    return EXIT_OK if all(r.passed for r in results) else EXIT_MISMATCH


def cmd_audit(args):
    code = _load_code(args)
    if args.all:
        parts = [SharePartition(code.n, J) for J in subsets_by_mask(code.n)]
    elif args.J is not None:
        parts = [_parse_J(args.J, code.n)]
    else:
        raise InputError("audit needs --J or --all")
    audits = [audit_dimensions(code, p) for p in parts]
    payload = [{"J": list(a.J), "qualified": a.qualified, "ell": a.ell, "dims": a.dims, "checks": a.checks}
               for a in audits]
    _emit(args, payload, [line for a in audits for line in a.lines()])
    return EXIT_OK if all(a.ok for a in audits) else EXIT_MISMATCH


def build_parser():
    parser = argparse.ArgumentParser(prog="qssrec", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--code", help="stabilizer file ('q n k' header, then n-k generator rows)")
        p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="numerical tolerance (default %(default)g)")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        return p

    p = common(sub.add_parser("analyze", help="qualified / forbidden classification"))
    p.add_argument("--J", help="candidate qualified set, e.g. 3,4,5")
    p.add_argument("--all", action="store_true", help="classify all 2^n subsets")
    p.add_argument("--codewords", nargs="+", help="state files psi(0), psi(1), ... for the state oracle")
    p.set_defaults(func=cmd_analyze)

    p = common(sub.add_parser("reconstruct", help="run unitary reconstruction for a qualified J"))
    p.add_argument("--J", help="qualified set, e.g. 3,4,5")
    p.add_argument("--secret", help="state file, or inline amplitudes such as 0.6,0.8")
    p.add_argument("--codewords", nargs="+", help="state files psi(0), psi(1), ... (default: synthesized)")
    p.add_argument("--emit-state", help="write the full output state here")
    p.set_defaults(func=cmd_reconstruct)

    p = common(sub.add_parser("golden", help="check the bundled [[5,1,3]] example"))
    p.add_argument("--codewords", nargs="+", help="override the bundled psi(0), psi(1) state files")
    p.set_defaults(func=cmd_golden, tol=1e-9)

    p = common(sub.add_parser("audit", help="recompute and check subspace dimension identities"))
    p.add_argument("--J", help="share set to audit")
    p.add_argument("--all", action="store_true", help="audit all 2^n subsets")
    p.set_defaults(func=cmd_audit)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (InputError, CodeFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
