"""Command-line front end: run single checks, full suites, or solvers.

Exit codes: 0 all statuses matched expectations, 1 on mismatch, 2 on usage
errors. Rationals are always rendered as exact 'p/q' strings, never floats.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .checks import (
    DOMAIN_ERROR,
    FAIL,
    PASS,
    CheckReport,
    IDENTITIES,
    SuiteManifest,
    UnknownIdentityError,
    default_manifest,
    load_manifest_file,
    run_check,
    run_suite,
)
from .operators import ANTIDER, KINDS, OperatorSpec
from .rings import matrix_ring, rational, scalar_ring
from .series import DomainError, parse_series
from .solvers import (
    FORMS,
    HOMOGENEOUS,
    INHOM_LEFT,
    EquationSpec,
    SolverUsageError,
    inhom_closed_commutative,
    inhom_closed_noncommutative,
    inhom_closed_weight0,
    picard_solve,
    spitzer_closed,
)


class UsageError(ValueError):
    pass


def _parse_rational(text: str, flag: str):
    try:
        return rational(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"{flag}: malformed rational {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rbseries",
        description="Exact verification and solving of Rota-Baxter series identities",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--operator", choices=KINDS, default="qint")
        p.add_argument("--q", default="1/2", help="rational parameter, e.g. 1/2")
        p.add_argument("--order", type=int, default=16, help="truncation cap")
        p.add_argument("--dim", type=int, default=1, help="matrix dimension (1 = scalar)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--samples", type=int, default=10)
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--a0", help="series coefficients c0,c1,... e.g. 0,1")
        p.add_argument("--a1", help="series coefficients c0,c1,...")

    p_verify = sub.add_parser("verify", help="run a single identity check")
    p_verify.add_argument("identity", help="identity id, e.g. eulerian-prop-two")
    common(p_verify)
    p_verify.add_argument(
        "--expect", choices=(PASS, FAIL, DOMAIN_ERROR), default=PASS
    )

    p_suite = sub.add_parser("suite", help="run a check manifest")
    p_suite.add_argument("--manifest", help="path to a manifest JSON file")
    p_suite.add_argument("--format", choices=("text", "json"), default="text")

    p_solve = sub.add_parser("solve", help="solve a linear equation")
    p_solve.add_argument("--equation", choices=FORMS, default=INHOM_LEFT)
    p_solve.add_argument(
        "--method", choices=("picard", "closed"), default="picard"
    )
    common(p_solve)
    return parser


def _check_params(args: argparse.Namespace) -> dict:
    params: dict = {
        "operator": args.operator,
        "order": args.order,
        "dim": args.dim,
        "seed": args.seed,
        "samples": args.samples,
    }
    if args.operator != ANTIDER:
        params["q"] = args.q
    else:
        params.pop("q", None)
    if getattr(args, "a0", None):
        params["a0"] = args.a0
    if getattr(args, "a1", None):
        params["a1"] = args.a1
    return params


def _validate_operator(args: argparse.Namespace) -> OperatorSpec:
    if args.operator == ANTIDER:
        return OperatorSpec(ANTIDER)
    q = _parse_rational(args.q, "--q")
    try:
        return OperatorSpec(args.operator, q)
    except ValueError as exc:
        raise UsageError(f"--q: {exc}")


def report_to_dict(report: CheckReport) -> dict:
    mm = None
    if report.first_mismatch is not None:
        mm = {
            "power": report.first_mismatch.power,
            "lhs": report.first_mismatch.lhs,
            "rhs": report.first_mismatch.rhs,
        }
    return {
        "identity_id": report.identity_id,
        "params": {k: str(v) for k, v in report.params.items()},
        "status": report.status,
        "first_mismatch": mm,
        "elapsed_ms": round(report.elapsed * 1000, 3),
    }


def emit_report(reports: Sequence[CheckReport], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([report_to_dict(r) for r in reports], indent=2)
    lines = []
    for r in reports:
        params = " ".join(f"{k}={v}" for k, v in r.params.items())
        line = f"{r.identity_id} [{params}] {r.status.upper()}"
        if r.first_mismatch is not None:
            mm = r.first_mismatch
            line += f" (first mismatch at t^{mm.power}: lhs={mm.lhs}, rhs={mm.rhs})"
        lines.append(line)
    return "\n".join(lines)


def _cmd_verify(args: argparse.Namespace) -> int:
    if args.identity not in IDENTITIES:
        raise UsageError(f"unknown identity id: {args.identity!r}")
    if args.order < 0:
        raise UsageError("--order must be >= 0")
    if args.operator != ANTIDER:
        _validate_operator(args)
    report = run_check(args.identity, _check_params(args))
    print(emit_report([report], args.format))
    return 0 if report.status == args.expect else 1


def _cmd_suite(args: argparse.Namespace) -> int:
    if args.manifest:
        manifest = load_manifest_file(args.manifest)
    else:
        manifest = default_manifest()
    try:
        reports = run_suite(manifest)
    except UnknownIdentityError as exc:
        raise UsageError(f"unknown identity id in manifest: {exc.args[0]!r}")
    print(emit_report(reports, args.format))
    ok = all(r.status == e.expected for e, r in zip(manifest.entries, reports))
    return 0 if ok else 1


def _cmd_solve(args: argparse.Namespace) -> int:
    if args.order < 0:
        raise UsageError("--order must be >= 0")
    op = _validate_operator(args)
    ring = scalar_ring() if args.dim == 1 else matrix_ring(args.dim)
    if not args.a1:
        raise UsageError("solve requires --a1")
    try:
        a1 = parse_series(args.a1, ring, args.order)
        a0 = parse_series(args.a0, ring, args.order) if args.a0 else None
        if args.equation == HOMOGENEOUS:
            eq = EquationSpec(HOMOGENEOUS, op, a1)
        else:
            if a0 is None:
                raise UsageError(f"--equation {args.equation} requires --a0")
            eq = EquationSpec(args.equation, op, a1, a0)
        solution = _solve(eq, args.method)
    except UsageError:
        raise
    except (ValueError, DomainError) as exc:
        raise UsageError(str(exc))
    if args.format == "json":
        print(json.dumps(solution.to_json()))
    else:
        print(solution)
    return 0


def _solve(eq: EquationSpec, method: str):
    if method == "picard":
        return picard_solve(eq)
    if eq.form == HOMOGENEOUS:
        return spitzer_closed(eq.op, eq.a1)
    try:
        if eq.a1.ring.commutative and eq.op.weight != 0:
            return inhom_closed_commutative(eq)
        if eq.op.weight == 0:
            return inhom_closed_weight0(eq)
        side = "left" if eq.form == INHOM_LEFT else "right"
        return inhom_closed_noncommutative(eq, side)
    except SolverUsageError as exc:
        raise UsageError(str(exc))


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "suite":
            return _cmd_suite(args)
        return _cmd_solve(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
