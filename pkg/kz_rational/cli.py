from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from dataclasses import replace
from pathlib import Path
from typing import Sequence

from .arith import RFMatrix, ground_types, to_latex, u_ring
from .assembly import assemble_product, oracle_report, verify_full_system
from .config import BUILTIN_TIERS, ConfigError, load_selftest_config, parse_base_points, parse_selftest_config
from .coords import coordinate_maps, h_asymptotic_check, h_cross_validation, h_matrix
from .errors import DegenerateBasePoints, KZError, ParseError
from .explain import render_text, summarize
from .hypergeom import build_n3_solution, rationality_certificate
from .models import AssembledSolution, CheckReport, CheckResult
from .selftest import run_selftest
from .serialization import load_any, solution_to_document, write_document
from .spectra import omega_eigensystem, omega_matrix

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def _show(matrix: RFMatrix, latex: bool) -> str:
    if latex:
        return to_latex(matrix)
    return "\n".join("[" + ", ".join(str(x) for x in row) + "]" for row in matrix.entries)


def _finish(report: CheckReport, args: argparse.Namespace) -> int:
    sys.stdout.write(render_text(report))
    if args.report is not None:
        args.report.write_text(json.dumps(summarize(report), sort_keys=True, indent=2) + "\n", encoding="utf-8")
    return report.exit_status


def _usage(message: str) -> int:
    sys.stderr.write(f"usage error: {message}\n")
    return EXIT_USAGE


def cmd_construct(args: argparse.Namespace) -> int:
    try:
        base = parse_base_points(args.base, args.n) if args.base else None
    except DegenerateBasePoints as exc:
        return _usage(f"base points must be distinct ({exc})")
    except ConfigError as exc:
        return _usage(str(exc))
    solution = assemble_product(args.n, args.rho, base)
    logger.info("assembled n=%d rho=%d", args.n, args.rho)
    if args.out is not None:
        write_document(args.out, solution_to_document(solution))
        sys.stdout.write(f"wrote {args.out}\n")
    else:
        sys.stdout.write(_show(solution.product, args.latex) + "\n")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        loaded = load_any(args.input)
    except ParseError as exc:
        return _usage(str(exc))
    except OSError as exc:
        return _usage(f"cannot read {args.input}: {exc.strerror}")
    if isinstance(loaded, AssembledSolution):
        if loaded.rho != args.rho:
            return _usage(f"document was built for rho={loaded.rho}, not {args.rho}")
        matrix, n = loaded.product, loaded.n
    else:
        matrix, n = loaded, loaded.rows
    rng = random.Random(args.seed)
    report = verify_full_system(matrix, n, args.rho, rng=rng)
    if args.oracle:
        report = report.extend(oracle_report(matrix, n, args.rho, order=args.oracle, rng=rng).results)
    return _finish(report, args)


def cmd_omega(args: argparse.Namespace) -> int:
    if args.n < 2:
        return _usage(f"omega needs n >= 2, got {args.n}")
    if args.s is not None and not 1 <= args.s <= args.n - 1:
        return _usage(f"--s must lie in 1..{args.n - 1} for n={args.n}, got {args.s}")
    targets = range(1, args.n) if args.s is None else [args.s]
    results = []
    for s in targets:
        omega = omega_matrix(args.n, s)
        system = omega_eigensystem(args.n, s)
        sys.stdout.write(f"Omega_{s} =\n{_show(RFMatrix.from_rows(u_ring(args.n), omega.matrix), args.latex)}\n")
        sys.stdout.write(f"eigenvalues: {list(system.eigenvalues)}\n")
        results.append(CheckResult(f"Omega_{s} block form and eigenvectors", "pass"))
    return _finish(CheckReport(command=f"omega n={args.n}", results=tuple(results)), args)


def cmd_coords(args: argparse.Namespace) -> int:
    maps = coordinate_maps(args.n)
    sys.stdout.write(f"S =\n{_show(maps.s_matrix, args.latex)}\n")
    sys.stdout.write(f"S^-1 =\n{_show(maps.s_inverse, args.latex)}\n")
    for k in range(1, args.n + 1):
        sys.stdout.write(f"H_{k} =\n{_show(h_matrix(args.n, k).matrix, args.latex)}\n")
    report = h_cross_validation(args.n)
    if args.n >= 3:
        report = report.extend(h_asymptotic_check(args.n).results)
    return _finish(report, args)


def cmd_hypergeom(args: argparse.Namespace) -> int:
    if args.rho == 0:
        return _usage("rho must be nonzero")
    report = rationality_certificate(args.rho)
    if not report.failed:
        solution = build_n3_solution(args.rho)
        for idx, psi in enumerate(solution.psi, start=1):
            sys.stdout.write(f"psi{idx}(y) = {psi}\n")
    return _finish(report, args)


def cmd_selftest(args: argparse.Namespace) -> int:
    try:
        config = load_selftest_config(args.config) if args.config else parse_selftest_config({})
        if args.seed is not None:
            config = replace(config, seed=args.seed)
        report = run_selftest(config, args.tier or ["smoke"])
    except ConfigError as exc:
        return _usage(str(exc))
    return _finish(report, args)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kz-rational",
        description="Exact rational fundamental solutions of the KZ equations for S_n and their verification.",
    )
    parser.add_argument("--verbose", action="store_true", help="log at DEBUG level")
    parser.add_argument("--report", type=Path, help="write a JSON report of the checks")
    sub = parser.add_subparsers(dest="command", required=True)

    construct = sub.add_parser("construct", help="assemble W = W_1 ... W_n")
    construct.add_argument("--n", type=int, required=True)
    construct.add_argument("--rho", type=int, required=True)
    construct.add_argument("--base", help="comma list of distinct rationals, e.g. 0,1,2")
    construct.add_argument("--out", type=Path)
    construct.add_argument("--latex", action="store_true")
    construct.set_defaults(handler=cmd_construct)

    verify = sub.add_parser("verify", help="verify a stored solution against all n equations")
    verify.add_argument("--in", dest="input", type=Path, required=True)
    verify.add_argument("--rho", type=int, required=True)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--oracle", type=int, default=0, metavar="ORDER", help="also compare with the Taylor oracle")
    verify.set_defaults(handler=cmd_verify)

    omega = sub.add_parser("omega", help="print Omega_s and its spectrum")
    omega.add_argument("--n", type=int, required=True)
    omega.add_argument("--s", type=int)
    omega.add_argument("--latex", action="store_true")
    omega.set_defaults(handler=cmd_omega)

    coords = sub.add_parser("coords", help="print S, S^-1 and the H matrices")
    coords.add_argument("--n", type=int, required=True)
    coords.add_argument("--latex", action="store_true")
    coords.set_defaults(handler=cmd_coords)

    hypergeom = sub.add_parser("hypergeom", help="rationality certificate for the n = 3 Gauss equation")
    hypergeom.add_argument("--rho", type=int, required=True)
    hypergeom.set_defaults(handler=cmd_hypergeom)

    selftest = sub.add_parser("selftest", help="run the acceptance suite")
    selftest.add_argument("--tier", action="append", help=f"one of {sorted(BUILTIN_TIERS)} or a configured tier")
    selftest.add_argument("--config", type=Path)
    selftest.add_argument("--seed", type=int)
    selftest.set_defaults(handler=cmd_selftest)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    logger.debug("sympy ground types: %s", ground_types())
    try:
        return args.handler(args)
    except KZError as exc:
        sys.stderr.write(f"failed: {exc}\n")
        return EXIT_FAILED


if __name__ == "__main__":
    raise SystemExit(main())
