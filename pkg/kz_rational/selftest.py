from __future__ import annotations

import logging
import random
from typing import Callable, Iterable

from .assembly import assemble_product, oracle_report, verify_full_system
from .asymptotics import check_leading_asymptotics
from .builder import check_degree_law, fundamental_solution
from .config import ConfigError
from .coords import h_asymptotic_check, h_cross_validation
from .errors import KZError
from .hypergeom import hypergeometric_vector_identities, rationality_certificate
from .models import CheckReport, CheckResult, SelftestConfig, SelftestTier
from .spectra import omega_eigensystem, trace_identity_holds
from .symmetric import check_consistency, check_transposition_relations

logger = logging.getLogger(__name__)

CONSISTENCY_MAX_N = 5
RELATIONS_MAX_N = 6
CROSS_VALIDATION_MAX_N = 4


def _prefixed(prefix: str, report: CheckReport) -> list[CheckResult]:
    return [
        CheckResult(f"{prefix}: {r.name}", r.status, r.witness, r.elapsed) for r in report.results
    ]


def _guarded(prefix: str, build: Callable[[], CheckReport]) -> list[CheckResult]:
    try:
        return _prefixed(prefix, build())
    except KZError as exc:
        return [CheckResult(prefix, "fail", str(exc))]


def run_case(n: int, rho: int, config: SelftestConfig, rng: random.Random) -> list[CheckResult]:
    prefix = f"n={n} rho={rho}"
    logger.info("selftest case %s", prefix)
    try:
        solution = assemble_product(n, rho)
    except KZError as exc:
        return [CheckResult(f"{prefix}: construct", "fail", str(exc))]

    results = [CheckResult(f"{prefix}: construct", "pass")]
    results += _guarded(prefix, lambda: verify_full_system(solution.product, n, rho, rng=rng))
    results += _guarded(prefix, lambda: check_degree_law(fundamental_solution(n, rho)))
    if n <= CONSISTENCY_MAX_N:
        results += _guarded(prefix, lambda: check_consistency(n, rho))
    if abs(rho) == 1:
        results += _guarded(
            prefix,
            lambda: oracle_report(
                solution.product, n, rho, order=config.oracle_order, centers=config.oracle_centers, rng=rng
            ),
        )
        if n == 3:
            results += _guarded(prefix, lambda: check_leading_asymptotics(solution, n, rho, rng=rng))
    if n == 3 and rho != 0:
        results += _guarded(prefix, lambda: rationality_certificate(rho))
    return results


def run_spectra(max_n: int) -> list[CheckResult]:
    results: list[CheckResult] = []
    for n in range(2, max_n + 1):
        for s in range(1, n):

            def spectrum(n: int = n, s: int = s) -> str | None:
                omega_eigensystem(n, s)
                return None if trace_identity_holds(n, s) else f"trace identity fails for Omega_{s}"

            results.append(CheckResult.run(f"spectra n={n}: Omega_{s}", spectrum))
        if n <= RELATIONS_MAX_N:
            results += _guarded(f"spectra n={n}", lambda n=n: check_transposition_relations(n))
        if 3 <= n <= CONSISTENCY_MAX_N:
            results += _guarded(f"spectra n={n}", lambda n=n: h_asymptotic_check(n))
        if 2 <= n <= CROSS_VALIDATION_MAX_N:
            results += _guarded(f"spectra n={n}", lambda n=n: h_cross_validation(n))
    results += _prefixed("n=3", hypergeometric_vector_identities())
    return results


def run_tier(tier: SelftestTier, config: SelftestConfig) -> CheckReport:
    rng = random.Random(config.seed)
    results: list[CheckResult] = []
    for n, rho in tier.cases:
        results += run_case(n, rho, config, rng)
    if tier.spectra_max_n:
        results += run_spectra(tier.spectra_max_n)
    return CheckReport(command=f"selftest {tier.name}", results=tuple(results))


def run_selftest(config: SelftestConfig, names: Iterable[str]) -> CheckReport:
    names = list(names)
    report = CheckReport(command="selftest " + ",".join(names))
    for name in names:
        if name not in config.tiers:
            raise ConfigError(f"unknown selftest tier: {name}")
        report = report.extend(run_tier(config.tiers[name], config).results)
    return report
