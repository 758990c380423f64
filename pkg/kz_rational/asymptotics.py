from __future__ import annotations

import logging
import random
from typing import Any

from sympy.polys.domains import QQ

from .arith import RatFunc, RFMatrix, laurent_at_zero, poly_ring, rfmatrix_inverse, solve_linear, u_ring
from .coords import z_of_u
from .errors import AsymptoticMismatch
from .models import AssembledSolution, CheckReport, CheckResult
from .spectra import asymptotic_exponents, common_eigenvectors

logger = logging.getLogger(__name__)


def to_u_coordinates(matrix: RFMatrix, n: int) -> RFMatrix:
    return matrix.compose(z_of_u(n))


def _coefficient(series: Any, power: int) -> Any:
    idx = power - series.lowest
    if idx < 0 or idx >= len(series.coefficients):
        return QQ.zero
    return series.coefficients[idx].constant_value()


def restrict_to_ray(v_coords: RFMatrix, ray: list[Any]) -> RFMatrix:
    """u_p = t a_p for p < n, u_n = a_n."""

    t_ring = poly_ring(("t",))
    t = RatFunc.variable(t_ring, 0)
    images = [t * a for a in ray[:-1]] + [RatFunc.constant(t_ring, ray[-1])]
    return v_coords.compose(images)


def align_columns(v_coords: RFMatrix, n: int, exponents: Any, ray: list[Any]) -> list[tuple[Any, ...]]:
    """Constant vectors c_k with (V^-1 W c_k)(a t) = t^E_k (e_k + o(1)) along the ray."""

    on_ray = restrict_to_ray(v_coords, ray)
    lowest = {
        (r, c): laurent_at_zero(on_ray[r, c], 0, 0).lowest
        for r in range(n)
        for c in range(n)
        if not on_ray[r, c].is_zero
    }
    start = min(lowest.values())
    alignments = []
    for k in range(n):
        target = sum(exponents[k], QQ.zero)
        if QQ.denom(target) != 1:
            raise AsymptoticMismatch(f"non-integer total exponent for column {k + 1}", pair=(k + 1, 0))
        target = int(QQ.numer(target))
        series = {
            key: laurent_at_zero(on_ray[key], 0, max(0, target - low)) for key, low in lowest.items()
        }
        rows, rhs = [], []
        for power in range(start, target + 1):
            for r in range(n):
                rows.append([_coefficient(series[r, c], power) if (r, c) in series else 0 for c in range(n)])
                rhs.append([1 if (power == target and r == k) else 0])
        ring = u_ring(n)
        solved = solve_linear(RFMatrix.from_rows(ring, rows), RFMatrix.from_rows(ring, rhs))
        if solved is None:
            raise AsymptoticMismatch(f"no solution has the predicted leading term along v_{k + 1}", pair=(k + 1, 0))
        alignments.append(tuple(x.constant_value() for x in solved.column(0)))
    return alignments


def check_leading_asymptotics(
    solution: AssembledSolution | RFMatrix, n: int, rho: Any, *, rng: random.Random | None = None
) -> CheckReport:
    rng = rng if rng is not None else random.Random(0)
    matrix = solution.product if isinstance(solution, AssembledSolution) else solution
    ring = u_ring(n)
    exponents = asymptotic_exponents(n, rho)
    basis = RFMatrix.from_columns(ring, [list(v) for v in common_eigenvectors(n)])
    v_coords = rfmatrix_inverse(basis) @ to_u_coordinates(matrix, n)
    generic = [QQ(rng.randint(1, 9), rng.randint(1, 5)) for _ in range(n)]

    results: list[CheckResult] = []
    try:
        alignments = align_columns(v_coords, n, exponents, generic)
    except AsymptoticMismatch as exc:
        return CheckReport(
            command=f"asymptotics n={n} rho={rho}",
            results=(CheckResult("alignment", "fail", str(exc)),),
        )
    results.append(CheckResult("alignment", "pass"))
    on_ray = restrict_to_ray(v_coords, generic)

    for k in range(n):

        def remainder_check(k: int = k) -> str | None:
            target = sum(exponents[k], QQ.zero)
            orders = []
            for i in range(n):
                entry = RatFunc(on_ray.ring.zero, on_ray.ring.one)
                for c, weight in enumerate(alignments[k]):
                    if weight:
                        entry = entry + on_ray[i, c] * weight
                orders.append(None if entry.is_zero else laurent_at_zero(entry, 0, 0).lowest)
            if orders[k] != target:
                raise AsymptoticMismatch(
                    f"aligned column {k + 1} has v_{k + 1} component of order {orders[k]}, expected {target}",
                    pair=(k + 1, 0),
                )
            for i, order in enumerate(orders):
                if i != k and order is not None and order <= target:
                    raise AsymptoticMismatch(
                        f"aligned column {k + 1} has v_{i + 1} component of order {order}, not above {target}",
                        pair=(k + 1, 0),
                    )
            return None

        results.append(CheckResult.run(f"remainder (k={k + 1})", remainder_check))

        coord = RatFunc(ring.zero, ring.one)
        for c, weight in enumerate(alignments[k]):
            if weight:
                coord = coord + v_coords[k, c] * weight
        for s in range(1, n):

            def exponent_check(k: int = k, s: int = s, coord: RatFunc = coord) -> str | None:
                if coord.is_zero:
                    raise AsymptoticMismatch(f"aligned column {k + 1} has no v_{k + 1} component", pair=(k + 1, s))
                others = {i: generic[i] for i in range(n) if i != s - 1}
                found = laurent_at_zero(coord.subs(others), s - 1, 0).lowest
                expected = exponents[k][s - 1]
                if found != expected:
                    raise AsymptoticMismatch(
                        f"column {k + 1} scales like u{s}^{found}, expected u{s}^{expected}", pair=(k + 1, s)
                    )
                return None

            results.append(CheckResult.run(f"exponent (k={k + 1}, s={s})", exponent_check))
    logger.debug("asymptotic check n=%d rho=%s finished", n, rho)
    return CheckReport(command=f"asymptotics n={n} rho={rho}", results=tuple(results))
