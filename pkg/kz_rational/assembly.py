from __future__ import annotations

import logging
import random
from typing import Any, Sequence

from sympy.polys.domains import QQ

from .arith import RatFunc, RFMatrix, determinant, rational, rfmatrix_inverse, taylor_at, z_ring
from .builder import fundamental_solution, normalize_at
from .config import default_base_points, validate_base_points
from .errors import InvalidIndices, SingularCenter, VerificationFailed, ZeroDenominator
from .models import AssembledSolution, BasePointConfig, CheckReport, CheckResult
from .symmetric import kz_coefficient, perm_matrix

logger = logging.getLogger(__name__)

QGrid = tuple[tuple[Any, ...], ...]


def _swap_variables(matrix: RFMatrix, n: int, j: int) -> RFMatrix:
    ring = matrix.ring
    images = [RatFunc.variable(ring, k) for k in range(n)]
    images[j - 1], images[j] = images[j], images[j - 1]
    return matrix.compose(images)


def equation_residual(matrix: RFMatrix, n: int, rho: Any, j: int, points: Sequence[RatFunc] | None = None) -> RFMatrix:
    """dW/dz_j - rho A_j W, with A_j optionally taken at partially frozen coordinates."""

    coefficient = kz_coefficient(n, j, points).matrix.scale(rational(rho))
    return matrix.derivative(j - 1) - coefficient @ matrix


def swap_solution(matrix: RFMatrix, n: int, j: int, rho: Any, *, verify: bool = True) -> RFMatrix:
    """Turns a solution of equation j into one of equation j+1."""

    if not 1 <= j < n:
        raise InvalidIndices(f"cannot swap equation {j} for n={n}")
    swapped = _swap_variables(matrix, n, j)
    rows = list(swapped.entries)
    rows[j - 1], rows[j] = rows[j], rows[j - 1]
    result = RFMatrix(swapped.rows, swapped.cols, tuple(rows))
    if verify and not equation_residual(result, n, rho, j + 1).is_zero():
        raise VerificationFailed(f"swapped matrix does not solve equation {j + 1}")
    return result


def equation_solution(n: int, rho: int, j: int) -> RFMatrix:
    """Symbolic fundamental solution of equation j, reached from equation 1 by swaps."""

    matrix = fundamental_solution(n, rho).matrix
    for i in range(1, j):
        matrix = swap_solution(matrix, n, i, rho)
    return matrix


def _cycle_matrix(n: int, i: int, ring: Any) -> RFMatrix:
    """P(i-1,i) ... P(1,2): sends coordinate 1 to coordinate i."""

    out = RFMatrix.identity(ring, n)
    for k in range(1, i):
        out = perm_matrix(n, k, k + 1).to_rfmatrix(ring) @ out
    return out


def stage_points(n: int, i: int, base: BasePointConfig) -> list[RatFunc]:
    ring = z_ring(n)
    return [
        RatFunc.constant(ring, base.points[k]) if k < i - 1 else RatFunc.variable(ring, k) for k in range(n)
    ]


def build_stage(n: int, rho: int, i: int, base: BasePointConfig) -> RFMatrix:
    """Solution of equation i in z_i with earlier variables frozen, equal to I at z_i = base_i."""

    points = stage_points(n, i, base)
    ring = points[0].ring
    xi = tuple(points[k] for k in range(n) if k != i - 1)
    single = normalize_at(fundamental_solution(n, rho, xi, var=i - 1), base.points[i - 1])
    cycle = _cycle_matrix(n, i, ring)
    factor = cycle @ single.matrix @ cycle.transpose()
    if not equation_residual(factor, n, rho, i, points).is_zero():
        raise VerificationFailed(f"stage {i} does not solve equation {i}", witness=i)
    logger.info("stage %d of %d built (rho=%d)", i, n, rho)
    return factor


def assemble_product(n: int, rho: int, base: BasePointConfig | None = None) -> AssembledSolution:
    base = default_base_points(n) if base is None else validate_base_points(base, n)
    ring = z_ring(n)
    factors = tuple(build_stage(n, rho, i, base) for i in range(1, n + 1))
    product = RFMatrix.identity(ring, n)
    for factor in factors:
        product = product @ factor
    return AssembledSolution(n=n, rho=rho, base=base, factors=factors, product=product)


def random_point(n: int, rng: random.Random, *, spread: int = 50) -> tuple[Any, ...]:
    """Random rational point with pairwise distinct coordinates."""

    while True:
        point = tuple(QQ(rng.randint(-spread, spread), rng.randint(1, 7)) for _ in range(n))
        if len(set(point)) == n:
            return point


def _numeric_residual(matrix: RFMatrix, n: int, rho: Any, j: int, point: Sequence[Any]) -> bool:
    rho = rational(rho)
    deriv = matrix.derivative(j - 1)
    ring = matrix.ring
    coefficient = kz_coefficient(n, j, [RatFunc.constant(ring, x) for x in point]).matrix
    w = [[x.evaluate(point) for x in row] for row in matrix.entries]
    a = [[x.constant_value() for x in row] for row in coefficient.entries]
    for r in range(n):
        for c in range(n):
            lhs = deriv[r, c].evaluate(point)
            rhs = sum((a[r][k] * w[k][c] for k in range(n)), QQ.zero) * rho
            if lhs != rhs:
                return False
    return True


def verify_full_system(
    matrix: RFMatrix, n: int, rho: Any, *, rng: random.Random | None = None, samples: int = 3
) -> CheckReport:
    rng = rng if rng is not None else random.Random(0)
    points = [random_point(n, rng) for _ in range(samples)]
    results: list[CheckResult] = []
    for j in range(1, n + 1):

        def numeric(j: int = j) -> str | None:
            for point in points:
                try:
                    ok = _numeric_residual(matrix, n, rho, j, point)
                except ZeroDenominator:
                    continue
                if not ok:
                    return f"equation {j} fails at {[str(x) for x in point]}"
            return None

        pre = CheckResult.run(f"equation {j} (sampled)", numeric)
        results.append(pre)
        if not pre.passed:
            results.append(CheckResult.skipped(f"equation {j}", "sampled check failed"))
            continue

        def symbolic(j: int = j) -> str | None:
            bad = equation_residual(matrix, n, rho, j).nonzero_entries()
            if bad:
                r, c, value = bad[0]
                return f"equation {j} residual entry ({r + 1},{c + 1}) = {value}"
            return None

        results.append(CheckResult.run(f"equation {j}", symbolic))
    results.append(
        CheckResult.run(
            "determinant", lambda: "determinant is identically zero" if determinant(matrix).is_zero else None
        )
    )
    logger.info("full-system verification n=%d rho=%s: %d checks", n, rho, len(results))
    return CheckReport(command=f"verify n={n} rho={rho}", results=tuple(results))


def _qmul(a: QGrid, b: QGrid) -> QGrid:
    cols = list(zip(*b))
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), QQ.zero) for col in cols) for row in a)


def taylor_oracle(n: int, rho: Any, j: int, center: Sequence[Any], order: int) -> tuple[QGrid, ...]:
    """Coefficients W_0..W_order of the solution of equation j along z_j, with W_0 = I."""

    rho = rational(rho)
    center = [rational(c) for c in center]
    gaps = {k: center[j - 1] - center[k - 1] for k in range(1, n + 1) if k != j}
    if any(d == 0 for d in gaps.values()):
        raise SingularCenter(f"z{j} coincides with another coordinate at the center")
    p = {k: perm_matrix(n, j, k).matrix for k in gaps}

    def a_coefficient(i: int) -> QGrid:
        acc = [[QQ.zero] * n for _ in range(n)]
        for k, d in gaps.items():
            w = QQ(-1) ** i / d ** (i + 1)
            for r in range(n):
                for c in range(n):
                    if p[k][r][c]:
                        acc[r][c] += w
        return tuple(tuple(row) for row in acc)

    a_terms = [a_coefficient(i) for i in range(order)]
    ident = tuple(tuple(QQ.one if r == c else QQ.zero for c in range(n)) for r in range(n))
    coefficients: list[QGrid] = [ident]
    for s in range(order):
        acc = [[QQ.zero] * n for _ in range(n)]
        for i in range(s + 1):
            term = _qmul(a_terms[i], coefficients[s - i])
            for r in range(n):
                for c in range(n):
                    acc[r][c] += term[r][c]
        factor = rho / (s + 1)
        coefficients.append(tuple(tuple(x * factor for x in row) for row in acc))
    return tuple(coefficients)


def line_taylor_coefficients(matrix: RFMatrix, n: int, j: int, center: Sequence[Any], order: int) -> tuple[QGrid, ...]:
    """Taylor coefficients along z_j of W(line) W(center)^-1."""

    center = [rational(c) for c in center]
    frozen = {k: center[k] for k in range(n) if k != j - 1}
    on_line = matrix.subs(frozen)
    at_center = rfmatrix_inverse(on_line.subs({j - 1: center[j - 1]}))
    normalized = on_line @ at_center
    series = [[taylor_at(x, j - 1, center[j - 1], order) for x in row] for row in normalized.entries]
    return tuple(
        tuple(tuple(series[r][c][s].constant_value() for c in range(n)) for r in range(n)) for s in range(order + 1)
    )


def compare_with_oracle(
    matrix: RFMatrix, n: int, rho: Any, j: int, center: Sequence[Any], order: int
) -> str | None:
    expected = taylor_oracle(n, rho, j, center, order)
    actual = line_taylor_coefficients(matrix, n, j, center, order)
    for s, (e, a) in enumerate(zip(expected, actual)):
        if e != a:
            return f"equation {j} differs from the oracle at order {s} (center {[str(c) for c in center]})"
    return None


def oracle_report(
    matrix: RFMatrix, n: int, rho: Any, *, order: int = 20, centers: int = 3, rng: random.Random | None = None
) -> CheckReport:
    rng = rng if rng is not None else random.Random(0)
    results = []
    for j in range(1, n + 1):
        for idx in range(centers):
            center = random_point(n, rng)
            results.append(
                CheckResult.run(
                    f"oracle equation {j} center {idx + 1}",
                    lambda j=j, center=center: compare_with_oracle(matrix, n, rho, j, center, order),
                )
            )
    return CheckReport(command=f"oracle n={n} rho={rho}", results=tuple(results))

