from __future__ import annotations

import logging
from itertools import combinations
from math import comb
from typing import Any, Sequence

from .arith import (
    RatFunc,
    RFMatrix,
    RFVector,
    coefficients_in,
    constant_vector,
    determinant,
    expand_at_infinity,
    laurent_at_zero,
    rational,
    rfmatrix_inverse,
    shift_variable,
    solve_linear,
    z_ring,
    zero_vector,
)
from .errors import DegeneratePoles, SingularAtPoint, SingularMatrix, VerificationFailed, ZeroDenominator
from .models import CheckReport, CheckResult, ConfluentVandermonde, FundamentalSolution, PartialFractionSolution
from .series import run_recursion, t_minus1_eigensystem
from .symmetric import transposition_sum

logger = logging.getLogger(__name__)


def default_xi(n: int, var: int = 0) -> tuple[RatFunc, ...]:
    """Symbolic parameters: every z_k except the active one."""

    ring = z_ring(n)
    return tuple(RatFunc.variable(ring, k) for k in range(n) if k != var)


def numeric_xi(n: int, values: Sequence[Any] | None = None) -> tuple[RatFunc, ...]:
    ring = z_ring(n)
    values = range(n - 1) if values is None else values
    return tuple(RatFunc.constant(ring, v) for v in values)


def single_equation_coefficient(n: int, xi: Sequence[RatFunc], var: int = 0) -> RFMatrix:
    """sum_{k>=2} P(1,k) / (z_var - xi_k)."""

    ring = xi[0].ring
    z = RatFunc.variable(ring, var)
    weights = {(1, k): (z - x).inverse() for k, x in enumerate(xi, start=2)}
    return transposition_sum(ring, n, weights)


def single_equation_residual(matrix: RFMatrix, n: int, rho: Any, xi: Sequence[RatFunc], var: int = 0) -> RFMatrix:
    coefficient = single_equation_coefficient(n, xi, var).scale(rational(rho))
    return matrix.derivative(var) - coefficient @ matrix


def confluent_vandermonde(xi: Sequence[RatFunc], m: int) -> ConfluentVandermonde:
    xi = tuple(xi)
    ring = xi[0].ring
    for a, b in combinations(range(len(xi)), 2):
        if (xi[a] - xi[b]).is_zero:
            raise DegeneratePoles(f"pole locations {a + 2} and {b + 2} coincide: {xi[a]}")
    zero = RatFunc(ring.zero, ring.one)
    size = m * len(xi)
    rows = [
        [x ** (p - s) * comb(p - 1, s - 1) if p >= s else zero for x in xi for s in range(1, m + 1)]
        for p in range(1, size + 1)
    ]
    return ConfluentVandermonde(xi=xi, m=m, matrix=RFMatrix.from_rows(ring, rows))


def apply_confluent(cv: ConfluentVandermonde, blocks: Sequence[Sequence[RFVector]]) -> list[RFVector]:
    """Series coefficients G_1..G_N produced by pole coefficients ``blocks[k][s-1]``."""

    stacked = [vec for block in blocks for vec in block]
    n = len(stacked[0])
    out = []
    for row in cv.matrix.entries:
        acc = zero_vector(cv.matrix.ring, n)
        for r, vec in zip(row, stacked):
            if not r.is_zero:
                acc = tuple(a + r * v for a, v in zip(acc, vec))
        out.append(acc)
    return out


def principal_parts(f: RatFunc, var: int, pole: RatFunc, m: int) -> tuple[RatFunc, ...]:
    """Coefficients of (z_var - pole)^-1 .. ^-m in the expansion of ``f`` at the pole."""

    ring = f.ring
    zero = RatFunc(ring.zero, ring.one)
    if f.is_zero:
        return (zero,) * m
    series = laurent_at_zero(shift_variable(f, var, pole), var, m)
    if series.lowest < -m:
        raise VerificationFailed(f"pole of order {-series.lowest} at z{var + 1} = {pole} exceeds {m}")
    return tuple(
        series.coefficients[-s - series.lowest] if -s >= series.lowest else zero for s in range(1, m + 1)
    )


def polynomial_part(f: RatFunc, var: int) -> RatFunc:
    ring = f.ring
    zero = RatFunc(ring.zero, ring.one)
    if f.is_zero:
        return zero
    head = expand_at_infinity(f, var, 0)
    if head.lowest > 0:
        return zero
    series = expand_at_infinity(f, var, -head.lowest)
    z = RatFunc.variable(ring, var)
    out = zero
    for offset, coeff in enumerate(series.coefficients):
        power = -(head.lowest + offset)
        if not coeff.is_zero:
            out = out + coeff * z**power
    return out


def decompose_column(column: RFVector, var: int, poles: Sequence[RatFunc], m: int) -> PartialFractionSolution:
    poles = tuple(poles)
    blocks = []
    for pole in poles:
        per_coord = [principal_parts(entry, var, pole, m) for entry in column]
        blocks.append(tuple(tuple(parts[s] for parts in per_coord) for s in range(m)))
    solution = PartialFractionSolution(
        n=len(column),
        m=m,
        var=var,
        poles=poles,
        pole_coefficients=tuple(blocks),
        polynomial_part=tuple(polynomial_part(entry, var) for entry in column),
    )
    if solution.to_vector() != tuple(column):
        raise VerificationFailed("column has poles outside the given locations")
    return solution


def solve_confluent(
    cv: ConfluentVandermonde, rows: Sequence[RFVector], var: int, *, method: str = "structured"
) -> tuple[tuple[RFVector, ...], ...]:
    """Pole coefficients L with R L = G for the stacked series rows G_1..G_N."""

    ring = cv.matrix.ring
    m = cv.m
    size = cv.matrix.rows
    if len(rows) != size:
        raise ValueError(f"expected {size} series rows, got {len(rows)}")
    if method == "gauss":
        solved = solve_linear(cv.matrix, RFMatrix.from_rows(ring, rows))
        if solved is None:
            raise SingularMatrix("confluent Vandermonde system is inconsistent")
        stacked = solved.entries
        blocks = tuple(tuple(stacked[k * m + s] for s in range(m)) for k in range(len(cv.xi)))
    elif method == "structured":
        # D(z) * Y(z) is the polynomial part of D(z) * sum_p G_p z^-p.
        z = RatFunc.variable(ring, var)
        denom = RatFunc(ring.one, ring.one)
        for x in cv.xi:
            denom = denom * (z - x) ** m
        d_by_power = coefficients_in(denom.num, var)
        n = len(rows[0])
        numer = list(zero_vector(ring, n))
        for i in range(size + 1):
            d_i = RatFunc.from_poly(d_by_power[size - i])
            if d_i.is_zero:
                continue
            for p in range(1, size - i + 1):
                g = rows[p - 1]
                if all(x.is_zero for x in g):
                    continue
                factor = d_i * z ** (size - i - p)
                numer = [a + factor * x for a, x in zip(numer, g)]
        column = tuple(x / denom for x in numer)
        blocks = decompose_column(column, var, cv.xi, m).pole_coefficients
    else:
        raise ValueError(f"unknown confluent solve method: {method}")
    if apply_confluent(cv, blocks) != [tuple(r) for r in rows]:
        raise VerificationFailed("confluent Vandermonde forward map does not reproduce the series")
    return blocks


def leading_coefficient(column: RFVector, var: int) -> RatFunc:
    """First nonzero coordinate of the lowest nonzero series coefficient at infinity."""

    best: tuple[int, int, RatFunc] | None = None
    for idx, entry in enumerate(column):
        if entry.is_zero:
            continue
        head = expand_at_infinity(entry, var, 0)
        if best is None or head.lowest < best[0]:
            best = (head.lowest, idx, head.coefficients[0])
    if best is None:
        raise VerificationFailed("zero column has no leading coefficient")
    return best[2]


def scale_solution(sol: PartialFractionSolution, factor: RatFunc) -> PartialFractionSolution:
    return PartialFractionSolution(
        n=sol.n,
        m=sol.m,
        var=sol.var,
        poles=sol.poles,
        pole_coefficients=tuple(tuple(tuple(x * factor for x in vec) for vec in block) for block in sol.pole_coefficients),
        polynomial_part=tuple(x * factor for x in sol.polynomial_part),
    )


def combine_columns(
    columns: Sequence[PartialFractionSolution], coefficients: Sequence[RatFunc]
) -> PartialFractionSolution:
    """sum_j coefficients[j] * columns[j]; coefficients must not depend on the active variable."""

    first = columns[0]
    out = scale_solution(first, coefficients[0])
    for col, c in zip(columns[1:], coefficients[1:], strict=True):
        part = scale_solution(col, c)
        out = PartialFractionSolution(
            n=out.n,
            m=max(out.m, part.m),
            var=out.var,
            poles=out.poles,
            pole_coefficients=tuple(
                tuple(tuple(a + b for a, b in zip(va, vb)) for va, vb in zip(ba, bb))
                for ba, bb in zip(out.pole_coefficients, part.pole_coefficients, strict=True)
            ),
            polynomial_part=tuple(a + b for a, b in zip(out.polynomial_part, part.polynomial_part)),
        )
    return out


def _normalized(sol: PartialFractionSolution) -> PartialFractionSolution:
    lead = leading_coefficient(sol.to_vector(), sol.var)
    return sol if lead.is_one else scale_solution(sol, lead.inverse())


def _check_xi(n: int, m: int, xi: Sequence[RatFunc]) -> None:
    if m <= 0:
        raise ValueError(f"pole order bound must be positive, got {m}")
    if len(xi) != n - 1:
        raise ValueError(f"expected {n - 1} parameters, got {len(xi)}")


def _series_rows(state: Any, size: int, n: int, ring: Any) -> list[RFVector]:
    zero = zero_vector(ring, n)
    return [state.coefficient(p) if p >= state.lowest else zero for p in range(1, size + 1)]


def build_type1_columns(n: int, m: int, xi: Sequence[RatFunc], var: int = 0) -> list[PartialFractionSolution]:
    xi = tuple(xi)
    _check_xi(n, m, xi)
    ring = xi[0].ring
    eig = t_minus1_eigensystem(n)
    cv = confluent_vandermonde(xi, m)
    size = m * (n - 1)
    columns = []
    for idx, u2 in enumerate(eig.u2basis):
        state = run_recursion(m * (n - 2), constant_vector(ring, u2), n, -m, xi, size)
        blocks = solve_confluent(cv, _series_rows(state, size, n, ring), var)
        sol = PartialFractionSolution(
            n=n, m=m, var=var, poles=xi, pole_coefficients=blocks, polynomial_part=zero_vector(ring, n)
        )
        logger.debug("type-1 column %d built (n=%d, m=%d)", idx + 1, n, m)
        columns.append(_normalized(sol))
    return columns


def build_symmetric_column(n: int, m: int, xi: Sequence[RatFunc], var: int = 0) -> PartialFractionSolution:
    xi = tuple(xi)
    _check_xi(n, m, xi)
    ring = xi[0].ring
    z = RatFunc.variable(ring, var)
    denom = RatFunc(ring.one, ring.one)
    for x in xi:
        denom = denom * (z - x) ** m
    value = denom.inverse()
    return decompose_column((value,) * n, var, xi, m)


def build_polynomial_column(
    n: int,
    m: int,
    xi: Sequence[RatFunc],
    var: int = 0,
    others: Sequence[PartialFractionSolution] | None = None,
) -> PartialFractionSolution:
    """The column regular at z_var = xi_n, with a degree-m polynomial part along u3.

    ``others`` are the type-1 columns followed by the symmetric column; they are rebuilt
    when omitted.
    """

    xi = tuple(xi)
    _check_xi(n, m, xi)
    ring = xi[0].ring
    eig = t_minus1_eigensystem(n)
    size = m * (n - 1)
    state = run_recursion(-m, constant_vector(ring, eig.u3), n, -m, xi, size)

    z = RatFunc.variable(ring, var)
    poly = list(zero_vector(ring, n))
    for i in range(m + 1):
        g = state.coefficient(-i)
        poly = [a + x * z**i for a, x in zip(poly, g)]
    blocks = solve_confluent(confluent_vandermonde(xi, m), _series_rows(state, size, n, ring), var)
    raw = PartialFractionSolution(
        n=n, m=m, var=var, poles=xi, pole_coefficients=blocks, polynomial_part=tuple(poly)
    )

    if others is None:
        others = build_type1_columns(n, m, xi, var) + [build_symmetric_column(n, m, xi, var)]
    # Cancel the pole block at the last location.
    lhs = [[col.pole_coefficients[-1][s][c] for col in others] for s in range(m) for c in range(n)]
    rhs = [[-raw.pole_coefficients[-1][s][c]] for s in range(m) for c in range(n)]
    kappa = solve_linear(RFMatrix.from_rows(ring, lhs), RFMatrix.from_rows(ring, rhs))
    if kappa is None:
        raise VerificationFailed("no combination removes the pole at the last location", column=n)
    one = RatFunc(ring.one, ring.one)
    combined = combine_columns([raw, *others], [one, *kappa.column(0)])
    if combined.pole_order(len(xi) - 1) != 0:
        raise VerificationFailed("pole at the last location survived the cancellation", column=n)
    return _normalized(combined)


def _verify_columns(matrix: RFMatrix, n: int, rho: Any, xi: Sequence[RatFunc], var: int) -> None:
    residual = single_equation_residual(matrix, n, rho, xi, var)
    for j in range(n):
        bad = [x for x in residual.column(j) if not x.is_zero]
        if bad:
            raise VerificationFailed(f"column {j + 1} residual is nonzero", column=j + 1, witness=str(bad[0]))
    if determinant(matrix).is_zero:
        raise VerificationFailed("columns are linearly dependent")


def fundamental_solution(
    n: int, rho: int, xi: Sequence[RatFunc] | None = None, var: int = 0
) -> FundamentalSolution:
    xi = default_xi(n, var) if xi is None else tuple(xi)
    if n < 2 or len(xi) != n - 1:
        raise ValueError(f"expected n >= 2 and {n - 1} parameters")
    ring = xi[0].ring
    if rho == 0:
        ident = RFMatrix.identity(ring, n)
        columns = tuple(
            PartialFractionSolution(n=n, m=0, var=var, poles=xi, pole_coefficients=tuple(() for _ in xi), polynomial_part=c)
            for c in ident.columns()
        )
        return FundamentalSolution(n=n, rho=0, var=var, xi=xi, columns=columns, matrix=ident)

    m = abs(rho)
    if rho < 0:
        type1 = build_type1_columns(n, m, xi, var)
        symmetric = build_symmetric_column(n, m, xi, var)
        poly = build_polynomial_column(n, m, xi, var, others=[*type1, symmetric])
        columns = (*type1, symmetric, poly)
        matrix = RFMatrix.from_columns(ring, [c.to_vector() for c in columns])
    else:
        dual_of = fundamental_solution(n, -m, xi, var)
        matrix = rfmatrix_inverse(dual_of.matrix).transpose()
        vectors = []
        for col in matrix.columns():
            lead = leading_coefficient(col, var)
            vectors.append(tuple(x / lead for x in col))
        matrix = RFMatrix.from_columns(ring, vectors)
        columns = tuple(decompose_column(v, var, xi, m) for v in vectors)

    _verify_columns(matrix, n, rho, xi, var)
    logger.debug("fundamental solution n=%d rho=%d verified", n, rho)
    return FundamentalSolution(n=n, rho=rho, var=var, xi=xi, columns=tuple(columns), matrix=matrix)


def normalize_at(solution: FundamentalSolution, z10: Any) -> FundamentalSolution:
    """W(z) W(z10)^-1 so the result is the identity at z_var = z10."""

    point = rational(z10)
    try:
        at_point = solution.matrix.subs({solution.var: point})
        inverse = rfmatrix_inverse(at_point)
    except (ZeroDenominator, SingularMatrix) as exc:
        raise SingularAtPoint(f"fundamental matrix is singular at z{solution.var + 1} = {z10}") from exc
    matrix = solution.matrix @ inverse
    columns = tuple(
        combine_columns(solution.columns, inverse.column(j)) for j in range(solution.n)
    )
    return FundamentalSolution(
        n=solution.n,
        rho=solution.rho,
        var=solution.var,
        xi=solution.xi,
        columns=columns,
        matrix=matrix,
        normalization_point=point,
    )


def check_degree_law(solution: FundamentalSolution) -> CheckReport:
    """Pole orders at most m at every z_k and the largest polynomial part of degree m(n-1) or m."""

    n, m = solution.n, abs(solution.rho)
    expected = 0 if m == 0 else m * (n - 1) if solution.rho > 0 else m
    results = []
    for k in range(len(solution.xi)):
        orders = [c.pole_order(k) for c in solution.columns]
        results.append(
            CheckResult.run(
                f"pole order at xi_{k + 1}",
                lambda orders=orders: None if max(orders) <= m else f"pole of order {max(orders)} > {m}",
            )
        )
    degree = max(c.polynomial_degree() for c in solution.columns)
    results.append(
        CheckResult.run(
            "polynomial degree",
            lambda: None if degree == expected else f"polynomial part of degree {degree}, expected {expected}",
        )
    )
    return CheckReport(command=f"degree law n={n} rho={solution.rho}", results=tuple(results))
