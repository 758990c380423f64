"""The n = 3 system in coordinates (u1, u2) and the Gauss equation hidden in it.

Writing W(u) = u1^(rho Omega_1) W2(u2) and W2 = y^-rho (1+y)^-rho F with y = u2, the columns
of F split as c * (1,1,1) + phi1 * w1 + phi2 * w2. The pair (phi1, phi2) satisfies a
first-order system, and psi(y) = phi1(-y) solves the Gauss equation with parameters
(-rho, -3rho, 1-2rho).
"""

from __future__ import annotations

import logging
from typing import Any

from sympy.polys.domains import QQ

from .arith import RatFunc, RFMatrix, RFVector, poly_ring, rational, rfmatrix_inverse, u_ring
from .assembly import assemble_product
from .asymptotics import to_u_coordinates
from .coords import h_matrix
from .errors import InvalidIndices, VerificationFailed
from .models import CheckReport, CheckResult, GaussParams, N3Solution, PhiPair
from .spectra import common_eigenvectors, omega_eigensystem, spectral_matrix_power
from .symmetric import perm_matrix

logger = logging.getLogger(__name__)

W1_VECTOR = (0, 1, -1)
W2_VECTOR = (1, -2, 1)


def y_ring() -> Any:
    return poly_ring(("y",))


def gauss_params(rho: Any) -> GaussParams:
    rho = rational(rho)
    return GaussParams(alpha=-rho, beta=-3 * rho, gamma=1 - 2 * rho)


def hypergeom_ode_residual(psi: RatFunc, p: GaussParams) -> RatFunc:
    """y(1-y) psi'' + [gamma - (alpha+beta+1) y] psi' - alpha beta psi."""

    ring = psi.ring
    y = RatFunc.variable(ring, 0)
    d1 = psi.derivative(0)
    d2 = d1.derivative(0)
    return y * (1 - y) * d2 + (y * -(p.alpha + p.beta + 1) + p.gamma) * d1 - psi * (p.alpha * p.beta)


def phi_system_residual(pair: PhiPair, rho: Any) -> tuple[RatFunc, RatFunc]:
    rho = rational(rho)
    ring = pair.phi1.ring
    y = RatFunc.variable(ring, 0)
    first = pair.phi1.derivative(0) - pair.phi2 * (3 * rho) / y
    second = pair.phi2.derivative(0) - (pair.phi2 * 2 / y + pair.phi2 * 2 / (1 + y) - pair.phi1 / (1 + y)) * rho
    return first, second


def split_column(column: RFVector) -> tuple[RatFunc, RatFunc, RatFunc]:
    """(c, phi1, phi2) with column = c (1,1,1) + phi1 w1 + phi2 w2."""

    v0, v1, v2 = column
    c = (v0 + v1 + v2) / 3
    phi2 = v0 - c
    phi1 = (v1 - v2 + phi2 * 3) / 2
    return c, phi1, phi2


def hypergeometric_vector_identities() -> CheckReport:
    ring = y_ring()
    ident = RFMatrix.identity(ring, 3)
    p32 = perm_matrix(3, 3, 2).to_rfmatrix(ring) + ident
    p31 = perm_matrix(3, 3, 1).to_rfmatrix(ring) + ident
    w1 = tuple(RatFunc.constant(ring, x) for x in W1_VECTOR)
    w2 = tuple(RatFunc.constant(ring, x) for x in W2_VECTOR)
    cases = [
        ("(P32+I) w1 = 0", p32.apply(w1), tuple(x * 0 for x in w1)),
        ("(P31+I) w1 = -w2", p31.apply(w1), tuple(-x for x in w2)),
        ("(P32+I) w2 = 3 w1 + 2 w2", p32.apply(w2), tuple(a * 3 + b * 2 for a, b in zip(w1, w2))),
        ("(P31+I) w2 = 2 w2", p31.apply(w2), tuple(b * 2 for b in w2)),
    ]
    results = tuple(
        CheckResult.run(name, lambda lhs=lhs, rhs=rhs, name=name: None if lhs == rhs else f"{name} fails")
        for name, lhs, rhs in cases
    )
    return CheckReport(command="vector identities", results=results)


def second_block_coefficient(ring: Any) -> RFMatrix:
    """P32/y + P31/(1+y)."""

    y = RatFunc.variable(ring, 0)
    p32 = perm_matrix(3, 3, 2).to_rfmatrix(ring)
    p31 = perm_matrix(3, 3, 1).to_rfmatrix(ring)
    return p32.scale(y.inverse()) + p31.scale((1 + y).inverse())


def _independent(a: PhiPair, b: PhiPair) -> bool:
    return not (a.phi1 * b.phi2 - a.phi2 * b.phi1).is_zero


def build_n3_solution(rho: int) -> N3Solution:
    rho_q = rational(rho)
    ring_u = u_ring(3)
    ring_y = y_ring()
    y = RatFunc.variable(ring_y, 0)

    exponents = [rho * lam for lam in omega_eigensystem(3, 1).eigenvalues]
    w1 = spectral_matrix_power(common_eigenvectors(3), exponents, RatFunc.variable(ring_u, 0))
    w_u = to_u_coordinates(assemble_product(3, rho).product, 3)
    w2_u = rfmatrix_inverse(w1) @ w_u
    if not w2_u.derivative(0).is_zero() or not w2_u.derivative(2).is_zero():
        raise VerificationFailed("W1^-1 W depends on u1 or u3")
    images = [RatFunc.constant(ring_y, 1), y, RatFunc.constant(ring_y, 0)]
    w2 = w2_u.compose(images)
    if not (w2.derivative(0) - second_block_coefficient(ring_y).scale(rho_q) @ w2).is_zero():
        raise VerificationFailed("W2 does not solve the u2 equation")

    weight = (y * (1 + y)) ** rho
    f = w2.scale(weight)
    pairs: list[PhiPair] = []
    for column in f.columns():
        _, phi1, phi2 = split_column(column)
        candidate = PhiPair(phi1=phi1, phi2=phi2)
        if phi1.is_zero and phi2.is_zero:
            continue
        if not pairs or (len(pairs) == 1 and _independent(pairs[0], candidate)):
            pairs.append(candidate)
    if len(pairs) != 2:
        raise VerificationFailed("could not extract two independent (phi1, phi2) pairs")

    for idx, pair in enumerate(pairs):
        r1, r2 = phi_system_residual(pair, rho_q)
        if not (r1.is_zero and r2.is_zero):
            raise VerificationFailed(f"pair {idx + 1} violates the first-order system", column=idx + 1)

    ones = (RatFunc(ring_y.one, ring_y.one),) * 3
    columns: list[RFVector] = []
    for pair in pairs:
        vec = tuple(
            (pair.phi1 * a + pair.phi2 * b) / weight for a, b in zip(W1_VECTOR, W2_VECTOR)
        )
        columns.append(vec)
    columns.append(tuple(x * weight for x in ones))
    coefficient = second_block_coefficient(ring_y).scale(rho_q)
    for idx, vec in enumerate(columns):
        residual = tuple(d - a for d, a in zip((x.derivative(0) for x in vec), coefficient.apply(vec)))
        if any(not x.is_zero for x in residual):
            raise VerificationFailed(f"column Y{idx + 1} does not solve the u2 equation", column=idx + 1)

    minus_y = [-y]
    psi = tuple(pair.phi1.compose(minus_y) for pair in pairs)
    params = gauss_params(rho_q)
    for idx, candidate in enumerate(psi):
        if not hypergeom_ode_residual(candidate, params).is_zero:
            raise VerificationFailed(f"psi{idx + 1} does not solve the Gauss equation", column=idx + 1)
    logger.info("n=3 reduction built for rho=%s", rho)
    return N3Solution(rho=rho, w1=w1, w2=w2, phi_pairs=tuple(pairs), columns=tuple(columns), psi=psi)


def factorization_check(solution: N3Solution) -> CheckReport:
    """W1(u1) W2(u2) solves both u-equations of the n = 3 system."""

    ring_u = u_ring(3)
    rho = rational(solution.rho)
    lift = [RatFunc.variable(ring_u, 1)]
    w2_u = solution.w2.compose(lift)
    product = solution.w1 @ w2_u
    results = []
    for k in (1, 2):
        coefficient = h_matrix(3, k).matrix.scale(rho)
        results.append(
            CheckResult.run(
                f"u{k} equation",
                lambda k=k, coefficient=coefficient: None
                if (product.derivative(k - 1) - coefficient @ product).is_zero()
                else f"W1 W2 fails the u{k} equation",
            )
        )
    return CheckReport(command=f"factorization rho={solution.rho}", results=tuple(results))


def wronskian(f: RatFunc, g: RatFunc) -> RatFunc:
    return f * g.derivative(0) - g * f.derivative(0)


def span_coefficients(target: RatFunc, first: RatFunc, second: RatFunc) -> tuple[RatFunc, RatFunc] | None:
    """Constants (a, b) with target = a first + b second, or None."""

    w = wronskian(first, second)
    if w.is_zero:
        return None
    a = wronskian(target, second) / w
    b = wronskian(first, target) / w
    if not (a.is_constant and b.is_constant):
        return None
    return a, b


def terminating_series(p: GaussParams, degree: int) -> RatFunc | None:
    """sum_{k<=degree} (alpha)_k (beta)_k / ((gamma)_k k!) y^k, or None on a zero denominator."""

    ring = y_ring()
    y = RatFunc.variable(ring, 0)
    term = QQ.one
    total = RatFunc.constant(ring, 1)
    for k in range(degree):
        denom = (p.gamma + k) * (k + 1)
        if denom == 0:
            return None
        term = term * (p.alpha + k) * (p.beta + k) / denom
        total = total + y ** (k + 1) * term
    return total


def rationality_certificate(rho: int) -> CheckReport:
    if rho == 0:
        raise InvalidIndices("the certificate needs rho != 0")
    params = gauss_params(rho)
    results: list[CheckResult] = []
    try:
        solution = build_n3_solution(rho)
    except VerificationFailed as exc:
        return CheckReport(
            command=f"hypergeom rho={rho}", results=(CheckResult("construction", "fail", str(exc)),)
        )
    results.append(CheckResult("construction", "pass"))
    first, second = solution.psi
    for idx, psi in enumerate(solution.psi, start=1):
        results.append(
            CheckResult.run(
                f"psi{idx} residual",
                lambda psi=psi: None if hypergeom_ode_residual(psi, params).is_zero else f"residual of {psi} is nonzero",
            )
        )
    results.append(
        CheckResult.run("wronskian", lambda: "psi1 and psi2 are dependent" if wronskian(first, second).is_zero else None)
    )

    ring = y_ring()
    y = RatFunc.variable(ring, 0)
    if rho == -1:
        known = (1 - y).inverse()

        def known_solution() -> str | None:
            if not hypergeom_ode_residual(known, params).is_zero:
                return "1/(1-y) does not solve the Gauss equation"
            if span_coefficients(known, first, second) is None:
                return "1/(1-y) is not in the span of the constructed solutions"
            return None

        results.append(CheckResult.run("1/(1-y) in span", known_solution))

    if rho >= 1:
        series = terminating_series(params, rho)
        if series is None:
            results.append(CheckResult.skipped("terminating series", "gamma is a non-positive integer"))
        else:
            results.append(
                CheckResult.run(
                    "terminating series",
                    lambda: None if hypergeom_ode_residual(series, params).is_zero else f"{series} is not a solution",
                )
            )
    else:
        logger.warning("series route skipped for rho=%d: the series does not terminate", rho)
        results.append(CheckResult.skipped("terminating series", "alpha is positive, the series does not terminate"))
    return CheckReport(command=f"hypergeom rho={rho}", results=tuple(results))
