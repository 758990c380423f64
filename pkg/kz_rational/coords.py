"""Coordinates separating the first variable, and the KZ coefficients written in them.

``u_1 = z_1 - z_2``, ``u_k = (z_k - z_{k+1}) / (z_{k-1} - z_k)`` for ``2 <= k <= n-1`` and
``u_n = z_1 + ... + z_n``. With ``y = S z`` (consecutive differences and the sum) one has
``y_p = u_1 u_2 ... u_p`` for ``p < n`` and ``y_n = u_n``.
"""

from __future__ import annotations

import logging
from typing import Any, Sequence

from sympy.polys.domains import QQ

from .arith import RatFunc, RFMatrix, rational, rfmatrix_inverse, u_ring, z_ring
from .errors import DegeneratePoint, InvalidIndices, VerificationFailed, ZeroDenominator
from .models import CheckReport, CheckResult, CoordinateMaps, HMatrix
from .spectra import omega_matrix
from .symmetric import kz_coefficient, transposition_sum

logger = logging.getLogger(__name__)


def coordinate_maps(n: int) -> CoordinateMaps:
    if n < 2:
        raise InvalidIndices("coordinate maps need n >= 2")
    ring = u_ring(n)
    s_rows = [[1 if c == r else -1 if c == r + 1 else 0 for c in range(n)] for r in range(n - 1)]
    s_rows.append([1] * n)
    t_rows = [[1 if c >= r else 0 for c in range(n)] for r in range(n)]
    c_rows = [[c + 1 if c < n - 1 else n - 1 for c in range(n)] for _ in range(n)]
    s_matrix = RFMatrix.from_rows(ring, s_rows)
    t_matrix = RFMatrix.from_rows(ring, t_rows)
    c_matrix = RFMatrix.from_rows(ring, c_rows)
    s_inverse = rfmatrix_inverse(s_matrix)
    if not (s_matrix @ s_inverse).is_identity():
        raise VerificationFailed("S S^-1 is not the identity")
    if s_inverse != t_matrix - c_matrix.scale(QQ(1, n)):
        raise VerificationFailed("S^-1 differs from T - C/n")
    return CoordinateMaps(n=n, s_matrix=s_matrix, s_inverse=s_inverse, t_matrix=t_matrix, c_matrix=c_matrix)


def u_from_z(z: Sequence[Any]) -> tuple[Any, ...]:
    z = [rational(x) for x in z]
    n = len(z)
    diffs = [z[k] - z[k + 1] for k in range(n - 1)]
    for k, d in enumerate(diffs):
        if d == 0:
            raise DegeneratePoint(f"z{k + 1} = z{k + 2}")
    u = [diffs[0]] + [diffs[k] / diffs[k - 1] for k in range(1, n - 1)]
    u.append(sum(z, QQ.zero))
    return tuple(u)


def z_from_u(u: Sequence[Any]) -> tuple[Any, ...]:
    u = [rational(x) for x in u]
    n = len(u)
    for k in range(n - 1):
        if u[k] == 0:
            raise DegeneratePoint(f"u{k + 1} = 0")
    y = [u[0]]
    for k in range(1, n - 1):
        y.append(y[-1] * u[k])
    y.append(u[n - 1])
    s_inverse = coordinate_maps(n).s_inverse
    return tuple(
        sum((s_inverse[r, c].constant_value() * y[c] for c in range(n)), QQ.zero) for r in range(n)
    )


def y_of_u(n: int) -> list[RatFunc]:
    ring = u_ring(n)
    u = [RatFunc.variable(ring, k) for k in range(n)]
    y = [u[0]]
    for k in range(1, n - 1):
        y.append(y[-1] * u[k])
    y.append(u[n - 1])
    return y


def z_of_u(n: int) -> list[RatFunc]:
    """z_1..z_n as polynomials in u_1..u_n."""

    s_inverse = coordinate_maps(n).s_inverse
    y = y_of_u(n)
    return list(s_inverse.apply(tuple(y)))


def u_of_z(n: int) -> list[RatFunc]:
    ring = z_ring(n)
    z = [RatFunc.variable(ring, k) for k in range(n)]
    diffs = [z[k] - z[k + 1] for k in range(n - 1)]
    total = z[0]
    for x in z[1:]:
        total = total + x
    return [diffs[0]] + [diffs[k] / diffs[k - 1] for k in range(1, n - 1)] + [total]


def _v_products(n: int) -> list[RatFunc]:
    """v_1 = 1, v_p = u_2 ... u_p."""

    ring = u_ring(n)
    v = [RatFunc(ring.one, ring.one)]
    for p in range(2, n):
        v.append(v[-1] * RatFunc.variable(ring, p - 1))
    return v


def h_matrix(n: int, k: int) -> HMatrix:
    if n < 2 or not 1 <= k <= n:
        raise InvalidIndices(f"H_{k} is not defined for n={n}")
    ring = u_ring(n)
    if k == n:
        return HMatrix(n=n, k=k, matrix=RFMatrix.zeros(ring, n, n))
    u_k = RatFunc.variable(ring, k - 1)
    weights: dict[tuple[int, int], RatFunc] = {}
    v = _v_products(n)
    for s in range(2, n + 1):
        for j in range(1, s):
            lo = max(j, k)
            if lo > s - 1:
                continue
            numer = v[lo - 1]
            for p in range(lo + 1, s):
                numer = numer + v[p - 1]
            denom = v[j - 1]
            for p in range(j + 1, s):
                denom = denom + v[p - 1]
            weights[(s, j)] = numer / (u_k * denom)
    return HMatrix(n=n, k=k, matrix=transposition_sum(ring, n, weights))


def chain_rule_h_matrix(n: int, k: int) -> HMatrix:
    """H_k = sum_j A_j(z(u)) dz_j/du_k."""

    if n < 2 or not 1 <= k <= n:
        raise InvalidIndices(f"H_{k} is not defined for n={n}")
    ring = u_ring(n)
    images = z_of_u(n)
    y = y_of_u(n)
    maps = coordinate_maps(n)
    if maps.s_matrix.apply(tuple(images)) != tuple(y):
        raise VerificationFailed("S z(u) does not reproduce y(u)")
    total = RFMatrix.zeros(ring, n, n)
    for j in range(1, n + 1):
        jacobian = images[j - 1].derivative(k - 1)
        if jacobian.is_zero:
            continue
        a_j = kz_coefficient(n, j).matrix.compose(images)
        total = total + a_j.scale(jacobian)
    logger.debug("chain-rule H_%d for n=%d has %d nonzero entries", k, n, len(total.nonzero_entries()))
    return HMatrix(n=n, k=k, matrix=total)


def constant_term(n: int, s: int) -> RFMatrix:
    """sum_{r>s} P(r, s-1): the value of H_s - Omega_s/u_s at u_2 = ... = u_{n-1} = 0."""

    ring = u_ring(n)
    one = RatFunc(ring.one, ring.one)
    return transposition_sum(ring, n, {(r, s - 1): one for r in range(s + 1, n + 1)})


def _omega_rf(n: int, s: int) -> RFMatrix:
    return RFMatrix.from_rows(u_ring(n), omega_matrix(n, s).matrix)


def h_asymptotic_check(n: int, s: int | None = None) -> CheckReport:
    ring = u_ring(n)
    results: list[CheckResult] = []

    def first_block() -> str | None:
        expected = _omega_rf(n, 1).scale(RatFunc.variable(ring, 0).inverse())
        if chain_rule_h_matrix(n, 1).matrix != expected:
            return "chain-rule H_1 != Omega_1/u_1"
        if h_matrix(n, 1).matrix != expected:
            return "alpha-formula H_1 != Omega_1/u_1"
        return None

    results.append(CheckResult.run("H_1 = Omega_1/u_1", first_block))
    results.append(
        CheckResult.run("H_n = 0", lambda: None if chain_rule_h_matrix(n, n).matrix.is_zero() else "H_n != 0")
    )
    targets = range(2, n) if s is None else [s]
    for t in targets:
        if not 2 <= t <= n - 1:
            raise InvalidIndices(f"asymptotic check needs 2 <= s <= n-1, got {t}")

        def middle(t: int = t) -> str | None:
            u_t = RatFunc.variable(ring, t - 1)
            remainder = h_matrix(n, t).matrix - _omega_rf(n, t).scale(u_t.inverse())
            try:
                at_zero = remainder.subs({k: 0 for k in range(1, n - 1)})
            except ZeroDenominator:
                return f"H_{t} - Omega_{t}/u_{t} is singular at u = 0"
            if at_zero != constant_term(n, t):
                return f"H_{t} - Omega_{t}/u_{t} at u = 0 is not sum_(r>{t}) P(r,{t - 1})"
            return None

        results.append(CheckResult.run(f"H_{t} asymptotics", middle))
    return CheckReport(command=f"h-asymptotics n={n}", results=tuple(results))


def h_cross_validation(n: int) -> CheckReport:
    results = []
    for k in range(1, n + 1):
        results.append(
            CheckResult.run(
                f"H_{k} chain rule",
                lambda k=k: None
                if h_matrix(n, k).matrix == chain_rule_h_matrix(n, k).matrix
                else f"alpha formula and chain rule disagree for H_{k}",
            )
        )
    return CheckReport(command=f"h-cross-validation n={n}", results=tuple(results))
