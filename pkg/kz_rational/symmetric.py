from __future__ import annotations

import logging
from itertools import combinations, permutations
from typing import Any, Mapping, Sequence

from sympy.polys.domains import QQ
from sympy.polys.rings import PolyRing

from .arith import RatFunc, RFMatrix, rational, z_ring
from .errors import InvalidIndices
from .models import CheckReport, CheckResult, KZCoefficient, TranspositionMatrix

logger = logging.getLogger(__name__)

QGrid = tuple[tuple[Any, ...], ...]


def perm_matrix(n: int, i: int, j: int) -> TranspositionMatrix:
    if i == j or not (1 <= i <= n and 1 <= j <= n):
        raise InvalidIndices(f"transposition ({i};{j}) is not valid for n={n}")
    rows = []
    for r in range(1, n + 1):
        target = j if r == i else i if r == j else r
        rows.append(tuple(QQ.one if c == target else QQ.zero for c in range(1, n + 1)))
    return TranspositionMatrix(n=n, i=i, j=j, matrix=tuple(rows))


def transposition_sum(ring: PolyRing, n: int, weights: Mapping[tuple[int, int], RatFunc]) -> RFMatrix:
    """``sum w_ij P(i,j)`` over 1-based pairs, built entrywise."""

    zero = RatFunc(ring.zero, ring.one)
    total = zero
    touching = [zero] * n
    off: dict[tuple[int, int], RatFunc] = {}
    for (i, j), w in weights.items():
        if i == j:
            raise InvalidIndices(f"transposition ({i};{j}) is not valid for n={n}")
        if w.is_zero:
            continue
        total = total + w
        touching[i - 1] = touching[i - 1] + w
        touching[j - 1] = touching[j - 1] + w
        key = (min(i, j) - 1, max(i, j) - 1)
        off[key] = off.get(key, zero) + w
    grid = []
    for r in range(n):
        row = []
        for c in range(n):
            if r == c:
                row.append(total - touching[r])
            else:
                row.append(off.get((min(r, c), max(r, c)), zero))
        grid.append(tuple(row))
    return RFMatrix(n, n, tuple(grid))


def kz_coefficient(n: int, j: int, points: Sequence[RatFunc] | None = None) -> KZCoefficient:
    """A_j = sum_{k != j} P(j,k) / (z_j - z_k), optionally at substituted coordinates."""

    if n < 2 or not 1 <= j <= n:
        raise InvalidIndices(f"equation index {j} is not valid for n={n}")
    if points is None:
        ring = z_ring(n)
        points = [RatFunc.variable(ring, k) for k in range(n)]
    ring = points[0].ring
    weights = {(j, k): (points[j - 1] - points[k - 1]).inverse() for k in range(1, n + 1) if k != j}
    return KZCoefficient(n=n, j=j, matrix=transposition_sum(ring, n, weights))


def _qmul(a: QGrid, b: QGrid) -> QGrid:
    cols = list(zip(*b))
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), QQ.zero) for col in cols) for row in a)


def _qadd(a: QGrid, b: QGrid) -> QGrid:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _qsub(a: QGrid, b: QGrid) -> QGrid:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _is_zero(a: QGrid) -> bool:
    return all(not x for row in a for x in row)


def _identity(n: int) -> QGrid:
    return tuple(tuple(QQ.one if r == c else QQ.zero for c in range(n)) for r in range(n))


def _first_failure(cases: Sequence[tuple[str, bool]]) -> str | None:
    for label, ok in cases:
        if not ok:
            return label
    return None


def check_transposition_relations(n: int) -> CheckReport:
    if n < 2:
        raise InvalidIndices("transposition relations need n >= 2")
    p = {(i, j): perm_matrix(n, i, j).matrix for i, j in permutations(range(1, n + 1), 2)}
    ident = _identity(n)
    results: list[CheckResult] = []

    results.append(
        CheckResult.run(
            "symmetry",
            lambda: _first_failure([(f"P{i}{j} != P{j}{i}", p[i, j] == p[j, i]) for i, j in p]),
        )
    )
    results.append(
        CheckResult.run(
            "involution",
            lambda: _first_failure([(f"P{i}{j}^2 != I", _qmul(p[i, j], p[i, j]) == ident) for i, j in p]),
        )
    )

    def three_index() -> str | None:
        cases = []
        for i, j, k in permutations(range(1, n + 1), 3):
            s = _qadd(p[i, j], p[j, k])
            comm = _qsub(_qmul(s, p[i, k]), _qmul(p[i, k], s))
            cases.append((f"[P{i}{j}+P{j}{k}, P{i}{k}] != 0", _is_zero(comm)))
        return _first_failure(cases)

    def four_index() -> str | None:
        cases = []
        for i, j, k, l in permutations(range(1, n + 1), 4):
            comm = _qsub(_qmul(p[i, j], p[k, l]), _qmul(p[k, l], p[i, j]))
            cases.append((f"[P{i}{j}, P{k}{l}] != 0", _is_zero(comm)))
        return _first_failure(cases)

    def braid_conjugation() -> str | None:
        cases = []
        for j in range(1, n):
            for i in range(1, n + 1):
                if i in (j, j + 1):
                    continue
                lhs = _qmul(_qmul(p[j, j + 1], p[j, i]), p[j, j + 1])
                cases.append((f"P{j}{j + 1} P{j}{i} P{j}{j + 1} != P{j + 1}{i}", lhs == p[j + 1, i]))
        return _first_failure(cases)

    def braid_cube() -> str | None:
        cases = []
        for j in range(1, n):
            cube = _qmul(_qmul(p[j, j + 1], p[j, j + 1]), p[j, j + 1])
            cases.append((f"P{j}{j + 1}^3 != P{j + 1}{j}", cube == p[j + 1, j]))
        return _first_failure(cases)

    if n >= 3:
        results.append(CheckResult.run("three_index_commutator", three_index))
        results.append(CheckResult.run("braid_conjugation", braid_conjugation))
    else:
        results.append(CheckResult.skipped("three_index_commutator", "needs n >= 3"))
        results.append(CheckResult.skipped("braid_conjugation", "needs n >= 3"))
    if n >= 4:
        results.append(CheckResult.run("four_index_commutator", four_index))
    else:
        results.append(CheckResult.skipped("four_index_commutator", "needs n >= 4"))
    results.append(CheckResult.run("braid_cube", braid_cube))
    return CheckReport(command=f"transpositions n={n}", results=tuple(results))


def consistency_residual(n: int, rho: Any, i: int, j: int) -> RFMatrix:
    """rho (dA_i/dz_j - dA_j/dz_i) + rho^2 [A_i, A_j]."""

    rho = rational(rho)
    a_i = kz_coefficient(n, i).matrix
    a_j = kz_coefficient(n, j).matrix
    curl = a_i.derivative(j - 1) - a_j.derivative(i - 1)
    return curl.scale(rho) + a_i.commutator(a_j).scale(rho * rho)


def check_consistency(n: int, rho: Any) -> CheckReport:
    if n < 2:
        raise InvalidIndices("consistency needs n >= 2")
    results = []
    for i, j in combinations(range(1, n + 1), 2):

        def pair_check(i: int = i, j: int = j) -> str | None:
            residual = consistency_residual(n, rho, i, j)
            bad = residual.nonzero_entries()
            if bad:
                r, c, value = bad[0]
                return f"pair ({i},{j}) entry ({r + 1},{c + 1}) = {value}"
            return None

        results.append(CheckResult.run(f"consistency ({i},{j})", pair_check))
    logger.debug("consistency n=%d rho=%s: %d pairs", n, rho, len(results))
    return CheckReport(command=f"consistency n={n} rho={rho}", results=tuple(results))
