"""Formal expansion of single-equation solutions around z_1 = infinity.

With ``u = 1/z_1`` the coefficient ``rho * A_1`` expands as ``sum_p T_p u**(p+2)`` where
``T_p = sum_{k>=2} P(1,k) z_k**(p+1)``; the coefficients ``G_s, G_{s+1}, ...`` of a solution
``sum_q G_q u**q`` then obey

    [(q+1) + rho T_{-1}] G_{q+1} = -rho sum_{j>=0, j+l=q} T_j G_l.

``T_{-1}`` is symmetric with the three eigenspaces spanned by ``u1``, the ``u2`` family and
``u3``, so every step is solved by orthogonal projection.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from typing import Any, Sequence

from sympy.polys.domains import QQ

from .arith import RatFunc, RFVector, rational, zero_vector
from .errors import EigencheckFailed, InvalidIndices, ResonanceObstruction
from .models import Eigensystem, SeriesState, TMatrix
from .symmetric import transposition_sum

logger = logging.getLogger(__name__)


@lru_cache(maxsize=4096)
def _t_weights(xi: tuple[RatFunc, ...], p: int) -> tuple[RatFunc, ...]:
    return tuple(x ** (p + 1) for x in xi)


def t_matrix(n: int, xi: Sequence[RatFunc], p: int) -> TMatrix:
    if p < -1:
        raise InvalidIndices(f"T_p is defined for p >= -1, got {p}")
    xi = tuple(xi)
    if len(xi) != n - 1:
        raise InvalidIndices(f"expected {n - 1} parameters, got {len(xi)}")
    weights = {(1, k): w for k, w in enumerate(_t_weights(xi, p), start=2)}
    return TMatrix(n=n, p=p, xi=xi, matrix=transposition_sum(xi[0].ring, n, weights))


def t_apply(xi: tuple[RatFunc, ...], p: int, v: RFVector) -> RFVector:
    """T_p @ v using that P(1,k) swaps coordinates 1 and k."""

    weights = _t_weights(xi, p)
    total = weights[0]
    for w in weights[1:]:
        total = total + w
    head = v[0] * 0
    for w, x in zip(weights, v[1:]):
        if not x.is_zero:
            head = head + w * x
    tail = tuple(w * v[0] + (total - w) * x for w, x in zip(weights, v[1:]))
    return (head,) + tail


def _int_t_minus1(n: int, v: Sequence[int]) -> tuple[int, ...]:
    head = sum(v[1:])
    return (head,) + tuple(v[0] + (n - 2) * x for x in v[1:])


def t_minus1_eigensystem(n: int) -> Eigensystem:
    if n < 2:
        raise InvalidIndices("the eigensystem needs n >= 2")
    u1 = (1,) * n
    u3 = (n - 1,) + (-1,) * (n - 1)
    u2basis = tuple(
        tuple(1 if c == k else -1 if c == k + 1 else 0 for c in range(n)) for k in range(1, n - 1)
    )
    eigenvalues = (n - 1,) + (n - 2,) * (n - 2) + (-1,)

    def expect(vector: Sequence[int], lam: int, label: str) -> None:
        if _int_t_minus1(n, vector) != tuple(lam * x for x in vector):
            raise EigencheckFailed(f"T_-1 {label} != {lam} {label}")

    expect(u1, n - 1, "u1")
    expect(u3, -1, "u3")
    for idx, vec in enumerate(u2basis):
        expect(vec, n - 2, f"u2[{idx}]")
        if vec[0] != 0 or sum(vec) != 0:
            raise EigencheckFailed(f"u2[{idx}] is not orthogonal to u1")
    if sum(eigenvalues) != (n - 1) * (n - 2):
        raise EigencheckFailed("eigenvalues do not sum to the trace of T_-1")
    return Eigensystem(n=n, u1=u1, u2basis=u2basis, u3=u3, eigenvalues=eigenvalues)


def predicted_resonances(n: int, rho: Any) -> tuple[int, ...]:
    """Integer indices q+1 at which (q+1) + rho T_-1 is singular."""

    rho = rational(rho)
    candidates = [-rho * (n - 1), rho]
    if n >= 3:
        candidates.append(-rho * (n - 2))
    return tuple(sorted({int(QQ.numer(c)) for c in candidates if QQ.denom(c) == 1}))


def _right_side(state: SeriesState, xi: tuple[RatFunc, ...], rho: Any) -> RFVector:
    q = state.highest
    n = len(xi) + 1
    acc = zero_vector(xi[0].ring, n)
    for l in range(state.lowest, q + 1):
        g = state.coefficient(l)
        if all(x.is_zero for x in g):
            continue
        tg = t_apply(xi, q - l, g)
        acc = tuple(a + t for a, t in zip(acc, tg))
    return tuple(a * (-rho) for a in acc)


def advance_recursion(state: SeriesState, n: int, rho: Any, xi: Sequence[RatFunc]) -> SeriesState:
    """Appends G_{q+1}; at a resonance the kernel components are set to zero."""

    xi = tuple(xi)
    rho = rational(rho)
    if len(xi) != n - 1:
        raise InvalidIndices(f"expected {n - 1} parameters, got {len(xi)}")
    nxt = state.highest + 1
    rhs = _right_side(state, xi, rho)

    total = rhs[0]
    for x in rhs[1:]:
        total = total + x
    a = total / n
    c = ((rhs[0] * (n - 1)) - (total - rhs[0])) / (n * (n - 1))
    u3 = (n - 1,) + (-1,) * (n - 1)
    w = tuple(x - a - c * u for x, u in zip(rhs, u3))

    lam1 = nxt + rho * (n - 1)
    lam2 = nxt + rho * (n - 2)
    lam3 = nxt - rho
    resonant = False

    def solve(component: RatFunc, lam: Any, label: str) -> RatFunc:
        nonlocal resonant
        if lam != 0:
            return component / lam
        resonant = True
        if not component.is_zero:
            raise ResonanceObstruction(
                f"right side has a nonzero {label} component at resonant index {nxt}", index=nxt
            )
        logger.debug("resonance at index %d along %s is solvable", nxt, label)
        return component

    a_sol = solve(a, lam1, "u1")
    c_sol = solve(c, lam3, "u3")
    w_sol = zero_vector(xi[0].ring, n)
    if n >= 3:
        if lam2 != 0:
            w_sol = tuple(x / lam2 for x in w)
        else:
            for x in w:
                solve(x, lam2, "u2")

    g = tuple(a_sol + c_sol * u + x for u, x in zip(u3, w_sol))
    resonances = state.resonant_indices + ((nxt,) if resonant else ())
    return SeriesState(lowest=state.lowest, coefficients=state.coefficients + (g,), resonant_indices=resonances)


def run_recursion(
    seed_index: int, seed: RFVector, n: int, rho: Any, xi: Sequence[RatFunc], upto: int
) -> SeriesState:
    state = SeriesState(lowest=seed_index, coefficients=(tuple(seed),))
    while state.highest < upto:
        state = advance_recursion(state, n, rho, xi)
    logger.debug(
        "series from index %d to %d, resonances at %s", seed_index, upto, list(state.resonant_indices)
    )
    return state
