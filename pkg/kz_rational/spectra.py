from __future__ import annotations

import logging
from typing import Any, Sequence

from .arith import RatFunc, RFMatrix, rational, rfmatrix_inverse
from .errors import BlockFormMismatch, InvalidIndices, NotEigenvector
from .models import OmegaEigensystem, OmegaMatrix
from .symmetric import perm_matrix

logger = logging.getLogger(__name__)


def block_size(n: int, s: int) -> int:
    """N_s = (n-s)(n-s-1)/2."""

    return (n - s) * (n - s - 1) // 2


def omega_matrix(n: int, s: int) -> OmegaMatrix:
    """Omega_s = sum_{r>=s} sum_{j>r} P(j,r), checked against its block form."""

    if not 1 <= s <= n - 1:
        raise InvalidIndices(f"Omega_{s} is not defined for n={n}")
    acc = [[0] * n for _ in range(n)]
    for r in range(s, n):
        for j in range(r + 1, n + 1):
            p = perm_matrix(n, j, r).matrix
            for a in range(n):
                for b in range(n):
                    acc[a][b] += 1 if p[a][b] else 0
    matrix = tuple(tuple(row) for row in acc)

    scalar = block_size(n, s - 1)
    inner = block_size(n, s)
    size = n - s + 1
    omega = tuple(tuple(inner if a == b else 1 for b in range(size)) for a in range(size))
    for a in range(n):
        for b in range(n):
            if a < s - 1 or b < s - 1:
                expected = scalar if a == b else 0
            else:
                expected = omega[a - s + 1][b - s + 1]
            if matrix[a][b] != expected:
                raise BlockFormMismatch(f"Omega_{s} entry ({a + 1},{b + 1}) is {matrix[a][b]}, expected {expected}")
    return OmegaMatrix(n=n, s=s, matrix=matrix, block_form=(scalar, omega))


def common_eigenvectors(n: int) -> tuple[tuple[int, ...], ...]:
    """v_k = (0, ..., 0, -k, 1, ..., 1) with -k at position n-k; v_n is all ones."""

    vectors = [tuple(0 if c < n - k - 1 else -k if c == n - k - 1 else 1 for c in range(n)) for k in range(1, n)]
    vectors.append((1,) * n)
    return tuple(vectors)


def omega_eigensystem(n: int, s: int) -> OmegaEigensystem:
    matrix = omega_matrix(n, s).matrix
    vectors = common_eigenvectors(n)
    eigenvalues = []
    for k, v in enumerate(vectors, start=1):
        image = [sum(matrix[a][b] * v[b] for b in range(n)) for a in range(n)]
        pivot = next(i for i, x in enumerate(v) if x)
        lam = image[pivot] // v[pivot]
        if image[pivot] % v[pivot] or any(image[a] != lam * v[a] for a in range(n)):
            raise NotEigenvector(f"v_{k} is not an eigenvector of Omega_{s}")
        eigenvalues.append(lam)
    logger.debug("Omega_%d spectrum for n=%d: %s", s, n, eigenvalues)
    return OmegaEigensystem(n=n, s=s, vectors=vectors, eigenvalues=tuple(eigenvalues))


def asymptotic_exponents(n: int, rho: Any) -> tuple[tuple[Any, ...], ...]:
    """Table [k][s-1] of rho * lambda_{k,s}."""

    rho = rational(rho)
    spectra = [omega_eigensystem(n, s).eigenvalues for s in range(1, n)]
    return tuple(tuple(rho * spectra[s][k] for s in range(n - 1)) for k in range(n))


def spectral_matrix_power(vectors: Sequence[Sequence[int]], exponents: Sequence[int], base: RatFunc) -> RFMatrix:
    """V diag(base**e_k) V^-1, i.e. base**M for M diagonal in the basis ``vectors``."""

    ring = base.ring
    v = RFMatrix.from_columns(ring, [list(vec) for vec in vectors])
    diagonal = RFMatrix.from_rows(
        ring,
        [[base ** int(e) if r == c else 0 for c, e in enumerate(exponents)] for r in range(len(exponents))],
    )
    return v @ diagonal @ rfmatrix_inverse(v)


def trace_identity_holds(n: int, s: int) -> bool:
    """sum_k lambda_{k,s} = trace(Omega_s) = (s-1) N_{s-1} + (n-s+1) N_s."""

    system = omega_eigensystem(n, s)
    trace = sum(omega_matrix(n, s).matrix[i][i] for i in range(n))
    expected = (s - 1) * block_size(n, s - 1) + (n - s + 1) * block_size(n, s)
    return sum(system.eigenvalues) == trace == expected
