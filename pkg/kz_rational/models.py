from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any, Callable, Mapping

from sympy.polys.rings import PolyRing

from .arith import ExactRational, RatFunc, RFMatrix, RFVector
from .errors import KZError


@dataclass(frozen=True)
class TranspositionMatrix:
    n: int
    i: int
    j: int
    matrix: tuple[tuple[ExactRational, ...], ...]

    def to_rfmatrix(self, ring: PolyRing) -> RFMatrix:
        return RFMatrix.from_rows(ring, self.matrix)

    def act(self, vector: RFVector) -> RFVector:
        """Swaps coordinates i and j (1-based) of ``vector``."""

        out = list(vector)
        out[self.i - 1], out[self.j - 1] = out[self.j - 1], out[self.i - 1]
        return tuple(out)


@dataclass(frozen=True)
class KZCoefficient:
    n: int
    j: int
    matrix: RFMatrix


@dataclass(frozen=True)
class TMatrix:
    n: int
    p: int
    xi: tuple[RatFunc, ...]
    matrix: RFMatrix


@dataclass(frozen=True)
class Eigensystem:
    n: int
    u1: tuple[int, ...]
    u2basis: tuple[tuple[int, ...], ...]
    u3: tuple[int, ...]
    eigenvalues: tuple[int, ...]


@dataclass(frozen=True)
class SeriesState:
    lowest: int
    coefficients: tuple[RFVector, ...]
    resonant_indices: tuple[int, ...] = ()

    @property
    def highest(self) -> int:
        return self.lowest + len(self.coefficients) - 1

    def coefficient(self, index: int) -> RFVector:
        return self.coefficients[index - self.lowest]


@dataclass(frozen=True)
class PartialFractionSolution:
    """One column ``sum_{k,p} L[k][p-1] / (z - poles[k])**p + Q(z)`` in the active variable."""

    n: int
    m: int
    var: int
    poles: tuple[RatFunc, ...]
    pole_coefficients: tuple[tuple[RFVector, ...], ...]
    polynomial_part: RFVector

    def to_vector(self) -> RFVector:
        ring = self.polynomial_part[0].ring
        z = RatFunc.variable(ring, self.var)
        out = list(self.polynomial_part)
        for pole, block in zip(self.poles, self.pole_coefficients, strict=True):
            inv = (z - pole).inverse()
            power = inv
            for coeffs in block:
                out = [o + c * power for o, c in zip(out, coeffs)]
                power = power * inv
        return tuple(out)

    def pole_order(self, k: int) -> int:
        block = self.pole_coefficients[k]
        nonzero = [p for p, coeffs in enumerate(block, start=1) if any(not c.is_zero for c in coeffs)]
        return max(nonzero, default=0)

    def polynomial_degree(self) -> int:
        degrees = [c.degree(self.var)[0] for c in self.polynomial_part if not c.is_zero]
        return max(degrees, default=-1)


@dataclass(frozen=True)
class ConfluentVandermonde:
    xi: tuple[RatFunc, ...]
    m: int
    matrix: RFMatrix


@dataclass(frozen=True)
class FundamentalSolution:
    n: int
    rho: int
    var: int
    xi: tuple[RatFunc, ...]
    columns: tuple[PartialFractionSolution, ...]
    matrix: RFMatrix
    normalization_point: ExactRational | None = None


@dataclass(frozen=True)
class BasePointConfig:
    points: tuple[ExactRational, ...]

    @property
    def n(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class AssembledSolution:
    n: int
    rho: int
    base: BasePointConfig
    factors: tuple[RFMatrix, ...]
    product: RFMatrix


@dataclass(frozen=True)
class CoordinateMaps:
    n: int
    s_matrix: RFMatrix
    s_inverse: RFMatrix
    t_matrix: RFMatrix
    c_matrix: RFMatrix


@dataclass(frozen=True)
class HMatrix:
    n: int
    k: int
    matrix: RFMatrix


@dataclass(frozen=True)
class OmegaMatrix:
    n: int
    s: int
    matrix: tuple[tuple[int, ...], ...]
    block_form: tuple[int, tuple[tuple[int, ...], ...]]


@dataclass(frozen=True)
class OmegaEigensystem:
    n: int
    s: int
    vectors: tuple[tuple[int, ...], ...]
    eigenvalues: tuple[int, ...]


@dataclass(frozen=True)
class GaussParams:
    alpha: ExactRational
    beta: ExactRational
    gamma: ExactRational


@dataclass(frozen=True)
class PhiPair:
    phi1: RatFunc
    phi2: RatFunc


@dataclass(frozen=True)
class N3Solution:
    rho: int
    w1: RFMatrix
    w2: RFMatrix
    phi_pairs: tuple[PhiPair, ...]
    columns: tuple[RFVector, ...]
    psi: tuple[RatFunc, ...]


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str  # pass | fail | skipped
    witness: str | None = None
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    @classmethod
    def run(cls, name: str, fn: Callable[[], str | None]) -> CheckResult:
        """Runs ``fn``; a returned witness or a raised KZError marks the check failed."""

        start = time.perf_counter()
        try:
            witness = fn()
        except KZError as exc:
            return cls(name, "fail", str(exc), time.perf_counter() - start)
        status = "pass" if witness is None else "fail"
        return cls(name, status, witness, time.perf_counter() - start)

    @classmethod
    def skipped(cls, name: str, reason: str) -> CheckResult:
        return cls(name, "skipped", reason)


@dataclass(frozen=True)
class CheckReport:
    command: str
    results: tuple[CheckResult, ...] = field(default_factory=tuple)

    @property
    def failed(self) -> bool:
        return any(r.status == "fail" for r in self.results)

    @property
    def exit_status(self) -> int:
        return 1 if self.failed else 0

    def extend(self, results: tuple[CheckResult, ...] | list[CheckResult]) -> CheckReport:
        return CheckReport(self.command, self.results + tuple(results))


@dataclass(frozen=True)
class SelftestTier:
    name: str
    cases: tuple[tuple[int, int], ...]
    spectra_max_n: int = 0


@dataclass(frozen=True)
class SelftestConfig:
    tiers: Mapping[str, SelftestTier]
    oracle_order: int = 20
    oracle_centers: int = 3
    seed: int = 0
    extra: Mapping[str, Any] = field(default_factory=dict)
