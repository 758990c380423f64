"""Exact scalars, sparse polynomials, rational functions and matrices over them.

Polynomials are sympy ``PolyElement`` values over ``QQ`` in a ``grlex`` ring, so the
leading coefficient used for canonical forms is the graded-lexicographic one with
``z1 > z2 > ...``. ``RatFunc`` keeps numerator and denominator coprime with a monic
denominator; equality of canonical forms is equality of rational functions.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Iterable, Mapping, Sequence, TypeAlias

from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, PolyRing

from .errors import NotExpandable, SingularMatrix, ZeroDenominator

logger = logging.getLogger(__name__)

# Elements of sympy's QQ (gmpy2.mpq or PythonMPQ depending on ground types).
ExactRational: TypeAlias = Any
MultiPoly: TypeAlias = PolyElement


def rational(value: Any) -> ExactRational:
    """Converts int, Fraction, "p/q" strings and QQ elements into QQ."""

    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, str):
        frac = Fraction(value.strip())
        return QQ(frac.numerator, frac.denominator)
    if isinstance(value, QQ.dtype):
        return value
    if isinstance(value, RatFunc):
        if not value.is_constant:
            raise TypeError("rational function is not constant")
        return value.constant_value()
    return QQ.convert(value)


def format_rational(value: ExactRational) -> str:
    num, den = int(QQ.numer(value)), int(QQ.denom(value))
    return str(num) if den == 1 else f"{num}/{den}"


def ground_types() -> str:
    return "gmpy" if "gmpy" in type(QQ.one).__module__ else "python"


@lru_cache(maxsize=None)
def poly_ring(names: tuple[str, ...]) -> PolyRing:
    return PolyRing(",".join(names), QQ, grlex)


def z_ring(n: int) -> PolyRing:
    return poly_ring(tuple(f"z{i}" for i in range(1, n + 1)))


def u_ring(n: int) -> PolyRing:
    return poly_ring(tuple(f"u{i}" for i in range(1, n + 1)))


def variable_names(ring: PolyRing) -> tuple[str, ...]:
    return tuple(str(s) for s in ring.symbols)


def _lc_normalize(num: PolyElement, den: PolyElement) -> tuple[PolyElement, PolyElement]:
    lc = den.LC
    if lc != QQ.one:
        num = num.quo_ground(lc)
        den = den.quo_ground(lc)
    return num, den


@dataclass(frozen=True, eq=False)
class RatFunc:
    num: PolyElement
    den: PolyElement

    # -- construction -----------------------------------------------------

    @classmethod
    def constant(cls, ring: PolyRing, value: Any) -> RatFunc:
        return cls(ring.ground_new(rational(value)), ring.one)

    @classmethod
    def variable(cls, ring: PolyRing, index: int) -> RatFunc:
        return cls(ring.gens[index], ring.one)

    @classmethod
    def from_poly(cls, poly: PolyElement) -> RatFunc:
        if not poly:
            return cls(poly.ring.zero, poly.ring.one)
        return cls(poly, poly.ring.one)

    # -- inspection -------------------------------------------------------

    @property
    def ring(self) -> PolyRing:
        return self.num.ring

    @property
    def is_zero(self) -> bool:
        return not self.num

    @property
    def is_one(self) -> bool:
        return self.den == self.ring.one and self.num == self.ring.one

    @property
    def is_constant(self) -> bool:
        return self.num.is_ground and self.den.is_ground

    @property
    def is_polynomial(self) -> bool:
        return self.den.is_ground

    def constant_value(self) -> ExactRational:
        zero_monom = self.ring.zero_monom
        return self.num.get(zero_monom, QQ.zero) / self.den.get(zero_monom, QQ.one)

    def degree(self, var: int) -> tuple[int, int]:
        """Degrees of numerator and denominator in one variable (-1 for zero)."""

        dn = self.num.degree(var) if self.num else -1
        return int(dn), int(self.den.degree(var))

    def depends_on(self, var: int) -> bool:
        return self.num.degree(var) > 0 or self.den.degree(var) > 0

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other: Any) -> RatFunc:
        if isinstance(other, RatFunc):
            return other
        return RatFunc.constant(self.ring, other)

    def __add__(self, other: Any) -> RatFunc:
        other = self._coerce(other)
        if other.is_zero:
            return self
        if self.is_zero:
            return other
        if self.den == other.den:
            return normalize(self.num + other.num, self.den)
        g = self.den.gcd(other.den)
        da = self.den.exquo(g)
        db = other.den.exquo(g)
        return normalize(self.num * db + other.num * da, self.den * db)

    __radd__ = __add__

    def __neg__(self) -> RatFunc:
        return RatFunc(-self.num, self.den)

    def __sub__(self, other: Any) -> RatFunc:
        return self + (-self._coerce(other))

    def __rsub__(self, other: Any) -> RatFunc:
        return self._coerce(other) - self

    def __mul__(self, other: Any) -> RatFunc:
        other = self._coerce(other)
        if self.is_zero or other.is_zero:
            return RatFunc(self.ring.zero, self.ring.one)
        if other.is_constant:
            return RatFunc(self.num.mul_ground(other.constant_value()), self.den)
        if self.is_constant:
            return RatFunc(other.num.mul_ground(self.constant_value()), other.den)
        g1 = self.num.gcd(other.den)
        g2 = other.num.gcd(self.den)
        num = self.num.exquo(g1) * other.num.exquo(g2)
        den = self.den.exquo(g2) * other.den.exquo(g1)
        return RatFunc(*_lc_normalize(num, den))

    __rmul__ = __mul__

    def inverse(self) -> RatFunc:
        if self.is_zero:
            raise ZeroDenominator("inverse of the zero rational function")
        return RatFunc(*_lc_normalize(self.den, self.num))

    def __truediv__(self, other: Any) -> RatFunc:
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other: Any) -> RatFunc:
        return self._coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> RatFunc:
        if exponent == 0:
            # sympy rejects 0**0 on polynomials
            return RatFunc(self.ring.one, self.ring.one)
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return RatFunc(self.num**exponent, self.den**exponent)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)) or isinstance(other, QQ.dtype):
            return self.is_constant and self.constant_value() == rational(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((tuple(self.num.terms()), tuple(self.den.terms())))

    def __str__(self) -> str:
        if self.den == self.ring.one:
            return str(self.num.as_expr())
        return f"({self.num.as_expr()})/({self.den.as_expr()})"

    def __repr__(self) -> str:
        return f"RatFunc({self})"

    # -- calculus and substitution ---------------------------------------

    def derivative(self, var: int) -> RatFunc:
        return rf_partial_derivative(self, var)

    def subs(self, assignments: Mapping[int, Any]) -> RatFunc:
        """Substitutes rational values for variables, keeping the ring."""

        pairs = [(self.ring.gens[i], rational(v)) for i, v in assignments.items()]
        if not pairs:
            return self
        den = self.den.subs(pairs)
        if not den:
            raise ZeroDenominator(f"denominator vanishes at {dict(assignments)}")
        return normalize(self.num.subs(pairs), den)

    def evaluate(self, point: Sequence[Any]) -> ExactRational:
        return self.subs(dict(enumerate(point))).constant_value()

    def compose(self, images: Sequence[RatFunc]) -> RatFunc:
        """Replaces variable i by ``images[i]`` (all images share one target ring)."""

        num = compose_poly(self.num, images)
        den = compose_poly(self.den, images)
        return num / den


def normalize(num: PolyElement, den: PolyElement) -> RatFunc:
    """Canonical reduced form: coprime parts, denominator leading coefficient +1."""

    if not den:
        raise ZeroDenominator("rational function with zero denominator")
    ring = den.ring
    if not num:
        return RatFunc(ring.zero, ring.one)
    if den.is_ground:
        return RatFunc(num.quo_ground(den.LC), ring.one)
    _, num, den = num.cofactors(den)
    return RatFunc(*_lc_normalize(num, den))


def rf_partial_derivative(f: RatFunc, var_index: int) -> RatFunc:
    ring = f.ring
    if not 0 <= var_index < ring.ngens:
        raise IndexError(f"variable index {var_index} out of range for {ring.ngens} variables")
    if f.den.is_ground:
        return RatFunc(f.num.diff(var_index), f.den)
    num = f.num.diff(var_index) * f.den - f.num * f.den.diff(var_index)
    return normalize(num, f.den**2)


def compose_poly(poly: PolyElement, images: Sequence[RatFunc]) -> RatFunc:
    if not images:
        raise ValueError("composition needs at least one image")
    target = images[0].ring
    if not poly:
        return RatFunc(target.zero, target.one)
    nvars = poly.ring.ngens
    if len(images) != nvars:
        raise ValueError(f"expected {nvars} images, got {len(images)}")

    top = [max(m[i] for m in poly.monoms()) for i in range(nvars)]
    num_pows: list[list[PolyElement]] = []
    den_pows: list[list[PolyElement]] = []
    for i, image in enumerate(images):
        np_, dp_ = [target.one], [target.one]
        for _ in range(top[i]):
            np_.append(np_[-1] * image.num)
            dp_.append(dp_[-1] * image.den)
        num_pows.append(np_)
        den_pows.append(dp_)

    total = target.zero
    for monom, coeff in poly.terms():
        term = target.ground_new(coeff)
        for i, e in enumerate(monom):
            if top[i]:
                term = term * num_pows[i][e] * den_pows[i][top[i] - e]
        total += term
    common = target.one
    for i in range(nvars):
        common = common * den_pows[i][top[i]]
    return normalize(total, common)


def coefficients_in(poly: PolyElement, var: int) -> list[PolyElement]:
    """Coefficient polynomials of ``poly`` by power of one variable (variable removed)."""

    ring = poly.ring
    buckets: dict[int, dict[tuple[int, ...], Any]] = {}
    for monom, coeff in poly.terms():
        k = monom[var]
        rest = monom[:var] + (0,) + monom[var + 1 :]
        buckets.setdefault(k, {})[rest] = coeff
    if not buckets:
        return []
    return [ring.from_dict(buckets[k]) if k in buckets else ring.zero for k in range(max(buckets) + 1)]


def lowest_degree(poly: PolyElement, var: int) -> int:
    if not poly:
        raise ValueError("lowest degree of the zero polynomial is undefined")
    return min(m[var] for m in poly.monoms())


@dataclass(frozen=True)
class LaurentSeries:
    """Coefficients of ``t**lowest, t**(lowest+1), ...`` of a one-variable expansion."""

    lowest: int
    coefficients: tuple[RatFunc, ...]

    def coefficient(self, power: int) -> RatFunc | None:
        idx = power - self.lowest
        if idx < 0:
            return None
        if idx >= len(self.coefficients):
            raise IndexError(f"power {power} beyond computed order")
        return self.coefficients[idx]


def _series_divide(numer: Sequence[PolyElement], denom: Sequence[PolyElement], count: int) -> tuple[RatFunc, ...]:
    ring = denom[0].ring
    inv_d0 = RatFunc.from_poly(denom[0]).inverse()
    dens = [RatFunc.from_poly(d) for d in denom]
    out: list[RatFunc] = []
    for k in range(count):
        acc = RatFunc.from_poly(numer[k]) if k < len(numer) else RatFunc(ring.zero, ring.one)
        for i in range(1, min(k, len(dens) - 1) + 1):
            if not dens[i].is_zero and not out[k - i].is_zero:
                acc = acc - dens[i] * out[k - i]
        out.append(acc * inv_d0)
    return tuple(out)


def laurent_at_zero(f: RatFunc, var: int, order: int) -> LaurentSeries:
    """``order + 1`` coefficients of the expansion of ``f`` at ``z_var = 0``."""

    ring = f.ring
    if f.is_zero:
        return LaurentSeries(0, tuple(RatFunc(ring.zero, ring.one) for _ in range(order + 1)))
    num = coefficients_in(f.num, var)
    den = coefficients_in(f.den, var)
    n0 = next(i for i, c in enumerate(num) if c)
    d0 = next(i for i, c in enumerate(den) if c)
    return LaurentSeries(n0 - d0, _series_divide(num[n0:], den[d0:], order + 1))


def expand_at_infinity(f: RatFunc, var: int, order: int, min_index: int | None = None) -> LaurentSeries:
    """Expansion in ``u = 1/z_var``: ``order + 1`` coefficients from the lowest power."""

    ring = f.ring
    if f.is_zero:
        return LaurentSeries(0, tuple(RatFunc(ring.zero, ring.one) for _ in range(order + 1)))
    num = coefficients_in(f.num, var)
    den = coefficients_in(f.den, var)
    lowest = (len(den) - 1) - (len(num) - 1)
    if min_index is not None and lowest < min_index:
        raise NotExpandable(f"pole of order {-lowest} at infinity exceeds allowed index {min_index}")
    return LaurentSeries(lowest, _series_divide(num[::-1], den[::-1], order + 1))


def shift_variable(f: RatFunc, var: int, offset: Any) -> RatFunc:
    """``f`` with ``z_var`` replaced by ``z_var + offset``; the offset must be a polynomial."""

    ring = f.ring
    if isinstance(offset, RatFunc):
        if not offset.is_polynomial:
            raise ValueError("shift offset must be a polynomial")
        offset_poly = offset.num
    else:
        offset_poly = ring.ground_new(rational(offset))
    gen = ring.gens[var]
    image = gen + offset_poly
    return RatFunc(*_lc_normalize(f.num.compose(gen, image), f.den.compose(gen, image)))


def taylor_at(f: RatFunc, var: int, center: Any, order: int) -> tuple[RatFunc, ...]:
    """Taylor coefficients of ``f`` in ``(z_var - center)`` up to ``order``."""

    ring = f.ring
    shifted = shift_variable(f, var, center)
    series = laurent_at_zero(shifted, var, order)
    if series.lowest < 0:
        raise ZeroDenominator(f"pole at z{var + 1} = {center}")
    zero = RatFunc(ring.zero, ring.one)
    padded = (zero,) * series.lowest + series.coefficients
    return padded[: order + 1]


RFVector: TypeAlias = tuple[RatFunc, ...]


def zero_vector(ring: PolyRing, n: int) -> RFVector:
    return tuple(RatFunc(ring.zero, ring.one) for _ in range(n))


def constant_vector(ring: PolyRing, values: Iterable[Any]) -> RFVector:
    return tuple(RatFunc.constant(ring, v) for v in values)


def vec_add(a: RFVector, b: RFVector) -> RFVector:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vec_sub(a: RFVector, b: RFVector) -> RFVector:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vec_scale(c: Any, a: RFVector) -> RFVector:
    return tuple(x * c for x in a)


def dot(a: RFVector, b: RFVector) -> RatFunc:
    total = a[0] * b[0]
    for x, y in zip(a[1:], b[1:], strict=True):
        total = total + x * y
    return total


def is_zero_vector(a: RFVector) -> bool:
    return all(x.is_zero for x in a)


@dataclass(frozen=True)
class RFMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[RatFunc, ...], ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entries do not match the declared shape")

    @classmethod
    def from_rows(cls, ring: PolyRing, rows: Sequence[Sequence[Any]]) -> RFMatrix:
        grid = tuple(
            tuple(v if isinstance(v, RatFunc) else RatFunc.constant(ring, v) for v in row) for row in rows
        )
        return cls(len(grid), len(grid[0]) if grid else 0, grid)

    @classmethod
    def from_columns(cls, ring: PolyRing, columns: Sequence[Sequence[Any]]) -> RFMatrix:
        return cls.from_rows(ring, list(zip(*columns))) if columns else cls(0, 0, ())

    @classmethod
    def identity(cls, ring: PolyRing, n: int) -> RFMatrix:
        return cls.from_rows(ring, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, ring: PolyRing, rows: int, cols: int) -> RFMatrix:
        return cls.from_rows(ring, [[0] * cols for _ in range(rows)])

    @property
    def ring(self) -> PolyRing:
        return self.entries[0][0].ring

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, key: tuple[int, int]) -> RatFunc:
        i, j = key
        return self.entries[i][j]

    def row(self, i: int) -> RFVector:
        return self.entries[i]

    def column(self, j: int) -> RFVector:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list[RFVector]:
        return [self.column(j) for j in range(self.cols)]

    def map(self, fn: Callable[[RatFunc], RatFunc]) -> RFMatrix:
        return RFMatrix(self.rows, self.cols, tuple(tuple(fn(x) for x in r) for r in self.entries))

    def transpose(self) -> RFMatrix:
        return RFMatrix(self.cols, self.rows, tuple(zip(*self.entries)))

    def __add__(self, other: RFMatrix) -> RFMatrix:
        return RFMatrix(
            self.rows,
            self.cols,
            tuple(tuple(a + b for a, b in zip(ra, rb, strict=True)) for ra, rb in zip(self.entries, other.entries, strict=True)),
        )

    def __neg__(self) -> RFMatrix:
        return self.map(lambda x: -x)

    def __sub__(self, other: RFMatrix) -> RFMatrix:
        return self + (-other)

    def scale(self, c: Any) -> RFMatrix:
        return self.map(lambda x: x * c)

    def __matmul__(self, other: RFMatrix) -> RFMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        other_cols = other.columns()
        grid = []
        for r in self.entries:
            out_row = []
            for c in other_cols:
                acc = RatFunc(self.ring.zero, self.ring.one)
                for a, b in zip(r, c):
                    if not a.is_zero and not b.is_zero:
                        acc = acc + a * b
                out_row.append(acc)
            grid.append(tuple(out_row))
        return RFMatrix(self.rows, other.cols, tuple(grid))

    def apply(self, vector: RFVector) -> RFVector:
        return (self @ RFMatrix.from_columns(self.ring, [vector])).column(0)

    def commutator(self, other: RFMatrix) -> RFMatrix:
        return self @ other - other @ self

    def derivative(self, var: int) -> RFMatrix:
        return self.map(lambda x: rf_partial_derivative(x, var))

    def subs(self, assignments: Mapping[int, Any]) -> RFMatrix:
        return self.map(lambda x: x.subs(assignments))

    def compose(self, images: Sequence[RatFunc]) -> RFMatrix:
        return self.map(lambda x: x.compose(images))

    def is_zero(self) -> bool:
        return all(x.is_zero for r in self.entries for x in r)

    def is_identity(self) -> bool:
        return self.is_square and all(
            (x.is_one if i == j else x.is_zero) for i, r in enumerate(self.entries) for j, x in enumerate(r)
        )

    def nonzero_entries(self) -> list[tuple[int, int, RatFunc]]:
        return [(i, j, x) for i, r in enumerate(self.entries) for j, x in enumerate(r) if not x.is_zero]

    def minor(self, i: int, j: int) -> RFMatrix:
        grid = tuple(tuple(x for c, x in enumerate(r) if c != j) for k, r in enumerate(self.entries) if k != i)
        return RFMatrix(self.rows - 1, self.cols - 1, grid)

    def determinant(self) -> RatFunc:
        return determinant(self)


def determinant(m: RFMatrix) -> RatFunc:
    """Bareiss fraction-free determinant."""

    if not m.is_square:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        raise ValueError("determinant of an empty matrix")
    a = [list(r) for r in m.entries]
    one = RatFunc(m.ring.one, m.ring.one)
    prev, sign = one, 1
    for k in range(n - 1):
        pivot = next((r for r in range(k, n) if not a[r][k].is_zero), None)
        if pivot is None:
            return RatFunc(m.ring.zero, m.ring.one)
        if pivot != k:
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det


def _inverse_adjugate(m: RFMatrix) -> RFMatrix:
    n = m.rows
    det = determinant(m)
    if det.is_zero:
        raise SingularMatrix("determinant is the zero rational function")
    if n == 1:
        return RFMatrix(1, 1, ((det.inverse(),),))
    inv_det = det.inverse()
    grid = [
        [(determinant(m.minor(j, i)) * inv_det) * (1 if (i + j) % 2 == 0 else -1) for j in range(n)]
        for i in range(n)
    ]
    return RFMatrix(n, n, tuple(tuple(r) for r in grid))


def _inverse_gauss_jordan(m: RFMatrix) -> RFMatrix:
    n = m.rows
    ring = m.ring
    one = RatFunc(ring.one, ring.one)
    zero = RatFunc(ring.zero, ring.one)
    a = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(m.entries)]
    prev = one
    for k in range(n):
        pivot = next((r for r in range(k, n) if not a[r][k].is_zero), None)
        if pivot is None:
            raise SingularMatrix(f"no pivot in column {k}")
        a[k], a[pivot] = a[pivot], a[k]
        pk = a[k][k]
        for i in range(n):
            if i == k:
                continue
            aik = a[i][k]
            a[i] = [(pk * x - aik * y) / prev for x, y in zip(a[i], a[k])]
        prev = pk
    grid = tuple(tuple(x / a[i][i] for x in a[i][n:]) for i in range(n))
    return RFMatrix(n, n, grid)


def rfmatrix_inverse(m: RFMatrix, *, method: str = "auto") -> RFMatrix:
    """Exact inverse; adjugate for n <= 4, fraction-free Gauss-Jordan otherwise."""

    if not m.is_square:
        raise ValueError("only square matrices can be inverted")
    if method == "auto":
        method = "adjugate" if m.rows <= 4 else "gauss_jordan"
    logger.debug("inverting %dx%d rational matrix by %s", m.rows, m.cols, method)
    if method == "adjugate":
        return _inverse_adjugate(m)
    if method == "gauss_jordan":
        return _inverse_gauss_jordan(m)
    raise ValueError(f"unknown inversion method: {method}")


def solve_linear(matrix: RFMatrix, rhs: RFMatrix) -> RFMatrix | None:
    """One solution of ``matrix @ X = rhs`` (free unknowns set to 0), or None if inconsistent."""

    ring = matrix.ring
    rows, cols = matrix.rows, matrix.cols
    a = [list(matrix.row(i)) + list(rhs.row(i)) for i in range(rows)]
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if not a[i][c].is_zero), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = a[r][c].inverse()
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and not a[i][c].is_zero:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if any(not x.is_zero for x in a[i][cols:]):
            return None
    zero = RatFunc(ring.zero, ring.one)
    solution = [[zero] * rhs.cols for _ in range(cols)]
    for i, c in enumerate(pivots):
        solution[c] = a[i][cols:]
    return RFMatrix(cols, rhs.cols, tuple(tuple(s) for s in solution))


def to_latex(m: RFMatrix) -> str:
    from sympy import Matrix, latex

    return latex(Matrix([[x.num.as_expr() / x.den.as_expr() for x in r] for r in m.entries]))
