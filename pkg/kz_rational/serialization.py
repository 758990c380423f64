"""JSON documents for rationals, rational functions, matrices and assembled solutions.

Rationals are ``"p/q"`` strings, polynomials are term lists ``{"exp": [...], "coef": "p/q"}``
in descending grlex order, rational functions are ``{"num": ..., "den": ...}``. Equal values
produce byte-identical documents.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Mapping

from sympy.polys.rings import PolyElement, PolyRing

from .arith import RatFunc, RFMatrix, format_rational, normalize, poly_ring, rational, variable_names
from .errors import ParseError
from .models import AssembledSolution, BasePointConfig

FORMAT_VERSION = 1


def rational_to_str(value: Any) -> str:
    return format_rational(rational(value))


def rational_from_str(raw: Any, location: str = "$") -> Any:
    if not isinstance(raw, str):
        raise ParseError("rational must be a \"p/q\" string", location=location)
    try:
        return rational(raw)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational: {raw!r}", location=location) from exc


def poly_to_terms(poly: PolyElement) -> list[dict[str, Any]]:
    return [{"exp": list(monom), "coef": rational_to_str(coef)} for monom, coef in poly.terms() if coef]


def poly_from_terms(raw: Any, ring: PolyRing, location: str = "$") -> PolyElement:
    if not isinstance(raw, list):
        raise ParseError("polynomial must be a list of terms", location=location)
    terms: dict[tuple[int, ...], Any] = {}
    for idx, term in enumerate(raw):
        where = f"{location}[{idx}]"
        if not isinstance(term, Mapping) or set(term) != {"exp", "coef"}:
            raise ParseError("term must be {exp, coef}", location=where)
        exp = term["exp"]
        if (
            not isinstance(exp, list)
            or len(exp) != ring.ngens
            or not all(isinstance(e, int) and not isinstance(e, bool) and e >= 0 for e in exp)
        ):
            raise ParseError(f"exp must be {ring.ngens} non-negative integers", location=f"{where}.exp")
        monom = tuple(exp)
        if monom in terms:
            raise ParseError(f"repeated monomial {list(monom)}", location=f"{where}.exp")
        terms[monom] = rational_from_str(term["coef"], f"{where}.coef")
    return ring.from_dict(terms) if terms else ring.zero


def ratfunc_to_document(f: RatFunc) -> dict[str, Any]:
    return {"num": poly_to_terms(f.num), "den": poly_to_terms(f.den)}


def ratfunc_from_document(raw: Any, ring: PolyRing, location: str = "$") -> RatFunc:
    if not isinstance(raw, Mapping) or set(raw) != {"num", "den"}:
        raise ParseError("rational function must be {num, den}", location=location)
    num = poly_from_terms(raw["num"], ring, f"{location}.num")
    den = poly_from_terms(raw["den"], ring, f"{location}.den")
    if not den:
        raise ParseError("zero denominator", location=f"{location}.den")
    return normalize(num, den)


def _rows_to_document(matrix: RFMatrix) -> list[list[dict[str, Any]]]:
    return [[ratfunc_to_document(x) for x in row] for row in matrix.entries]


def _rows_from_document(raw: Any, ring: PolyRing, location: str) -> RFMatrix:
    if not isinstance(raw, list) or not raw:
        raise ParseError("matrix must be a non-empty list of rows", location=location)
    width = None
    rows = []
    for r, row in enumerate(raw):
        if not isinstance(row, list) or not row:
            raise ParseError("row must be a non-empty list", location=f"{location}[{r}]")
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ParseError(f"row has {len(row)} entries, expected {width}", location=f"{location}[{r}]")
        rows.append([ratfunc_from_document(x, ring, f"{location}[{r}][{c}]") for c, x in enumerate(row)])
    return RFMatrix.from_rows(ring, rows)


def _ring_from_document(raw: Mapping[str, Any]) -> PolyRing:
    names = raw.get("variables")
    if not isinstance(names, list) or not names or not all(isinstance(x, str) and x for x in names):
        raise ParseError("variables must be a non-empty list of names", location="$.variables")
    if len(set(names)) != len(names):
        raise ParseError("variables must be distinct", location="$.variables")
    return poly_ring(tuple(names))


def _require_kind(raw: Any, kind: str) -> Mapping[str, Any]:
    if not isinstance(raw, Mapping):
        raise ParseError("document must be an object")
    if raw.get("kind") != kind:
        raise ParseError(f"expected kind {kind!r}, got {raw.get('kind')!r}", location="$.kind")
    if raw.get("version", FORMAT_VERSION) != FORMAT_VERSION:
        raise ParseError(f"unsupported version {raw.get('version')!r}", location="$.version")
    return raw


def matrix_to_document(matrix: RFMatrix) -> dict[str, Any]:
    return {
        "kind": "matrix",
        "version": FORMAT_VERSION,
        "variables": list(variable_names(matrix.ring)),
        "rows": _rows_to_document(matrix),
    }


def matrix_from_document(raw: Any) -> RFMatrix:
    doc = _require_kind(raw, "matrix")
    return _rows_from_document(doc.get("rows"), _ring_from_document(doc), "$.rows")


def solution_to_document(solution: AssembledSolution) -> dict[str, Any]:
    return {
        "kind": "solution",
        "version": FORMAT_VERSION,
        "n": solution.n,
        "rho": solution.rho,
        "base": [rational_to_str(x) for x in solution.base.points],
        "variables": list(variable_names(solution.product.ring)),
        "factors": [_rows_to_document(f) for f in solution.factors],
        "product": _rows_to_document(solution.product),
    }


def _require_int(raw: Mapping[str, Any], key: str) -> int:
    value = raw.get(key)
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{key} must be an integer", location=f"$.{key}")
    return value


def _require_ring_size(doc: Mapping[str, Any], n: int) -> PolyRing:
    ring = _ring_from_document(doc)
    if ring.ngens != n:
        raise ParseError(f"expected {n} variables, got {ring.ngens}", location="$.variables")
    return ring


def solution_from_document(raw: Any) -> AssembledSolution:
    doc = _require_kind(raw, "solution")
    n = _require_int(doc, "n")
    rho = _require_int(doc, "rho")
    ring = _require_ring_size(doc, n)
    base_raw = doc.get("base")
    if not isinstance(base_raw, list) or len(base_raw) != n:
        raise ParseError(f"base must list {n} rationals", location="$.base")
    base = BasePointConfig(points=tuple(rational_from_str(x, f"$.base[{i}]") for i, x in enumerate(base_raw)))
    factors_raw = doc.get("factors")
    if not isinstance(factors_raw, list) or len(factors_raw) != n:
        raise ParseError(f"factors must hold {n} matrices", location="$.factors")
    factors = tuple(_rows_from_document(f, ring, f"$.factors[{i}]") for i, f in enumerate(factors_raw))
    product = _rows_from_document(doc.get("product"), ring, "$.product")
    for where, m in [("$.product", product)] + [(f"$.factors[{i}]", f) for i, f in enumerate(factors)]:
        if m.rows != n or m.cols != n:
            raise ParseError(f"expected a {n}x{n} matrix", location=where)
    return AssembledSolution(n=n, rho=rho, base=base, factors=factors, product=product)


def dumps(document: Mapping[str, Any]) -> str:
    return json.dumps(document, sort_keys=True, separators=(",", ":")) + "\n"


def load_document(path: str | Path) -> Any:
    path = Path(path)
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON ({exc.msg})", location=f"{path}:{exc.lineno}:{exc.colno}") from exc


def load_any(path: str | Path) -> AssembledSolution | RFMatrix:
    """Reads either a solution or a bare matrix document."""

    raw = load_document(path)
    if isinstance(raw, Mapping) and raw.get("kind") == "matrix":
        return matrix_from_document(raw)
    return solution_from_document(raw)


def write_document(path: str | Path, document: Mapping[str, Any]) -> None:
    Path(path).write_text(dumps(document), encoding="utf-8")
