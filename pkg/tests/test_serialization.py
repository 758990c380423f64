from __future__ import annotations

import json
import unittest
from pathlib import Path
from tempfile import TemporaryDirectory

from sympy.polys.domains import QQ

from kz_rational.arith import RatFunc, RFMatrix, z_ring
from kz_rational.assembly import assemble_product
from kz_rational.errors import ParseError
from kz_rational.models import AssembledSolution
from kz_rational.serialization import (
    dumps,
    load_any,
    load_document,
    matrix_from_document,
    matrix_to_document,
    poly_from_terms,
    poly_to_terms,
    ratfunc_from_document,
    ratfunc_to_document,
    rational_from_str,
    rational_to_str,
    solution_from_document,
    solution_to_document,
    write_document,
)

FIXTURES = Path(__file__).parent / "fixtures"


class ScalarFormatTests(unittest.TestCase):
    def test_rationals(self) -> None:
        self.assertEqual(rational_to_str(QQ(22, 7)), "22/7")
        self.assertEqual(rational_to_str(-4), "-4")
        self.assertEqual(rational_from_str("22/7"), QQ(22, 7))

    def test_rational_errors_carry_location(self) -> None:
        with self.assertRaises(ParseError) as ctx:
            rational_from_str(3, "$.base[0]")
        self.assertEqual(ctx.exception.location, "$.base[0]")
        with self.assertRaises(ParseError):
            rational_from_str("1/0")

    def test_polynomial_terms(self) -> None:
        ring = z_ring(3)
        z1, _, z3 = ring.gens
        poly = z1**2 * z3 * 3 - z1 + QQ(1, 2)
        terms = poly_to_terms(poly)
        self.assertEqual(terms[0], {"exp": [2, 0, 1], "coef": "3"})
        self.assertEqual(terms[-1], {"exp": [0, 0, 0], "coef": "1/2"})
        self.assertEqual(poly_from_terms(terms, ring), poly)

    def test_polynomial_errors(self) -> None:
        ring = z_ring(2)
        cases = (
            ({"exp": [1], "coef": "1"}, "$[0].exp"),
            ({"exp": [1, -1], "coef": "1"}, "$[0].exp"),
            ({"exp": [1, 0], "coef": 1}, "$[0].coef"),
            ({"exp": [1, 0]}, "$[0]"),
        )
        for term, location in cases:
            with self.assertRaises(ParseError, msg=repr(term)) as ctx:
                poly_from_terms([term], ring)
            self.assertEqual(ctx.exception.location, location)
        with self.assertRaises(ParseError):
            poly_from_terms([{"exp": [1, 0], "coef": "1"}, {"exp": [1, 0], "coef": "2"}], ring)

    def test_rational_function_document_is_canonical(self) -> None:
        ring = z_ring(2)
        z1, z2 = RatFunc.variable(ring, 0), RatFunc.variable(ring, 1)
        f = (z1 * 2) / (z1 * z2 * 4 - z1 * 2)
        doc = ratfunc_to_document(f)
        self.assertEqual(doc["den"][0]["coef"], "1")
        self.assertEqual(ratfunc_from_document(doc, ring), f)
        unreduced = {"num": poly_to_terms((z1 * 2).num), "den": poly_to_terms((z1 * z2 * 4 - z1 * 2).num)}
        self.assertEqual(dumps(ratfunc_to_document(ratfunc_from_document(unreduced, ring))), dumps(doc))

    def test_zero_denominator_rejected(self) -> None:
        with self.assertRaises(ParseError) as ctx:
            ratfunc_from_document({"num": [], "den": []}, z_ring(2))
        self.assertEqual(ctx.exception.location, "$.den")


class DocumentTests(unittest.TestCase):
    def test_matrix_fixture(self) -> None:
        matrix = load_any(FIXTURES / "pole_matrix.json")
        self.assertIsInstance(matrix, RFMatrix)
        ring = z_ring(2)
        z1, z2 = RatFunc.variable(ring, 0), RatFunc.variable(ring, 1)
        self.assertEqual(matrix, RFMatrix.from_rows(ring, [[(z1 - z2).inverse(), 0], [0, QQ(1, 2)]]))
        self.assertEqual(matrix_from_document(matrix_to_document(matrix)), matrix)

    def test_solution_round_trip_is_byte_stable(self) -> None:
        solution = assemble_product(3, -1)
        text = dumps(solution_to_document(solution))
        with TemporaryDirectory() as tmp:
            path = Path(tmp) / "solution.json"
            write_document(path, solution_to_document(solution))
            loaded = load_any(path)
        self.assertIsInstance(loaded, AssembledSolution)
        self.assertEqual(loaded.product, solution.product)
        self.assertEqual(loaded.factors, solution.factors)
        self.assertEqual(loaded.base, solution.base)
        self.assertEqual(dumps(solution_to_document(loaded)), text)
        self.assertTrue(text.endswith("}\n"))

    def test_solution_document_validation(self) -> None:
        doc = solution_to_document(assemble_product(2, -1))
        broken = dict(doc, n=3)
        with self.assertRaises(ParseError) as ctx:
            solution_from_document(broken)
        self.assertEqual(ctx.exception.location, "$.variables")
        with self.assertRaises(ParseError) as ctx:
            solution_from_document(dict(doc, kind="matrix"))
        self.assertEqual(ctx.exception.location, "$.kind")
        with self.assertRaises(ParseError) as ctx:
            solution_from_document(dict(doc, version=2))
        self.assertEqual(ctx.exception.location, "$.version")
        with self.assertRaises(ParseError) as ctx:
            solution_from_document(dict(doc, rho="-1"))
        self.assertEqual(ctx.exception.location, "$.rho")

    def test_ragged_rows(self) -> None:
        doc = matrix_to_document(RFMatrix.identity(z_ring(2), 2))
        doc["rows"][1] = doc["rows"][1][:1]
        with self.assertRaises(ParseError) as ctx:
            matrix_from_document(doc)
        self.assertEqual(ctx.exception.location, "$.rows[1]")

    def test_invalid_json_reports_line_and_column(self) -> None:
        with TemporaryDirectory() as tmp:
            path = Path(tmp) / "bad.json"
            path.write_text('{\n  "kind": \n}', encoding="utf-8")
            with self.assertRaises(ParseError) as ctx:
                load_document(path)
        self.assertTrue(ctx.exception.location.endswith(":3:1"))
        self.assertEqual(json.loads(dumps({"b": 1, "a": [1]})), {"a": [1], "b": 1})


if __name__ == "__main__":
    unittest.main()
