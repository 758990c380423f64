from __future__ import annotations

import unittest
from fractions import Fraction
from unittest import mock

from sympy.polys.domains import QQ

from kz_rational import arith
from kz_rational.arith import (
    RatFunc,
    RFMatrix,
    determinant,
    expand_at_infinity,
    format_rational,
    laurent_at_zero,
    rational,
    rfmatrix_inverse,
    solve_linear,
    taylor_at,
    to_latex,
    z_ring,
)
from kz_rational.errors import NotExpandable, SingularMatrix, ZeroDenominator


def _vars(n: int) -> list[RatFunc]:
    ring = z_ring(n)
    return [RatFunc.variable(ring, i) for i in range(n)]


class ScalarTests(unittest.TestCase):
    def test_rational_parsing_and_formatting(self) -> None:
        self.assertEqual(rational("22/7"), QQ(22, 7))
        self.assertEqual(rational(Fraction(3, 6)), QQ(1, 2))
        self.assertEqual(format_rational(QQ(22, 7)), "22/7")
        self.assertEqual(format_rational(QQ(4, 2)), "2")
        self.assertEqual(format_rational(QQ(-1, 3)), "-1/3")

    def test_rational_rejects_booleans(self) -> None:
        with self.assertRaises(TypeError):
            rational(True)

    def test_ground_types_reports_backend(self) -> None:
        self.assertIn(arith.ground_types(), {"gmpy", "python"})
        with mock.patch.object(arith, "QQ", mock.Mock(one=Fraction(1))):
            self.assertEqual(arith.ground_types(), "python")


class RatFuncTests(unittest.TestCase):
    def test_canonical_form_cancels_common_factors(self) -> None:
        z1, z2 = _vars(2)
        f = (z1 * z1 - z2 * z2) / (z1 - z2)
        self.assertEqual(f, z1 + z2)
        self.assertTrue(f.is_polynomial)

    def test_denominator_is_normalized(self) -> None:
        z1, z2 = _vars(2)
        self.assertEqual((z1 * 2) / (z2 * 4), z1 / (z2 * 2))
        self.assertEqual(((z1 * 2) / (z2 * 4)).den.LC, QQ.one)

    def test_inverse_of_zero_raises(self) -> None:
        z1, _ = _vars(2)
        with self.assertRaises(ZeroDenominator):
            (z1 - z1).inverse()

    def test_derivative_and_negative_power(self) -> None:
        z1, _ = _vars(2)
        self.assertEqual((z1 ** -1).derivative(0), -(z1 ** -2))

    def test_zeroth_power_of_zero_is_one(self) -> None:
        z1, _ = _vars(2)
        self.assertTrue(((z1 - z1) ** 0).is_one)
        self.assertTrue((z1 ** 0).is_one)

    def test_subs_and_evaluate(self) -> None:
        z1, z2 = _vars(2)
        f = (z1 + z2) / (z1 - z2)
        self.assertEqual(f.evaluate([3, 1]), QQ(2))
        with self.assertRaises(ZeroDenominator):
            f.subs({0: 1, 1: 1})

    def test_compose(self) -> None:
        z1, z2 = _vars(2)
        self.assertEqual((z1 * z2).compose([z1 + z2, z1 - z2]), z1 * z1 - z2 * z2)

    def test_equality_with_plain_numbers(self) -> None:
        ring = z_ring(1)
        self.assertEqual(RatFunc.constant(ring, "3/4"), Fraction(3, 4))
        self.assertNotEqual(RatFunc.variable(ring, 0), 0)


class ExpansionTests(unittest.TestCase):
    def test_laurent_at_zero(self) -> None:
        (z,) = _vars(1)
        series = laurent_at_zero((z * (1 - z)).inverse(), 0, 3)
        self.assertEqual(series.lowest, -1)
        self.assertEqual([c.constant_value() for c in series.coefficients], [1, 1, 1, 1])

    def test_expand_at_infinity(self) -> None:
        (z,) = _vars(1)
        series = expand_at_infinity(z / (z - 1), 0, 2)
        self.assertEqual(series.lowest, 0)
        self.assertEqual([c.constant_value() for c in series.coefficients], [1, 1, 1])

    def test_geometric_expansion_at_infinity(self) -> None:
        z1, z2 = _vars(2)
        series = expand_at_infinity((z1 - z2).inverse(), 0, 3)
        self.assertEqual(series.lowest, 1)
        self.assertEqual(list(series.coefficients), [1, z2, z2 * z2, z2 * z2 * z2])

    def test_expand_at_infinity_respects_min_index(self) -> None:
        (z,) = _vars(1)
        self.assertEqual(expand_at_infinity(z * z, 0, 1).lowest, -2)
        with self.assertRaises(NotExpandable):
            expand_at_infinity(z * z, 0, 1, min_index=-1)

    def test_taylor_at_shifted_center(self) -> None:
        (z,) = _vars(1)
        coeffs = taylor_at(z.inverse(), 0, 1, 3)
        self.assertEqual([c.constant_value() for c in coeffs], [1, -1, 1, -1])


class MatrixTests(unittest.TestCase):
    def test_determinant(self) -> None:
        z1, z2 = _vars(2)
        m = RFMatrix.from_rows(z_ring(2), [[z1, 1], [1, z2]])
        self.assertEqual(determinant(m), z1 * z2 - 1)

    def test_inverse_methods_agree(self) -> None:
        z1, z2, z3 = _vars(3)
        m = RFMatrix.from_rows(z_ring(3), [[z1, 1, 0], [1, z2, 1], [0, 1, z3]])
        adjugate = rfmatrix_inverse(m, method="adjugate")
        gauss = rfmatrix_inverse(m, method="gauss_jordan")
        self.assertEqual(adjugate, gauss)
        self.assertTrue((m @ adjugate).is_identity())

    def test_inverse_of_triangular_matrix(self) -> None:
        z1, _ = _vars(2)
        ring = z_ring(2)
        m = RFMatrix.from_rows(ring, [[z1, 1], [0, 1]])
        expected = RFMatrix.from_rows(ring, [[z1.inverse(), -z1.inverse()], [0, 1]])
        self.assertEqual(rfmatrix_inverse(m), expected)

    def test_singular_inverse_raises(self) -> None:
        z1, _ = _vars(2)
        m = RFMatrix.from_rows(z_ring(2), [[z1, z1], [1, 1]])
        with self.assertRaises(SingularMatrix):
            rfmatrix_inverse(m)

    def test_solve_linear(self) -> None:
        ring = z_ring(2)
        z1, _ = _vars(2)
        m = RFMatrix.from_rows(ring, [[1, 1], [1, -1]])
        solved = solve_linear(m, RFMatrix.from_rows(ring, [[z1 * 2], [0]]))
        self.assertEqual(solved.column(0), (z1, z1))
        inconsistent = RFMatrix.from_rows(ring, [[1, 1], [1, 1]])
        self.assertIsNone(solve_linear(inconsistent, RFMatrix.from_rows(ring, [[1], [2]])))

    def test_latex(self) -> None:
        (z,) = _vars(1)
        self.assertIn("begin{matrix}", to_latex(RFMatrix.from_rows(z_ring(1), [[z.inverse(), 1]])))


if __name__ == "__main__":
    unittest.main()
