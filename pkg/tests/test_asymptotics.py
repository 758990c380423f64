from __future__ import annotations

import random
import unittest
from unittest import mock

from kz_rational import asymptotics
from kz_rational.arith import RatFunc, RFMatrix, poly_ring, u_ring
from kz_rational.assembly import assemble_product
from kz_rational.asymptotics import check_leading_asymptotics, to_u_coordinates
from kz_rational.coords import u_of_z
from kz_rational.errors import AsymptoticMismatch


class LeadingAsymptoticsTests(unittest.TestCase):
    def test_three_points_match_predicted_exponents(self) -> None:
        for rho in (-1, 1):
            solution = assemble_product(3, rho)
            report = check_leading_asymptotics(solution, 3, rho, rng=random.Random(5))
            self.assertFalse(report.failed, msg=f"rho={rho}: {report.results}")
            names = [r.name for r in report.results]
            self.assertEqual(names[0], "alignment")
            self.assertIn("exponent (k=3, s=1)", names)
            self.assertIn("remainder (k=2)", names)
            self.assertEqual(len(names), 1 + 3 + 3 * 2)

    def test_remainder_must_vanish_faster_than_leading_term(self) -> None:
        solution = assemble_product(3, -1)
        t = RatFunc.variable(poly_ring(("t",)), 0)
        # column 1 leads with t^1 but carries a t^0 component along v_2
        on_ray = RFMatrix.from_rows(t.ring, [[t, 0, 0], [1, t**-1, 0], [0, 0, t**-4]])
        identity = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
        with mock.patch.object(asymptotics, "align_columns", return_value=list(identity)), mock.patch.object(
            asymptotics, "restrict_to_ray", return_value=on_ray
        ):
            report = check_leading_asymptotics(solution, 3, -1)
        statuses = {r.name: r.status for r in report.results}
        self.assertEqual(statuses["remainder (k=1)"], "fail")
        self.assertEqual(statuses["remainder (k=2)"], "pass")
        self.assertEqual(statuses["remainder (k=3)"], "pass")
        self.assertEqual(report.exit_status, 1)

    def test_accepts_bare_matrix(self) -> None:
        solution = assemble_product(3, -1)
        report = check_leading_asymptotics(solution.product, 3, -1)
        self.assertFalse(report.failed)

    def test_alignment_failure_is_reported(self) -> None:
        solution = assemble_product(3, -1)
        failure = AsymptoticMismatch("no alignment", pair=(1, 0))
        with mock.patch.object(asymptotics, "align_columns", side_effect=failure):
            report = check_leading_asymptotics(solution, 3, -1)
        self.assertEqual(len(report.results), 1)
        self.assertEqual(report.results[0].status, "fail")
        self.assertEqual(report.exit_status, 1)


class CoordinateChangeTests(unittest.TestCase):
    def test_product_moves_to_u_ring(self) -> None:
        solution = assemble_product(3, -1)
        in_u = to_u_coordinates(solution.product, 3)
        self.assertEqual(in_u.ring, u_ring(3))
        self.assertIsInstance(in_u[0, 0], RatFunc)
        self.assertEqual(in_u.compose(u_of_z(3)), solution.product)


if __name__ == "__main__":
    unittest.main()
