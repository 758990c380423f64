from __future__ import annotations

import unittest

from kz_rational.arith import RatFunc, constant_vector
from kz_rational.errors import InvalidIndices
from kz_rational.hypergeom import (
    build_n3_solution,
    factorization_check,
    gauss_params,
    hypergeom_ode_residual,
    hypergeometric_vector_identities,
    phi_system_residual,
    rationality_certificate,
    span_coefficients,
    split_column,
    terminating_series,
    wronskian,
    y_ring,
)
from kz_rational.models import PhiPair


def _y() -> RatFunc:
    return RatFunc.variable(y_ring(), 0)


class GaussEquationTests(unittest.TestCase):
    def test_parameters(self) -> None:
        self.assertEqual(gauss_params(-1), gauss_params("-1"))
        p = gauss_params(-1)
        self.assertEqual((p.alpha, p.beta, p.gamma), (1, 3, 3))
        p = gauss_params(1)
        self.assertEqual((p.alpha, p.beta, p.gamma), (-1, -3, -1))
        p = gauss_params(0)
        self.assertEqual((p.alpha, p.beta, p.gamma), (0, 0, 1))

    def test_known_rational_solutions(self) -> None:
        y = _y()
        self.assertTrue(hypergeom_ode_residual((1 - y).inverse(), gauss_params(-1)).is_zero)
        self.assertTrue(hypergeom_ode_residual(1 - y * 3, gauss_params(1)).is_zero)
        self.assertFalse(hypergeom_ode_residual(RatFunc.constant(y.ring, 1), gauss_params(-1)).is_zero)

    def test_terminating_series(self) -> None:
        y = _y()
        self.assertEqual(terminating_series(gauss_params(1), 1), 1 - y * 3)
        self.assertEqual(terminating_series(gauss_params(2), 2), 1 - y * 4 + y * y * 5)

    def test_series_with_vanishing_denominator(self) -> None:
        self.assertIsNone(terminating_series(gauss_params(2), 4))

    def test_wronskian_and_span(self) -> None:
        y = _y()
        one = RatFunc.constant(y.ring, 1)
        self.assertEqual(wronskian(one, y), one)
        self.assertEqual(span_coefficients(y * 2 + 5, one, y), (5, 2))
        self.assertIsNone(span_coefficients(y * y, one, y))
        self.assertIsNone(span_coefficients(y, y, y * 3))


class PhiSystemTests(unittest.TestCase):
    def test_split_column(self) -> None:
        ring = y_ring()
        self.assertEqual(split_column(constant_vector(ring, (1, 2, 3))), (2, -2, -1))

    def test_vector_identities(self) -> None:
        report = hypergeometric_vector_identities()
        self.assertEqual(len(report.results), 4)
        self.assertFalse(report.failed)

    def test_misprinted_pair_is_not_a_solution(self) -> None:
        y = _y()
        pair = PhiPair(phi1=(1 - y).inverse(), phi2=(y * y).inverse() - y.inverse())
        first, second = phi_system_residual(pair, -1)
        self.assertFalse(first.is_zero and second.is_zero)

    def test_constructed_pairs_solve_the_system(self) -> None:
        solution = build_n3_solution(-1)
        self.assertEqual(len(solution.phi_pairs), 2)
        for pair in solution.phi_pairs:
            first, second = phi_system_residual(pair, -1)
            self.assertTrue(first.is_zero)
            self.assertTrue(second.is_zero)
        self.assertEqual(len(solution.columns), 3)
        self.assertFalse(factorization_check(solution).failed)


class CertificateTests(unittest.TestCase):
    def test_certificates_pass(self) -> None:
        for rho in (-2, -1, 1, 2):
            report = rationality_certificate(rho)
            self.assertFalse(report.failed, msg=f"rho={rho}: {report.results}")

    def test_known_solution_entry_only_for_minus_one(self) -> None:
        names = {r.name for r in rationality_certificate(-1).results}
        self.assertIn("1/(1-y) in span", names)
        self.assertNotIn("1/(1-y) in span", {r.name for r in rationality_certificate(1).results})

    def test_series_route(self) -> None:
        statuses = {r.name: r.status for r in rationality_certificate(2).results}
        self.assertEqual(statuses["terminating series"], "pass")
        with self.assertLogs("kz_rational.hypergeom", level="WARNING"):
            report = rationality_certificate(-2)
        statuses = {r.name: r.status for r in report.results}
        self.assertEqual(statuses["terminating series"], "skipped")

    def test_zero_coupling_rejected(self) -> None:
        with self.assertRaises(InvalidIndices):
            rationality_certificate(0)


if __name__ == "__main__":
    unittest.main()
