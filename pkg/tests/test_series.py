from __future__ import annotations

import unittest

from kz_rational.arith import RatFunc, constant_vector, z_ring, zero_vector
from kz_rational.builder import default_xi
from kz_rational.errors import InvalidIndices, ResonanceObstruction
from kz_rational.series import (
    predicted_resonances,
    run_recursion,
    t_apply,
    t_matrix,
    t_minus1_eigensystem,
)
from kz_rational.symmetric import perm_matrix


class TMatrixTests(unittest.TestCase):
    def test_t_minus_one_is_sum_of_first_row_transpositions(self) -> None:
        xi = default_xi(3)
        rows = [[x.constant_value() for x in row] for row in t_matrix(3, xi, -1).matrix.entries]
        self.assertEqual(rows, [[0, 1, 1], [1, 1, 0], [1, 0, 1]])

    def test_t_zero_weights_by_parameters(self) -> None:
        ring = z_ring(3)
        xi = default_xi(3)
        expected = perm_matrix(3, 1, 2).to_rfmatrix(ring).scale(xi[0]) + perm_matrix(3, 1, 3).to_rfmatrix(ring).scale(
            xi[1]
        )
        self.assertEqual(t_matrix(3, xi, 0).matrix, expected)

    def test_t_apply_matches_matrix_product(self) -> None:
        ring = z_ring(4)
        xi = default_xi(4)
        v = (RatFunc.variable(ring, 1), RatFunc.constant(ring, 2), RatFunc.variable(ring, 3), RatFunc.constant(ring, -1))
        self.assertEqual(t_apply(xi, 2, v), t_matrix(4, xi, 2).matrix.apply(v))

    def test_t_matrix_rejects_short_parameter_list(self) -> None:
        with self.assertRaises(InvalidIndices):
            t_matrix(4, default_xi(3), 0)
        with self.assertRaises(InvalidIndices):
            t_matrix(3, default_xi(3), -2)


class EigensystemTests(unittest.TestCase):
    def test_two_points(self) -> None:
        system = t_minus1_eigensystem(2)
        self.assertEqual(system.eigenvalues, (1, -1))
        self.assertEqual(system.u2basis, ())

    def test_three_points(self) -> None:
        system = t_minus1_eigensystem(3)
        self.assertEqual(system.eigenvalues, (2, 1, -1))
        self.assertEqual(system.u1, (1, 1, 1))
        self.assertEqual(system.u3, (2, -1, -1))
        self.assertEqual(sum(system.eigenvalues), 2)

    def test_eigenvalue_sum_is_trace(self) -> None:
        for n in range(2, 9):
            system = t_minus1_eigensystem(n)
            trace = sum(x.constant_value() for x in (t_matrix(n, default_xi(n), -1).matrix[i, i] for i in range(n)))
            self.assertEqual(sum(system.eigenvalues), trace, msg=f"n={n}")

    def test_predicted_resonances(self) -> None:
        self.assertEqual(predicted_resonances(3, -1), (-1, 1, 2))
        self.assertEqual(predicted_resonances(2, -2), (-2, 2))
        self.assertEqual(predicted_resonances(3, "1/2"), (-1,))


class RecursionTests(unittest.TestCase):
    def test_symmetric_seed_reproduces_closed_form(self) -> None:
        ring = z_ring(3)
        xi = default_xi(3)
        seed = constant_vector(ring, (1, 1, 1))
        state = run_recursion(2, seed, 3, -1, xi, 3)
        z2, z3 = xi
        self.assertEqual(state.coefficient(3), tuple(z2 + z3 for _ in range(3)))

    def test_zero_seed_stays_zero(self) -> None:
        ring = z_ring(3)
        state = run_recursion(0, zero_vector(ring, 3), 3, -1, default_xi(3), 4)
        self.assertEqual(state.highest, 4)
        self.assertTrue(all(x.is_zero for g in state.coefficients for x in g))

    def test_solvable_resonance_is_recorded(self) -> None:
        ring = z_ring(3)
        seed = constant_vector(ring, (0, 1, -1))
        state = run_recursion(1, seed, 3, -1, default_xi(3), 2)
        self.assertEqual(state.resonant_indices, (2,))
        z2, z3 = default_xi(3)
        expected = ((z2 - z3) / 3, (z2 + z3 * 2) / 3, -(z2 * 2 + z3) / 3)
        self.assertEqual(state.coefficient(2), expected)

    def test_obstructed_resonance_raises(self) -> None:
        ring = z_ring(3)
        seed = constant_vector(ring, (1, 1, 1))
        with self.assertRaises(ResonanceObstruction) as ctx:
            run_recursion(1, seed, 3, -1, default_xi(3), 2)
        self.assertEqual(ctx.exception.index, 2)


if __name__ == "__main__":
    unittest.main()
