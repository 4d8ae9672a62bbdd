"""
Tests for exact rational lattices, enumeration and the Minkowski/Hajós predicates.
"""
import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import unittest
from fractions import Fraction

import numpy as np
from hypothesis import given, settings, strategies as st

from tilings.constructions import unit_cube
from tilings.errors import CapacityError, DomainError, PreconditionError, SingularLatticeError
from tilings.exact import (
    Lattice, Matrix, PointPatch, canonical_vectors, dual_lattice, enumerate_box, enumerate_points,
    hajos_predicate, hajos_strict_vector, integral_row_index, lattice_contains, lattice_determinant,
    matrix_form_permutation, minkowski_vector, project_to_fundamental, standard_basis_index,
)
from tilings.verify import verify_lattice_tiling_fourier

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


class TestMatrixAndLattice(unittest.TestCase):
    """Exact matrix algebra and lattice membership"""

    def test_determinant_and_inverse(self):
        m = Matrix([[1, 0], ['1/2', 1]])
        self.assertEqual(m.det, 1)
        self.assertEqual(m.inverse().rows, ((1, 0), (Fraction(-1, 2), 1)))
        self.assertEqual((m @ m.inverse()).rows, Matrix.identity(2).rows)

    def test_non_square_matrix_rejected(self):
        with self.assertRaises(DomainError):
            Matrix([[1, 2]])

    def test_singular_lattice_rejected(self):
        with self.assertRaises(SingularLatticeError):
            Lattice(Matrix([[1, 2], [2, 4]]))

    def test_membership_with_offset(self):
        lattice = Lattice(Matrix.diagonal([2, 1]), ('1/2', 0))
        self.assertTrue(lattice.contains(('5/2', 3)))
        self.assertFalse(lattice.contains((1, 0)))
        self.assertTrue(lattice.is_translated)
        self.assertEqual(lattice.density, Fraction(1, 2))

    def test_dual_lattice(self):
        dual = dual_lattice(Lattice(Matrix.diagonal([2, '1/3'])))
        self.assertEqual(dual.basis.rows, ((Fraction(1, 2), 0), (0, 3)))

    def test_dual_of_translated_lattice_rejected(self):
        with self.assertRaises(DomainError):
            dual_lattice(Lattice(Matrix.identity(2), ('1/2', 0)))

    def test_determinant_and_contains_helpers(self):
        lattice = Lattice(Matrix([[2, 1], [0, '3/2']]))
        self.assertEqual(lattice_determinant(lattice), 3)
        self.assertTrue(lattice_contains(lattice, (3, '3/2')))
        self.assertFalse(lattice_contains(lattice, (1, 0)))

    @settings(max_examples=50, deadline=None)
    @given(rationals, rationals)
    def test_projection_is_idempotent(self, x, y):
        lattice = Lattice(Matrix([[2, 1], [0, '3/2']]), (1, 1))
        once = project_to_fundamental(lattice, (x, y))
        self.assertEqual(project_to_fundamental(lattice, once), once)
        coords = lattice.basis.inverse().apply(once)
        self.assertTrue(all(0 <= c < 1 for c in coords))


class TestEnumeration(unittest.TestCase):
    """Point enumeration in boxes"""

    def test_integer_points_in_unit_box(self):
        patch = enumerate_points(Lattice.integer(2), (0, 0), 1)
        self.assertEqual(len(patch), 9)
        self.assertEqual(patch.points[0], (-1, -1))
        self.assertEqual(patch.points[-1], (1, 1))
        self.assertTrue(patch.exact)

    def test_sheared_lattice_points_are_exact(self):
        lattice = Lattice(Matrix([[1, '1/3'], [0, 1]]))
        patch = enumerate_box(lattice, (-1, -1), (1, 1))
        for p in patch.points:
            self.assertTrue(lattice.contains(p))
            self.assertTrue(all(-1 <= v <= 1 for v in p))

    def test_capacity_error(self):
        with self.assertRaises(CapacityError) as ctx:
            enumerate_box(Lattice.integer(2), (-50, -50), (50, 50), cap=10)
        self.assertEqual(ctx.exception.to_dict()['cap'], 10)

    def test_negative_radius_rejected(self):
        with self.assertRaises(DomainError):
            enumerate_points(Lattice.integer(1), (0,), -1)

    def test_patch_duplicates_become_multiplicities(self):
        patch = PointPatch.from_points([(0, 0), (1, 0), (0, 0)])
        self.assertEqual(len(patch), 2)
        self.assertEqual(patch.total_count(), 3)
        self.assertEqual(patch.multiplicities.tolist(), [2, 1])


class TestIntegerPredicates(unittest.TestCase):
    """Minkowski vectors, the Hajós predicate and the canonical search order"""

    def test_canonical_order(self):
        vectors = canonical_vectors(2, 1).tolist()
        self.assertEqual(vectors, [[1, 0], [0, 1], [1, 1], [1, -1]])

    def test_minkowski_vector(self):
        self.assertEqual(minkowski_vector(Matrix([[1, 0], ['1/2', 1]]), 5), (1, 0))

    def test_hajos_holds_for_unit_triangular(self):
        result = hajos_predicate(Matrix([[1, 0], ['1/2', 1]]), 10)
        self.assertTrue(result.holds_up_to_bound)
        self.assertIsNone(result.witness)
        self.assertEqual(result.integral_row, 1)

    def test_hajos_fails_with_witness(self):
        matrix = Matrix([[1, '1/2'], ['1/3', '7/6']])
        result = hajos_predicate(matrix, 10)
        self.assertFalse(result.holds_up_to_bound)
        self.assertEqual(result.witness, (0, 1))
        self.assertIsNone(integral_row_index(matrix))

    def test_integral_row_counts_from_one(self):
        self.assertEqual(integral_row_index(Matrix.identity(2)), 1)
        self.assertEqual(integral_row_index(Matrix([['1/2', 1], [0, 2]])), 2)
        self.assertIsNone(integral_row_index(Matrix([['1/2', '1/2'], ['1/3', '2/3']])))
        self.assertEqual(hajos_predicate(Matrix.identity(2), 5).integral_row, 1)

    def test_strict_vector(self):
        self.assertIsNone(hajos_strict_vector(Matrix.identity(2), 5))

    def test_unimodular_required(self):
        with self.assertRaises(PreconditionError):
            hajos_predicate(Matrix.diagonal([2, 1]), 3)

    def test_standard_basis_index(self):
        self.assertEqual(standard_basis_index(Lattice(Matrix([[1, '1/2'], [0, 1]]))), 1)
        self.assertEqual(standard_basis_index(Lattice(Matrix.diagonal([2, 1]))), 2)
        self.assertIsNone(standard_basis_index(Lattice(Matrix.diagonal([2, 2]))))

    def test_matrix_form_permutation(self):
        self.assertEqual(matrix_form_permutation(Matrix([[1, 0], ['1/2', 1]])), (0, 1))
        self.assertEqual(matrix_form_permutation(Matrix([[1, '1/2'], [0, 1]])), (1, 0))


class TestRandomUnimodular(unittest.TestCase):
    """Seeded det-1 rational matrices: conjugated unit lower-triangular forms"""

    def _matrix(self, rng, dim):
        rows = [[Fraction(int(i == j)) for j in range(dim)] for i in range(dim)]
        for i in range(dim):
            for j in range(i):
                rows[i][j] = Fraction(int(rng.integers(-12, 13)), int(rng.integers(1, 7)))
        order = rng.permutation(dim)
        return Matrix([[rows[a][b] for b in order] for a in order])

    def test_fifty_matrices(self):
        rng = np.random.default_rng(2024)
        for case in range(50):
            matrix = self._matrix(rng, 2 + case % 2)
            self.assertEqual(matrix.det, 1)
            self.assertIsNotNone(minkowski_vector(matrix, 20), case)
            predicate = hajos_predicate(matrix, 10)
            self.assertTrue(predicate.holds_up_to_bound, case)
            self.assertIsNotNone(predicate.integral_row, case)
            cube_lattice = Lattice(matrix.inverse().transpose())
            fourier = verify_lattice_tiling_fourier(unit_cube(matrix.dim), cube_lattice, 4)
            self.assertEqual(fourier.passed, predicate.holds_up_to_bound, case)


if __name__ == '__main__':
    unittest.main(verbosity=2)
