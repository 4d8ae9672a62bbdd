"""
Tests for the tiling and packing verdicts: Fourier criterion, exact cell
oracle, sampled coverage, polygon edge cancellation and face balance.
"""
import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import unittest
from fractions import Fraction

from tilings.constructions import notched_lattice, notched_tile, rational_hexagon, unit_cube, unit_square_polygon
from tilings.errors import DomainError, PreconditionError
from tilings.exact import Lattice, Matrix, PointPatch
from tilings.fourier import Box, BoxUnionTile
from tilings.verify import (
    Polygon2D, TranslationSet, central_symmetry_check, density_of, face_balance_check,
    packing_density_bound, separation_of, verify_lattice_tiling_fourier, verify_packing,
    verify_polygon_edge_cancellation, verify_tiling_exact, verify_tiling_sampled,
)
from utils.formatting import canonical_json

AP_TILE = BoxUnionTile((Box((0,), ('1/2',)), Box((1,), ('1/2',))))


class TestFourierCriterion(unittest.TestCase):
    """Transform vanishing on the nonzero dual points"""

    def test_notched_cube_passes(self):
        report = verify_lattice_tiling_fourier(notched_tile(['1/2', '1/3']), notched_lattice(['1/2', '1/3']), 6)
        self.assertTrue(report.passed)
        self.assertEqual(report.level, 1)
        self.assertIsNone(report.witness)

    def test_stretched_lattice_fails(self):
        report = verify_lattice_tiling_fourier(unit_cube(2), Lattice(Matrix.diagonal(['3/2', 1])), 4)
        self.assertFalse(report.passed)
        self.assertIsNotNone(report.witness)

    def test_translated_lattice_rejected(self):
        with self.assertRaises(DomainError):
            verify_lattice_tiling_fourier(unit_cube(1), Lattice(Matrix.identity(1), ('1/2',)))


class TestExactOracle(unittest.TestCase):
    """Cell-decomposition tiling verdicts"""

    def test_unit_square(self):
        report = verify_tiling_exact(unit_cube(2), TranslationSet.of_lattice(Lattice.integer(2)))
        self.assertTrue(report.passed)
        self.assertEqual(report.level, 1)
        self.assertEqual(report.tolerance, 0.0)

    def test_stretched_lattice_leaves_gaps(self):
        report = verify_tiling_exact(unit_cube(2), TranslationSet.of_lattice(Lattice(Matrix.diagonal(['3/2', 1]))))
        self.assertFalse(report.passed)
        self.assertEqual(report.coverage_min, 0)
        self.assertIsNotNone(report.witness)

    def test_ap_union(self):
        tset = TranslationSet.ap_union([(2, 0), (2, '1/2')])
        report = verify_tiling_exact(AP_TILE, tset)
        self.assertTrue(report.passed)
        self.assertEqual(report.level, 1)
        self.assertEqual(density_of(tset), 1)

    def test_ap_union_with_overlap(self):
        report = verify_tiling_exact(AP_TILE, TranslationSet.ap_union([(2, 0), (2, '3/4')]))
        self.assertFalse(report.passed)
        self.assertEqual(report.coverage_max, 2)

    def test_lattice_union_level_two(self):
        members = [Lattice.integer(1), Lattice(Matrix.identity(1), ('1/2',))]
        report = verify_tiling_exact(unit_cube(1, centered=False), TranslationSet.union(members))
        self.assertTrue(report.passed)
        self.assertEqual(report.level, 2)

    def test_weighted_box_level(self):
        tile = BoxUnionTile((Box((0,), (1,), Fraction(1, 2)),))
        report = verify_tiling_exact(tile, TranslationSet.of_lattice(Lattice.integer(1)))
        self.assertTrue(report.passed)
        self.assertEqual(report.level, Fraction(1, 2))


class TestSampledAndPacking(unittest.TestCase):
    """Sampled coverage and packing verdicts"""

    def test_shifted_columns_tile(self):
        tset = TranslationSet.shifted_columns({0: '1/2', 1: '1/3'})
        window = ((-3, -3), (3, 3))
        report = verify_tiling_sampled(unit_cube(2, centered=False), tset, window, samples=256, seed=1, level=1)
        self.assertTrue(report.passed)
        self.assertEqual(report.method, 'sampled')

    def test_sparse_lattice_packs(self):
        tset = TranslationSet.of_lattice(Lattice(Matrix.diagonal([2, 1])))
        report = verify_packing(unit_cube(2), tset)
        self.assertTrue(report.passed)
        self.assertEqual(report.coverage_min, 0)
        self.assertEqual(report.coverage_max, 1)

    def test_dense_lattice_does_not_pack(self):
        tset = TranslationSet.of_lattice(Lattice(Matrix.diagonal(['1/2', 1])))
        self.assertFalse(verify_packing(unit_cube(2), tset).passed)

    def test_patch_packing_needs_window(self):
        tset = TranslationSet.of_patch(PointPatch.from_points([(0, 0), (2, 0)]))
        with self.assertRaises(DomainError):
            verify_packing(unit_cube(2), tset)

    def test_density_bound(self):
        self.assertEqual(packing_density_bound(Fraction(1, 2)), 2)

    def test_separation(self):
        self.assertAlmostEqual(separation_of(PointPatch.from_points([(0, 0), (3, 4), (1, 0)])), 1.0)
        self.assertEqual(separation_of(PointPatch.from_points([(0, 0), (0, 0)])), 0.0)

    def test_separation_of_single_point_is_null(self):
        self.assertIsNone(separation_of(PointPatch.from_points([(0, 0)])))
        tset = TranslationSet.of_patch(PointPatch.from_points([(0, 0)]))
        report = verify_tiling_sampled(unit_cube(2, centered=False), tset, ((-1, -1), (1, 1)), samples=64, seed=0)
        self.assertIsNone(report.details['separation'])
        self.assertIn('"separation":null', canonical_json(report.to_dict()))

    def test_tiling_patch_is_separated(self):
        block = PointPatch.from_points([(x, y) for x in range(-3, 4) for y in range(-3, 4)])
        report = verify_tiling_sampled(unit_cube(2, centered=False), TranslationSet.of_patch(block),
                                       ((-3, -3), (3, 3)), samples=256, seed=0, level=1)
        self.assertTrue(report.passed)
        self.assertEqual(report.details['separation'], 1.0)


class TestPolygons(unittest.TestCase):
    """Edge cancellation, central symmetry and face balance"""

    def test_rational_hexagon_edges_cancel(self):
        polygon, lattice = rational_hexagon()
        result = verify_polygon_edge_cancellation(polygon, TranslationSet.of_lattice(lattice), ((-3, -3), (3, 3)))
        self.assertTrue(result['passed'])
        self.assertTrue(result['exact'])
        self.assertTrue(all(pair['residual_exact'] == '0' for pair in result['pairs']))

    def test_square_on_stretched_lattice(self):
        tset = TranslationSet.of_lattice(Lattice(Matrix.diagonal(['3/2', 1])))
        result = verify_polygon_edge_cancellation(unit_square_polygon(), tset, ((-3, -3), (3, 3)))
        self.assertFalse(result['passed'])

    def test_triangle(self):
        triangle = Polygon2D(((0, 0), (1, 0), (0, 1)))
        self.assertFalse(central_symmetry_check(triangle))
        self.assertFalse(all(row['balanced'] for row in face_balance_check(triangle)))
        with self.assertRaises(PreconditionError):
            verify_polygon_edge_cancellation(triangle, TranslationSet.of_lattice(Lattice.integer(2)),
                                             ((-1, -1), (1, 1)))

    def test_clockwise_vertices_reoriented(self):
        polygon = Polygon2D(((0, 0), (0, 1), (1, 1), (1, 0)))
        self.assertEqual(polygon.area, 1)

    def test_box_face_balance(self):
        self.assertTrue(all(row['balanced'] for row in face_balance_check(notched_tile(['1/2', '1/3']))))
        self.assertTrue(all(row['balanced'] for row in face_balance_check(AP_TILE)))


if __name__ == '__main__':
    unittest.main(verbosity=2)
