"""
Tests for closed-form transforms, edge-measure zero grids and J1.
"""
import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import math
import unittest
from fractions import Fraction

import numpy as np
from scipy import integrate, special

from tilings.constructions import notched_tile, unit_cube
from tilings.errors import DomainError, NonDiscreteIntersectionError
from tilings.fourier import (
    Box, BoxUnionTile, EdgeMeasure, bessel_j1, bessel_j1_first_zero, disk_first_zero_radius,
    ft_box_union, ft_edge_measure, ft_notched, ft_step1d, geometric_inverse, intersect_grids, sample_grid_points,
    zero_grid_of_edge,
)

J11 = 3.8317059702075125


class TestBoxTransforms(unittest.TestCase):
    """Fourier transforms of box unions"""

    def test_transform_at_zero_is_measure(self):
        tile = notched_tile(['1/2', '1/3'])
        self.assertAlmostEqual(abs(ft_box_union(tile, (0, 0))), float(tile.measure), places=12)

    def test_cube_vanishes_on_nonzero_integers(self):
        values = ft_box_union(unit_cube(2), np.array([[1.0, 0.0], [0.0, 2.0], [3.0, -1.0]]))
        self.assertTrue(np.all(np.abs(values) < 1e-12))

    def test_notched_closed_form_matches_box_union(self):
        delta = ['1/2', '1/3', '1/5']
        rng = np.random.default_rng(7)
        xi = rng.uniform(-3, 3, size=(32, 3))
        np.testing.assert_allclose(ft_notched(delta, xi), ft_box_union(notched_tile(delta), xi), atol=1e-12)

    def test_step_tile_matches_box_union(self):
        tile = BoxUnionTile((Box((0,), ('1/2',)), Box((1,), ('1/2',))))
        xi = np.array([0.0, 0.25, 1.0, 2.5])
        np.testing.assert_allclose(ft_step1d(tile, xi), ft_box_union(tile, xi[:, None]), atol=1e-12)

    def test_step_tile_matches_quadrature(self):
        tile = BoxUnionTile((Box((0,), ('1/2',)), Box((1,), ('1/2',))))
        for xi in (0.3, 1.7):
            real = sum(integrate.quad(lambda x: math.cos(2 * math.pi * xi * x), a, b)[0] for a, b in ((0, 0.5), (1, 1.5)))
            imag = -sum(integrate.quad(lambda x: math.sin(2 * math.pi * xi * x), a, b)[0] for a, b in ((0, 0.5), (1, 1.5)))
            value = complex(ft_box_union(tile, (xi,)))
            self.assertAlmostEqual(value.real, real, places=10)
            self.assertAlmostEqual(value.imag, imag, places=10)

    def test_overlapping_boxes_rejected(self):
        with self.assertRaises(DomainError):
            BoxUnionTile((Box((0,), (1,)), Box(('1/2',), (1,))))

    def test_dimension_mismatch(self):
        with self.assertRaises(DomainError):
            ft_box_union(unit_cube(2), (0.5, 0.5, 0.5))


class TestEdgeMeasures(unittest.TestCase):
    """Zero-line grids of planar edge measures"""

    def setUp(self):
        self.horizontal = EdgeMeasure((1, 0), (0, 1))
        self.vertical = EdgeMeasure((0, 1), (1, 0))

    def test_transform_vanishes_on_grid(self):
        grid = zero_grid_of_edge(self.horizontal)
        points = sample_grid_points(grid, 64, 5, seed=3)
        self.assertTrue(np.all(np.abs(ft_edge_measure(self.horizontal, points.as_float())) < 1e-9))

    def test_origin_line_of_edge_family_excluded(self):
        grid = zero_grid_of_edge(self.horizontal)
        self.assertTrue(grid.contains((Fraction(1, 3), Fraction(2))))
        self.assertFalse(grid.contains((Fraction(0), Fraction(1, 3))))

    def test_intersection_of_orthogonal_grids(self):
        grids = [zero_grid_of_edge(self.horizontal), zero_grid_of_edge(self.vertical)]
        patch = intersect_grids(grids, ((-2, -2), (2, 2)))
        self.assertTrue(patch.exact)
        self.assertEqual(len(patch), 25)
        self.assertTrue(all(v.denominator == 1 for p in patch.points for v in p))

    def test_single_grid_is_not_discrete(self):
        with self.assertRaises(NonDiscreteIntersectionError):
            intersect_grids([zero_grid_of_edge(self.horizontal)], ((-1, -1), (1, 1)))

    def test_zero_edge_rejected(self):
        with self.assertRaises(DomainError):
            EdgeMeasure((0, 0), (0, 1))

    def test_geometric_inverse(self):
        self.assertEqual(geometric_inverse((2, 0)), (Fraction(1, 2), 0))
        self.assertEqual(geometric_inverse((1, 1)), (Fraction(1, 2), Fraction(1, 2)))
        with self.assertRaises(DomainError):
            geometric_inverse((0, 0))


class TestBessel(unittest.TestCase):
    """J1 series against scipy and the disk zero radius"""

    def test_series_matches_scipy(self):
        for x in (0.0, 0.5, 2.0, 3.8, 7.5, 11.9, 15.0):
            self.assertAlmostEqual(bessel_j1(x), float(special.j1(x)), places=10)

    def test_relative_error_on_grid(self):
        grid = np.linspace(-20.0, 20.0, 801)
        reference = special.j1(grid)
        ours = np.array([bessel_j1(x) for x in grid])
        # absolute floor for points next to the zeros
        bound = 1e-12 * np.abs(reference) + 1e-13
        self.assertTrue(np.all(np.abs(ours - reference) <= bound), float(np.max(np.abs(ours - reference) - bound)))

    def test_first_zero(self):
        self.assertAlmostEqual(bessel_j1_first_zero(), J11, places=10)

    def test_first_zero_matches_scipy_zeros(self):
        self.assertAlmostEqual(bessel_j1_first_zero(), float(special.jn_zeros(1, 1)[0]), places=10)

    def test_disk_radius(self):
        self.assertAlmostEqual(disk_first_zero_radius(), J11 / (2.0 * math.sqrt(math.pi)), places=10)

    def test_bad_bracket(self):
        with self.assertRaises(DomainError):
            bessel_j1_first_zero((1.0, 2.0))


if __name__ == '__main__':
    unittest.main(verbosity=2)
