"""
Tests for notched and extended cubes, cyclic variants, shifted columns and soft tiles.
"""
import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import unittest
from fractions import Fraction

from tilings.constructions import (
    convolve_domains, cyclic_permutations, cyclic_variant, diameter_growth, extended_cube, is_cyclic,
    lattice_closure_witness, notched_lattice, notched_tile, periodization_report, shifted_column_tiling,
    soft_common_tile, unit_cube,
)
from tilings.errors import DomainError, PreconditionError
from tilings.exact import Lattice, Matrix
from tilings.fourier import Box, BoxUnionTile
from tilings.verify import TranslationSet, verify_tiling_exact


class TestNotchedCubes(unittest.TestCase):
    """Notched cubes and their lattices"""

    def test_determinant_and_measure(self):
        lattice = notched_lattice(['1/2', '1/3'])
        self.assertEqual(lattice.determinant, Fraction(5, 6))
        self.assertEqual(notched_tile(['1/2', '1/3']).measure, Fraction(5, 6))

    def test_three_dimensional_tiling(self):
        delta = ['1/2', '1/3', '1/5']
        report = verify_tiling_exact(notched_tile(delta), TranslationSet.of_lattice(notched_lattice(delta)))
        self.assertTrue(report.passed)
        self.assertEqual(report.level, 1)

    def test_full_notch_rejected(self):
        with self.assertRaises(DomainError):
            notched_lattice([1, 1])
        with self.assertRaises(DomainError):
            notched_tile(['3/2', '1/2'])

    def test_cyclic_permutations(self):
        self.assertEqual(len(cyclic_permutations(3)), 2)
        self.assertEqual(len(cyclic_permutations(4)), 6)
        self.assertTrue(all(is_cyclic(s) for s in cyclic_permutations(4)))
        self.assertFalse(is_cyclic((1, 0, 2)))

    def test_cyclic_variants_tile_with_distinct_bases(self):
        delta = ['1/2', '1/3', '1/5']
        tile = notched_tile(delta)
        bases = set()
        for sigma in cyclic_permutations(3):
            lattice = cyclic_variant(delta, sigma)
            bases.add(lattice.basis)
            self.assertTrue(verify_tiling_exact(tile, TranslationSet.of_lattice(lattice)).passed)
        self.assertEqual(len(bases), 2)


class TestExtendedCubes(unittest.TestCase):
    """Cube with a box attached at a vertex"""

    def test_odd_codimension_tiles(self):
        for gamma, k in ((['1/2'] * 3, 1), ([1, 1, 1], 3)):
            tile, lattice = extended_cube(gamma, k)
            self.assertEqual(tile.measure, 1 + Fraction(gamma[0]) ** 3)
            report = verify_tiling_exact(tile, TranslationSet.of_lattice(lattice))
            self.assertTrue(report.passed)
            self.assertEqual(report.level, 1)

    def test_even_codimension_is_precondition_error(self):
        with self.assertRaises(PreconditionError):
            extended_cube(['1/2'] * 3, 2)


class TestShiftedColumns(unittest.TestCase):
    """Square tilings by shifted columns"""

    def test_non_lattice_witness(self):
        self.assertIsNotNone(lattice_closure_witness(shifted_column_tiling({1: '1/2'})))

    def test_plain_grid_has_no_witness(self):
        self.assertIsNone(lattice_closure_witness(shifted_column_tiling({})))


class TestSoftTiles(unittest.TestCase):
    """Convolution tiles common to several lattices"""

    def test_two_unit_intervals(self):
        interval = unit_cube(1, centered=False)
        soft, reports = soft_common_tile([(interval, Lattice.integer(1))] * 2, Fraction(1, 4))
        self.assertEqual(soft.integral, 1)
        self.assertTrue(all(r['passed'] for r in reports))
        self.assertEqual(reports[0]['expected_level'], '1')

    def test_different_lattices(self):
        short = unit_cube(1, centered=False)
        doubled = BoxUnionTile((Box((0,), (2,)),))
        _, reports = soft_common_tile([(short, Lattice.integer(1)),
                                       (doubled, Lattice(Matrix.diagonal([2])))], Fraction(1, 2))
        self.assertTrue(reports[0]['passed'])
        self.assertEqual(reports[0]['expected_level'], '2')
        self.assertTrue(reports[1]['passed'])
        self.assertEqual(reports[1]['expected_level'], '1')

    def test_domain_must_tile(self):
        interval = unit_cube(1, centered=False)
        with self.assertRaises(PreconditionError):
            soft_common_tile([(interval, Lattice(Matrix.diagonal([2])))], Fraction(1, 2))

    def test_resolution_must_divide_boxes(self):
        with self.assertRaises(DomainError):
            convolve_domains([unit_cube(1, centered=False)], Fraction(2, 3))

    def test_periodization_off_grid_lattice(self):
        soft = convolve_domains([unit_cube(1, centered=False)], Fraction(1, 2))
        with self.assertRaises(DomainError):
            periodization_report(soft, Lattice(Matrix.diagonal(['1/3'])))

    def test_diameter_growth_rows(self):
        rows = diameter_growth([unit_cube(1, centered=False)], 3, Fraction(1, 2))
        self.assertEqual([r['factors'] for r in rows], [1, 2, 3])
        self.assertLessEqual(rows[0]['diameter'], rows[2]['diameter'])


if __name__ == '__main__':
    unittest.main(verbosity=2)
