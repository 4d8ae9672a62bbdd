"""
Tests for lattice families: direct sums, common-tile construction, the
three-lattice obstruction and the Gabor frame identity.
"""
import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import math
import unittest
from unittest.mock import patch

import numpy as np

from tilings.constructions import unit_cube
from tilings.errors import DomainError, PreconditionError
from tilings.exact import Lattice, Matrix
from tilings.multilattice import (
    LatticeFamily, RealLattice, TileSchedule, build_common_tile, check_direct_sum, commensurable_triple,
    default_epsilon, gabor_frame_check, packing_violations, property_a_align, three_lattice_obstruction,
)

RATIONAL_ANGLE = math.atan2(3, 4)


class TestFamilies(unittest.TestCase):
    """Real lattices and families of equal volume"""

    def test_rotation_volume(self):
        lattice = RealLattice.rotation(1.0, 2.0)
        self.assertAlmostEqual(lattice.volume, 4.0, places=12)
        self.assertAlmostEqual(lattice.dual().volume, 0.25, places=12)

    def test_reduce_lands_in_fundamental_domain(self):
        lattice = RealLattice.rotation(0.3)
        reduced = lattice.reduce(np.array([[3.7, -2.2], [10.1, 4.4]]))
        coords = reduced @ lattice.inverse.T
        self.assertTrue(np.all((coords >= -1e-12) & (coords < 1 + 1e-12)))

    def test_unequal_volumes_rejected(self):
        with self.assertRaises(DomainError):
            LatticeFamily((RealLattice.integer(2), RealLattice.rotation(1.0, 2.0)))

    def test_translated_member_rejected(self):
        with self.assertRaises(DomainError):
            RealLattice.from_exact(Lattice(Matrix.identity(2), ('1/2', 0)))


class TestDirectSum(unittest.TestCase):
    """Relations between dual lattices"""

    def test_irrational_rotation_is_direct(self):
        family = LatticeFamily((RealLattice.integer(2), RealLattice.rotation(1.0)))
        self.assertTrue(check_direct_sum(family, bound=10)['direct'])

    def test_rational_rotation_has_relation(self):
        family = LatticeFamily((RealLattice.integer(2), RealLattice.rotation(RATIONAL_ANGLE)))
        result = check_direct_sum(family, bound=10)
        self.assertFalse(result['direct'])
        self.assertLess(result['relation']['residual'], 1e-9)

    def test_alignment_of_identical_lattices(self):
        family = LatticeFamily((RealLattice.integer(2), RealLattice.integer(2)))
        result = property_a_align(family, [[0.25, 0.25], [0.25, 0.25]], 1e-9, 3.0)
        self.assertIsNotNone(result)
        self.assertAlmostEqual(result.misalignment, 0.0, places=12)


class TestCommonTile(unittest.TestCase):
    """Common packing region for a family"""

    def test_single_lattice_is_covered(self):
        builder = build_common_tile(LatticeFamily((RealLattice.integer(2),)), grid_exponent=3)
        self.assertEqual(builder.coverage(), [1.0])

    def test_rotated_pair(self):
        family = LatticeFamily((RealLattice.integer(2), RealLattice.rotation(1.0)))
        builder = build_common_tile(family, iterations=3, grid_exponent=4)
        self.assertEqual(packing_violations(builder), 0)
        coverage = builder.coverage()
        self.assertGreater(min(coverage), 0.0)
        leftovers = [entry['leftover_measures'][0] for entry in builder.log]
        self.assertEqual(leftovers, sorted(leftovers, reverse=True))

    def test_schedule_values_are_logged(self):
        family = LatticeFamily((RealLattice.integer(2), RealLattice.rotation(1.0)))
        schedule = TileSchedule(epsilon=[0.3, 0.2, 0.1])
        builder = build_common_tile(family, iterations=3, grid_exponent=4, schedule=schedule)
        self.assertEqual(packing_violations(builder), 0)
        log = builder.log
        self.assertEqual([entry['epsilon'] for entry in log], [0.3, 0.2, 0.1][:len(log)])
        for before, after in zip(log, log[1:]):
            self.assertAlmostEqual(after['floor'], before['radius'], places=9)
            self.assertGreater(after['radius'], before['radius'])

    def test_grid_eight_coverage(self):
        family = LatticeFamily((RealLattice.integer(2), RealLattice.rotation(1.0)))
        builder = build_common_tile(family, iterations=6, grid_exponent=8)
        self.assertLessEqual(len(builder.log), 6)
        self.assertGreaterEqual(min(builder.coverage()), 0.9)
        self.assertEqual(packing_violations(builder), 0)

    def test_dependent_duals_rejected(self):
        family = LatticeFamily((RealLattice.integer(2), RealLattice.rotation(RATIONAL_ANGLE)))
        with self.assertRaises(PreconditionError):
            build_common_tile(family, iterations=1, grid_exponent=3)


class TestTileSchedule(unittest.TestCase):
    """Per-round ε, search radius and min-norm floor"""

    def test_default_epsilon(self):
        self.assertEqual(default_epsilon(1, 8), 0.25)
        self.assertAlmostEqual(default_epsilon(6, 8), 1 / 24, places=15)
        self.assertEqual(default_epsilon(1, 3), 0.5)
        self.assertEqual(default_epsilon(100, 8), 2.0 ** -6)

    def test_default_radii_grow_linearly(self):
        schedule = TileSchedule()
        self.assertEqual(schedule.round(1, 8, 2.0), (0.25, 2.0, 0.0))
        self.assertEqual(schedule.round(3, 8, 2.0)[1:], (6.0, 4.0))

    def test_listed_values_repeat_last(self):
        schedule = TileSchedule(epsilon=[0.3, 0.1], search_radius=5.0, min_norm=[0, 1])
        self.assertEqual(schedule.round(1, 8, 2.0), (0.3, 5.0, 0.0))
        self.assertEqual(schedule.round(4, 8, 2.0), (0.1, 5.0, 1.0))

    def test_callable_schedule(self):
        schedule = TileSchedule(epsilon=lambda k, g: 2.0 ** -k)
        self.assertEqual(schedule.round(2, 8, 1.0)[0], 0.25)

    def test_floor_must_stay_below_radius(self):
        with self.assertRaises(DomainError):
            TileSchedule(search_radius=1.0, min_norm=2.0).round(1, 4, 1.0)
        with self.assertRaises(DomainError):
            TileSchedule(epsilon=[])

    def test_configured_scale(self):
        with patch.dict(os.environ, {'TILINGLAB_TILE_EPSILON_SCALE': '0.5', 'TILINGLAB_TILE_RADIUS_STEP': '2'}):
            self.assertEqual(default_epsilon(1, 8), 0.5)
            self.assertEqual(TileSchedule().round(2, 8, 1.0)[1:], (4.0, 2.0))


class TestObstructionAndGabor(unittest.TestCase):
    """Three-lattice obstruction and Gabor frames"""

    def test_commensurable_triple_certified(self):
        result = three_lattice_obstruction()
        self.assertEqual(result['status'], 'certified')
        self.assertEqual(sorted(result['class_table'].values()), [0, 1, 2])

    def test_obstruction_inapplicable(self):
        members = [Lattice.integer(2)] + list(commensurable_triple()[1:])
        result = three_lattice_obstruction(members)
        self.assertEqual(result['status'], 'inapplicable')
        self.assertFalse(result['certified'])

    def test_gabor_unit_interval(self):
        result = gabor_frame_check(Lattice.integer(1), Lattice.integer(1), unit_cube(1, centered=False))
        self.assertTrue(result['passed'])
        self.assertEqual(result['density_product'], '1')
        self.assertEqual(len(result['residuals']), 2)

    def test_gabor_density_precondition(self):
        with self.assertRaises(PreconditionError):
            gabor_frame_check(Lattice.integer(1), Lattice(Matrix.diagonal(['1/2'])), unit_cube(1, centered=False))


if __name__ == '__main__':
    unittest.main(verbosity=2)
