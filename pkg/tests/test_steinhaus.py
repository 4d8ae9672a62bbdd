"""
Tests for sums-of-squares oracles and the Steinhaus quadratic-form certificates.
"""
import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import unittest
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from tilings.errors import DomainError, PreconditionError
from tilings.exact import Matrix
from tilings.steinhaus import (
    QuadraticForm, det_is_integer_square, embed_form, form_3d, form_4d, form_value, is_sum_of_three_squares,
    is_sum_of_two_squares, residue_certificate, search_forms_3d, squares_table, steinhaus_lemma_check,
    steinhaus_radii, sum_of_squares_witness, two_squares_experiment, verify_representability,
)


class TestSumsOfSquares(unittest.TestCase):
    """Classical characterizations against the brute-force table"""

    def test_three_squares_exceptions(self):
        self.assertFalse(is_sum_of_three_squares(7))
        self.assertFalse(is_sum_of_three_squares(28))
        self.assertFalse(is_sum_of_three_squares(60))
        self.assertTrue(is_sum_of_three_squares(6))
        self.assertTrue(is_sum_of_three_squares(0))

    def test_two_squares(self):
        self.assertEqual([n for n in range(12) if is_sum_of_two_squares(n)], [0, 1, 2, 4, 5, 8, 9, 10])
        self.assertFalse(is_sum_of_two_squares(21))
        self.assertTrue(is_sum_of_two_squares(25))

    @settings(max_examples=200, deadline=None)
    @given(st.integers(min_value=0, max_value=2000))
    def test_table_matches_characterizations(self, n):
        self.assertEqual(bool(squares_table(2000, 3)[n]), is_sum_of_three_squares(n))
        self.assertEqual(bool(squares_table(2000, 2)[n]), is_sum_of_two_squares(n))

    def test_witness(self):
        self.assertEqual(sum_of_squares_witness(14, 3), (1, 2, 3))
        self.assertIsNone(sum_of_squares_witness(7, 3))

    def test_negative_rejected(self):
        with self.assertRaises(DomainError):
            is_sum_of_three_squares(-1)


class TestForms(unittest.TestCase):
    """Quadratic forms and their invariants"""

    def test_three_dimensional_form(self):
        form = form_3d()
        self.assertEqual(form.determinant, 132)
        self.assertFalse(det_is_integer_square(form))
        self.assertEqual(form_value(form, (1, 1, 1)), 19)

    def test_four_dimensional_form(self):
        form = form_4d()
        self.assertEqual(form.determinant, Fraction(5, 16))
        self.assertTrue(form.is_integer_valued())
        self.assertTrue(form.is_positive_definite())

    def test_embedding(self):
        embedded = embed_form(form_3d(), 4)
        self.assertEqual(embedded.dim, 4)
        self.assertEqual(embedded.determinant, 132)
        with self.assertRaises(DomainError):
            embed_form(form_4d(), 3)

    def test_half_integral_off_diagonal_is_integer_valued(self):
        form = QuadraticForm(Matrix([[1, '1/2'], ['1/2', 1]]))
        self.assertTrue(form.is_integer_valued())
        self.assertFalse(QuadraticForm(Matrix([[1, '1/4'], ['1/4', 1]])).is_integer_valued())


class TestCertificates(unittest.TestCase):
    """Representability, residue sweeps and the combined verdict"""

    def test_verdict_fires_for_three_dimensional_form(self):
        result = steinhaus_lemma_check(form_3d(), bound=10)
        self.assertTrue(result['verdict_fires'])
        self.assertIn("dimension 3", result['verdict'])
        self.assertTrue(result['residue_certificate']['certified'])
        self.assertEqual(result['representability']['cross_check_mismatches'], 0)

    def test_verdict_fires_for_four_dimensional_form(self):
        self.assertTrue(steinhaus_lemma_check(form_4d(), bound=4)['verdict_fires'])

    def test_square_determinant_does_not_fire(self):
        result = steinhaus_lemma_check(QuadraticForm.diagonal([1, 1, 1]), bound=5)
        self.assertTrue(result['representability']['all_representable'])
        self.assertFalse(result['verdict_fires'])
        self.assertIsNone(result['verdict'])

    def test_counterexample(self):
        report = verify_representability(QuadraticForm.diagonal([1, 1, 7]), 3, 3)
        self.assertFalse(report.all_representable)
        point, value = report.counterexample
        self.assertFalse(is_sum_of_three_squares(value))

    def test_residue_modulus(self):
        certificate = residue_certificate(form_3d(), max_nu=1)
        self.assertEqual([level['modulus'] for level in certificate['levels']], [8, 32])
        self.assertFalse(residue_certificate(QuadraticForm.diagonal([1, 1, 7]), max_nu=0)['certified'])

    def test_rational_values_rejected(self):
        with self.assertRaises(PreconditionError):
            verify_representability(QuadraticForm(Matrix([['1/2', 0], [0, 1]])), 2, 3)

    def test_search_finds_known_form(self):
        self.assertIn((2, 6, 11), search_forms_3d(12, 10))

    def test_two_squares_experiment(self):
        result = two_squares_experiment(6, 10)
        self.assertTrue(result['all_square'])
        self.assertIn({'form': [1, 1], 'determinant': 1, 'square': True}, result['passing'])

    def test_radii(self):
        self.assertEqual([n for n, _ in steinhaus_radii(2, 3)], [1, 2, 4, 5, 8, 9])
        self.assertEqual(steinhaus_radii(3, 2)[0], (1, 1.0))
        with self.assertRaises(DomainError):
            steinhaus_radii(4, 2)


if __name__ == '__main__':
    unittest.main(verbosity=2)
