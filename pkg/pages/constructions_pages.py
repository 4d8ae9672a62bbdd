"""
Command pages for the explicit constructions: notched cubes, extended
cubes, cyclic variants and convolution soft tiles.
"""
import math
from fractions import Fraction

from pages.inputs import parse_lattice, parse_tile, parse_vector
from tilings.constructions import (
    cyclic_permutations, cyclic_variant, diameter_growth, extended_cube, notched_lattice,
    notched_tile, soft_common_tile,
)
from tilings.verify import TranslationSet, verify_lattice_tiling_fourier, verify_tiling_exact
from utils.formatting import rational_to_str
from utils.logging import debug_log

DEFAULT_SOFT_DOMAINS = [
    {'tile': [{'corner': ['0'], 'widths': ['1']}], 'lattice': {'basis': [['1']]}},
    {'tile': [{'corner': ['0'], 'widths': ['1']}], 'lattice': {'basis': [['1']]}},
]


def _both_verifiers(tile, lattice, radius, tol):
    fourier = verify_lattice_tiling_fourier(tile, lattice, radius, tol)
    exact = verify_tiling_exact(tile, TranslationSet.of_lattice(lattice))
    return fourier, exact, fourier.passed and exact.passed and exact.level == 1


def notched_page(job):
    """Notched cube Q ∖ R with the lattice AᵀZ^d, checked by both verifiers."""
    delta = parse_vector(job.required('delta'), "delta")
    radius = job.rational('radius')
    tol = job.number('tol')
    tile = notched_tile(delta)
    lattice = notched_lattice(delta)
    fourier, exact, passed = _both_verifiers(tile, lattice, radius, tol)
    expected_det = 1 - math.prod(delta, start=Fraction(1))
    debug_log(f"Notched cube δ={[rational_to_str(v) for v in delta]}: "
              f"{'tiles' if passed else 'does not tile'} at level {rational_to_str(exact.level)}",
              "SUCCESS" if passed else "WARNING", "cli")
    return {
        'passed': passed and lattice.determinant == expected_det,
        'determinant': lattice.determinant,
        'measure': tile.measure,
        'level': exact.level,
        'tile': tile.to_dict(),
        'lattice': lattice.to_dict(),
        'fourier': fourier.to_dict(),
        'exact': exact.to_dict(),
    }


def extended_cube_page(job):
    gamma = parse_vector(job.required('gamma'), "gamma")
    k = int(job.required('k'))
    radius = job.rational('radius')
    tol = job.number('tol')
    tile, lattice = extended_cube(gamma, k)
    fourier, exact, passed = _both_verifiers(tile, lattice, radius, tol)
    expected_measure = 1 + math.prod(gamma, start=Fraction(1))
    return {
        'passed': passed and tile.measure == expected_measure,
        'codimension': k,
        'determinant': lattice.determinant,
        'measure': tile.measure,
        'level': exact.level,
        'tile': tile.to_dict(),
        'lattice': lattice.to_dict(),
        'fourier': fourier.to_dict(),
        'exact': exact.to_dict(),
    }


def cyclic_variants_page(job):
    """
    One lattice per d-cycle. Bases must differ pairwise whenever the δ_j
    are distinct.
    """
    delta = parse_vector(job.required('delta'), "delta")
    radius = job.rational('radius')
    tol = job.number('tol')
    tile = notched_tile(delta)
    variants = []
    bases = set()
    for sigma in cyclic_permutations(len(delta)):
        lattice = cyclic_variant(delta, sigma)
        fourier, exact, passed = _both_verifiers(tile, lattice, radius, tol)
        bases.add(lattice.basis)
        variants.append({
            'sigma': list(sigma),
            'lattice': lattice.to_dict(),
            'determinant': lattice.determinant,
            'passed': passed,
            'level': exact.level,
            'fourier_max_abs': fourier.max_deviation,
            'tolerance': fourier.tolerance,
        })
    distinct_deltas = len(set(delta)) == len(delta)
    distinct_bases = len(bases) == len(variants)
    return {
        'passed': all(v['passed'] for v in variants) and (distinct_bases or not distinct_deltas),
        'count': len(variants),
        'distinct_bases': distinct_bases,
        'variants': variants,
    }


def soft_tile_page(job):
    domains_data = job.optional('domains', DEFAULT_SOFT_DOMAINS)
    h = job.rational('h', default='1/4')
    max_chain = job.optional('max_chain')
    domains = [(parse_tile(d['tile']), parse_lattice(d['lattice'])) for d in domains_data]
    soft, reports = soft_common_tile(domains, h)
    result = {
        'passed': all(r['passed'] for r in reports),
        'soft_tile': soft.to_dict(),
        'periodizations': reports,
    }
    if max_chain:
        result['diameter_growth'] = diameter_growth([tile for tile, _ in domains], int(max_chain), h)
    return result


COMMANDS = {
    'notched': notched_page,
    'extended-cube': extended_cube_page,
    'cyclic-variants': cyclic_variants_page,
    'soft-tile': soft_tile_page,
}
