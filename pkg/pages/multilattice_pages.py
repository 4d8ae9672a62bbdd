"""
Command pages for lattice families: common-tile construction, the dual
direct-sum check, the three-lattice obstruction and the Gabor frame check.
"""
from pages.inputs import parse_lattice, parse_real_lattice, parse_tile
from tilings.multilattice import (
    LatticeFamily, TileSchedule, build_common_tile, check_direct_sum, gabor_frame_check, packing_violations,
    three_lattice_obstruction,
)
from utils.logging import debug_log


def _family(job):
    return LatticeFamily(tuple(parse_real_lattice(m) for m in job.required('lattices')))


def _monotone_leftovers(log):
    """Each lattice's leftover measure never grows from one iteration to the next."""
    series = [entry['leftover_measures'] for entry in log]
    return all(b <= a + 1e-12 for before, after in zip(series, series[1:]) for a, b in zip(before, after))


def multitile_build_page(job):
    family = _family(job)
    iterations = job.integer('iterations', default=6)
    grid_exponent = job.integer('grid_exponent')
    candidates = job.optional('candidates')
    target = job.number('coverage_target', default=0.9)
    schedule = TileSchedule(job.optional('epsilon'), job.optional('search_radius'), job.optional('min_norm'))
    builder = build_common_tile(family, iterations, grid_exponent, candidates, schedule=schedule)
    violations = packing_violations(builder)
    coverage = builder.coverage()
    monotone = _monotone_leftovers(builder.log)
    passed = min(coverage) >= target and violations == 0 and monotone
    debug_log(f"Common tile: coverage {min(coverage):.4f} (target {target}), {violations} violations",
              "SUCCESS" if passed else "WARNING", "multilattice")
    return {
        'passed': passed,
        'coverage': coverage,
        'coverage_target': target,
        'packing_violations': violations,
        'monotone_leftovers': monotone,
        'builder': builder.to_dict(),
        'members': [m.to_dict() for m in family.members],
        'tolerance': 1.0 / builder.total_cells,
    }


def direct_sum_page(job):
    family = _family(job)
    bound = job.integer('bound', key='direct_sum_bound')
    tol = job.number('tol')
    result = check_direct_sum(family, bound, tol)
    return {'passed': result['direct'], **result}


def three_lattice_page(job):
    lattices = job.optional('lattices')
    members = [parse_lattice(m) for m in lattices] if lattices is not None else None
    cover_radius = job.integer('cover_radius', default=10)
    result = three_lattice_obstruction(members, cover_radius)
    return {'passed': result['certified'], **result}


def gabor_check_page(job):
    """Gabor frame identity for g = |E|^{-1/2} χ_E with E tiling K and L*."""
    k_lattice = parse_lattice(job.required('k_lattice'))
    l_lattice = parse_lattice(job.required('l_lattice'))
    tile = parse_tile(job.required('tile'))
    resolution = job.integer('resolution', default=32)
    tol = job.number('tol', default=1e-6)
    test_functions = job.optional('test_functions')
    result = gabor_frame_check(k_lattice, l_lattice, tile, test_functions, resolution, tol)
    return {**result, 'tolerance': tol}


COMMANDS = {
    'multitile-build': multitile_build_page,
    'direct-sum-check': direct_sum_page,
    'three-lattice-obstruction': three_lattice_page,
    'gabor-check': gabor_check_page,
}
