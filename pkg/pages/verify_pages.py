"""
Command pages for tiling and packing verdicts, edge-measure zero grids,
and the Minkowski and Hajós lattice predicates.
"""
from fractions import Fraction

import numpy as np

from pages.inputs import (
    parse_edge, parse_matrix, parse_polygon, parse_tile, parse_tset,
)
from tilings.constructions import unit_cube
from tilings.errors import DomainError, NonDiscreteIntersectionError
from tilings.exact import (
    Lattice, hajos_predicate, hajos_strict_vector, integral_row_index, minkowski_vector, standard_basis_index,
)
from tilings.fourier import ft_edge_measure, intersect_grids, sample_grid_points, zero_grid_of_edge
from tilings.verify import (
    central_symmetry_check, face_balance_check, verify_lattice_tiling_fourier, verify_packing,
    verify_polygon_edge_cancellation, verify_tiling_exact, verify_tiling_sampled,
)
from utils.formatting import vector_to_str

LEVEL_TOL = 1e-12


def _default_window(dim, reach=3):
    return [[-reach] * dim, [reach] * dim]


def _level_matches(report, expected):
    if expected is None:
        return True
    return abs(float(report.level) - float(expected)) <= LEVEL_TOL


def _polygon_tiling(job):
    window = job.window(_default_window(2))
    polygon, preset_tset = parse_polygon(job.required('polygon'), window)
    tset = parse_tset(job.raw['tset']) if 'tset' in job.raw else preset_tset
    if tset is None:
        raise DomainError("a polygon given by vertices needs a translation set")
    job.optional('tset')
    tol = job.number('tol')
    samples = job.integer('samples')
    seed = job.integer('seed')
    level = job.optional('level')
    level = Fraction(level) if level is not None else None

    edges = verify_polygon_edge_cancellation(polygon, tset, window, tol)
    sampled = verify_tiling_sampled(polygon, tset, window, samples, seed, level=level)
    symmetric = central_symmetry_check(polygon)
    result = {
        'polygon': polygon.to_dict(),
        'centrally_symmetric': symmetric,
        'edge_cancellation': edges,
        'sampled': sampled.to_dict(),
        'face_balance': face_balance_check(polygon) if polygon.exact else None,
    }
    result['passed'] = edges['passed'] and sampled.passed and _level_matches(sampled, level)
    return result


def verify_tiling_page(job):
    """
    Tiling verdict for a box-union tile or a polygon.

    `auto` runs the exact oracle on periodic sets, the Fourier criterion on
    plain lattices and sampled coverage otherwise.
    """
    if 'polygon' in job.raw:
        return _polygon_tiling(job)
    tile = parse_tile(job.required('tile'))
    tset = parse_tset(job.required('tset'))
    method = job.optional('method', 'auto')
    level = job.optional('level')
    expected = Fraction(level) if level is not None else None

    reports = {}
    if method == 'exact' or (method == 'auto' and tset.periodic):
        reports['exact'] = verify_tiling_exact(tile, tset)
    fourier_ready = tset.kind == 'lattice' and not tset.lattices[0].is_translated
    if method == 'fourier' or (method == 'auto' and fourier_ready):
        if not fourier_ready:
            raise DomainError("the Fourier criterion needs a single lattice without offset")
        reports['fourier'] = verify_lattice_tiling_fourier(tile, tset.lattices[0], job.rational('radius'),
                                                           job.number('tol'))
    if method == 'sampled' or (method == 'auto' and not tset.periodic):
        window = job.window(_default_window(tile.dim))
        reports['sampled'] = verify_tiling_sampled(tile, tset, window, job.integer('samples'),
                                                   job.integer('seed'), level=expected)
    passed = all(r.passed and _level_matches(r, expected) for r in reports.values())
    return {
        'passed': passed,
        'level': next(iter(reports.values())).level,
        'measure': tile.measure,
        'reports': {name: r.to_dict() for name, r in reports.items()},
        'face_balance': face_balance_check(tile),
    }


def verify_packing_page(job):
    tile = parse_tile(job.required('tile'))
    tset = parse_tset(job.required('tset'))
    level = Fraction(job.optional('level', 1))
    window = job.window()
    if window is None:
        report = verify_packing(tile, tset, level)
    else:
        report = verify_packing(tile, tset, level, window, job.integer('samples'), job.integer('seed'))
    return {'passed': report.passed, 'report': report.to_dict()}


def zero_grid_page(job):
    """
    Zero-line grids of edge-measure transforms, checked at sample points on
    the lines, and their intersection inside the window when several are given.
    """
    measures = [parse_edge(e) for e in job.required('edges')]
    count = job.integer('samples', default=64)
    extent = job.integer('extent', default=5)
    seed = job.integer('seed')
    tol = job.number('tol')
    grids = []
    worst = 0.0
    for measure in measures:
        grid = zero_grid_of_edge(measure)
        points = sample_grid_points(grid, count, extent, seed)
        magnitude = float(np.abs(ft_edge_measure(measure, points.as_float())).max())
        worst = max(worst, magnitude)
        grids.append({'measure': measure.to_dict(), 'grid': grid.to_dict(), 'max_abs_on_grid': magnitude,
                      'sample_points': len(points), 'tolerance': tol})
    result = {'passed': worst < tol, 'grids': grids, 'max_abs_on_grid': worst, 'tolerance': tol}
    if len(measures) > 1:
        window = job.window(_default_window(2, 2))
        try:
            patch = intersect_grids([zero_grid_of_edge(m) for m in measures], window, tol)
            result['intersection'] = patch.to_dict(limit=256)
        except NonDiscreteIntersectionError as e:
            result['intersection'] = {'error': e.to_dict()}
    return result


def hajos_page(job):
    """
    Hajós predicate for B with det 1, next to the cube-tiling Fourier check
    on B^{-T}Z^d whose dual is BZ^d.
    """
    matrix = parse_matrix(job.required('matrix'))
    bound = job.integer('range', default=10)
    search_bound = job.integer('search_bound', default=20)
    predicate = hajos_predicate(matrix, bound)
    lattice = Lattice(matrix.inverse().transpose())
    fourier = verify_lattice_tiling_fourier(unit_cube(matrix.dim), lattice, job.rational('radius'),
                                            job.number('tol'))
    minkowski = minkowski_vector(matrix, search_bound)
    consistent = not predicate.holds_up_to_bound or predicate.integral_row is not None
    return {
        'passed': predicate.holds_up_to_bound and consistent,
        'predicate': predicate.to_dict(),
        'hajos_consistent': consistent,
        'cube_lattice': lattice.to_dict(),
        'standard_basis_index': standard_basis_index(lattice),
        'fourier': fourier.to_dict(),
        'fourier_agrees': fourier.passed == predicate.holds_up_to_bound,
        'minkowski_vector': list(minkowski) if minkowski is not None else None,
        'strict_vector': _optional_list(hajos_strict_vector(matrix, search_bound)),
    }


def _optional_list(vector):
    return list(vector) if vector is not None else None


def minkowski_page(job):
    """First x ≠ 0 with ‖Ax‖∞ ≤ 1 for det A = 1, plus the strict form."""
    matrix = parse_matrix(job.required('matrix'))
    search_bound = job.integer('search_bound', default=20)
    vector = minkowski_vector(matrix, search_bound)
    strict = hajos_strict_vector(matrix, search_bound)
    image = matrix.apply(vector) if vector is not None else None
    return {
        'passed': vector is not None,
        'vector': _optional_list(vector),
        'image': vector_to_str(image) if image is not None else None,
        'image_norm': max(abs(v) for v in image) if image is not None else None,
        'strict_vector': _optional_list(strict),
        'integral_row': integral_row_index(matrix),
    }


COMMANDS = {
    'verify-tiling': verify_tiling_page,
    'verify-packing': verify_packing_page,
    'zero-grid': zero_grid_page,
    'hajos': hajos_page,
    'minkowski': minkowski_page,
}
