"""
Explicit tilings: unit and notched cubes with their lattices, cyclic
variants, extended cubes (cube plus a vertex-attached box), shifted-column
square tilings, hexagons, and convolution soft tiles common to several
lattices.
"""
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

import numpy as np
from scipy import signal
from scipy.spatial import ConvexHull
from scipy.spatial.distance import pdist

from tilings.errors import DomainError, PreconditionError
from tilings.exact import Lattice, Matrix, PointPatch, as_vector
from tilings.fourier import Box, BoxUnionTile
from tilings.verify import Polygon2D, TranslationSet, verify_tiling_exact
from utils.formatting import rational_to_str, vector_to_str
from utils.logging import debug_log

HALF = Fraction(1, 2)


def unit_cube(dim, centered=True):
    """[−1/2, 1/2)^d, or [0, 1)^d with centered=False."""
    corner = (-HALF,) * dim if centered else (Fraction(0),) * dim
    return BoxUnionTile((Box(corner, (1,) * dim),))


def _check_notch(delta):
    delta = as_vector(delta)
    if not delta:
        raise DomainError("notch needs at least one side length")
    if any(not (0 < v <= 1) for v in delta):
        raise DomainError("notch sides must lie in (0, 1]")
    if all(v == 1 for v in delta):
        raise DomainError("a notch with every side 1 removes the whole cube")
    return delta


def notched_tile(delta):
    """
    Q ∖ R for Q = [−1/2, 1/2)^d and R = ∏ [1/2 − δ_j, 1/2), as d disjoint
    boxes: box i is inside R along axes j < i and below it along axis i.
    """
    delta = _check_notch(delta)
    d = len(delta)
    boxes = []
    for i in range(d):
        if delta[i] == 1:
            continue
        corner = [HALF - delta[j] if j < i else -HALF for j in range(d)]
        widths = [delta[j] if j < i else (1 - delta[i] if j == i else Fraction(1)) for j in range(d)]
        boxes.append(Box(corner, widths))
    return BoxUnionTile(tuple(boxes))


def _cycle_successor(dim):
    return tuple((i + 1) % dim for i in range(dim))


def is_cyclic(sigma):
    d = len(sigma)
    if sorted(sigma) != list(range(d)):
        return False
    seen, i = set(), 0
    while i not in seen:
        seen.add(i)
        i = sigma[i]
    return len(seen) == d


def cyclic_permutations(dim):
    """All (d−1)! permutations of {0..d−1} forming one d-cycle, lexicographic."""
    if dim < 2:
        raise DomainError("cyclic permutations need d ≥ 2")
    result = []
    for order in itertools.permutations(range(1, dim)):
        cycle = (0,) + order
        sigma = [0] * dim
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            sigma[a] = b
        result.append(tuple(sigma))
    return sorted(result)


def notched_matrix(delta, sigma=None):
    """Row i: 1 on the diagonal and −δ_{σ(i)} in column σ(i)."""
    delta = as_vector(delta)
    d = len(delta)
    sigma = tuple(sigma) if sigma is not None else _cycle_successor(d)
    rows = []
    for i in range(d):
        row = [Fraction(0)] * d
        row[i] = Fraction(1)
        row[sigma[i]] -= delta[sigma[i]]
        rows.append(tuple(row))
    return Matrix(tuple(rows))


def notched_lattice(delta):
    """Λ = AᵀZ^d for the notched-cube matrix A; det = 1 − ∏δ_j."""
    delta = _check_notch(delta)
    lattice = Lattice(notched_matrix(delta).transpose())
    debug_log(f"Notched lattice for δ={vector_to_str(delta)}: det {rational_to_str(lattice.determinant)}",
              "DEBUG", "constructions")
    return lattice


def cyclic_variant(delta, sigma):
    """The notched-cube lattice built from an arbitrary d-cycle σ."""
    delta = _check_notch(delta)
    sigma = tuple(int(s) for s in sigma)
    if len(sigma) != len(delta) or not is_cyclic(sigma):
        raise DomainError(f"{sigma} is not a cyclic permutation of {len(delta)} axes")
    return Lattice(notched_matrix(delta, sigma).transpose())


def extended_tile(gamma, k):
    """
    Q ∪ R with R attached at the vertex (1/2, …, 1/2): R_j = [1/2, 1/2 + γ_j)
    for the first k axes and [1/2 − γ_j, 1/2) for the others.
    """
    gamma = as_vector(gamma)
    d = len(gamma)
    if any(g <= 0 for g in gamma):
        raise DomainError("extension side lengths must be positive")
    if not (1 <= k <= d):
        raise DomainError(f"codimension k must lie in 1..{d}")
    if k % 2 == 0:
        raise PreconditionError(
            f"even codimension k={k} is not covered: whether such extended cubes tile is an open problem")
    corner = [HALF if j < k else HALF - gamma[j] for j in range(d)]
    return BoxUnionTile((Box((-HALF,) * d, (1,) * d), Box(corner, gamma)))


def extended_cube(gamma, k):
    """Extended cube and its lattice, built from δ_j = −γ_j (j < k), +γ_j otherwise."""
    tile = extended_tile(gamma, k)
    gamma = as_vector(gamma)
    delta = tuple(-g if j < k else g for j, g in enumerate(gamma))
    lattice = Lattice(notched_matrix(delta).transpose())
    return tile, lattice


def shifted_column_tiling(shifts):
    """Unit-square translations {(m, n + s_m)}; missing columns have shift 0."""
    return TranslationSet.shifted_columns(shifts)


def lattice_closure_witness(tset, radius=2):
    """
    A triple p, q, r of translations with p + q − r missing from the set,
    which rules out every translated lattice; None if none within radius.
    """
    lo = (Fraction(-radius),) * 2
    hi = (Fraction(radius),) * 2
    points = tset.points_in_box(lo, hi)
    base = points[0]
    for p in points:
        for q in points:
            x, y = p[0] + q[0] - base[0], p[1] + q[1] - base[1]
            if x.denominator != 1:
                continue
            if (y - tset.shift_of(int(x))).denominator != 1:
                return {'p': vector_to_str(p), 'q': vector_to_str(q), 'r': vector_to_str(base),
                        'missing': vector_to_str((x, y))}
    return None


def unit_square_polygon():
    return Polygon2D(((0, 0), (1, 0), (1, 1), (0, 1)))


def rational_hexagon():
    """Affinely regular hexagon with rational vertices and its tiling lattice."""
    polygon = Polygon2D(((1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)))
    return polygon, Lattice.from_generators([(2, 1), (1, 2)])


def regular_hexagon(window):
    """Regular unit hexagon and its hexagonal lattice points in the window (floats)."""
    angles = np.arange(6) * np.pi / 3
    polygon = Polygon2D(tuple((float(np.cos(a)), float(np.sin(a))) for a in angles))
    basis = np.array([[1.5, 0.0], [math.sqrt(3) / 2, math.sqrt(3)]])
    lo = np.array([float(v) for v in window[0]])
    hi = np.array([float(v) for v in window[1]])
    reach = int(np.ceil(np.abs(np.linalg.inv(basis)).sum(axis=1).max() * np.abs(np.concatenate([lo, hi])).max())) + 2
    axis = np.arange(-reach, reach + 1)
    coeffs = np.stack(np.meshgrid(axis, axis, indexing='ij'), axis=-1).reshape(-1, 2)
    points = coeffs @ basis.T
    inside = np.all((points >= lo - 1e-12) & (points <= hi + 1e-12), axis=1)
    patch = PointPatch.from_points([tuple(p) for p in points[inside]], exact=False)
    return polygon, patch


@dataclass(frozen=True, eq=False)
class SoftTile:
    """
    Grid function f sampled at the points (origin + k)·h. Values are
    integers scaled by `scale`, so grid values are exact rationals.
    """
    dim: int
    h: Fraction
    origin: Tuple[Fraction, ...]
    counts: np.ndarray
    scale: Fraction
    factors: int

    @property
    def integral(self):
        return Fraction(int(self.counts.sum())) * self.scale * self.h ** self.dim

    def value_at_index(self, index):
        return Fraction(int(self.counts[tuple(index)])) * self.scale

    def grid_points(self):
        idx = np.argwhere(self.counts > 0)
        origin = np.array([float(o) for o in self.origin])
        return (idx + origin) * float(self.h)

    def bounding_box(self):
        lo = tuple(o * self.h for o in self.origin)
        hi = tuple((o + n) * self.h for o, n in zip(self.origin, self.counts.shape))
        return lo, hi

    def values(self, points):
        """Nearest-sample lookup at float points; zero off the grid block."""
        points = np.atleast_2d(np.asarray(points, dtype=float))
        origin = np.array([float(o) for o in self.origin])
        idx = np.rint(points / float(self.h) - origin).astype(np.int64)
        shape = np.array(self.counts.shape)
        valid = np.all((idx >= 0) & (idx < shape), axis=1)
        out = np.zeros(points.shape[0])
        out[valid] = self.counts[tuple(idx[valid].T)] * float(self.scale)
        return out

    def diameter(self):
        points = self.grid_points()
        if points.shape[0] < 2:
            return 0.0
        if self.dim == 1:
            return float(points.max() - points.min())
        try:
            points = points[ConvexHull(points).vertices]
        except Exception:
            pass
        return float(pdist(points).max())

    def to_dict(self, limit=64):
        flat = self.counts.ravel()
        return {
            'dim': self.dim, 'h': rational_to_str(self.h), 'origin': vector_to_str(self.origin),
            'shape': list(self.counts.shape), 'scale': rational_to_str(self.scale),
            'factors': self.factors, 'integral': rational_to_str(self.integral),
            'diameter': self.diameter(), 'tolerance': float(self.h),
            'values_head': [rational_to_str(int(v) * self.scale) for v in flat[:limit]],
        }


def _cell_array(tile, h):
    """Indicator of a box union on the h-grid cells: (origin index, 0/1 array)."""
    lo, hi = tile.bounding_box()
    coords = [v for b in tile.boxes for v in (*b.corner, *b.upper)]
    if any((v / h).denominator != 1 for v in coords):
        raise DomainError(f"resolution {rational_to_str(h)} does not divide the box coordinates")
    if any(b.weight != 1 for b in tile.boxes):
        raise DomainError("soft tiles are built from indicator domains")
    origin = tuple(int(v / h) for v in lo)
    shape = tuple(int((b - a) / h) for a, b in zip(lo, hi))
    cells = np.zeros(shape, dtype=np.int64)
    for box in tile.boxes:
        index = tuple(slice(int(box.corner[j] / h) - origin[j], int(box.upper[j] / h) - origin[j])
                      for j in range(tile.dim))
        cells[index] = 1
    return origin, cells


def convolve_domains(tiles, h):
    """
    Grid convolution χ_{D₁} * ⋯ * χ_{D_N}: integer discrete convolution of
    the cell arrays, scaled by h^{d(N−1)} and sampled at summed cell centers.
    """
    tiles = list(tiles)
    if not tiles:
        raise DomainError("convolution needs at least one domain")
    h = as_vector([h])[0]
    if h <= 0:
        raise DomainError("resolution must be positive")
    d = tiles[0].dim
    if any(t.dim != d for t in tiles):
        raise DomainError("domains differ in dimension")
    origin, counts = _cell_array(tiles[0], h)
    origin = list(origin)
    for tile in tiles[1:]:
        other_origin, other = _cell_array(tile, h)
        counts = np.rint(signal.fftconvolve(counts.astype(float), other.astype(float))).astype(np.int64)
        origin = [a + b for a, b in zip(origin, other_origin)]
    n = len(tiles)
    centered = tuple(Fraction(o) + Fraction(n, 2) for o in origin)
    return SoftTile(d, h, centered, counts, h ** (d * (n - 1)), n)


def periodization_report(soft, lattice):
    """
    Exact Σ_λ f(x − λ) on the sample grid: indices are folded modulo the
    integer lattice Λ/h with an adjugate floor division.
    """
    if lattice.dim != soft.dim:
        raise DomainError("soft tile and lattice dimensions differ")
    scaled = [[v / soft.h for v in row] for row in lattice.basis.rows]
    offset = [v / soft.h for v in lattice.offset]
    if any(v.denominator != 1 for row in scaled for v in row) or any(v.denominator != 1 for v in offset):
        raise DomainError("lattice is not contained in the sample grid")
    basis = Matrix(tuple(tuple(row) for row in scaled))
    det = int(basis.det)
    adjugate = basis.to_sympy().adjugate()
    adj = np.array([[int(adjugate[i, j]) for j in range(soft.dim)] for i in range(soft.dim)], dtype=np.int64)
    mat = np.array([[int(v) for v in row] for row in scaled], dtype=np.int64)

    idx = np.argwhere(soft.counts != 0)
    weights = soft.counts[tuple(idx.T)]
    # sample index k sits at (origin + k); shift so that offsets coincide with the grid
    shift = np.array([o for o in soft.origin])
    if any(Fraction(o).denominator != 1 for o in shift):
        base = np.array([int(math.floor(o)) for o in shift], dtype=np.int64)
    else:
        base = np.array([int(o) for o in shift], dtype=np.int64)
    points = idx + base - np.array([int(v) for v in offset], dtype=np.int64)
    sign = 1 if det > 0 else -1
    quotient = np.floor_divide(points @ (sign * adj).T, abs(det))
    residues = points - quotient @ mat.T
    keys, inverse = np.unique(residues, axis=0, return_inverse=True)
    sums = np.zeros(keys.shape[0], dtype=np.int64)
    np.add.at(sums, inverse.ravel(), weights)
    classes = abs(det)
    values = sums.tolist() + ([0] * (classes - keys.shape[0]))
    level = Fraction(max(set(values), key=lambda v: (values.count(v), -v))) * soft.scale
    deviation = max(abs(Fraction(v) * soft.scale - level) for v in values)
    return {
        'passed': deviation == 0,
        'level': rational_to_str(level),
        'classes': classes,
        'max_deviation': float(deviation),
        'tolerance': 0.0,
    }


def soft_common_tile(domains, h):
    """
    Convolve domains D_j that each tile their own lattice Λ_j; the result
    tiles every Λ_j at level ∏_{i≠j} |D_i|.

    Args:
        domains (list): (BoxUnionTile, Lattice) pairs
        h (Fraction): grid resolution dividing every box coordinate

    Returns:
        tuple: (SoftTile, list of per-lattice periodization reports)
    """
    domains = list(domains)
    for tile, lattice in domains:
        report = verify_tiling_exact(tile, TranslationSet.of_lattice(lattice))
        if not report.passed:
            raise PreconditionError("every domain must tile its lattice")
    soft = convolve_domains([tile for tile, _ in domains], h)
    reports = []
    for j, (_, lattice) in enumerate(domains):
        report = periodization_report(soft, lattice)
        expected = math.prod((t.measure for i, (t, _) in enumerate(domains) if i != j), start=Fraction(1))
        report['expected_level'] = rational_to_str(expected)
        report['passed'] = report['passed'] and Fraction(report['level']) == expected
        reports.append(report)
    debug_log(f"Soft tile from {len(domains)} domains: diameter {soft.diameter():.4f}", "DEBUG", "constructions")
    return soft, reports


def diameter_growth(tiles, max_chain, h):
    """
    Support diameter of χ_{D₁} * ⋯ * χ_{D_N} for N = 1..max_chain (cycling
    through the given domains), next to N^{1/d}. Measurement only.
    """
    tiles = list(tiles)
    d = tiles[0].dim
    rows = []
    for n in range(1, max_chain + 1):
        chain = [tiles[i % len(tiles)] for i in range(n)]
        soft = convolve_domains(chain, h)
        rows.append({'factors': n, 'diameter': soft.diameter(), 'root_growth': n ** (1.0 / d),
                     'tolerance': float(h)})
    return rows
