"""
Tiling and packing verdicts.

Two independent routes decide whether a tile plus a translation set covers
space evenly: the Fourier lattice criterion (the transform vanishes on the
nonzero dual points) and an exact direct-space oracle that cuts one period
into cells on which the coverage is constant. Sampled coverage handles
non-periodic translation sets; polygon edge cancellation and face balance
are necessary-condition screens.
"""
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Tuple

import numpy as np
from scipy.spatial import cKDTree
from scipy.stats import qmc

from tilings.errors import CapacityError, DegenerateError, DomainError, PreconditionError
from tilings.exact import (
    Lattice, Matrix, PointPatch, as_vector, common_denominator, dual_lattice,
    enumerate_box, enumerate_points, integer_array,
)
from tilings.fourier import BoxUnionTile, ft_box_union
from utils.config import get_setting
from utils.formatting import rational_to_str, vector_to_str
from utils.logging import debug_log
from utils.parallel import chunked, parallel_map

FT_CHUNK = 4096
SAMPLE_CHUNK = 64
FLOAT_KEY_DIGITS = 9


def _rational_lcm(values):
    values = [Fraction(v) for v in values]
    denom = common_denominator(values)
    return Fraction(math.lcm(*(int(v * denom) for v in values)), denom)


@dataclass(frozen=True)
class TranslationSet:
    """
    Translation multiset: a lattice, a union of translated lattices, a 1D
    union of arithmetic progressions α·Z + β, a finite patch, or the unit
    square's shifted columns {(m, n + s_m)}.
    """
    kind: str
    lattices: Tuple[Lattice, ...] = ()
    progressions: Tuple[Tuple[Fraction, Fraction], ...] = ()
    patch: Optional[PointPatch] = None
    shifts: Tuple[Tuple[int, Fraction], ...] = ()

    @classmethod
    def of_lattice(cls, lattice):
        return cls('lattice', lattices=(lattice,))

    @classmethod
    def union(cls, lattices):
        lattices = tuple(lattices)
        if not lattices:
            raise DomainError("a lattice union needs at least one member")
        if len({m.dim for m in lattices}) != 1:
            raise DomainError("lattice union members differ in dimension")
        return cls('lattice_union', lattices=lattices)

    @classmethod
    def ap_union(cls, progressions):
        progressions = tuple((as_vector([a])[0], as_vector([b])[0]) for a, b in progressions)
        if not progressions:
            raise DomainError("an AP union needs at least one progression")
        if any(alpha <= 0 for alpha, _ in progressions):
            raise DomainError("progression steps must be positive")
        return cls('ap_union', progressions=progressions,
                   lattices=tuple(Lattice(Matrix(((alpha,),)), (beta,)) for alpha, beta in progressions))

    @classmethod
    def of_patch(cls, patch):
        return cls('patch', patch=patch)

    @classmethod
    def shifted_columns(cls, shifts):
        normalized = tuple(sorted((int(m), as_vector([s])[0] % 1) for m, s in dict(shifts).items()))
        return cls('shifted_columns', shifts=normalized)

    @property
    def dim(self):
        if self.kind == 'patch':
            return self.patch.dim
        if self.kind == 'shifted_columns':
            return 2
        return self.lattices[0].dim

    @property
    def periodic(self):
        return self.kind in ('lattice', 'lattice_union', 'ap_union')

    @property
    def exact(self):
        return self.kind != 'patch' or self.patch.exact

    def shift_of(self, column):
        return dict(self.shifts).get(column, Fraction(0))

    def points_in_box(self, lo, hi):
        """Translations inside the closed box [lo, hi], as a sorted list (a multiset)."""
        if self.kind == 'patch':
            pts = self.patch.points
            counts = (self.patch.multiplicities.tolist() if self.patch.multiplicities is not None
                      else [1] * len(pts))
            inside = []
            for p, c in zip(pts, counts):
                if all(lo[j] <= p[j] <= hi[j] for j in range(self.dim)):
                    inside.extend([p] * c)
            return inside
        if self.kind == 'shifted_columns':
            lo, hi = as_vector(lo), as_vector(hi)
            points = []
            for m in range(math.ceil(lo[0]), math.floor(hi[0]) + 1):
                s = self.shift_of(m)
                for n in range(math.ceil(lo[1] - s), math.floor(hi[1] - s) + 1):
                    points.append((Fraction(m), n + s))
            return points
        points = []
        for member in self.lattices:
            points.extend(enumerate_box(member, lo, hi).points)
        return sorted(points)

    def to_dict(self):
        data = {'kind': self.kind}
        if self.kind == 'ap_union':
            data['progressions'] = [[rational_to_str(a), rational_to_str(b)] for a, b in self.progressions]
        elif self.kind in ('lattice', 'lattice_union'):
            data['lattices'] = [m.to_dict() for m in self.lattices]
        elif self.kind == 'patch':
            data['patch'] = self.patch.to_dict()
        else:
            data['shifts'] = {str(m): rational_to_str(s) for m, s in self.shifts}
        return data


def density_of(tset):
    """Density of a translation set: 1/|det| per lattice member, Σ 1/α for AP unions."""
    if tset.kind == 'ap_union':
        return sum((1 / alpha for alpha, _ in tset.progressions), Fraction(0))
    if tset.kind in ('lattice', 'lattice_union'):
        return sum((m.density for m in tset.lattices), Fraction(0))
    if tset.kind == 'shifted_columns':
        return Fraction(1)
    raise DomainError("density is defined only for periodic translation sets")


def packing_density_bound(tile_measure, level=1):
    """A packing at level ℓ by a tile of measure m has density at most ℓ/m."""
    if tile_measure <= 0:
        raise DomainError("tile measure must be positive")
    if isinstance(tile_measure, Fraction) and isinstance(level, (int, Fraction)):
        return Fraction(level) / tile_measure
    return float(level) / float(tile_measure)


def separation_of(patch):
    """Minimal pairwise Euclidean distance; 0 when a point repeats, None below two points."""
    if patch.multiplicities is not None and (patch.multiplicities > 1).any():
        return 0.0
    if len(patch) < 2:
        return None
    distances, _ = cKDTree(patch.as_float()).query(patch.as_float(), k=2)
    return float(distances[:, 1].min())



def _window_separation(tset, window):
    """Separation of an aperiodic translation set inside the window."""
    if tset.periodic:
        return None
    inside = tset.points_in_box(window[0], window[1])
    if not inside:
        return None
    return separation_of(PointPatch.from_points(inside, exact=tset.exact))

@dataclass
class TilingReport:
    """Verdict record for one tiling or packing check."""
    kind: str
    method: str
    passed: bool
    level: object
    exact: bool
    max_deviation: float
    samples_or_cells: int
    tolerance: float
    coverage_min: object = None
    coverage_max: object = None
    deviating_fraction: float = 0.0
    witness: Optional[dict] = None
    details: dict = field(default_factory=dict)

    def to_dict(self):
        def number(value):
            if value is None:
                return None
            if isinstance(value, (int, Fraction)):
                return rational_to_str(value)
            return float(value)
        return {
            'kind': self.kind,
            'method': self.method,
            'passed': self.passed,
            'level': number(self.level),
            'exact': self.exact,
            'max_deviation': float(self.max_deviation),
            'tolerance': float(self.tolerance),
            'samples_or_cells': int(self.samples_or_cells),
            'coverage_min': number(self.coverage_min),
            'coverage_max': number(self.coverage_max),
            'deviating_fraction': float(self.deviating_fraction),
            'witness': self.witness,
            'details': self.details,
        }


def verify_lattice_tiling_fourier(tile, lattice, radius=None, tol=None):
    """
    Fourier lattice criterion: the tile's transform must vanish at every
    dual point 0 < ‖ξ‖∞ ≤ radius. The reported level is measure/|det|.
    """
    radius = as_vector([radius if radius is not None else get_setting('radius')])[0]
    tol = tol if tol is not None else get_setting('tol')
    if lattice.is_translated:
        raise DomainError("the Fourier criterion needs a lattice without offset")
    if radius <= 0:
        raise DomainError("radius must be positive")
    if tile.dim != lattice.dim:
        raise DomainError("tile and lattice dimensions differ")

    dual = dual_lattice(lattice)
    patch = enumerate_points(dual, (0,) * lattice.dim, radius)
    points = patch.as_float()
    nonzero = np.any(patch.numerators != 0, axis=1)
    points = points[nonzero]
    exact_points = [p for p, keep in zip(patch.points, nonzero) if keep]

    chunks = chunked(points, FT_CHUNK)
    magnitudes = np.concatenate([np.abs(v) for v in parallel_map(lambda c: ft_box_union(tile, c), chunks, "fourier")]) \
        if len(points) else np.zeros(0)
    threshold = tol * (1.0 + float(tile.measure))
    bad = np.flatnonzero(magnitudes >= threshold)
    level = tile.measure * lattice.density
    witness = None
    if bad.size:
        first = int(bad[0])
        witness = {'dual_point': vector_to_str(exact_points[first]), 'magnitude': float(magnitudes[first])}
        debug_log(f"Fourier criterion fails at ξ = {witness['dual_point']}", "DEBUG", "fourier")
    return TilingReport(
        kind='tiling', method='fourier', passed=bad.size == 0, level=level, exact=False,
        max_deviation=float(magnitudes.max(initial=0.0)), samples_or_cells=int(points.shape[0]),
        tolerance=threshold, deviating_fraction=float(bad.size) / max(1, points.shape[0]),
        witness=witness, details={'radius': rational_to_str(radius), 'dual_points': int(points.shape[0])},
    )


def axis_period(basis, axis):
    """Smallest p > 0 with p·e_axis in the lattice spanned by the basis columns."""
    coords = basis.inverse().column(axis)
    denom = common_denominator(coords)
    g = math.gcd(*(int(c * denom) for c in coords))
    return Fraction(denom, g)


def period_basis(tset):
    """A lattice of periods shared by every member of a periodic translation set."""
    if not tset.periodic:
        raise DomainError(f"a {tset.kind} translation set has no period; use verify_tiling_sampled")
    members = tset.lattices
    if len({m.basis for m in members}) == 1:
        return members[0].basis
    d = members[0].dim
    return Matrix.diagonal([_rational_lcm(axis_period(m.basis, j) for m in members) for j in range(d)])


@dataclass
class _Coverage:
    breaks: list
    counts: np.ndarray
    scale: int
    weight_scale: int
    translates: int


def _exact_coverage(tile, tset):
    """
    Coverage counts on the cells cut from the bounding box of one period
    cell by every translated box face.
    """
    if tile.dim != tset.dim:
        raise DomainError("tile and translation set dimensions differ")
    d = tile.dim
    period = period_basis(tset)
    lo = tuple(sum((min(Fraction(0), v) for v in row), Fraction(0)) for row in period.rows)
    hi = tuple(sum((max(Fraction(0), v) for v in row), Fraction(0)) for row in period.rows)
    tile_lo, tile_hi = tile.bounding_box()
    search_lo = tuple(a - b for a, b in zip(lo, tile_hi))
    search_hi = tuple(a - b for a, b in zip(hi, tile_lo))

    translates = tset.points_in_box(search_lo, search_hi)
    cap = get_setting('period_cap')
    if len(translates) > cap:
        raise CapacityError(f"one period needs {len(translates)} translates", cap)
    if not translates:
        raise DegenerateError("no translates meet the period cell")

    coords = list(lo) + list(hi) + [v for p in translates for v in p]
    coords += [v for b in tile.boxes for v in (*b.corner, *b.upper)]
    scale = common_denominator(coords)
    weight_scale = common_denominator(b.weight for b in tile.boxes)

    shifts = integer_array([v * scale for p in translates for v in p], (len(translates), d))
    corners = integer_array([v * scale for b in tile.boxes for v in b.corner], (len(tile.boxes), d))
    uppers = integer_array([v * scale for b in tile.boxes for v in b.upper], (len(tile.boxes), d))
    weights = integer_array([b.weight * weight_scale for b in tile.boxes])
    lo_int = integer_array([v * scale for v in lo])
    hi_int = integer_array([v * scale for v in hi])

    starts = (shifts[:, None, :] + corners[None, :, :]).reshape(-1, d)
    ends = (shifts[:, None, :] + uppers[None, :, :]).reshape(-1, d)
    box_weights = np.tile(weights, len(translates))
    starts = np.maximum(starts, lo_int)
    ends = np.minimum(ends, hi_int)
    keep = np.all(starts < ends, axis=1)
    starts, ends, box_weights = starts[keep], ends[keep], box_weights[keep]

    breaks = [np.unique(np.concatenate([starts[:, j], ends[:, j], lo_int[j:j + 1], hi_int[j:j + 1]]))
              for j in range(d)]
    cells = math.prod(len(b) - 1 for b in breaks)
    enum_cap = get_setting('enumeration_cap')
    if cells > enum_cap:
        raise CapacityError(f"cell decomposition needs {cells} cells", enum_cap)

    low_idx = [np.searchsorted(breaks[j], starts[:, j]) for j in range(d)]
    high_idx = [np.searchsorted(breaks[j], ends[:, j]) for j in range(d)]
    diff = np.zeros(tuple(len(b) for b in breaks), dtype=box_weights.dtype)
    for corner in itertools.product((0, 1), repeat=d):
        index = tuple(high_idx[j] if c else low_idx[j] for j, c in enumerate(corner))
        sign = -1 if sum(corner) % 2 else 1
        np.add.at(diff, index, sign * box_weights)
    for axis in range(d):
        diff = np.cumsum(diff, axis=axis)
    counts = diff[tuple(slice(0, -1) for _ in range(d))]
    debug_log(f"Exact oracle: {cells} cells from {len(translates)} translates", "DEBUG", "oracle")
    return _Coverage(breaks, counts, scale, weight_scale, len(translates))


def _cell_witness(coverage, index):
    lo = [Fraction(int(coverage.breaks[j][i]), coverage.scale) for j, i in enumerate(index)]
    hi = [Fraction(int(coverage.breaks[j][i + 1]), coverage.scale) for j, i in enumerate(index)]
    mid = [(a + b) / 2 for a, b in zip(lo, hi)]
    value = Fraction(int(coverage.counts[tuple(index)]), coverage.weight_scale)
    return {'cell_lo': vector_to_str(lo), 'cell_hi': vector_to_str(hi),
            'midpoint': vector_to_str(mid), 'coverage': rational_to_str(value)}


def _modal(values):
    """Most frequent value, the smallest one on ties."""
    uniques, counts = np.unique(values, return_counts=True)
    return uniques[int(np.argmax(counts))]


def verify_tiling_exact(tile, tset):
    """
    Exact tiling verdict for a box-union tile and a periodic translation set.

    Coverage is constant on each cell of the decomposition, so one integer
    count per cell decides the verdict; the level is the modal count.
    """
    coverage = _exact_coverage(tile, tset)
    counts = coverage.counts
    mode = _modal(counts.ravel())
    differing = np.argwhere(counts != mode)
    level = Fraction(int(mode), coverage.weight_scale)
    witness = _cell_witness(coverage, differing[0]) if differing.size else None
    if witness:
        debug_log(f"Exact oracle witness cell {witness['cell_lo']}..{witness['cell_hi']} "
                  f"covered {witness['coverage']} times", "DEBUG", "oracle")
    return TilingReport(
        kind='tiling', method='exact', passed=differing.size == 0, level=level, exact=True,
        max_deviation=0.0 if not differing.size else float(
            np.abs(counts - mode).max()) / coverage.weight_scale,
        samples_or_cells=int(counts.size), tolerance=0.0,
        coverage_min=Fraction(int(counts.min()), coverage.weight_scale),
        coverage_max=Fraction(int(counts.max()), coverage.weight_scale),
        deviating_fraction=float(differing.shape[0]) / counts.size,
        witness=witness, details={'translates': coverage.translates},
    )


def _sample_points(window, samples, seed):
    lo = np.array([float(v) for v in window[0]])
    hi = np.array([float(v) for v in window[1]])
    sampler = qmc.Halton(d=lo.shape[0], scramble=True, seed=seed)
    return qmc.scale(sampler.random(samples), lo, hi)


def _sampled_coverage(tile, translates, points):
    """Σ_λ f(x − λ) at each sample point, summed chunk by chunk in a fixed order."""
    def partial(chunk):
        total = np.zeros(points.shape[0])
        for shift in chunk:
            total += tile.values(points - shift)
        return total
    parts = parallel_map(partial, chunked(translates, SAMPLE_CHUNK), "sampling")
    total = np.zeros(points.shape[0])
    for part in parts:
        total += part
    return total


def coverage_at(tile, tset, points):
    """Sampled coverage at explicit float points."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    tile_lo, tile_hi = tile.bounding_box()
    lo = [float(points[:, j].min()) - float(tile_hi[j]) for j in range(points.shape[1])]
    hi = [float(points[:, j].max()) - float(tile_lo[j]) for j in range(points.shape[1])]
    if tset.exact:
        lo = [Fraction(math.floor(v)) for v in lo]
        hi = [Fraction(math.ceil(v)) for v in hi]
    translates = np.array([[float(v) for v in p] for p in tset.points_in_box(lo, hi)], dtype=float)
    if translates.size == 0:
        raise DegenerateError("no translates reach the sample points")
    return _sampled_coverage(tile, translates.reshape(-1, points.shape[1]), points)


def verify_tiling_sampled(tile, tset, window, samples=None, seed=None, kind='tiling',
                          level=None, tol=1e-12):
    """
    Sampled coverage verdict at scrambled Halton points of the window.

    The tile may be a BoxUnionTile or any object with values(points) and
    bounding_box(). Without an expected level the modal coverage is used.
    """
    samples = samples or get_setting('samples')
    seed = get_setting('seed') if seed is None else seed
    points = _sample_points(window, samples, seed)
    coverage = coverage_at(tile, tset, points)

    keys = np.round(coverage, FLOAT_KEY_DIGITS)
    expected = float(level) if level is not None else float(_modal(keys))
    deviation = coverage - expected
    if kind == 'packing':
        bad = deviation > tol
        max_deviation = float(max(0.0, deviation.max()))
    else:
        bad = np.abs(deviation) > tol
        max_deviation = float(np.abs(deviation).max())
    witness = None
    if bad.any():
        first = int(np.flatnonzero(bad)[0])
        witness = {'point': points[first].tolist(), 'coverage': float(coverage[first])}
    debug_log(f"Sampled {kind}: {int(bad.sum())}/{samples} deviating points", "DEBUG", "sampling")
    return TilingReport(
        kind=kind, method='sampled', passed=not bad.any(), level=expected, exact=False,
        max_deviation=max_deviation, samples_or_cells=samples, tolerance=tol,
        coverage_min=float(coverage.min()), coverage_max=float(coverage.max()),
        deviating_fraction=float(bad.mean()), witness=witness,
        details={'seed': seed, 'separation': _window_separation(tset, window)},
    )


def verify_packing(tile, tset, level=1, window=None, samples=None, seed=None, tol=1e-12):
    """
    Packing verdict: coverage never exceeds the level. Exact for box tiles
    with periodic translation sets when no window is given.
    """
    if window is None:
        if not (isinstance(tile, BoxUnionTile) and tset.periodic):
            raise DomainError("non-periodic packing checks need a sampling window")
        coverage = _exact_coverage(tile, tset)
        bound = Fraction(level) * coverage.weight_scale
        over = np.argwhere(coverage.counts > bound)
        cmax = Fraction(int(coverage.counts.max()), coverage.weight_scale)
        return TilingReport(
            kind='packing', method='exact', passed=over.size == 0, level=Fraction(level), exact=True,
            max_deviation=float(max(Fraction(0), cmax - Fraction(level))),
            samples_or_cells=int(coverage.counts.size), tolerance=0.0,
            coverage_min=Fraction(int(coverage.counts.min()), coverage.weight_scale), coverage_max=cmax,
            deviating_fraction=float(over.shape[0]) / coverage.counts.size,
            witness=_cell_witness(coverage, over[0]) if over.size else None,
            details={'translates': coverage.translates},
        )
    return verify_tiling_sampled(tile, tset, window, samples, seed, kind='packing', level=level, tol=tol)


@dataclass(frozen=True)
class Polygon2D:
    """Simple polygon, vertices counterclockwise; rational or float coordinates."""
    vertices: Tuple[tuple, ...]

    def __post_init__(self):
        try:
            verts = tuple(as_vector(v) for v in self.vertices)
        except (ValueError, TypeError):
            verts = tuple(tuple(float(c) for c in v) for v in self.vertices)
        if len(verts) < 3 or any(len(v) != 2 for v in verts):
            raise DomainError("a polygon needs at least three planar vertices")
        object.__setattr__(self, 'vertices', verts)
        area = self.area
        if area == 0:
            raise DomainError("polygon has zero area")
        if area < 0:
            object.__setattr__(self, 'vertices', tuple(reversed(verts)))

    @property
    def exact(self):
        return all(isinstance(c, Fraction) for v in self.vertices for c in v)

    @property
    def area(self):
        v = self.vertices
        n = len(v)
        return sum(v[i][0] * v[(i + 1) % n][1] - v[(i + 1) % n][0] * v[i][1] for i in range(n)) / 2

    def edges(self):
        v = self.vertices
        n = len(v)
        return [(v[i], (v[(i + 1) % n][0] - v[i][0], v[(i + 1) % n][1] - v[i][1])) for i in range(n)]

    def bounding_box(self):
        xs = [v[0] for v in self.vertices]
        ys = [v[1] for v in self.vertices]
        return (min(xs), min(ys)), (max(xs), max(ys))

    def values(self, points):
        """Indicator at (n, 2) float points by even-odd ray casting."""
        points = np.atleast_2d(np.asarray(points, dtype=float))
        x, y = points[:, 0], points[:, 1]
        inside = np.zeros(points.shape[0], dtype=bool)
        verts = [(float(a), float(b)) for a, b in self.vertices]
        for (x1, y1), (x2, y2) in zip(verts, verts[1:] + verts[:1]):
            crosses = (y1 > y) != (y2 > y)
            with np.errstate(divide='ignore', invalid='ignore'):
                x_cross = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
            inside ^= crosses & (x < x_cross)
        return inside.astype(float)

    def to_dict(self):
        if self.exact:
            return {'vertices': [vector_to_str(v) for v in self.vertices]}
        return {'vertices': [list(v) for v in self.vertices]}


def central_symmetry_check(polygon):
    """Vertex set invariant under x ↦ 2c − x, c the vertex average."""
    n = len(polygon.vertices)
    c = (sum(v[0] for v in polygon.vertices) / n, sum(v[1] for v in polygon.vertices) / n)
    if polygon.exact:
        vertex_set = set(polygon.vertices)
        return all((2 * c[0] - v[0], 2 * c[1] - v[1]) in vertex_set for v in polygon.vertices)
    points = np.array(polygon.vertices, dtype=float)
    mirrored = 2 * np.array(c, dtype=float) - points
    distances, _ = cKDTree(points).query(mirrored)
    return bool(distances.max() < 1e-9)


def _edge_pairs(polygon):
    edges = polygon.edges()
    n = len(edges)
    if n % 2:
        raise PreconditionError("edge pairing needs an even number of edges")
    half = n // 2
    for i in range(half):
        e, f = edges[i][1], edges[i + half][1]
        if polygon.exact:
            paired = e[0] == -f[0] and e[1] == -f[1]
        else:
            paired = abs(e[0] + f[0]) < 1e-9 and abs(e[1] + f[1]) < 1e-9
        if not paired:
            raise PreconditionError("polygon is not centrally symmetric; edges cannot be paired")
    return [(edges[i], edges[i + half]) for i in range(half)]


def _clip(start, vector, lo, hi):
    """Liang–Barsky clip of start + s·vector, s ∈ [0, 1], to [lo, hi]."""
    s0, s1 = 0, 1
    for j in range(2):
        if vector[j] == 0:
            if not (lo[j] <= start[j] <= hi[j]):
                return None
            continue
        a = (lo[j] - start[j]) / vector[j]
        b = (hi[j] - start[j]) / vector[j]
        s0, s1 = max(s0, min(a, b)), min(s1, max(a, b))
    return (s0, s1) if s0 < s1 else None


def _signed_sweep(intervals):
    """L¹ norm of Σ sign·χ_[a,b) along a line, plus the first nonzero stretch."""
    events = {}
    for a, b, sign in intervals:
        events[a] = events.get(a, 0) + sign
        events[b] = events.get(b, 0) - sign
    total, level, witness = 0, 0, None
    positions = sorted(events)
    for left, right in zip(positions, positions[1:]):
        level += events[left]
        if level != 0:
            total += abs(level) * (right - left)
            if witness is None:
                witness = (left, right, level)
    return total, witness


def verify_polygon_edge_cancellation(polygon, tset, window, tol=None):
    """
    Check Σ_λ μ_e(x − λ) = 0 for every pair of opposite edges.

    Along each line carrying translated edges, the + edges and the − edges
    must cover the clipped part of the line equally; the residual is the L¹
    norm of the signed coverage, in arc length.
    """
    pairs = _edge_pairs(polygon)
    exact = polygon.exact and tset.exact
    tol = tol if tol is not None else (0.0 if exact else get_setting('tol'))
    lo, hi = window
    if exact:
        lo, hi = as_vector(lo), as_vector(hi)
    else:
        lo, hi = tuple(float(v) for v in lo), tuple(float(v) for v in hi)
    (bx0, by0), (bx1, by1) = polygon.bounding_box()
    search_lo = (lo[0] - bx1, lo[1] - by1)
    search_hi = (hi[0] - bx0, hi[1] - by0)
    if tset.exact and not exact:
        search_lo = tuple(Fraction(math.floor(v)) for v in search_lo)
        search_hi = tuple(Fraction(math.ceil(v)) for v in search_hi)
    translates = tset.points_in_box(search_lo, search_hi)
    if not exact:
        translates = [tuple(float(c) for c in p) for p in translates]

    results = []
    for (start_p, e), (start_m, _) in pairs:
        if not exact:
            e = (float(e[0]), float(e[1]))
        norm2 = e[0] * e[0] + e[1] * e[1]
        lines = {}
        for lam in translates:
            for start, sign in ((start_p, 1), (start_m, -1)):
                if sign == 1:
                    p, v = (start[0] + lam[0], start[1] + lam[1]), e
                else:
                    p, v = (start[0] + lam[0], start[1] + lam[1]), (-e[0], -e[1])
                clipped = _clip(p, v, lo, hi)
                if clipped is None:
                    continue
                key = e[0] * p[1] - e[1] * p[0]
                t0 = (p[0] * e[0] + p[1] * e[1]) / norm2
                if not exact:
                    key = round(float(key), FLOAT_KEY_DIGITS) + 0.0
                if sign == 1:
                    a, b = t0 + clipped[0], t0 + clipped[1]
                else:
                    a, b = t0 - clipped[1], t0 - clipped[0]
                lines.setdefault(key, []).append((a, b, sign))
        residual, witness = 0, None
        for key in sorted(lines):
            total, stretch = _signed_sweep(lines[key])
            residual += total
            if stretch is not None and witness is None and total > tol:
                witness = {'line_offset': rational_to_str(key) if exact else float(key),
                           'from': rational_to_str(stretch[0]) if exact else float(stretch[0]),
                           'to': rational_to_str(stretch[1]) if exact else float(stretch[1]),
                           'signed_coverage': int(stretch[2])}
        length = math.sqrt(float(norm2))
        arc_residual = float(residual) * length
        results.append({
            'direction': vector_to_str(e) if exact else list(e),
            'residual': arc_residual,
            'residual_exact': rational_to_str(residual) if exact else None,
            'lines': len(lines),
            'passed': arc_residual <= tol,
            'witness': witness,
        })
    passed = all(r['passed'] for r in results)
    debug_log(f"Edge cancellation {'holds' if passed else 'fails'} on {len(results)} edge pairs",
              "DEBUG", "oracle")
    return {'passed': passed, 'exact': exact, 'tolerance': tol, 'pairs': results,
            'translates': len(translates)}


def _primitive_direction(vector):
    """(primitive integer direction p, t) with vector = t·p, t > 0."""
    denom = common_denominator(vector)
    ints = [int(v * denom) for v in vector]
    g = math.gcd(*ints)
    p = tuple(v // g for v in ints)
    return p, Fraction(g, denom)


def _canonical(p):
    first = next(v for v in p if v != 0)
    return (p, 1) if first > 0 else (tuple(-v for v in p), -1)


def _polygon_face_balance(polygon):
    if not polygon.exact:
        raise DomainError("face balance for polygons needs rational vertices")
    totals = {}
    for _, (ex, ey) in polygon.edges():
        normal, t = _primitive_direction((ey, -ex))
        direction, side = _canonical(normal)
        plus, minus = totals.get(direction, (Fraction(0), Fraction(0)))
        totals[direction] = (plus + t, minus) if side == 1 else (plus, minus + t)
    balance = []
    for direction in sorted(totals):
        plus, minus = totals[direction]
        scale = math.sqrt(sum(v * v for v in direction))
        balance.append({'direction': list(direction), 'plus_measure': float(plus) * scale,
                        'minus_measure': float(minus) * scale,
                        'plus_exact': rational_to_str(plus), 'minus_exact': rational_to_str(minus),
                        'balanced': plus == minus})
    return balance


def _box_face_balance(tile):
    d = tile.dim
    breaks = [sorted({v for b in tile.boxes for v in (b.corner[j], b.upper[j])}) for j in range(d)]
    shape = tuple(len(b) - 1 for b in breaks)
    occupied = np.zeros(shape, dtype=bool)
    for box in tile.boxes:
        index = tuple(slice(breaks[j].index(box.corner[j]), breaks[j].index(box.upper[j])) for j in range(d))
        occupied[index] = True
    widths = [np.array([b - a for a, b in zip(br, br[1:])], dtype=object) for br in breaks]
    balance = []
    for axis in range(d):
        padded = np.pad(occupied, [(1, 1) if j == axis else (0, 0) for j in range(d)])
        body = np.take(padded, range(0, shape[axis] + 1), axis=axis)
        ahead = np.take(padded, range(1, shape[axis] + 2), axis=axis)
        plus_cells = np.moveaxis(body & ~ahead, axis, 0)
        minus_cells = np.moveaxis(ahead & ~body, axis, 0)
        others = [widths[j] for j in range(d) if j != axis]
        face_area = np.ones(plus_cells.shape[1:], dtype=object) * Fraction(1)
        for k, w in enumerate(others):
            face_area = face_area * w.reshape([-1 if m == k else 1 for m in range(len(others))])
        plus = sum((face_area[tuple(idx[1:])] for idx in np.argwhere(plus_cells)), Fraction(0)) if d > 1 else \
            Fraction(int(plus_cells.sum()))
        minus = sum((face_area[tuple(idx[1:])] for idx in np.argwhere(minus_cells)), Fraction(0)) if d > 1 else \
            Fraction(int(minus_cells.sum()))
        plus = Fraction(plus)
        minus = Fraction(minus)
        direction = [int(j == axis) for j in range(d)]
        balance.append({'direction': direction, 'plus_measure': float(plus), 'minus_measure': float(minus),
                        'plus_exact': rational_to_str(plus), 'minus_exact': rational_to_str(minus),
                        'balanced': plus == minus})
    return balance


def face_balance_check(shape):
    """
    Per facet normal u: boundary measure facing u against facing −u.
    A tile or spectral domain must be balanced in every direction.
    """
    if isinstance(shape, Polygon2D):
        return _polygon_face_balance(shape)
    if isinstance(shape, BoxUnionTile):
        return _box_face_balance(shape)
    raise DomainError(f"face balance is not defined for {type(shape).__name__}")
