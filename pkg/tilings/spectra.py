"""
Spectral sets: orthogonality and completeness of exponential systems on
the unit cube and on box unions, the packing-to-tiling transfer harness,
the rigid-motion counterexample and the disk certificate.
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np
from scipy.special import polygamma

from tilings.constructions import unit_cube
from tilings.errors import DomainError, PreconditionError
from tilings.exact import PointPatch, common_denominator, dual_lattice, integer_array
from tilings.fourier import ft_box_union, disk_first_zero_radius, bessel_j1_first_zero, J1_FIRST_ZERO_BRACKET
from tilings.verify import (TranslationSet, TilingReport, _sample_points, verify_packing,
                            verify_tiling_exact, verify_tiling_sampled)
from utils.config import get_setting
from utils.formatting import rational_to_str, vector_to_str
from utils.logging import debug_log
from utils.parallel import chunked, parallel_map

PAIR_CHUNK = 256
COMPLETENESS_TOL = 1e-8
FLOAT_ORTHOGONALITY_TOL = 1e-9


@dataclass(frozen=True)
class SpectrumCandidate:
    """A candidate spectrum (translation set) for a box-union domain, normalized so 0 ∈ Λ."""
    tset: TranslationSet
    domain: object = None

    def __post_init__(self):
        if self.domain is None:
            object.__setattr__(self, 'domain', unit_cube(self.tset.dim, centered=False))
        if self.domain.dim != self.tset.dim:
            raise DomainError("domain and candidate dimensions differ")
        object.__setattr__(self, 'tset', normalize_candidate(self.tset))

    @property
    def dim(self):
        return self.tset.dim

    def points(self, radius):
        """Candidate points in the closed box [−radius, radius]^d."""
        if self.tset.kind == 'patch':
            return self.tset.patch
        lo = (Fraction(-radius),) * self.dim
        hi = (Fraction(radius),) * self.dim
        return PointPatch.from_points(self.tset.points_in_box(lo, hi), exact=True)

    def to_dict(self):
        return {'candidate': self.tset.to_dict(), 'domain': self.domain.to_dict()}


def normalize_candidate(tset):
    """
    Translate so that 0 belongs to the set; spectra are translation
    invariant. Shifted columns are returned unchanged.
    """
    if tset.kind == 'patch':
        patch = tset.patch
        if len(patch) == 0 or any(all(v == 0 for v in p) for p in patch.points):
            return tset
        base = patch.points[0]
        moved = [tuple(v - b for v, b in zip(p, base)) for p in patch.points]
        counts = patch.multiplicities.tolist() if patch.multiplicities is not None else [1] * len(moved)
        expanded = [p for p, c in zip(moved, counts) for _ in range(c)]
        return TranslationSet.of_patch(PointPatch.from_points(expanded, exact=patch.exact))
    if tset.kind == 'shifted_columns':
        return tset
    if tset.kind == 'ap_union':
        alpha, beta = tset.progressions[0]
        if beta % alpha == 0:
            return tset
        return TranslationSet.ap_union([(a, b - beta) for a, b in tset.progressions])
    first = tset.lattices[0]
    if not first.is_translated:
        return tset
    offset = first.offset
    moved = tuple(m.translated(tuple(-v for v in offset)) for m in tset.lattices)
    return TranslationSet.of_lattice(moved[0]) if tset.kind == 'lattice' else TranslationSet.union(moved)


def cube_orthogonality(candidate, radius=3):
    """
    E_Λ is orthogonal on the unit cube iff every difference λ − μ of
    distinct points has a coordinate that is a nonzero integer.

    Exact for rational candidates; float patches use a 1e−9 tolerance.
    Returns the verdict with the first failing pair in sorted order.
    """
    patch = candidate.points(radius)
    points = patch.points
    counts = patch.multiplicities.tolist() if patch.multiplicities is not None else [1] * len(points)
    repeat = next((p for p, c in zip(points, counts) if c > 1), None)
    if repeat is not None:
        return {'orthogonal': False, 'pair': [vector_to_str(repeat)] * 2, 'pairs_checked': 0,
                'reason': 'repeated point'}
    n = len(points)
    if n < 2:
        return {'orthogonal': True, 'pair': None, 'pairs_checked': 0}

    if patch.exact:
        denom = common_denominator(v for p in points for v in p)
        values = integer_array([v * denom for p in points for v in p], (n, candidate.dim))

        def good(diff):
            return np.any((diff % denom == 0) & (diff != 0), axis=-1)
    else:
        values = patch.as_float()

        def good(diff):
            nearest = np.rint(diff)
            return np.any((np.abs(diff - nearest) < FLOAT_ORTHOGONALITY_TOL) & (nearest != 0), axis=-1)

    def scan(rows):
        diff = values[rows][:, None, :] - values[None, :, :]
        ok = good(diff)
        ok[np.arange(len(rows)), rows] = True
        bad = np.argwhere(~ok)
        if bad.size:
            i, j = bad[0]
            return int(rows[i]), int(j)
        return None

    results = parallel_map(scan, chunked(np.arange(n), PAIR_CHUNK), "spectra")
    failure = next((r for r in results if r is not None), None)
    if failure is None:
        return {'orthogonal': True, 'pair': None, 'pairs_checked': n * (n - 1)}
    i, j = failure
    pair = [vector_to_str(points[i]), vector_to_str(points[j])] if patch.exact else [
        list(points[i]), list(points[j])]
    debug_log(f"Cube orthogonality fails at {pair}", "DEBUG", "spectra")
    return {'orthogonal': False, 'pair': pair, 'pairs_checked': n * (n - 1)}


def _sinc2(t):
    return np.sinc(t) ** 2


def _trigamma_tail(r, steps):
    """Σ_{|m|>N} 1/(r − m)² = ψ′(N+1−r) + ψ′(N+1+r) for |r| < N+1."""
    return polygamma(1, steps + 1 - r) + polygamma(1, steps + 1 + r)


def _progression_sum(x, step, offset, tail):
    """
    Σ_n sinc²(x − offset − step·n) at each x.

    Truncated at |n| ≤ tail/step. For an integer step k every term is
    sin²(πt)/(π²k²(t/k − n)²), so the terms beyond the truncation are added
    in closed form around the nearest progression point; other steps get a
    bound instead.
    """
    step = Fraction(step)
    steps = max(1, math.floor(Fraction(tail) / step))
    n = np.arange(-steps, steps + 1, dtype=float)
    t = np.asarray(x, dtype=float) - float(offset)
    truncated = _sinc2(t[:, None] - float(step) * n[None, :]).sum(axis=1)
    if step.denominator == 1:
        k = int(step)
        base = np.rint(t / k)
        partial = _sinc2(t[:, None] - k * (base[:, None] + n[None, :])).sum(axis=1)
        tail_terms = np.sin(np.pi * t) ** 2 / (np.pi * k) ** 2 * _trigamma_tail(t / k - base, steps)
        return partial + tail_terms, truncated, 0.0
    bound = 2.0 / (math.pi ** 2 * float(step) ** 2 * max(1.0, steps - 1.0))
    return truncated, truncated, bound


def _diagonal_entries(lattice):
    rows = lattice.basis.rows
    if any(rows[i][j] != 0 for i in range(lattice.dim) for j in range(lattice.dim) if i != j):
        return None
    return [abs(rows[i][i]) for i in range(lattice.dim)]


def _lattice_sum(lattice, points, tail):
    """Σ_{λ} ∏ sinc²(x_j − λ_j) for one (possibly translated) lattice."""
    diagonal = _diagonal_entries(lattice)
    offset = lattice.offset
    if diagonal is not None:
        corrected = np.ones(points.shape[0])
        truncated = np.ones(points.shape[0])
        bound = 0.0
        for j, step in enumerate(diagonal):
            c, t, b = _progression_sum(points[:, j], step, offset[j], tail)
            corrected *= c
            truncated *= t
            bound += b
        return corrected, truncated, bound
    lo = (Fraction(-tail),) * lattice.dim
    hi = (Fraction(tail),) * lattice.dim
    translates = TranslationSet.of_lattice(lattice).points_in_box(lo, hi)
    shifts = np.array([[float(v) for v in p] for p in translates])
    total = np.zeros(points.shape[0])
    for chunk in chunked(shifts, 1024):
        total += np.prod(_sinc2(points[:, None, :] - chunk[None, :, :]), axis=-1).sum(axis=1)
    bound = 2.0 * lattice.dim * float(lattice.density) / (math.pi ** 2 * float(tail))
    return total, total, bound


def _columns_sum(tset, points, tail):
    """Shifted columns: each column contributes sinc²(x − m) times its own sum along y."""
    steps = int(tail)
    x = points[:, 0]
    corrected = np.zeros(points.shape[0])
    truncated = np.zeros(points.shape[0])
    for m in range(-steps, steps + 1):
        weight = _sinc2(x - m)
        c, t, _ = _progression_sum(points[:, 1], 1, tset.shift_of(m), tail)
        corrected += weight * c
        truncated += weight * t
    # columns beyond the truncation sum to exactly 1 along y
    corrected += np.sin(np.pi * x) ** 2 / np.pi ** 2 * _trigamma_tail(x, steps)
    return corrected, truncated, 0.0


def cube_completeness_residual(candidate, samples=None, tail=1000, seed=None):
    """
    max over sample points x of |Σ_λ ∏ sinc²(x_j − λ_j) − 1|.

    Periodic candidates and shifted columns get a verdict with a tail
    correction or bound. Finite patches get an estimated verdict: the
    residual is held against the mass a density-matched lattice would put
    outside the patch, and the result is flagged `estimate_only`.
    """
    boxes = getattr(candidate.domain, 'boxes', ())
    if len(boxes) != 1 or any(w != 1 for w in boxes[0].widths) or boxes[0].weight != 1:
        raise PreconditionError("completeness is computed on the unit cube")
    samples = samples or get_setting('samples')
    seed = get_setting('seed') if seed is None else seed
    d = candidate.dim
    tset = candidate.tset
    window = ((0,) * d, (1,) * d)
    points = _sample_points(window, samples, seed)

    if tset.kind == 'patch':
        patch = tset.patch.as_float()
        counts = tset.patch.multiplicities if tset.patch.multiplicities is not None else np.ones(len(patch))
        total = np.zeros(points.shape[0])
        for chunk, weights in zip(chunked(patch, 1024), chunked(counts, 1024)):
            total += (np.prod(_sinc2(points[:, None, :] - chunk[None, :, :]), axis=-1) * weights).sum(axis=1)
        lo, hi = patch.min(axis=0), patch.max(axis=0)
        margin = float(np.min(np.minimum(points - lo, hi - points))) if patch.size else 0.0
        density = float(counts.sum()) / max(float(np.prod(hi - lo)), 1.0)
        error_bar = 2.0 * d * density / (math.pi ** 2 * max(margin, 1.0))
        residual = float(np.abs(total - 1.0).max())
        complete = residual <= COMPLETENESS_TOL + error_bar
        debug_log(f"Patch completeness estimate {residual:.3e} (error bar {error_bar:.3e})", "DEBUG", "spectra")
        return {'residual': residual, 'truncated_residual': residual, 'tail_estimate': error_bar,
                'estimate_only': True, 'samples': samples, 'complete': complete}

    if tset.kind == 'shifted_columns':
        corrected, truncated, bound = _columns_sum(tset, points, tail)
    else:
        corrected = np.zeros(points.shape[0])
        truncated = np.zeros(points.shape[0])
        bound = 0.0
        for member in tset.lattices:
            c, t, b = _lattice_sum(member, points, tail)
            corrected += c
            truncated += t
            bound += b
    residual = float(np.abs(corrected - 1.0).max())
    result = {
        'residual': residual,
        'truncated_residual': float(np.abs(truncated - 1.0).max()),
        'tail_estimate': bound,
        'tail': tail,
        'samples': samples,
        'estimate_only': False,
        'complete': residual <= COMPLETENESS_TOL + bound,
    }
    debug_log(f"Cube completeness residual {residual:.3e} (tail {tail})", "DEBUG", "spectra")
    return result


def _cube_tiles(tset, window_radius, samples, seed):
    cube = unit_cube(tset.dim, centered=False)
    if tset.periodic:
        report = verify_tiling_exact(cube, tset)
    else:
        lo = (Fraction(-window_radius),) * tset.dim
        hi = (Fraction(window_radius),) * tset.dim
        report = verify_tiling_sampled(cube, tset, (lo, hi), samples, seed, level=1)
    return report, report.passed and report.level == 1


def cube_spectrum_iff_tiling(tset, radius=3, samples=None, tail=200, seed=None):
    """Spectrum and tiling verdicts for the unit cube; they must agree."""
    candidate = SpectrumCandidate(tset)
    orthogonality = cube_orthogonality(candidate, radius)
    completeness = cube_completeness_residual(candidate, samples, tail, seed)
    spectrum = orthogonality['orthogonal'] and completeness['complete']
    report, tiles = _cube_tiles(candidate.tset, radius, samples, seed)
    agree = spectrum == tiles
    if not agree:
        debug_log("Cube spectrum and tiling verdicts disagree", "ERROR", "spectra")
    return {
        'spectrum': spectrum,
        'tiling': tiles,
        'agree': agree,
        'orthogonality': orthogonality,
        'completeness': completeness,
        'tiling_report': report.to_dict(),
    }


def _box_axis_sum(width, x, step, tail):
    """Σ_n w² sinc²(w(x − step·n)) via the integer-step closed form when w·step ∈ Z."""
    c, t, b = _progression_sum(float(width) * np.asarray(x), Fraction(width) * Fraction(step),
                               0, Fraction(tail) * Fraction(width))
    w2 = float(width) ** 2
    return c * w2, t * w2, b * w2


def lattice_spectrum_check(domain, lattice, radius=20, samples=None, seed=None, tol=None):
    """
    Tiling by L against L* being a spectrum.

    Orthogonality: χ̂_Ω vanishes at the nonzero points of L* within radius.
    Completeness: Σ_{λ∈L*} |χ̂_Ω(x − λ)|² = |Ω|² at sample points, summed in
    closed form for a single box over a diagonal lattice and truncated at
    the radius otherwise, with the change from half the radius as the tail
    estimate.
    """
    tol = tol if tol is not None else get_setting('tol')
    samples = samples or get_setting('samples')
    seed = get_setting('seed') if seed is None else seed
    if lattice.is_translated:
        raise DomainError("the spectrum check needs a lattice without offset")
    tiling = verify_tiling_exact(domain, TranslationSet.of_lattice(lattice))
    tiles = tiling.passed and tiling.level == 1
    dual = dual_lattice(lattice)
    measure = float(domain.measure)

    lo = (Fraction(-radius),) * domain.dim
    hi = (Fraction(radius),) * domain.dim
    dual_points = np.array([[float(v) for v in p] for p in TranslationSet.of_lattice(dual).points_in_box(lo, hi)])
    nonzero = dual_points[np.any(dual_points != 0, axis=1)]
    values = np.abs(ft_box_union(domain, nonzero)) if nonzero.size else np.zeros(0)
    threshold = tol * (1.0 + measure)
    failing = np.flatnonzero(values >= threshold)
    orthogonal = failing.size == 0
    witness = None
    if failing.size:
        witness = {'frequency': nonzero[failing[0]].tolist(), 'abs_ft': float(values[failing[0]])}

    bounds = domain.bounding_box()
    window = (tuple(bounds[0]), tuple(bounds[1]))
    points = _sample_points(window, samples, seed)
    diagonal = _diagonal_entries(dual)
    if len(domain.boxes) == 1 and diagonal is not None and domain.max_weight == 1:
        box = domain.boxes[0]
        total = np.ones(points.shape[0])
        truncated = np.ones(points.shape[0])
        tail_estimate = 0.0
        for j in range(domain.dim):
            c, t, b = _box_axis_sum(box.widths[j], points[:, j], diagonal[j], radius)
            total *= c
            truncated *= t
            tail_estimate += b
        method = 'closed-form'
    else:
        def energy(subset):
            acc = np.zeros(points.shape[0])
            for chunk in chunked(subset, 512):
                xi = (points[:, None, :] - chunk[None, :, :]).reshape(-1, domain.dim)
                acc += (np.abs(ft_box_union(domain, xi)) ** 2).reshape(points.shape[0], -1).sum(axis=1)
            return acc
        total = energy(dual_points)
        inner = dual_points[np.all(np.abs(dual_points) <= radius / 2, axis=1)]
        truncated = total
        tail_estimate = float(np.abs(total - energy(inner)).max()) / measure ** 2
        method = 'truncated'
    residual = float(np.abs(total / measure ** 2 - 1.0).max())
    complete = residual <= max(COMPLETENESS_TOL, tail_estimate)
    spectrum = orthogonal and complete
    agree = spectrum == tiles
    if not agree:
        debug_log("Lattice spectrum and tiling verdicts disagree", "ERROR", "spectra")
    return {
        'tiling': tiles,
        'spectrum': spectrum,
        'agree': agree,
        'orthogonal': orthogonal,
        'orthogonality_witness': witness,
        'complete': complete,
        'residual': residual,
        'truncated_residual': float(np.abs(truncated / measure ** 2 - 1.0).max()),
        'tail_estimate': tail_estimate,
        'method': method,
        'dual_lattice': dual.to_dict(),
        'tiling_report': tiling.to_dict(),
    }


@dataclass(frozen=True)
class FunctionTile:
    """
    Non-indicator tile height·∏ k(x_j / width) with k the Fejér kernel
    sinc² or the triangle max(0, 1 − |t|). Both kernels integrate to 1.
    """
    kind: str
    dim: int = 1
    width: float = 1.0
    height: float = 1.0
    support_radius: float = 2000.0

    def __post_init__(self):
        if self.kind not in ('sinc2', 'triangle'):
            raise DomainError(f"unknown function tile kind: {self.kind}")
        if self.width <= 0 or self.height <= 0:
            raise DomainError("width and height must be positive")

    @property
    def integral(self):
        return self.height * self.width ** self.dim

    @property
    def max_weight(self):
        return self.height

    def bounding_box(self):
        reach = self.width if self.kind == 'triangle' else self.support_radius
        return (-reach,) * self.dim, (reach,) * self.dim

    def tail_bound(self, spacing=1.0):
        """Mass of translates beyond the support radius along each axis."""
        if self.kind == 'triangle':
            return 0.0
        r = self.support_radius / self.width
        return self.dim * self.height * 2.0 * self.width / (math.pi ** 2 * float(spacing) * max(1.0, r - 1.0))

    def values(self, points):
        t = np.atleast_2d(np.asarray(points, dtype=float)) / self.width
        if self.kind == 'triangle':
            kernel = np.maximum(0.0, 1.0 - np.abs(t))
        else:
            kernel = np.where(np.abs(t) <= self.support_radius / self.width, np.sinc(t) ** 2, 0.0)
        return self.height * np.prod(kernel, axis=1)

    def to_dict(self):
        return {'kind': self.kind, 'dim': self.dim, 'width': self.width, 'height': self.height,
                'support_radius': self.support_radius}


def packing_transfer_harness(f, g, tset, window, samples=None, seed=None):
    """
    If f + T and g + T are both packings and ∫f = ∫g, then f + T tiles iff
    g + T tiles. Reports 'inapplicable' when a precondition fails.
    """
    samples = samples or 1024
    integral_f = float(f.measure) if hasattr(f, 'measure') else float(f.integral)
    integral_g = float(g.integral) if hasattr(g, 'integral') else float(g.measure)
    tol = 1e-9 + (g.tail_bound() if hasattr(g, 'tail_bound') else 0.0)
    packing_f = verify_packing(f, tset, 1, window, samples, seed, tol=1e-12)
    packing_g = verify_packing(g, tset, 1, window, samples, seed, tol=tol)
    reasons = []
    if abs(integral_f - integral_g) > 1e-12:
        reasons.append(f"integrals differ: {integral_f} vs {integral_g}")
    if not packing_f.passed:
        reasons.append("f + T is not a packing")
    if not packing_g.passed:
        reasons.append("g + T is not a packing")
    result = {
        'packing_f': packing_f.to_dict(),
        'packing_g': packing_g.to_dict(),
        'integrals': [integral_f, integral_g],
    }
    if reasons:
        debug_log(f"Packing transfer inapplicable: {'; '.join(reasons)}", "DEBUG", "spectra")
        result.update({'status': 'inapplicable', 'reasons': reasons, 'agree': None})
        return result
    tiling_f = verify_tiling_sampled(f, tset, window, samples, seed, level=1)
    tiling_g = verify_tiling_sampled(g, tset, window, samples, seed, level=1, tol=tol)
    agree = tiling_f.passed == tiling_g.passed
    result.update({
        'status': 'applied',
        'tiling_f': tiling_f.to_dict(),
        'tiling_g': tiling_g.to_dict(),
        'agree': agree,
    })
    if not agree:
        debug_log("Packing transfer verdicts disagree", "ERROR", "spectra")
    return result


# Half-plane constraints a·x + b·y + c ≥ 0 (strict when flagged), exact rationals.
SQUARE = (
    (1, 0, Fraction(1, 2), False), (-1, 0, Fraction(1, 2), True),
    (0, 1, Fraction(1, 2), False), (0, -1, Fraction(1, 2), True),
)
PARALLELOGRAM = (
    (1, 0, Fraction(1, 2), False), (-1, 0, Fraction(1, 2), True),
    (-2, 4, Fraction(1), False), (2, -4, Fraction(3), True),
)
PARALLELOGRAM_VERTICES = (
    (Fraction(-1, 2), Fraction(-1, 2)), (Fraction(1, 2), Fraction(0)),
    (Fraction(1, 2), Fraction(1)), (Fraction(-1, 2), Fraction(1, 2)),
)


def _motions(reach):
    """Translations by Z², with (0, k), k < 0, preceded by reflection in the x-axis."""
    return [(j, k, j == 0 and k < 0) for j in range(-reach, reach + 1) for k in range(-reach, reach + 1)]


def _covered(shape, xs, ys, scale, motion):
    j, k, reflect = motion
    px = xs - j * scale
    py = ys - k * scale
    if reflect:
        py = -py
    inside = np.ones(xs.shape[0], dtype=bool)
    for a, b, c, strict in shape:
        value = a * px + b * py + int(c * scale)
        inside &= value > 0 if strict else value >= 0
    return inside


def _motion_coverage(shape, name, resolution, extent, half_plane):
    """
    Coverage counts at the cell midpoints of [−extent, extent]² (or its
    upper half). Coordinates are scaled to integers so every constraint of
    every motion is checked exactly.
    """
    extent = Fraction(extent)
    step = 2 * extent / resolution
    rows = resolution // 2 if half_plane else resolution
    y_lo = Fraction(0) if half_plane else -extent
    scale = common_denominator([step / 2, extent, y_lo, Fraction(1, 2)] + [c for *_, c, _ in shape])
    gx, gy = np.meshgrid(np.arange(resolution), np.arange(rows), indexing='ij')
    stride = int(step * scale)
    xs = int((-extent + step / 2) * scale) + gx.ravel().astype(np.int64) * stride
    ys = int((y_lo + step / 2) * scale) + gy.ravel().astype(np.int64) * stride

    counts = np.zeros(xs.shape[0], dtype=np.int64)
    for motion in _motions(math.ceil(extent) + 2):
        counts += _covered(shape, xs, ys, scale, motion)
    bad = counts != 1
    uncovered = np.flatnonzero(counts == 0)
    witness = None
    if bad.any():
        first = int(uncovered[0]) if uncovered.size else int(np.flatnonzero(bad)[0])
        witness = {'point': [rational_to_str(Fraction(int(xs[first]), scale)),
                             rational_to_str(Fraction(int(ys[first]), scale))],
                   'coverage': int(counts[first])}
    return TilingReport(
        kind='tiling', method='exact-grid', passed=not bad.any(), level=1, exact=True,
        max_deviation=float(np.abs(counts - 1).max()), samples_or_cells=int(counts.size), tolerance=0.0,
        coverage_min=int(counts.min()), coverage_max=int(counts.max()),
        deviating_fraction=float(bad.mean()), witness=witness,
        details={'shape': name, 'packing': bool(counts.max() <= 1),
                 'uncovered_area': float(uncovered.size) * float(step) ** 2,
                 'window': [[-float(extent), float(extent)], [float(y_lo), float(extent)]]},
    )


def rigid_motion_counterexample(resolution=256, extent=Fraction(7, 2), half_plane=False):
    """
    The square and the parallelogram under the same rigid motions: every
    translation by Z², except that (0, k), k < 0, first reflects in the
    x-axis. The square still tiles; the parallelogram packs but leaves a
    triangle of area 1/2 uncovered next to the reflection seam.
    """
    square = _motion_coverage(SQUARE, 'square', resolution, extent, half_plane)
    parallelogram = _motion_coverage(PARALLELOGRAM, 'parallelogram', resolution, extent, half_plane)
    debug_log(f"Rigid motions: square {'tiles' if square.passed else 'fails'}, parallelogram "
              f"{'tiles' if parallelogram.passed else 'fails'}", "DEBUG", "spectra")
    return {
        'A_report': square.to_dict(),
        'B_report': parallelogram.to_dict(),
        'A_tiles': square.passed,
        'B_packs': parallelogram.details['packing'],
        'B_tiles': parallelogram.passed,
        'B_vertices': [vector_to_str(v) for v in PARALLELOGRAM_VERTICES],
        'half_plane': half_plane,
    }


@dataclass(frozen=True)
class DiskCertificate:
    r0: float
    j11: float
    thue_bound: float
    threshold: float
    verdict: bool
    bracket: Optional[tuple] = None

    def to_dict(self):
        return {
            'r0': self.r0,
            'j11': self.j11,
            'thue_bound': self.thue_bound,
            'threshold': self.threshold,
            'verdict': self.verdict,
            'non_spectral': self.verdict,
            'bracket': list(self.bracket) if self.bracket else None,
            'tolerance': 1e-12,
        }


def disk_certificate(bracket=J1_FIRST_ZERO_BRACKET):
    """
    The unit-area disk is not spectral: the first zero radius r₀ of its
    transform exceeds 2/12^{1/4}, which a spectrum would have to respect
    given the packing density bound π/√12.
    """
    j11 = bessel_j1_first_zero(bracket)
    r0 = disk_first_zero_radius(bracket)
    threshold = 2.0 / 12 ** 0.25
    thue = math.pi / math.sqrt(12.0)
    certificate = DiskCertificate(r0=r0, j11=j11, thue_bound=thue, threshold=threshold,
                                  verdict=r0 > threshold, bracket=tuple(bracket))
    debug_log(f"Disk certificate: r0 = {r0:.8f}, threshold = {threshold:.8f}", "DEBUG", "spectra")
    return certificate
