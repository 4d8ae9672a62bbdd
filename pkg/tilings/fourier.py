"""
Closed-form Fourier transforms of box unions, the notched cube, 1D step
tiles and planar edge measures, together with their zero-set grids and the
Bessel function J1 used by the disk argument.

Normalization: f̂(ξ) = ∫ e^{−2πi⟨ξ,x⟩} f(x) dx.
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

import numpy as np
from scipy import optimize, special

from tilings.errors import DomainError, NonDiscreteIntersectionError
from tilings.exact import PointPatch, as_vector
from utils.formatting import rational_to_str, vector_to_str
from utils.logging import debug_log

TAYLOR_THRESHOLD = 1e-6
J1_SERIES_LIMIT = 8.0
J1_SERIES_TERMS = 40
J1_FIRST_ZERO_BRACKET = (3.5, 4.2)


@dataclass(frozen=True)
class Box:
    """Half-open box [corner, corner + widths) carrying a weight."""
    corner: Tuple[Fraction, ...]
    widths: Tuple[Fraction, ...]
    weight: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, 'corner', as_vector(self.corner))
        object.__setattr__(self, 'widths', as_vector(self.widths))
        object.__setattr__(self, 'weight', Fraction(self.weight))
        if len(self.corner) != len(self.widths):
            raise DomainError("box corner and widths differ in dimension")
        if any(w <= 0 for w in self.widths):
            raise DomainError("box widths must be positive")

    @property
    def dim(self):
        return len(self.corner)

    @property
    def upper(self):
        return tuple(a + w for a, w in zip(self.corner, self.widths))

    @property
    def measure(self):
        return self.weight * math.prod(self.widths)

    def contains(self, x):
        return all(a <= v < b for a, v, b in zip(self.corner, x, self.upper))

    def overlaps(self, other):
        return all(a1 < b2 and a2 < b1 for a1, b1, a2, b2 in
                   zip(self.corner, self.upper, other.corner, other.upper))

    def translated(self, vector):
        vector = as_vector(vector)
        return Box(tuple(a + v for a, v in zip(self.corner, vector)), self.widths, self.weight)

    def to_dict(self):
        return {'corner': vector_to_str(self.corner), 'widths': vector_to_str(self.widths),
                'weight': rational_to_str(self.weight)}


@dataclass(frozen=True)
class BoxUnionTile:
    """Finite union of pairwise disjoint weighted half-open rational boxes."""
    boxes: Tuple[Box, ...]

    def __post_init__(self):
        boxes = tuple(b if isinstance(b, Box) else Box(**b) for b in self.boxes)
        if not boxes:
            raise DomainError("a tile needs at least one box")
        if len({b.dim for b in boxes}) != 1:
            raise DomainError("all boxes must share one dimension")
        for i, first in enumerate(boxes):
            for second in boxes[i + 1:]:
                if first.overlaps(second):
                    raise DomainError(f"boxes {first.to_dict()} and {second.to_dict()} overlap")
        object.__setattr__(self, 'boxes', boxes)
        if self.measure <= 0:
            raise DomainError("tile must have positive measure")

    @classmethod
    def from_dict(cls, data):
        return cls(tuple(Box(b['corner'], b['widths'], as_vector([b.get('weight', 1)])[0]) for b in data))

    @property
    def dim(self):
        return self.boxes[0].dim

    @property
    def measure(self):
        return sum((b.measure for b in self.boxes), Fraction(0))

    @property
    def max_weight(self):
        return max(b.weight for b in self.boxes)

    def translated(self, vector):
        return BoxUnionTile(tuple(b.translated(vector) for b in self.boxes))

    def bounding_box(self):
        lo = tuple(min(b.corner[j] for b in self.boxes) for j in range(self.dim))
        hi = tuple(max(b.upper[j] for b in self.boxes) for j in range(self.dim))
        return lo, hi

    def value_at(self, x):
        """Exact tile value at a rational point."""
        x = as_vector(x)
        return sum((b.weight for b in self.boxes if b.contains(x)), Fraction(0))

    def values(self, points):
        """Tile values at an (n, d) float array of points."""
        points = np.atleast_2d(np.asarray(points, dtype=float))
        out = np.zeros(points.shape[0])
        for b in self.boxes:
            lo = np.array([float(v) for v in b.corner])
            hi = np.array([float(v) for v in b.upper])
            inside = np.all((points >= lo) & (points < hi), axis=1)
            out[inside] += float(b.weight)
        return out

    def to_dict(self):
        return [b.to_dict() for b in self.boxes]


def _sinc_factor(width, xi):
    """sin(π w ξ)/(π ξ), switching to the Taylor branch near ξ = 0."""
    t = np.pi * xi
    small = np.abs(t) < TAYLOR_THRESHOLD
    safe = np.where(small, 1.0, t)
    return np.where(small, width * (1.0 - (width * t) ** 2 / 6.0), np.sin(width * t) / safe)


def _frequencies(xi, dim):
    xi = np.asarray([float(v) for v in xi] if not isinstance(xi, np.ndarray) else xi, dtype=float)
    single = xi.ndim == 1
    xi = np.atleast_2d(xi)
    if xi.shape[1] != dim:
        raise DomainError(f"frequency dimension {xi.shape[1]} does not match tile dimension {dim}")
    return xi, single


def ft_box_union(tile, xi):
    """
    Fourier transform of a box union at one frequency or an (n, d) array.

    Each box contributes weight · ∏ e^{−2πiξ_j c_j} sin(π w_j ξ_j)/(π ξ_j)
    with c the box center.
    """
    xi, single = _frequencies(xi, tile.dim)
    total = np.zeros(xi.shape[0], dtype=complex)
    for box in tile.boxes:
        term = np.full(xi.shape[0], float(box.weight), dtype=complex)
        for j in range(tile.dim):
            w = float(box.widths[j])
            center = float(box.corner[j] + box.widths[j] / 2)
            term *= _sinc_factor(w, xi[:, j]) * np.exp(-2j * np.pi * xi[:, j] * center)
        total += term
    return complex(total[0]) if single else total


def ft_notched(delta, xi):
    """
    Transform of the notched cube Q ∖ R: the centered unit cube minus the
    corner box of sides δ_j at vertex (1/2, …, 1/2).
    """
    delta = as_vector(delta)
    if any(not (0 < v <= 1) for v in delta):
        raise DomainError("notch sides must lie in (0, 1]")
    d = len(delta)
    xi, single = _frequencies(xi, d)
    cube = np.ones(xi.shape[0], dtype=complex)
    notch = np.ones(xi.shape[0], dtype=complex)
    for j in range(d):
        dj = float(delta[j])
        center = 0.5 - dj / 2
        cube *= _sinc_factor(1.0, xi[:, j])
        notch *= _sinc_factor(dj, xi[:, j]) * np.exp(-2j * np.pi * xi[:, j] * center)
    value = cube - notch
    return complex(value[0]) if single else value


def ft_step1d(tile, xi):
    """
    One-dimensional step tile as an exponential polynomial:
    Σ weight · (e^{−2πiξa} − e^{−2πiξb}) / (2πiξ) over intervals [a, b).
    """
    if tile.dim != 1:
        raise DomainError("ft_step1d needs a one-dimensional tile")
    xi_arr = np.atleast_1d(np.asarray(xi, dtype=float))
    small = np.abs(np.pi * xi_arr) < TAYLOR_THRESHOLD
    safe = np.where(small, 1.0, xi_arr)
    value = np.zeros(xi_arr.shape[0], dtype=complex)
    for box in tile.boxes:
        a, b = float(box.corner[0]), float(box.upper[0])
        value += float(box.weight) * (np.exp(-2j * np.pi * safe * a) - np.exp(-2j * np.pi * safe * b)) / (2j * np.pi * safe)
    if small.any():
        value[small] = ft_box_union(tile, xi_arr[small][:, None])
    return complex(value[0]) if np.ndim(xi) == 0 else value


def vanishes(value, tol, scale=0.0):
    """Zero-set membership test |value| < tol·(1 + scale)."""
    return abs(value) < tol * (1.0 + float(scale))


def _plane_vector(values):
    """Exact 2-vector when all coordinates are rational, floats otherwise."""
    values = tuple(values)
    if len(values) != 2:
        raise DomainError("edge data must be planar 2-vectors")
    try:
        return as_vector(values)
    except (ValueError, TypeError):
        return tuple(float(v) for v in values)


def _dot(u, v):
    return u[0] * v[0] + u[1] * v[1]


def geometric_inverse(u):
    """u* = u / |u|²."""
    u = _plane_vector(u)
    norm2 = _dot(u, u)
    if norm2 == 0:
        raise DomainError("the zero vector has no geometric inverse")
    return (u[0] / norm2, u[1] / norm2)


@dataclass(frozen=True)
class EdgeMeasure:
    """
    Arc length on the edge segment through center + τ/2 with direction e,
    minus arc length on its copy through center − τ/2.
    """
    edge: tuple
    separation: tuple
    center: tuple = (0, 0)

    def __post_init__(self):
        object.__setattr__(self, 'edge', _plane_vector(self.edge))
        object.__setattr__(self, 'separation', _plane_vector(self.separation))
        object.__setattr__(self, 'center', _plane_vector(self.center))
        if _dot(self.edge, self.edge) == 0:
            raise DomainError("edge vector must be nonzero")
        if _dot(self.separation, self.separation) == 0:
            raise DomainError("edge separation must be nonzero")

    @property
    def length(self):
        return math.sqrt(float(_dot(self.edge, self.edge)))

    def to_dict(self):
        return {'edge': _serial(self.edge), 'separation': _serial(self.separation),
                'center': _serial(self.center)}


def _serial(vector):
    if all(isinstance(v, Fraction) for v in vector):
        return vector_to_str(vector)
    return [float(v) for v in vector]


def ft_edge_measure(measure, xi):
    """
    |e| · sinc(⟨ξ,e⟩) · e^{−2πi⟨ξ,c⟩} · (−2i sin π⟨ξ,τ⟩), sinc(t) = sin(πt)/(πt).
    """
    xi = np.asarray(xi, dtype=float)
    single = xi.ndim == 1
    xi = np.atleast_2d(xi)
    e = np.array([float(v) for v in measure.edge])
    tau = np.array([float(v) for v in measure.separation])
    c = np.array([float(v) for v in measure.center])
    value = (measure.length * np.sinc(xi @ e) * np.exp(-2j * np.pi * (xi @ c))
             * (-2j) * np.sin(np.pi * (xi @ tau)))
    return complex(value[0]) if single else value


@dataclass(frozen=True)
class ZeroLineFamily:
    """
    Parallel lines {x : ⟨x,n⟩/|n|² − offset ∈ Z}; Euclidean spacing |n|.
    With exclude_origin the line ⟨x,n⟩/|n|² = 0 is left out.
    """
    normal: tuple
    offset: object = 0
    exclude_origin: bool = False

    def __post_init__(self):
        object.__setattr__(self, 'normal', _plane_vector(self.normal))
        if _dot(self.normal, self.normal) == 0:
            raise DomainError("line family normal must be nonzero")

    @property
    def exact(self):
        return all(isinstance(v, Fraction) for v in self.normal) and not isinstance(self.offset, float)

    @property
    def spacing(self):
        return math.sqrt(float(_dot(self.normal, self.normal)))

    def level(self, x):
        """⟨x,n⟩/|n|² − offset; an integer exactly on the lines."""
        return _dot(x, self.normal) / _dot(self.normal, self.normal) - self.offset

    def allowed(self, k):
        return not (self.exclude_origin and k + self.offset == 0)

    def index_range(self, window):
        lo, hi = window
        corners = [(a, b) for a in (lo[0], hi[0]) for b in (lo[1], hi[1])]
        levels = [self.level(c) for c in corners]
        return math.floor(min(levels)), math.ceil(max(levels))

    def to_dict(self):
        return {'normal': _serial(self.normal), 'spacing': self.spacing,
                'offset': rational_to_str(self.offset) if isinstance(self.offset, (int, Fraction)) else float(self.offset),
                'exclude_origin': self.exclude_origin, 'tolerance': 0.0 if self.exact else 1e-12}


@dataclass(frozen=True)
class ZeroSetGrid:
    families: Tuple[ZeroLineFamily, ...]

    def contains(self, x, tol=1e-9):
        for family in self.families:
            level = family.level(x)
            if isinstance(level, Fraction):
                if level.denominator == 1 and family.allowed(int(level)):
                    return True
            else:
                k = round(float(level))
                if abs(float(level) - k) < tol and family.allowed(k):
                    return True
        return False

    def to_dict(self):
        return {'families': [f.to_dict() for f in self.families]}


def zero_grid_of_edge(measure):
    """
    Lines carrying the zeros of an edge-measure transform: ⟨ξ,τ⟩ ∈ Z
    (normal τ*) and ⟨ξ,e⟩ ∈ Z∖{0} (normal e*).
    """
    return ZeroSetGrid((
        ZeroLineFamily(geometric_inverse(measure.separation), 0, False),
        ZeroLineFamily(geometric_inverse(measure.edge), 0, True),
    ))


def sample_grid_points(grid, count, extent, seed=0):
    """Deterministic quasi-random points on the lines of a grid, |k|, |t| ≤ extent."""
    rng = np.random.default_rng(seed)
    points = []
    for i in range(count):
        family = grid.families[i % len(grid.families)]
        n = np.array([float(v) for v in family.normal])
        perp = np.array([-n[1], n[0]]) / np.linalg.norm(n)
        ks = [k for k in range(-int(extent), int(extent) + 1) if family.allowed(k)]
        k = ks[int(rng.integers(len(ks)))]
        t = float(rng.uniform(-extent, extent))
        points.append(tuple((k + float(family.offset)) * n + t * perp))
    return PointPatch.from_points(points, exact=False)


def _parallel(n1, n2):
    return n1[0] * n2[1] - n1[1] * n2[0] == 0 if all(isinstance(v, Fraction) for v in (*n1, *n2)) \
        else abs(float(n1[0]) * float(n2[1]) - float(n1[1]) * float(n2[0])) < 1e-12


def intersect_grids(grids, window, tol=1e-9):
    """
    Points of the window lying on some line of every grid. Candidates are
    the crossings of non-parallel line pairs; intersections are exact when
    every normal, offset and window bound is rational.
    """
    grids = list(grids)
    families = [f for g in grids for f in g.families]
    if len(grids) < 2:
        raise NonDiscreteIntersectionError("intersection needs at least two grids")
    if all(_parallel(families[0].normal, f.normal) for f in families[1:]):
        raise NonDiscreteIntersectionError("all grid lines are parallel")

    lo, hi = window
    exact = all(f.exact for f in families)
    if exact:
        lo, hi = as_vector(lo), as_vector(hi)
        window = (lo, hi)
    found = set()
    for i, f1 in enumerate(families):
        for f2 in families[i + 1:]:
            if _parallel(f1.normal, f2.normal):
                continue
            n1, n2 = f1.normal, f2.normal
            s1, s2 = _dot(n1, n1), _dot(n2, n2)
            det = n1[0] * n2[1] - n1[1] * n2[0]
            k1_lo, k1_hi = f1.index_range(window)
            k2_lo, k2_hi = f2.index_range(window)
            for k1 in range(k1_lo, k1_hi + 1):
                if not f1.allowed(k1):
                    continue
                r1 = (k1 + f1.offset) * s1
                for k2 in range(k2_lo, k2_hi + 1):
                    if not f2.allowed(k2):
                        continue
                    r2 = (k2 + f2.offset) * s2
                    x = ((r1 * n2[1] - r2 * n1[1]) / det, (n1[0] * r2 - n2[0] * r1) / det)
                    if exact:
                        if lo[0] <= x[0] <= hi[0] and lo[1] <= x[1] <= hi[1]:
                            found.add(x)
                    else:
                        x = (float(x[0]), float(x[1]))
                        if all(float(lo[j]) - tol <= x[j] <= float(hi[j]) + tol for j in range(2)):
                            found.add((round(x[0], 12) + 0.0, round(x[1], 12) + 0.0))

    points = sorted(p for p in found if all(g.contains(p, tol) for g in grids))
    debug_log(f"Grid intersection: {len(points)} of {len(found)} candidate crossings", "DEBUG", "fourier")
    if not points:
        return PointPatch.empty(2, window, exact=exact)
    return PointPatch.from_points(points, window=window if exact else None, exact=exact)


def bessel_j1(x):
    """
    J1 from its ascending series for |x| ≤ 8, scipy beyond, where the
    alternating terms would cancel below the relative accuracy target.
    """
    x = float(x)
    if abs(x) > J1_SERIES_LIMIT:
        return float(special.j1(x))
    half = x / 2.0
    terms = []
    term = half
    for m in range(J1_SERIES_TERMS):
        terms.append(term)
        term *= -(half * half) / ((m + 1) * (m + 2))
    return math.fsum(terms)


def bessel_j1_first_zero(bracket=J1_FIRST_ZERO_BRACKET):
    """First positive zero of J1 by Brent's method on the bracket."""
    a, b = bracket
    if bessel_j1(a) * bessel_j1(b) > 0:
        raise DomainError(f"J1 does not change sign on [{a}, {b}]")
    return optimize.brentq(bessel_j1, a, b, xtol=1e-12)


def disk_first_zero_radius(bracket=J1_FIRST_ZERO_BRACKET):
    """
    j₁,₁/(2√π): first zero radius of the transform of the unit-area disk.
    """
    return bessel_j1_first_zero(bracket) / (2.0 * math.sqrt(math.pi))
