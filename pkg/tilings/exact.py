"""
Exact rational geometry: matrices, lattices, duality, point enumeration and
the integer-lattice predicates of Minkowski and Hajós.

All coordinates are `fractions.Fraction`. Enumeration scales everything to a
common integer denominator and runs vectorized in numpy, so every
comparison is still exact.
"""
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Optional, Tuple

import numpy as np
import sympy

from tilings.errors import CapacityError, DomainError, PreconditionError, SingularLatticeError
from utils.cache import cache
from utils.config import get_setting
from utils.formatting import as_rational, matrix_to_str, vector_to_str
from utils.logging import debug_log

# int64 is used while every intermediate stays below this bound
_INT64_SAFE = 2 ** 62


def as_vector(values) -> Tuple[Fraction, ...]:
    return tuple(as_rational(v) for v in values)


def common_denominator(values) -> int:
    values = list(values)
    if not values:
        return 1
    return math.lcm(*(Fraction(v).denominator for v in values))


def integer_array(values, shape=None):
    """Python ints -> int64 array, or an object array when they could overflow."""
    values = [int(v) for v in values]
    big = max((abs(v) for v in values), default=0)
    array = np.array(values, dtype=np.int64 if big < _INT64_SAFE else object)
    return array.reshape(shape) if shape is not None else array


def _to_sympy(value):
    return sympy.Rational(value.numerator, value.denominator)


def _from_sympy(value):
    value = sympy.nsimplify(value) if not isinstance(value, sympy.Rational) else value
    return Fraction(int(value.p), int(value.q))


@dataclass(frozen=True)
class Matrix:
    """Square matrix with exact rational entries, stored row-major."""
    rows: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(as_vector(row) for row in self.rows)
        if not rows or any(len(row) != len(rows) for row in rows):
            raise DomainError("matrix must be square and non-empty")
        object.__setattr__(self, 'rows', rows)

    @classmethod
    def identity(cls, dim):
        return cls(tuple(tuple(Fraction(int(i == j)) for j in range(dim)) for i in range(dim)))

    @classmethod
    def diagonal(cls, entries):
        entries = as_vector(entries)
        n = len(entries)
        return cls(tuple(tuple(entries[i] if i == j else Fraction(0) for j in range(n)) for i in range(n)))

    @property
    def dim(self):
        return len(self.rows)

    def row(self, i):
        return self.rows[i]

    def column(self, j):
        return tuple(row[j] for row in self.rows)

    def transpose(self):
        return Matrix(tuple(self.column(j) for j in range(self.dim)))

    def to_sympy(self):
        return sympy.Matrix([[_to_sympy(v) for v in row] for row in self.rows])

    @cached_property
    def det(self) -> Fraction:
        return _from_sympy(self.to_sympy().det(method='bareiss'))

    @cached_property
    def _inverse(self):
        if self.det == 0:
            return None
        inv = self.to_sympy().inv()
        return Matrix(tuple(tuple(_from_sympy(inv[i, j]) for j in range(self.dim)) for i in range(self.dim)))

    def inverse(self):
        if self._inverse is None:
            raise SingularLatticeError("matrix is not invertible")
        return self._inverse

    def apply(self, vector):
        vector = as_vector(vector)
        return tuple(sum((a * x for a, x in zip(row, vector)), Fraction(0)) for row in self.rows)

    def __matmul__(self, other):
        cols = [other.column(j) for j in range(other.dim)]
        return Matrix(tuple(
            tuple(sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols)
            for row in self.rows
        ))

    def is_integral_row(self, i):
        return all(v.denominator == 1 for v in self.rows[i])

    def scaled_integer(self):
        """(integer matrix M, denominator D) with self = M / D."""
        denom = common_denominator(v for row in self.rows for v in row)
        flat = [v * denom for row in self.rows for v in row]
        return integer_array(flat, (self.dim, self.dim)), denom

    def to_float(self):
        return np.array([[float(v) for v in row] for row in self.rows], dtype=float)

    def to_dict(self):
        return matrix_to_str(self.rows)


@dataclass(frozen=True)
class Lattice:
    """
    Lattice A·Z^d + offset. The columns of `basis` generate the lattice.
    """
    basis: Matrix
    offset: Optional[Tuple[Fraction, ...]] = None

    def __post_init__(self):
        if not isinstance(self.basis, Matrix):
            object.__setattr__(self, 'basis', Matrix(self.basis))
        offset = self.offset if self.offset is not None else (0,) * self.basis.dim
        offset = as_vector(offset)
        if len(offset) != self.basis.dim:
            raise DomainError("offset dimension does not match basis")
        object.__setattr__(self, 'offset', offset)
        if self.basis.det == 0:
            raise SingularLatticeError("lattice basis has determinant 0")

    @classmethod
    def integer(cls, dim):
        return cls(Matrix.identity(dim))

    @classmethod
    def from_generators(cls, generators, offset=None):
        """Build from a list of generator vectors (the columns of the basis)."""
        return cls(Matrix(tuple(zip(*[as_vector(g) for g in generators]))), offset)

    @property
    def dim(self):
        return self.basis.dim

    @property
    def determinant(self):
        return self.basis.det

    @property
    def density(self):
        return 1 / abs(self.basis.det)

    @property
    def is_translated(self):
        return any(v != 0 for v in self.offset)

    def generators(self):
        return [self.basis.column(j) for j in range(self.dim)]

    def coordinates(self, x):
        """Basis coordinates of x − offset."""
        x = as_vector(x)
        return self.basis.inverse().apply(tuple(a - b for a, b in zip(x, self.offset)))

    def contains(self, x):
        return all(c.denominator == 1 for c in self.coordinates(x))

    def translated(self, vector):
        vector = as_vector(vector)
        return Lattice(self.basis, tuple(a + b for a, b in zip(self.offset, vector)))

    def without_offset(self):
        return Lattice(self.basis)

    def to_dict(self):
        return {'basis': self.basis.to_dict(), 'offset': vector_to_str(self.offset)}


@dataclass(frozen=True, eq=False)
class PointPatch:
    """
    Finite point set restricted to a window.

    Exact patches store integer numerators over one common denominator;
    float patches store coordinates directly with denominator None.
    """
    dim: int
    numerators: np.ndarray
    denominator: Optional[int]
    window: Tuple[tuple, tuple]
    multiplicities: Optional[np.ndarray] = field(default=None)

    @classmethod
    def empty(cls, dim, window=None, exact=True):
        window = window or ((Fraction(0),) * dim, (Fraction(0),) * dim)
        return cls(dim, np.zeros((0, dim), dtype=np.int64 if exact else float), 1 if exact else None, window)

    @classmethod
    def from_points(cls, points, window=None, exact=None):
        """
        Build a patch from explicit points; duplicates are collapsed into a
        multiplicity list.
        """
        points = [tuple(p) for p in points]
        if not points:
            raise DomainError("a patch needs at least one point or use PointPatch.empty")
        dim = len(points[0])
        if exact is None:
            exact = all(not isinstance(v, float) for p in points for v in p)
        counts = {}
        if exact:
            for p in points:
                key = as_vector(p)
                counts[key] = counts.get(key, 0) + 1
            keys = sorted(counts)
            denom = common_denominator(v for p in keys for v in p)
            nums = integer_array([v * denom for p in keys for v in p], (len(keys), dim))
        else:
            for p in points:
                key = tuple(float(v) for v in p)
                counts[key] = counts.get(key, 0) + 1
            keys = sorted(counts)
            denom = None
            nums = np.array(keys, dtype=float).reshape(len(keys), dim)
        if window is None:
            lo = tuple(min(p[j] for p in keys) for j in range(dim))
            hi = tuple(max(p[j] for p in keys) for j in range(dim))
            window = (lo, hi)
        else:
            window = (tuple(window[0]), tuple(window[1]))
            for p in keys:
                if any(p[j] < window[0][j] or p[j] > window[1][j] for j in range(dim)):
                    raise DomainError(f"point {p} lies outside the patch window")
        mult = np.array([counts[k] for k in keys], dtype=np.int64)
        return cls(dim, nums, denom, window, mult if (mult > 1).any() else None)

    @property
    def exact(self):
        return self.denominator is not None

    def __len__(self):
        return int(self.numerators.shape[0])

    @property
    def points(self):
        if self.exact:
            return [tuple(Fraction(int(v), self.denominator) for v in row) for row in self.numerators]
        return [tuple(float(v) for v in row) for row in self.numerators]

    def as_float(self):
        if self.exact:
            return self.numerators.astype(float) / float(self.denominator)
        return np.asarray(self.numerators, dtype=float)

    def total_count(self):
        return int(self.multiplicities.sum()) if self.multiplicities is not None else len(self)

    def to_dict(self, limit=None):
        pts = self.points if limit is None else self.points[:limit]
        serial = [vector_to_str(p) for p in pts] if self.exact else [list(p) for p in pts]
        result = {'dim': self.dim, 'exact': self.exact, 'count': len(self), 'points': serial}
        if self.exact:
            result['window'] = [vector_to_str(self.window[0]), vector_to_str(self.window[1])]
        if self.multiplicities is not None:
            result['multiplicities'] = self.multiplicities.tolist()
        return result


def _lex_order(array):
    if array.shape[0] == 0:
        return np.arange(0)
    if array.dtype == object:
        return np.array(sorted(range(array.shape[0]), key=lambda i: tuple(array[i])), dtype=np.int64)
    return np.lexsort(array.T[::-1])


def _coefficient_ranges(lattice, lo, hi):
    """Integer coefficient ranges covering A^{-1}([lo, hi] − offset)."""
    inv = lattice.basis.inverse()
    ranges = []
    for i in range(lattice.dim):
        low = high = Fraction(0)
        for j in range(lattice.dim):
            a = inv.rows[i][j] * (lo[j] - lattice.offset[j])
            b = inv.rows[i][j] * (hi[j] - lattice.offset[j])
            low += min(a, b)
            high += max(a, b)
        ranges.append((math.floor(low), math.ceil(high)))
    return ranges


def enumerate_box(lattice, lo, hi, cap=None):
    """
    Exactly the points of the lattice inside the closed box [lo, hi],
    in lexicographic order.
    """
    lo, hi = as_vector(lo), as_vector(hi)
    cap = cap or get_setting('enumeration_cap')
    d = lattice.dim
    if any(a > b for a, b in zip(lo, hi)):
        return PointPatch.empty(d, (lo, hi))

    ranges = _coefficient_ranges(lattice, lo, hi)
    candidates = math.prod(b - a + 1 for a, b in ranges)
    if candidates > cap:
        raise CapacityError(f"enumeration needs {candidates} candidate points", cap)

    denom = common_denominator(
        [v for row in lattice.basis.rows for v in row] + list(lattice.offset) + list(lo) + list(hi)
    )
    basis_int = integer_array([v * denom for row in lattice.basis.rows for v in row], (d, d))
    offset_int = integer_array([v * denom for v in lattice.offset])
    lo_int = integer_array([v * denom for v in lo])
    hi_int = integer_array([v * denom for v in hi])
    span = max(max(abs(a), abs(b)) for a, b in ranges) + 1
    if int(np.abs(basis_int).max()) * span * d + int(np.abs(offset_int).max()) >= _INT64_SAFE:
        basis_int, offset_int = basis_int.astype(object), offset_int.astype(object)
        lo_int, hi_int = lo_int.astype(object), hi_int.astype(object)

    first_lo, first_hi = ranges[0]
    rest = [np.arange(a, b + 1, dtype=np.int64) for a, b in ranges[1:]]
    rest_grid = (np.stack(np.meshgrid(*rest, indexing='ij'), axis=-1).reshape(-1, d - 1)
                 if d > 1 else np.zeros((1, 0), dtype=np.int64))
    step = max(1, (1 << 20) // max(1, rest_grid.shape[0]))

    kept = []
    for start in range(first_lo, first_hi + 1, step):
        firsts = np.arange(start, min(first_hi, start + step - 1) + 1, dtype=np.int64)
        coeffs = np.concatenate([
            np.repeat(firsts, rest_grid.shape[0])[:, None],
            np.tile(rest_grid, (firsts.shape[0], 1)),
        ], axis=1)
        if basis_int.dtype == object:
            coeffs = coeffs.astype(object)
        nums = coeffs @ basis_int.T + offset_int
        mask = np.all((nums >= lo_int) & (nums <= hi_int), axis=1)
        if mask.any():
            kept.append(nums[mask])

    nums = np.concatenate(kept, axis=0) if kept else np.zeros((0, d), dtype=np.int64)
    if nums.shape[0] > cap:
        raise CapacityError(f"enumeration produced {nums.shape[0]} points", cap)
    nums = nums[_lex_order(nums)]
    debug_log(f"Enumerated {nums.shape[0]} points from {candidates} candidates", "DEBUG", "enumerate")
    return PointPatch(d, nums, denom, (lo, hi))


def enumerate_points(lattice, center, radius, cap=None):
    """
    Points λ with ‖λ − center‖∞ ≤ radius, each once, in lexicographic order.
    """
    center = as_vector(center)
    radius = as_rational(radius)
    if radius < 0:
        raise DomainError("radius must be non-negative")
    lo = tuple(c - radius for c in center)
    hi = tuple(c + radius for c in center)
    key = ('box', lattice.basis.rows, lattice.offset, lo, hi, cap)
    return cache.get_or_compute(key, lambda: enumerate_box(lattice, lo, hi, cap))


def dual_lattice(lattice):
    """Λ* = A^{-T} Z^d for an offset-free lattice Λ = A Z^d."""
    if lattice.is_translated:
        raise DomainError("duality is defined only for lattices without offset")
    return Lattice(lattice.basis.inverse().transpose())


def lattice_determinant(lattice):
    return lattice.basis.det


def project_to_fundamental(lattice, x):
    """
    Reduce x into A·[0,1)^d modulo the period group A·Z^d.

    The offset of a translated lattice does not move the fundamental domain,
    which keeps the projection idempotent.
    """
    x = as_vector(x)
    coords = lattice.basis.inverse().apply(x)
    shift = lattice.basis.apply(tuple(Fraction(math.floor(c)) for c in coords))
    return tuple(a - b for a, b in zip(x, shift))


def lattice_contains(lattice, x):
    return lattice.contains(x)


def integral_row_index(matrix) -> Optional[int]:
    """Smallest 1-based index of a row with all-integer entries, or None."""
    if matrix.det == 0:
        raise SingularLatticeError("integral_row_index needs an invertible matrix")
    for i in range(matrix.dim):
        if matrix.is_integral_row(i):
            return i + 1
    return None


def canonical_vectors(dim, bound):
    """
    Nonzero integer vectors with ‖x‖∞ ≤ bound, one of each ±x pair (first
    nonzero coordinate positive), ordered by ∞-norm, then 1-norm, then
    descending lexicographic order.
    """
    if bound < 1:
        raise DomainError("search bound must be at least 1")
    count = (2 * bound + 1) ** dim
    cap = get_setting('enumeration_cap')
    if count > cap:
        raise CapacityError(f"search over {count} vectors", cap)
    axis = np.arange(-bound, bound + 1, dtype=np.int64)
    grid = np.stack(np.meshgrid(*([axis] * dim), indexing='ij'), axis=-1).reshape(-1, dim)
    nonzero = grid != 0
    has_nonzero = nonzero.any(axis=1)
    first = np.argmax(nonzero, axis=1)
    leading = grid[np.arange(grid.shape[0]), first]
    grid = grid[has_nonzero & (leading > 0)]
    keys = [-grid[:, j] for j in reversed(range(dim))]
    keys.append(np.abs(grid).sum(axis=1))
    keys.append(np.abs(grid).max(axis=1))
    return grid[np.lexsort(keys)]


def _require_unimodular(matrix, name):
    if matrix.det != 1:
        raise PreconditionError(f"{name} needs det = 1, got {matrix.det}")


def _images(matrix, vectors):
    scaled, denom = matrix.scaled_integer()
    if scaled.dtype == object or int(np.abs(scaled).max()) * int(np.abs(vectors).max(initial=1)) * matrix.dim >= _INT64_SAFE:
        return vectors.astype(object) @ scaled.astype(object).T, denom
    return vectors @ scaled.T, denom


def minkowski_vector(matrix, search_bound):
    """
    First x ∈ Z^d∖{0} (canonical order) with ‖Ax‖∞ ≤ 1, or None within the bound.
    """
    _require_unimodular(matrix, "minkowski_vector")
    vectors = canonical_vectors(matrix.dim, search_bound)
    images, denom = _images(matrix, vectors)
    ok = np.all(np.abs(images) <= denom, axis=1)
    hits = np.flatnonzero(ok)
    if hits.size == 0:
        debug_log(f"No Minkowski vector within bound {search_bound}", "WARNING", "minkowski")
        return None
    return tuple(int(v) for v in vectors[hits[0]])


def hajos_strict_vector(matrix, search_bound):
    """First x ∈ Z^d∖{0} with ‖Ax‖∞ < 1 strictly, or None."""
    _require_unimodular(matrix, "hajos_strict_vector")
    vectors = canonical_vectors(matrix.dim, search_bound)
    images, denom = _images(matrix, vectors)
    hits = np.flatnonzero(np.all(np.abs(images) < denom, axis=1))
    return tuple(int(v) for v in vectors[hits[0]]) if hits.size else None


@dataclass(frozen=True)
class HajosResult:
    holds_up_to_bound: bool
    witness: Optional[Tuple[int, ...]]
    integral_row: Optional[int]
    range_bound: int
    checked: int

    def to_dict(self):
        return {
            'holds_up_to_bound': self.holds_up_to_bound,
            'witness': list(self.witness) if self.witness is not None else None,
            'integral_row': self.integral_row,
            'range_bound': self.range_bound,
            'checked': self.checked,
        }


def hajos_predicate(matrix, range_bound):
    """
    Does every nonzero x with ‖x‖∞ ≤ range_bound have some coordinate of Bx
    equal to a nonzero integer?
    """
    _require_unimodular(matrix, "hajos_predicate")
    vectors = canonical_vectors(matrix.dim, range_bound)
    images, denom = _images(matrix, vectors)
    good = np.any((images % denom == 0) & (images != 0), axis=1)
    bad = np.flatnonzero(~good)
    witness = tuple(int(v) for v in vectors[bad[0]]) if bad.size else None
    result = HajosResult(
        holds_up_to_bound=witness is None,
        witness=witness,
        integral_row=integral_row_index(matrix),
        range_bound=range_bound,
        checked=int(vectors.shape[0]),
    )
    debug_log(f"Hajós predicate {'holds' if result.holds_up_to_bound else 'fails'} "
              f"over {result.checked} vectors", "DEBUG", "hajos")
    return result


def standard_basis_index(lattice) -> Optional[int]:
    """Smallest i with e_i in the lattice's period group, counted from 1."""
    for i in range(lattice.dim):
        e = tuple(Fraction(int(i == j)) for j in range(lattice.dim))
        if all(c.denominator == 1 for c in lattice.basis.inverse().apply(e)):
            return i + 1
    return None


def matrix_form_permutation(matrix) -> Optional[Tuple[int, ...]]:
    """
    A permutation of the coordinate axes making the matrix unit lower
    triangular, or None.
    """
    d = matrix.dim
    for perm in itertools.permutations(range(d)):
        rows = [[matrix.rows[perm[i]][perm[j]] for j in range(d)] for i in range(d)]
        if all(rows[i][i] == 1 for i in range(d)) and all(
            rows[i][j] == 0 for i in range(d) for j in range(i + 1, d)
        ):
            return perm
    return None
