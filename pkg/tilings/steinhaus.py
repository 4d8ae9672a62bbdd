"""
Quadratic-form certificates for the Steinhaus problem.

A positive-definite form Q on Z^d whose values are all sums of d integer
squares, while det Q is not the square of an integer, rules out lattice
Steinhaus sets in dimension d. Here that condition is checked exhaustively
on finite boxes, backed by the classical sums-of-squares characterizations.
"""
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

import numpy as np
from sympy import factorint

from tilings.errors import CapacityError, DomainError, PreconditionError
from tilings.exact import Matrix
from utils.cache import cache
from utils.config import get_setting
from utils.formatting import rational_to_str
from utils.logging import debug_log
from utils.parallel import chunked, parallel_map

VERDICT = "no Steinhaus sets in dimension {d} (conditional on range-{n} evidence)"
BLOCK_ROWS = 8


def is_sum_of_three_squares(n):
    """False exactly for n = 4^ν(8k+7)."""
    n = int(n)
    if n < 0:
        raise DomainError("n must be non-negative")
    while n and n % 4 == 0:
        n //= 4
    return n % 8 != 7


def is_sum_of_two_squares(n):
    """Every prime ≡ 3 (mod 4) divides n to an even power."""
    n = int(n)
    if n < 0:
        raise DomainError("n must be non-negative")
    if n == 0:
        return True
    return all(e % 2 == 0 for p, e in factorint(n).items() if p % 4 == 3)


def _three_squares_mask(values):
    values = np.array(values, dtype=np.int64, copy=True)
    reducible = (values > 0) & (values % 4 == 0)
    while reducible.any():
        values[reducible] //= 4
        reducible = (values > 0) & (values % 4 == 0)
    return values % 8 != 7


def squares_table(limit, k):
    """Boolean table t with t[n] true iff n ≤ limit is a sum of k squares."""
    if limit < 0 or k < 1:
        raise DomainError("limit must be non-negative and k positive")
    key = f"squares_table_{limit}_{k}"

    def compute():
        roots = np.arange(math.isqrt(limit) + 1)
        squares = np.zeros(limit + 1, dtype=bool)
        squares[roots * roots] = True
        table = squares.copy()
        for _ in range(k - 1):
            grown = np.zeros_like(table)
            for r in roots:
                q = int(r * r)
                grown[q:] |= table[:limit + 1 - q]
            table = grown
        return table

    return cache.get_or_compute(key, compute)


def sum_of_squares_witness(n, d) -> Optional[Tuple[int, ...]]:
    """Lexicographically least nondecreasing d-tuple of squares summing to n."""
    n = int(n)
    if n < 0 or d < 1:
        raise DomainError("n must be non-negative and d positive")

    def search(rest, slots, floor):
        if slots == 1:
            r = math.isqrt(rest)
            return (r,) if r * r == rest and r >= floor else None
        a = floor
        while slots * a * a <= rest:
            found = search(rest - a * a, slots - 1, a)
            if found is not None:
                return (a,) + found
            a += 1
        return None

    return search(n, d, 0)


def _leading_minors(matrix):
    rows = matrix.rows
    return [Matrix(tuple(row[:k] for row in rows[:k])).det for k in range(1, matrix.dim + 1)]


@dataclass(frozen=True)
class QuadraticForm:
    """Q(x) = ⟨Bx, x⟩ with B symmetric positive definite and rational."""
    matrix: Matrix

    def __post_init__(self):
        matrix = self.matrix if isinstance(self.matrix, Matrix) else Matrix(self.matrix)
        if matrix != matrix.transpose():
            raise DomainError("quadratic form matrix must be symmetric")
        object.__setattr__(self, 'matrix', matrix)
        if not self.is_positive_definite():
            raise DomainError("quadratic form must be positive definite")

    @classmethod
    def diagonal(cls, coefficients):
        return cls(Matrix.diagonal(coefficients))

    @property
    def dim(self):
        return self.matrix.dim

    @property
    def determinant(self):
        return self.matrix.det

    def leading_minors(self):
        return _leading_minors(self.matrix)

    def is_positive_definite(self):
        return all(m > 0 for m in self.leading_minors())

    def is_integer_valued(self):
        """Integral diagonal and off-diagonal entries in (1/2)Z."""
        rows = self.matrix.rows
        return all(
            (rows[i][j] if i == j else 2 * rows[i][j]).denominator == 1
            for i in range(self.dim) for j in range(self.dim)
        )

    def value(self, x):
        x = [Fraction(v) for v in x]
        if len(x) != self.dim:
            raise DomainError("point and form dimensions differ")
        return sum((a * b for a, b in zip(self.matrix.apply(x), x)), Fraction(0))

    def values(self, points):
        """Exact integer values on integer points, vectorized (integer-valued forms only)."""
        scaled, denom = self.matrix.scaled_integer()
        points = np.asarray(points, dtype=np.int64)
        raw = np.einsum('ni,ij,nj->n', points, scaled.astype(np.int64), points)
        if np.any(raw % denom):
            raise PreconditionError("form is not integer-valued on Z^d")
        return raw // denom

    def transformed(self, unimodular):
        """U^T B U: the same form in another basis of Z^d."""
        return QuadraticForm(unimodular.transpose() @ self.matrix @ unimodular)

    def eigenvalues(self):
        return np.linalg.eigvalsh(self.matrix.to_float())

    def to_dict(self):
        return {'matrix': self.matrix.to_dict(), 'dim': self.dim,
                'determinant': rational_to_str(self.determinant)}


def form_3d():
    """2x² + 11y² + 6z²."""
    return QuadraticForm.diagonal([2, 11, 6])


def form_4d():
    """Σ x_i² + Σ_{i>j} x_i x_j, i.e. 1 on the diagonal and 1/2 off it."""
    half = Fraction(1, 2)
    return QuadraticForm(Matrix(tuple(tuple(Fraction(1) if i == j else half for j in range(4)) for i in range(4))))


def embed_form(form, dim):
    """Identity of size dim − form.dim in the top-left corner, the form bottom-right."""
    if dim < form.dim:
        raise DomainError("target dimension is smaller than the form")
    pad = dim - form.dim
    rows = []
    for i in range(dim):
        if i < pad:
            rows.append(tuple(Fraction(int(i == j)) for j in range(dim)))
        else:
            rows.append(tuple(Fraction(0) for _ in range(pad)) + form.matrix.rows[i - pad])
    return QuadraticForm(Matrix(tuple(rows)))


def form_value(form, x):
    return form.value(x)


def det_is_integer_square(form):
    det = form.determinant
    if det.denominator != 1 or det < 0:
        return False
    return math.isqrt(det.numerator) ** 2 == det.numerator


@dataclass(frozen=True)
class RepresentabilityReport:
    range_bound: int
    d_squares: int
    all_representable: bool
    counterexample: Optional[Tuple[Tuple[int, ...], int]]
    checked_count: int
    max_value: int
    cross_check_mismatches: int = 0

    def to_dict(self):
        data = {
            'range': self.range_bound,
            'd_squares': self.d_squares,
            'all_representable': self.all_representable,
            'checked_count': self.checked_count,
            'max_value': self.max_value,
            'counterexample': None,
        }
        if self.counterexample is not None:
            point, value = self.counterexample
            data['counterexample'] = {'x': list(point), 'value': value}
        if self.d_squares == 3:
            data['cross_check_mismatches'] = self.cross_check_mismatches
        return data


def _box_block(dim, bound, first_values):
    axis = np.arange(-bound, bound + 1, dtype=np.int64)
    grids = np.meshgrid(np.asarray(first_values, dtype=np.int64), *([axis] * (dim - 1)), indexing='ij')
    return np.stack(grids, axis=-1).reshape(-1, dim)


def verify_representability(form, d_squares, bound):
    """
    Check every value Q(x), ‖x‖∞ ≤ bound, is a sum of d_squares squares.

    The counterexample, when there is one, is the lexicographically first
    failing x. For d_squares = 3 the table oracle is cross-checked against
    the 4^ν(8k+7) characterization.
    """
    if not form.is_integer_valued():
        raise PreconditionError("form must be integer-valued on Z^d")
    if bound < 0 or d_squares < 1:
        raise DomainError("range must be non-negative and d_squares positive")
    dim = form.dim
    total = (2 * bound + 1) ** dim
    cap = get_setting('enumeration_cap')
    if total > cap:
        raise CapacityError(f"representability check needs {total} points", cap)

    corner = np.full(dim, bound, dtype=np.int64)
    max_value = int(form.values(np.diag(corner)).sum() + bound * bound * sum(
        abs(int(2 * form.matrix.rows[i][j])) for i in range(dim) for j in range(i + 1, dim)))
    table = squares_table(max_value, d_squares)

    def check(first_values):
        points = _box_block(dim, bound, first_values)
        values = form.values(points)
        good = table[values]
        mismatches = int(np.count_nonzero(_three_squares_mask(values) != good)) if d_squares == 3 else 0
        bad = np.flatnonzero(~good)
        witness = None
        if bad.size:
            i = int(bad[0])
            witness = (tuple(int(v) for v in points[i]), int(values[i]))
        return witness, int(points.shape[0]), mismatches

    blocks = chunked(list(range(-bound, bound + 1)), BLOCK_ROWS)
    results = parallel_map(check, blocks, "steinhaus")
    counterexample = next((r[0] for r in results if r[0] is not None), None)
    mismatches = sum(r[2] for r in results)
    if mismatches:
        debug_log(f"Three-squares characterization disagrees with the table on {mismatches} values",
                  "ERROR", "steinhaus")
    report = RepresentabilityReport(
        range_bound=bound, d_squares=d_squares, all_representable=counterexample is None,
        counterexample=counterexample, checked_count=sum(r[1] for r in results),
        max_value=max_value, cross_check_mismatches=mismatches,
    )
    debug_log(f"Representability by {d_squares} squares up to range {bound}: "
              f"{'all' if report.all_representable else 'counterexample ' + str(counterexample)}",
              "DEBUG", "steinhaus")
    return report


def residue_certificate(form, max_nu=2):
    """
    Prove Q never takes a value 4^ν(8k+7) for ν ≤ max_nu.

    Q(x + m·y) − Q(x) = m·2⟨Bx, y⟩ + m²Q(y) is divisible by m when 2B is
    integral, so Q mod 2^{2ν+3} is a function of x mod 2^{2ν+3} and the
    residue sweep is exhaustive.
    """
    if not form.is_integer_valued():
        raise PreconditionError("form must be integer-valued on Z^d")
    cap = get_setting('enumeration_cap')
    levels = []
    for nu in range(max_nu + 1):
        modulus = 2 ** (2 * nu + 3)
        count = modulus ** form.dim
        if count > cap:
            raise CapacityError(f"residue sweep for ν = {nu} needs {count} residues", cap)
        axis = np.arange(modulus, dtype=np.int64)
        points = np.stack(np.meshgrid(*([axis] * form.dim), indexing='ij'), axis=-1).reshape(-1, form.dim)
        residues = form.values(points) % modulus
        forbidden = 7 * 4 ** nu
        hits = np.flatnonzero(residues == forbidden)
        witness = tuple(int(v) for v in points[hits[0]]) if hits.size else None
        levels.append({'nu': nu, 'modulus': modulus, 'residues': count, 'avoided': witness is None,
                       'witness': list(witness) if witness else None})
    return {'max_nu': max_nu, 'certified': all(level['avoided'] for level in levels), 'levels': levels}


def steinhaus_lemma_check(form, d_squares=None, bound=None):
    """
    Combine representability on ‖x‖∞ ≤ bound with the determinant test.

    The verdict fires when every checked value is a sum of d squares and
    det Q is not an integer square.
    """
    d_squares = d_squares or form.dim
    bound = bound if bound is not None else get_setting('steinhaus_range')
    report = verify_representability(form, d_squares, bound)
    square = det_is_integer_square(form)
    fires = report.all_representable and not square
    eigenvalues = sorted(float(v) for v in form.eigenvalues())
    result = {
        'form': form.to_dict(),
        'representability': report.to_dict(),
        'determinant': rational_to_str(form.determinant),
        'det_is_integer_square': square,
        'leading_minors': [rational_to_str(m) for m in form.leading_minors()],
        'eigenvalues': eigenvalues,
        'verdict_fires': fires,
        'verdict': VERDICT.format(d=form.dim, n=bound) if fires else None,
    }
    if d_squares == 3 and form.dim == 3:
        result['residue_certificate'] = residue_certificate(form, max_nu=1)
    level = "SUCCESS" if fires else "DEBUG"
    debug_log(f"Steinhaus check for det {result['determinant']}: verdict "
              f"{'fires' if fires else 'does not fire'}", level, "steinhaus")
    return result


def _diagonal_candidates(coeff_bound):
    return [(a, b, c) for a in range(1, coeff_bound + 1)
            for b in range(a, coeff_bound + 1) for c in range(b, coeff_bound + 1)]


def _symmetric_candidates(coeff_bound):
    diag = range(1, coeff_bound + 1)
    off = [Fraction(k, 2) for k in range(-coeff_bound, coeff_bound + 1)]
    for a, b, c in itertools.product(diag, repeat=3):
        for p, q, r in itertools.product(off, repeat=3):
            yield ((a, p, q), (p, b, r), (q, r, c))


def search_forms_3d(coeff_bound=12, bound=30, diagonal=True):
    """
    Forms on Z³ passing the Steinhaus check at range `bound`.

    Diagonal forms (a, b, c) with a ≤ b ≤ c come back as coefficient triples
    in lexicographic order. With diagonal=False every positive-definite
    symmetric matrix with diagonal in [1, bound] and off-diagonal entries in
    (1/2)Z ∩ [−bound/2, bound/2] is tried; use a small coeff_bound there.
    """
    if coeff_bound < 1:
        return []
    if diagonal:
        candidates = [(coeffs, QuadraticForm.diagonal(coeffs)) for coeffs in _diagonal_candidates(coeff_bound)]
    else:
        candidates = []
        for rows in _symmetric_candidates(coeff_bound):
            matrix = Matrix(rows)
            if all(m > 0 for m in _leading_minors(matrix)):
                candidates.append((rows, QuadraticForm(matrix)))

    def screen(item):
        key, form = item
        if det_is_integer_square(form):
            return None
        if not residue_certificate(form, max_nu=0)['certified']:
            return None
        if not verify_representability(form, 3, bound).all_representable:
            return None
        return key

    found = [key for key in parallel_map(screen, candidates, "steinhaus") if key is not None]
    debug_log(f"Form search over {len(candidates)} candidates found {len(found)}", "INFO", "steinhaus")
    if diagonal:
        return found
    return [[[rational_to_str(v) for v in row] for row in rows] for rows in found]


def steinhaus_radii(dim, radius_max):
    """
    Radii √n ≤ radius_max with n > 0 a sum of dim squares, ascending.

    Returns (n, √n) pairs so callers keep the exact squared radius.
    """
    if dim not in (2, 3):
        raise DomainError("Steinhaus radii are generated for dimensions 2 and 3")
    if radius_max < 0:
        raise DomainError("radius_max must be non-negative")
    limit = math.floor(float(radius_max) ** 2 + 1e-9)
    table = squares_table(limit, dim)
    return [(int(n), math.sqrt(n)) for n in np.flatnonzero(table) if n > 0]


def two_squares_experiment(coeff_bound=20, bound=40):
    """
    Diagonal forms ax² + by², a ≤ b ≤ coeff_bound, whose values on
    ‖x‖∞ ≤ bound are all sums of two squares, with whether ab is a square.
    """
    passing = []
    for a in range(1, coeff_bound + 1):
        for b in range(a, coeff_bound + 1):
            if verify_representability(QuadraticForm.diagonal([a, b]), 2, bound).all_representable:
                passing.append({'form': [a, b], 'determinant': a * b,
                                'square': math.isqrt(a * b) ** 2 == a * b})
    return {
        'coeff_bound': coeff_bound,
        'range': bound,
        'passing': passing,
        'all_square': all(p['square'] for p in passing),
    }
