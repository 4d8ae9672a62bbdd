"""
Common tiles for several lattices of equal volume.

Floating-point lattices (rotations) live here. The common-tile builder works
on a dyadic grid over each fundamental domain A_j·[0,1)^d: pieces are
lattice-0 grid cells moved by lattice-0 vectors, and a piece claims the
lattice-j cells whose centers it contains. Leftovers are exact cell counts.
"""
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Tuple

import numpy as np
from scipy.spatial import cKDTree
from scipy.special import gamma as gamma_function

from tilings.errors import CapacityError, DomainError, PreconditionError
from tilings.exact import Lattice, dual_lattice
from tilings.verify import TranslationSet, axis_period, verify_tiling_exact
from utils.config import get_setting
from utils.formatting import rational_to_str
from utils.logging import debug_log
from utils.parallel import chunked, parallel_map

VOLUME_TOL = 1e-12
ALIGN_TRIES = 32
CLAIM_CHUNK = 4096
BUILD_DIRECT_SUM_BOUND = 10


@dataclass(frozen=True, eq=False)
class RealLattice:
    """Lattice A·Z^d with a floating-point basis (columns generate)."""
    basis: np.ndarray

    def __post_init__(self):
        basis = np.atleast_2d(np.asarray(self.basis, dtype=float))
        if basis.shape[0] != basis.shape[1]:
            raise DomainError("lattice basis must be square")
        if abs(np.linalg.det(basis)) < VOLUME_TOL:
            raise DomainError("lattice basis is singular")
        object.__setattr__(self, 'basis', basis)
        object.__setattr__(self, 'inverse', np.linalg.inv(basis))

    @classmethod
    def from_exact(cls, lattice):
        if lattice.is_translated:
            raise DomainError("only lattices without offset convert to RealLattice")
        return cls(lattice.basis.to_float())

    @classmethod
    def integer(cls, dim):
        return cls(np.eye(dim))

    @classmethod
    def rotation(cls, theta, scale=1.0):
        """The planar lattice scale·R_θ Z²."""
        c, s = math.cos(theta), math.sin(theta)
        return cls(scale * np.array([[c, -s], [s, c]]))

    @property
    def dim(self):
        return self.basis.shape[0]

    @property
    def volume(self):
        return float(abs(np.linalg.det(self.basis)))

    def dual(self):
        return RealLattice(self.inverse.T)

    def coefficient_box(self, lo, hi):
        reach = np.abs(self.inverse) @ np.maximum(np.abs(lo), np.abs(hi))
        return np.floor(-reach).astype(np.int64), np.ceil(reach).astype(np.int64)

    def points_in_box(self, lo, hi, cap=None):
        """Points and coefficient vectors inside [lo, hi]."""
        lo, hi = np.asarray(lo, dtype=float), np.asarray(hi, dtype=float)
        cap = cap or get_setting('enumeration_cap')
        low, high = self.coefficient_box(lo, hi)
        count = int(np.prod(high - low + 1))
        if count > cap:
            raise CapacityError(f"box enumeration needs {count} candidates", cap)
        axes = [np.arange(a, b + 1) for a, b in zip(low, high)]
        coeffs = np.stack(np.meshgrid(*axes, indexing='ij'), axis=-1).reshape(-1, self.dim)
        points = coeffs @ self.basis.T
        inside = np.all((points >= lo) & (points <= hi), axis=1)
        return points[inside], coeffs[inside]

    def points_in_ball(self, center, radius, min_norm=0.0, cap=None):
        """
        Points λ with min_norm ≤ |λ − center| ≤ radius, ordered by distance
        and then lexicographically by coefficients.
        """
        center = np.asarray(center, dtype=float)
        points, coeffs = self.points_in_box(center - radius, center + radius, cap)
        dist = np.linalg.norm(points - center, axis=1)
        keep = (dist <= radius) & (dist >= min_norm)
        points, coeffs, dist = points[keep], coeffs[keep], dist[keep]
        order = np.lexsort(tuple(coeffs[:, j] for j in reversed(range(self.dim))) + (np.round(dist, 12),))
        return points[order], coeffs[order]

    def reduce(self, x):
        """x − A·floor(A^{-1}x), into the fundamental domain A·[0,1)^d."""
        x = np.atleast_2d(np.asarray(x, dtype=float))
        return x - np.floor(x @ self.inverse.T) @ self.basis.T

    def nearest(self, x):
        """Nearest lattice point to each row of x (search around the rounded coefficients)."""
        x = np.atleast_2d(np.asarray(x, dtype=float))
        base = np.floor(x @ self.inverse.T).astype(np.int64)
        best = None
        best_dist = None
        for shift in itertools.product((-1, 0, 1, 2), repeat=self.dim):
            coeffs = base + np.array(shift)
            points = coeffs @ self.basis.T
            dist = np.linalg.norm(points - x, axis=1)
            if best is None:
                best, best_dist = points, dist
            else:
                better = dist < best_dist - 1e-15
                best = np.where(better[:, None], points, best)
                best_dist = np.where(better, dist, best_dist)
        return best

    def to_dict(self):
        return {'basis': self.basis.tolist(), 'tolerance': VOLUME_TOL}


@dataclass(frozen=True)
class LatticeFamily:
    """Lattices sharing one covolume."""
    members: Tuple[RealLattice, ...]

    def __post_init__(self):
        members = tuple(m if isinstance(m, RealLattice) else RealLattice.from_exact(m) for m in self.members)
        if not members:
            raise DomainError("a lattice family needs at least one member")
        if len({m.dim for m in members}) != 1:
            raise DomainError("family members differ in dimension")
        volume = members[0].volume
        if any(abs(m.volume - volume) > VOLUME_TOL * max(1.0, volume) for m in members):
            raise DomainError("family members must share one volume")
        object.__setattr__(self, 'members', members)

    @property
    def dim(self):
        return self.members[0].dim

    @property
    def volume(self):
        return self.members[0].volume


def _coefficient_grid(dim, bound):
    axis = np.arange(-bound, bound + 1, dtype=np.int64)
    return np.stack(np.meshgrid(*([axis] * dim), indexing='ij'), axis=-1).reshape(-1, dim)


def _partial_sums(duals, bound):
    """All sums μ_1 + … + μ_k with μ_i from the bounded dual coefficient boxes."""
    grid = _coefficient_grid(duals[0].dim, bound)
    sums = grid @ duals[0].basis.T
    coeffs = grid[:, None, :]
    for dual in duals[1:]:
        points = grid @ dual.basis.T
        sums = (sums[:, None, :] + points[None, :, :]).reshape(-1, dual.dim)
        coeffs = np.concatenate([
            np.repeat(coeffs, grid.shape[0], axis=0),
            np.tile(grid, (coeffs.shape[0], 1))[:, None, :],
        ], axis=1)
    return sums, coeffs


def check_direct_sum(family, bound=None, tol=None):
    """
    Search for a nontrivial relation μ_0 + ⋯ + μ_n ≈ 0 with μ_j in the dual
    lattices and coefficients bounded by `bound`, meeting in the middle.
    No witness is a bounded certificate, not a proof.
    """
    bound = bound or get_setting('direct_sum_bound')
    tol = tol if tol is not None else get_setting('tol')
    members = family.members
    if len(members) == 1:
        return {'direct': True, 'relation': None, 'bound': bound, 'tolerance': tol}

    duals = [m.dual() for m in members]
    half = len(duals) // 2
    per_side = (2 * bound + 1) ** (family.dim * max(half, len(duals) - half))
    cap = get_setting('enumeration_cap')
    if per_side > cap:
        raise CapacityError(f"direct-sum search needs {per_side} partial sums", cap)
    left, left_coeffs = _partial_sums(duals[:half], bound)
    right, right_coeffs = _partial_sums(duals[half:], bound)

    tree = cKDTree(right)
    matches = tree.query_ball_point(-left, r=tol)
    best = None
    for i, hits in enumerate(matches):
        for j in hits:
            coeffs = np.concatenate([left_coeffs[i], right_coeffs[j]], axis=0)
            if not coeffs.any():
                continue
            key = (int(np.abs(coeffs).max()), tuple(coeffs.ravel().tolist()))
            if best is None or key < best[0]:
                best = (key, coeffs, float(np.linalg.norm(left[i] + right[j])))
    if best is None:
        debug_log(f"No dual relation within bound {bound}", "DEBUG", "multilattice")
        return {'direct': True, 'relation': None, 'bound': bound, 'tolerance': tol}
    relation = {'coefficients': best[1].tolist(), 'residual': best[2]}
    debug_log(f"Dual relation found: {relation['coefficients']}", "DEBUG", "multilattice")
    return {'direct': False, 'relation': relation, 'bound': bound, 'tolerance': tol}


@dataclass(frozen=True)
class AlignmentResult:
    points: Tuple[Tuple[float, ...], ...]
    misalignment: float

    def to_dict(self):
        return {'points': [list(p) for p in self.points], 'misalignment': self.misalignment,
                'tolerance': 1e-12}


def _pairwise_spread(residuals):
    """max_{i,j} |y_i − y_j| for an (n, m, d) array of residuals."""
    diff = residuals[:, :, None, :] - residuals[:, None, :, :]
    return np.linalg.norm(diff, axis=-1).max(axis=(1, 2))


def property_a_align(family, targets, eps, search_radius, min_norm=0.0):
    """
    Choose λ_j ∈ Λ_j with every x_j − λ_j within eps of each other.

    Candidates λ_0 come from the ball of radius search_radius (outside
    min_norm); every other λ_j is the nearest point of Λ_j that lines up
    with x_0 − λ_0. Returns None when the best spread exceeds eps.
    """
    if eps < 0:
        raise DomainError("eps must be non-negative")
    targets = np.atleast_2d(np.asarray(targets, dtype=float))
    members = family.members
    if targets.shape != (len(members), family.dim):
        raise DomainError("one target per family member is required")
    candidates, _ = members[0].points_in_ball(np.zeros(family.dim), search_radius, min_norm)
    if candidates.shape[0] == 0:
        return None
    anchors = targets[0] - candidates
    chosen = [candidates]
    for j, member in enumerate(members[1:], start=1):
        chosen.append(member.nearest(targets[j] - anchors))
    lambdas = np.stack(chosen, axis=1)
    residuals = targets[None, :, :] - lambdas
    spread = _pairwise_spread(residuals)
    best = int(np.argmin(spread))
    if spread[best] > eps:
        return None
    return AlignmentResult(tuple(tuple(float(v) for v in p) for p in lambdas[best]), float(spread[best]))


@dataclass
class RegionBuilder:
    """
    State of the common-tile construction: accepted pieces (a lattice-0
    cell index plus a lattice-0 translation), per-lattice claimed-cell
    masks and the iteration log.
    """
    family: LatticeFamily
    grid_exponent: int
    pieces: list = field(default_factory=list)
    claimed: list = field(default_factory=list)
    log: list = field(default_factory=list)

    @property
    def cells_per_axis(self):
        return 2 ** self.grid_exponent

    @property
    def total_cells(self):
        return self.cells_per_axis ** self.family.dim

    def coverage(self):
        return [float(mask.sum()) / self.total_cells for mask in self.claimed]

    def leftover_measures(self):
        return [self.family.volume * (1.0 - c) for c in self.coverage()]

    def contains(self, points):
        """Membership of float points in the union of accepted pieces."""
        points = np.atleast_2d(np.asarray(points, dtype=float))
        base = self.family.members[0]
        u = points @ base.inverse.T
        whole = np.floor(u).astype(np.int64)
        cell = np.floor((u - whole) * self.cells_per_axis).astype(np.int64)
        ids = np.ravel_multi_index(tuple(cell.T), (self.cells_per_axis,) * self.family.dim)
        lookup = {piece[0]: piece[1] for piece in self.pieces}
        return np.array([lookup.get(int(i)) == tuple(w) for i, w in zip(ids, whole.tolist())], dtype=bool)

    def values(self, points):
        return self.contains(points).astype(float)

    def to_dict(self, limit=32):
        return {
            'grid_exponent': self.grid_exponent,
            'pieces': len(self.pieces),
            'coverage': self.coverage(),
            'leftover_measures': self.leftover_measures(),
            'iterations': self.log,
            'pieces_head': [{'cell': c, 'shift': list(m)} for c, m in self.pieces[:limit]],
            'tolerance': 1.0 / self.total_cells,
        }


def _cell_centers(grid_exponent, dim):
    n = 2 ** grid_exponent
    idx = np.stack(np.meshgrid(*([np.arange(n)] * dim), indexing='ij'), axis=-1).reshape(-1, dim)
    return idx, (idx + 0.5) / n


def _claims(family, grid_exponent, cell_idx, shifts, reach=1):
    """
    Lattice-j cells whose centers lie in the piece C + t, for j ≥ 1.

    cell_idx: (n, d) lattice-0 cell indices; shifts: (n, d) real translations.
    Returns a list over j of (n, (2·reach+1)^d) arrays of claimed cell ids, −1
    where a neighbouring center falls outside the piece.
    """
    n_axis = 2 ** grid_exponent
    d = family.dim
    base = family.members[0]
    centers = ((cell_idx + 0.5) / n_axis) @ base.basis.T + shifts
    offsets = np.array(list(itertools.product(range(-reach, reach + 1), repeat=d)), dtype=np.int64)
    result = []
    for member in family.members[1:]:
        u = centers @ member.inverse.T * n_axis
        aligned = np.floor(u).astype(np.int64)
        neighbours = aligned[:, None, :] + offsets[None, :, :]
        points = (neighbours + 0.5) / n_axis @ member.basis.T
        back = (points - shifts[:, None, :]) @ base.inverse.T * n_axis
        inside = np.all(np.floor(back).astype(np.int64) == cell_idx[:, None, :], axis=-1)
        ids = np.ravel_multi_index(tuple(np.mod(neighbours, n_axis).reshape(-1, d).T), (n_axis,) * d)
        ids = ids.reshape(neighbours.shape[:2])
        result.append(np.where(inside, ids, -1))
    return result


def default_epsilon(k, grid_exponent):
    """ε_K = max(2^{−g+2}, 1/(4K)), in grid-cell units."""
    return max(2.0 ** (2 - grid_exponent), get_setting('tile_epsilon_scale') / k)


def default_search_radius(k, r1):
    return r1 * get_setting('tile_radius_step') * k


def default_min_norm(k, r1):
    """The previous round's search radius, so every round draws fresh translations."""
    return default_search_radius(k - 1, r1)


def _as_schedule(value, name):
    if value is None or callable(value):
        return value
    if isinstance(value, (int, float)):
        values = [float(value)]
    else:
        values = [float(v) for v in value]
    if not values or any(v < 0 for v in values):
        raise DomainError(f"{name} schedule needs non-negative values")
    # the last value repeats for later rounds
    return lambda k, _: values[min(k, len(values)) - 1]


@dataclass(frozen=True)
class TileSchedule:
    """
    Per-round tunables of the common-tile builder, each a callable of the
    round K (from 1) and a scale: ε gets the grid exponent, the radii get
    r1, the radius whose ball holds the requested candidate count. A number
    is used for every round; a list gives one value per round and its last
    entry repeats.
    """
    epsilon: object = None
    search_radius: object = None
    min_norm: object = None

    def __post_init__(self):
        object.__setattr__(self, 'epsilon', _as_schedule(self.epsilon, 'epsilon') or default_epsilon)
        object.__setattr__(self, 'search_radius',
                           _as_schedule(self.search_radius, 'search_radius') or default_search_radius)
        object.__setattr__(self, 'min_norm', _as_schedule(self.min_norm, 'min_norm') or default_min_norm)

    def round(self, k, grid_exponent, r1):
        radius = float(self.search_radius(k, r1))
        floor = float(self.min_norm(k, r1))
        if floor >= radius:
            raise DomainError(f"round {k}: min-norm floor {floor:.4g} is not below the search radius {radius:.4g}")
        return float(self.epsilon(k, grid_exponent)), radius, floor


def _unit_radius(base, candidates_wanted):
    """Radius of the ball holding about candidates_wanted points of the lattice."""
    d = base.dim
    unit_ball = math.pi ** (d / 2) / gamma_function(d / 2 + 1)
    return (candidates_wanted * base.volume / unit_ball) ** (1.0 / d)


def build_common_tile(family, iterations=6, grid_exponent=None, candidates=None, tries=ALIGN_TRIES,
                      schedule=None):
    """
    Grow a common packing region for every lattice of the family.

    Round K draws lattice-0 translations from the annulus between the
    schedule's min-norm floor and search radius. Every free lattice-0 cell C
    looks for a translation t that puts the center of C + t within ε_K cells
    of a lattice-j cell center for every j ≥ 1; the piece is accepted when
    all the cells it claims are free.

    Args:
        family (LatticeFamily): Lattices of equal volume
        iterations (int): Number of annuli to draw translations from
        grid_exponent (int): 2^g cells per axis on each fundamental domain
        candidates (int): Translations in the first round's ball (default 2^{gd})
        tries (int): Nearest aligned translations tried per cell
        schedule (TileSchedule): ε, search radius and min-norm floor per round

    Returns:
        RegionBuilder
    """
    g = grid_exponent if grid_exponent is not None else get_setting('grid_exponent')
    d = family.dim
    builder = RegionBuilder(family, g)
    builder.claimed = [np.zeros(builder.total_cells, dtype=bool) for _ in family.members]
    cell_idx, _ = _cell_centers(g, d)

    if len(family.members) == 1:
        builder.pieces = [(i, (0,) * d) for i in range(builder.total_cells)]
        builder.claimed[0][:] = True
        builder.log.append({'K': 1, 'leftover_measures': builder.leftover_measures(), 'epsilon': 0.0,
                            'cubes_placed': builder.total_cells, 'radius': 0.0})
        return builder

    direct = check_direct_sum(family, bound=min(get_setting('direct_sum_bound'), BUILD_DIRECT_SUM_BOUND))
    if not direct['direct']:
        raise PreconditionError(f"dual lattices are not a direct sum: {direct['relation']}")

    base = family.members[0]
    others = family.members[1:]
    n_axis = builder.cells_per_axis
    schedule = schedule or TileSchedule()
    candidates = candidates or builder.total_cells
    r1 = _unit_radius(base, candidates)
    cap = get_setting('enumeration_cap')

    for k in range(1, iterations + 1):
        free_cells = np.flatnonzero(~builder.claimed[0])
        if free_cells.size == 0:
            break
        eps_cells, radius, floor = schedule.round(k, g, r1)
        shifts, coeffs = base.points_in_ball(np.zeros(d), radius, floor, cap)
        if shifts.shape[0] == 0:
            debug_log(f"Iteration {k}: no translations between {floor:.4g} and {radius:.4g}", "WARNING",
                      "multilattice")
            builder.log.append({'K': k, 'leftover_measures': builder.leftover_measures(), 'epsilon': eps_cells,
                                'cubes_placed': 0, 'radius': radius, 'floor': floor, 'candidates': 0})
            continue
        # fractional position of each translation inside a lattice-j cell, on the torus
        frac = np.concatenate([np.mod(shifts @ m.inverse.T * n_axis, 1.0) for m in others], axis=1)
        tree = cKDTree(frac, boxsize=1.0)

        cells = cell_idx[free_cells]
        centers = ((cells + 0.5) / n_axis) @ base.basis.T
        wanted = np.concatenate([np.mod(0.5 - centers @ m.inverse.T * n_axis, 1.0) for m in others], axis=1)
        dist, hits = tree.query(wanted, k=min(tries, shifts.shape[0]), distance_upper_bound=eps_cells)
        dist, hits = np.atleast_2d(dist), np.atleast_2d(hits)
        if dist.shape[0] != free_cells.size:
            dist, hits = dist.T, hits.T

        placed = 0
        for chunk in chunked(np.arange(free_cells.size), CLAIM_CHUNK):
            valid = hits[chunk] < shifts.shape[0]
            safe = np.where(valid, hits[chunk], 0)
            flat_cells = np.repeat(cells[chunk], safe.shape[1], axis=0)
            flat_shifts = shifts[safe.ravel()]
            claims = [c.reshape(len(chunk), safe.shape[1], -1).tolist()
                      for c in _claims(family, g, flat_cells, flat_shifts)]
            valid_rows = valid.tolist()
            safe_rows = safe.tolist()
            for row, position in enumerate(chunk):
                cell_id = int(free_cells[position])
                if builder.claimed[0][cell_id]:
                    continue
                for attempt, ok in enumerate(valid_rows[row]):
                    if not ok:
                        break
                    per_lattice = [[c for c in claims[j][row][attempt] if c >= 0] for j in range(len(others))]
                    if any(not ids for ids in per_lattice):
                        continue
                    if any(builder.claimed[j + 1][ids].any() for j, ids in enumerate(per_lattice)):
                        continue
                    builder.claimed[0][cell_id] = True
                    for j, ids in enumerate(per_lattice):
                        builder.claimed[j + 1][ids] = True
                    builder.pieces.append((cell_id, tuple(int(v) for v in coeffs[safe_rows[row][attempt]])))
                    placed += 1
                    break

        entry = {'K': k, 'leftover_measures': builder.leftover_measures(), 'epsilon': eps_cells,
                 'cubes_placed': placed, 'radius': radius, 'floor': floor, 'candidates': int(shifts.shape[0])}
        builder.log.append(entry)
        debug_log(f"Iteration {k}: placed {placed} pieces at ε={eps_cells:.4g}, coverage "
                  f"{', '.join(f'{c:.4f}' for c in builder.coverage())}", "INFO", "multilattice")
    return builder


def packing_violations(builder):
    """
    Recompute every piece's claims from geometry and count lattice cells
    claimed more than once (lattice 0 included).
    """
    if not builder.pieces:
        return 0
    d = builder.family.dim
    cells = np.array(np.unravel_index([p[0] for p in builder.pieces], (builder.cells_per_axis,) * d)).T
    whole = np.array([p[1] for p in builder.pieces], dtype=float)
    shifts = whole @ builder.family.members[0].basis.T
    violations = int((np.bincount([p[0] for p in builder.pieces], minlength=builder.total_cells) > 1).sum())
    for claims in _claims(builder.family, builder.grid_exponent, cells, shifts, reach=2):
        ids = claims[claims >= 0]
        violations += int((np.bincount(ids, minlength=builder.total_cells) > 1).sum())
    return violations


PARITY_TABLE_CLASSES = ((1, 0), (0, 1), (1, 1))


def commensurable_triple():
    """2Z × Z, Z × 2Z and {(k, l) : k ≡ l mod 2}."""
    return (
        Lattice.from_generators([(2, 0), (0, 1)]),
        Lattice.from_generators([(1, 0), (0, 2)]),
        Lattice.from_generators([(1, 1), (2, 0)]),
    )


def three_lattice_obstruction(lattices=None, window=10):
    """
    Certify that index-2 sublattices of Z² whose union is Z² have no common
    tile.

    A common tile Ω would tile each Λ_i at level 1, so Ω meets every coset
    of Λ_i once; as every nonzero class of Z²/2Z² lies in exactly one
    member, two points of Ω differing by a vector of that class contradict
    the tiling by that member. Families outside this pattern are reported
    inapplicable, never as having a common tile.
    """
    lattices = tuple(lattices) if lattices is not None else commensurable_triple()

    def inapplicable(reason):
        debug_log(f"Obstruction inapplicable: {reason}", "DEBUG", "multilattice")
        return {'status': 'inapplicable', 'certified': False, 'reason': reason,
                'members': [m.to_dict() for m in lattices]}

    if any(m.dim != 2 for m in lattices):
        return inapplicable("members must be planar lattices")
    if any(m.is_translated for m in lattices):
        return inapplicable("a member is translated, so it is not a subgroup")
    if any(v.denominator != 1 for m in lattices for row in m.basis.rows for v in row):
        return inapplicable("a member is not a sublattice of Z²")
    indices = [abs(m.determinant) for m in lattices]
    if any(i != 2 for i in indices):
        return inapplicable(f"member indices are {[rational_to_str(i) for i in indices]}, not all 2")

    uncovered = None
    checked = 0
    for x in range(-window, window + 1):
        for y in range(-window, window + 1):
            checked += 1
            if not any(m.contains((x, y)) for m in lattices):
                uncovered = (x, y)
                break
        if uncovered:
            break
    if uncovered:
        return inapplicable(f"({uncovered[0]}, {uncovered[1]}) lies in no member")

    table = {}
    for cls in PARITY_TABLE_CLASSES:
        owners = [i for i, m in enumerate(lattices) if m.contains(cls)]
        table[f"({cls[0]},{cls[1]})"] = owners
    if any(len(owners) != 1 for owners in table.values()):
        return inapplicable("parity classes are not split one per member")

    debug_log("Three-lattice obstruction certified", "SUCCESS", "multilattice")
    return {
        'status': 'certified',
        'certified': True,
        'verdict': 'no common tile',
        'cover_window': [-window, window],
        'points_checked': checked,
        'indices': [rational_to_str(i) for i in indices],
        'class_table': {k: v[0] for k, v in table.items()},
        'argument': ("each member contains 2Z² and exactly one nonzero class of Z²/2Z²; "
                     "a common tile meets each coset of every member once, which forces "
                     "two of its points to differ by a vector of the class owned by a member"),
        'members': [m.to_dict() for m in lattices],
    }


def _bump(points, center, radius):
    r2 = np.sum(((points - center) / radius) ** 2, axis=1)
    out = np.zeros(points.shape[0])
    inside = r2 < 1.0
    out[inside] = np.exp(-1.0 / (1.0 - r2[inside]))
    return out


def default_test_functions(tile, lattice):
    """Two bumps: one inside a single cell, one straddling two cells."""
    lo, hi = tile.bounding_box()
    lo = np.array([float(v) for v in lo])
    hi = np.array([float(v) for v in hi])
    width = hi - lo
    step = lattice.basis.to_float()[:, 0]
    return [
        {'center': (lo + width / 2).tolist(), 'radius': float(width.min()) * 0.4},
        {'center': (lo + width / 2 + step / 2).tolist(), 'radius': float(width.min()) * 0.4},
    ]


def gabor_frame_check(k_lattice, l_lattice, tile, test_functions=None, resolution=32, tol=1e-6):
    """
    Frame identity Σ_{κ,λ} |⟨f, g(· − κ) e^{2πi⟨λ,·⟩}⟩|² = ‖f‖² for
    g = |E|^{−1/2} χ_E.

    Inner products use midpoint quadrature with step h_j = 1/(resolution·p_j),
    p_j the period of L along axis j, so the frequencies of L taken modulo
    the aliasing lattice diag(1/h)Z^d are a finite complete system. The
    energy outside the central half of that system is reported as the
    truncation-tail estimate.
    """
    product = k_lattice.density * l_lattice.density
    if product != 1:
        raise PreconditionError(f"density product is {rational_to_str(product)}, not 1")
    if tile.dim != k_lattice.dim or tile.dim != l_lattice.dim:
        raise DomainError("tile and lattice dimensions differ")
    for lattice in (k_lattice, dual_lattice(l_lattice)):
        if not verify_tiling_exact(tile, TranslationSet.of_lattice(lattice)).passed:
            raise PreconditionError("the window function must tile K and the dual of L")

    d = tile.dim
    periods = [axis_period(l_lattice.basis, j) for j in range(d)]
    alias = [resolution * p for p in periods]
    h = np.array([float(1 / a) for a in alias])
    lo, hi = tile.bounding_box()
    counts = [math.ceil((hi[j] - lo[j]) * alias[j]) for j in range(d)]
    axes = [float(lo[j]) + (np.arange(counts[j]) + 0.5) * h[j] for j in range(d)]
    grid = np.stack(np.meshgrid(*axes, indexing='ij'), axis=-1).reshape(-1, d)
    grid = grid[tile.values(grid) > 0]

    freq_lo = [-a / 2 for a in alias]
    freq_hi = [a / 2 for a in alias]
    frequencies = np.array([[float(v) for v in p] for p in TranslationSet.of_lattice(l_lattice).points_in_box(freq_lo, freq_hi)
                            if all(p[j] < freq_hi[j] for j in range(d))])
    central = np.all(np.abs(frequencies) < np.array([float(a) / 4 for a in alias]), axis=1)
    cell = float(np.prod(h))
    norm_g = 1.0 / math.sqrt(float(tile.measure))

    test_functions = test_functions or default_test_functions(tile, k_lattice)
    results = []
    for bump in test_functions:
        center = np.asarray(bump['center'], dtype=float)
        radius = float(bump['radius'])
        reach_lo = [Fraction(math.floor(v)) for v in center - radius - np.array([float(v) for v in hi])]
        reach_hi = [Fraction(math.ceil(v)) for v in center + radius - np.array([float(v) for v in lo])]
        kappas = TranslationSet.of_lattice(k_lattice).points_in_box(reach_lo, reach_hi)

        def frame_energy(kappa):
            points = grid + np.array([float(v) for v in kappa])
            values = _bump(points, center, radius)
            if not values.any():
                return 0.0, 0.0, 0.0
            energy = np.zeros(frequencies.shape[0])
            for block in chunked(np.arange(frequencies.shape[0]), CLAIM_CHUNK):
                phases = np.exp(-2j * np.pi * (points @ frequencies[block].T))
                energy[block] = np.abs(norm_g * cell * (values @ phases)) ** 2
            return float(energy.sum()), float(energy[~central].sum()), float(np.sum(values ** 2) * cell)

        parts = parallel_map(frame_energy, kappas, "gabor")
        frame_sum = math.fsum(p[0] for p in parts)
        tail = math.fsum(p[1] for p in parts)
        norm2 = math.fsum(p[2] for p in parts)
        residual = abs(frame_sum - norm2)
        results.append({
            'center': center.tolist(), 'radius': radius, 'norm2': norm2, 'frame_sum': frame_sum,
            'residual': residual, 'tail_estimate': tail, 'tolerance': tol,
            'passed': residual < tol * max(1.0, norm2), 'translates': len(kappas),
        })
    passed = all(r['passed'] for r in results)
    debug_log(f"Gabor frame check {'passes' if passed else 'fails'} on {len(results)} test functions",
              "DEBUG", "multilattice")
    return {
        'density_product': rational_to_str(product),
        'passed': passed,
        'frequencies': int(frequencies.shape[0]),
        'grid_points': int(grid.shape[0]),
        'residuals': results,
    }
