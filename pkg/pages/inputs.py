"""
Params parsing for command pages.

JobParams resolves each value (explicit params, then JobSpec overrides,
then the command default, then configuration) and records what it used,
so the envelope can echo a params document that reruns to the same result.
"""
from tilings.constructions import rational_hexagon, regular_hexagon, unit_square_polygon
from tilings.errors import DomainError
from tilings.exact import Lattice, Matrix, PointPatch, as_vector
from tilings.fourier import BoxUnionTile, EdgeMeasure
from tilings.multilattice import RealLattice
from tilings.steinhaus import QuadraticForm, form_3d, form_4d
from tilings.verify import Polygon2D, TranslationSet
from utils.config import resolve
from utils.formatting import as_rational, to_jsonable

OVERRIDE_KEYS = ('tol', 'radius', 'window', 'seed', 'grid_exponent')


class JobParams:
    """Params of one job plus the JobSpec-level overrides."""

    def __init__(self, params=None, overrides=None):
        self.raw = dict(params or {})
        self.overrides = {k: v for k, v in (overrides or {}).items() if k in OVERRIDE_KEYS}
        self.resolved = {}

    def _record(self, name, value):
        if value is not None:
            self.resolved[name] = to_jsonable(value)
        return value

    def value(self, name, default=None, key=None):
        """Resolved value; falls back to the configuration setting `key`."""
        return self._record(name, resolve(self.raw, self.overrides, name, key, default))

    def optional(self, name, default=None):
        """Explicit param or the default; never consults overrides or configuration."""
        value = self.raw.get(name, default)
        return self._record(name, value)

    def required(self, name):
        if name not in self.raw:
            raise DomainError(f"missing required param: {name}")
        return self._record(name, self.raw[name])

    def rational(self, name, default=None, key=None):
        return _rational(self.value(name, default, key), name)

    def integer(self, name, default=None, key=None):
        value = _rational(self.value(name, default, key), name)
        if value.denominator != 1:
            raise DomainError(f"{name} must be an integer, got {value}")
        return int(value)

    def number(self, name, default=None, key=None):
        return float(self.value(name, default, key))

    def window(self, default=None):
        if default is None and 'window' not in self.raw and 'window' not in self.overrides:
            return None
        value = resolve(self.raw, self.overrides, 'window', default=default)
        window = parse_window(value)
        self._record('window', [list(window[0]), list(window[1])])
        return window


def _rational(value, name):
    try:
        return as_rational(value)
    except (ValueError, ZeroDivisionError) as e:
        raise DomainError(f"{name}: {e}") from e


def parse_vector(data, name="vector"):
    try:
        return as_vector(data)
    except (ValueError, ZeroDivisionError) as e:
        raise DomainError(f"{name}: {e}") from e


def parse_matrix(rows):
    return Matrix(tuple(parse_vector(row, "matrix row") for row in rows))


def parse_window(data):
    lo, hi = parse_vector(data[0], "window"), parse_vector(data[1], "window")
    if len(lo) != len(hi):
        raise DomainError("window corners differ in dimension")
    if any(a >= b for a, b in zip(lo, hi)):
        raise DomainError("window must have positive extent on every axis")
    return lo, hi


def parse_lattice(data):
    offset = data.get('offset')
    return Lattice(parse_matrix(data['basis']), parse_vector(offset, "offset") if offset is not None else None)


def parse_real_lattice(data):
    if 'rotation' in data:
        return RealLattice.rotation(float(data['rotation']), float(data.get('scale', 1.0)))
    return RealLattice.from_exact(parse_lattice(data))


def parse_tile(data):
    return BoxUnionTile.from_dict(data)


def parse_tset(data):
    kind = data['kind']
    if kind == 'lattice':
        return TranslationSet.of_lattice(parse_lattice(data['lattice']))
    if kind == 'lattice_union':
        return TranslationSet.union(parse_lattice(m) for m in data['lattices'])
    if kind == 'ap_union':
        return TranslationSet.ap_union([parse_vector(pair, "progression") for pair in data['progressions']])
    if kind == 'shifted_columns':
        return TranslationSet.shifted_columns({int(m): _rational(s, "shift") for m, s in data['shifts'].items()})
    if kind == 'patch':
        return TranslationSet.of_patch(PointPatch.from_points([parse_vector(p, "point") for p in data['points']],
                                                              exact=True))
    raise DomainError(f"unknown translation set kind: {kind}")


def parse_edge(data):
    return EdgeMeasure(parse_vector(data['edge'], "edge"), parse_vector(data['separation'], "separation"),
                       parse_vector(data.get('center', (0, 0)), "center"))


def parse_form(data):
    if data == 'paper3d':
        return form_3d()
    if data == 'paper4d':
        return form_4d()
    return QuadraticForm(parse_matrix(data))


def parse_polygon(data, window=None):
    """
    (Polygon2D, default TranslationSet or None). The regular-hexagon preset
    carries its float lattice patch, enumerated three units past the window.
    """
    preset = data.get('preset')
    if preset is None:
        return Polygon2D(tuple(parse_vector(v, "vertex") for v in data['vertices'])), None
    if preset == 'unit-square':
        return unit_square_polygon(), TranslationSet.of_lattice(Lattice.integer(2))
    if preset == 'rational-hexagon':
        polygon, lattice = rational_hexagon()
        return polygon, TranslationSet.of_lattice(lattice)
    if preset == 'regular-hexagon':
        lo, hi = window
        padded = (tuple(v - 3 for v in lo), tuple(v + 3 for v in hi))
        polygon, patch = regular_hexagon(padded)
        return polygon, TranslationSet.of_patch(patch)
    raise DomainError(f"unknown polygon preset: {preset}")
