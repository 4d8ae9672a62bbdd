"""
Command pages for spectral checks: cube spectra, lattice spectra, the
packing-transfer harness, the rigid-motion counterexample and the disk
certificate.
"""
from pages.inputs import parse_lattice, parse_tile, parse_tset
from tilings.errors import DomainError
from tilings.fourier import J1_FIRST_ZERO_BRACKET
from tilings.spectra import (
    FunctionTile, cube_spectrum_iff_tiling, disk_certificate, lattice_spectrum_check,
    packing_transfer_harness, rigid_motion_counterexample,
)

DEFAULT_TRANSFER_TILE = [{'corner': ['0'], 'widths': ['1']}]
DEFAULT_TRANSFER_FUNCTION = {'kind': 'sinc2'}
DEFAULT_TRANSFER_TSET = {'kind': 'lattice', 'lattice': {'basis': [['1']]}}


def _whole(job, name, default=None, key=None):
    value = job.rational(name, default, key)
    if value.denominator != 1 or value < 1:
        raise DomainError(f"{name} must be a positive integer here, got {value}")
    return int(value)


def cube_spectrum_page(job):
    tset = parse_tset(job.required('tset'))
    radius = _whole(job, 'radius', default=3)
    samples = job.integer('samples', default=1024)
    tail = job.integer('tail', default=200)
    seed = job.integer('seed')
    result = cube_spectrum_iff_tiling(tset, radius, samples, tail, seed)
    return {'passed': result['agree'], **result}


def lattice_spectrum_page(job):
    tile = parse_tile(job.required('tile'))
    lattice = parse_lattice(job.required('lattice'))
    radius = _whole(job, 'radius')
    samples = job.integer('samples', default=512)
    result = lattice_spectrum_check(tile, lattice, radius, samples, job.integer('seed'), job.number('tol'))
    return {'passed': result['agree'], **result}


def packing_transfer_page(job):
    """f + T tiles iff g + T tiles, when both pack and ∫f = ∫g."""
    tile = parse_tile(job.optional('tile', DEFAULT_TRANSFER_TILE))
    tset = parse_tset(job.optional('tset', DEFAULT_TRANSFER_TSET))
    kernel = dict(job.optional('function', DEFAULT_TRANSFER_FUNCTION))
    function = FunctionTile(kernel['kind'], dim=tset.dim, width=float(kernel.get('width', 1.0)),
                            height=float(kernel.get('height', 1.0)),
                            support_radius=float(kernel.get('support_radius', 2000.0)))
    window = job.window([[-4] * tset.dim, [4] * tset.dim])
    samples = job.integer('samples', default=1024)
    result = packing_transfer_harness(tile, function, tset, window, samples, job.integer('seed'))
    return {'passed': result['status'] == 'applied' and bool(result['agree']), **result}


def rigid_motion_page(job):
    resolution = job.integer('resolution', default=256)
    extent = job.rational('extent', default='7/2')
    half_plane = bool(job.optional('half_plane', False))
    result = rigid_motion_counterexample(resolution, extent, half_plane)
    passed = result['A_tiles'] and result['B_packs'] and not result['B_tiles']
    return {'passed': passed, **result}


def disk_certificate_page(job):
    bracket = tuple(float(v) for v in job.optional('bracket', list(J1_FIRST_ZERO_BRACKET)))
    certificate = disk_certificate(bracket)
    return {'passed': certificate.verdict, **certificate.to_dict()}


COMMANDS = {
    'cube-spectrum': cube_spectrum_page,
    'lattice-spectrum': lattice_spectrum_page,
    'packing-transfer': packing_transfer_page,
    'rigid-motion-demo': rigid_motion_page,
    'disk-certificate': disk_certificate_page,
}
