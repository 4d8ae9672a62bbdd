"""
Acceptance corpus: fixed JobSpecs with their expected exit codes.

Running the corpus twice must give identical result hashes; deploy_check.sh
compares two runs.
"""
import hashlib

from utils.formatting import canonical_json
from utils.logging import debug_log

UNIT_INTERVAL = [{'corner': ['0'], 'widths': ['1']}]
UNIT_SQUARE = [{'corner': ['0', '0'], 'widths': ['1', '1']}]
Z1 = {'basis': [['1']]}
Z2 = {'basis': [['1', '0'], ['0', '1']]}


def _lattice_tset(rows):
    return {'kind': 'lattice', 'lattice': {'basis': rows}}


def _job(command, expected, **params):
    return command, expected, {'command': command, 'params': params}


PUNCTURED_BLOCK = [[str(x), str(y)] for x in range(-3, 4) for y in range(-3, 4) if (x, y) != (1, 1)]


CORPUS = [
    ('notched-2d', *_job('notched', 0, delta=['1/2', '1/3'])),
    ('notched-3d', *_job('notched', 0, delta=['1/2', '1/3', '1/5'])),
    ('notched-degenerate', *_job('notched', 2, delta=['1', '1'])),
    ('extended-k1', *_job('extended-cube', 0, gamma=['1/2', '1/2', '1/2'], k=1)),
    ('extended-k3', *_job('extended-cube', 0, gamma=['1', '1', '1'], k=3)),
    ('extended-even-k', *_job('extended-cube', 2, gamma=['1/2', '1/2', '1/2'], k=2)),
    ('cyclic-3d', *_job('cyclic-variants', 0, delta=['1/2', '1/3', '1/5'])),
    ('ap-union-tiles', *_job('verify-tiling', 0,
                             tile=[{'corner': ['0'], 'widths': ['1/2']}, {'corner': ['1'], 'widths': ['1/2']}],
                             tset={'kind': 'ap_union', 'progressions': [['2', '0'], ['2', '1/2']]})),
    ('ap-union-overlaps', *_job('verify-tiling', 1,
                                tile=[{'corner': ['0'], 'widths': ['1/2']}, {'corner': ['1'], 'widths': ['1/2']}],
                                tset={'kind': 'ap_union', 'progressions': [['2', '0'], ['2', '3/4']]})),
    ('cube-stretched-lattice', *_job('verify-tiling', 1, tile=UNIT_SQUARE,
                                     tset=_lattice_tset([['3/2', '0'], ['0', '1']]))),
    ('polygon-unit-square', *_job('verify-tiling', 0, polygon={'preset': 'unit-square'})),
    ('polygon-rational-hexagon', *_job('verify-tiling', 0, polygon={'preset': 'rational-hexagon'})),
    ('polygon-regular-hexagon', *_job('verify-tiling', 0, polygon={'preset': 'regular-hexagon'})),
    ('polygon-square-stretched', *_job('verify-tiling', 1, polygon={'preset': 'unit-square'},
                                       tset=_lattice_tset([['3/2', '0'], ['0', '1']]))),
    ('packing-sparse', *_job('verify-packing', 0, tile=UNIT_SQUARE,
                             tset=_lattice_tset([['2', '0'], ['0', '1']]))),
    ('zero-grid', *_job('zero-grid', 0, edges=[{'edge': ['1', '0'], 'separation': ['0', '1']}])),
    ('hajos-holds', *_job('hajos', 0, matrix=[['1', '0'], ['1/2', '1']])),
    ('hajos-fails', *_job('hajos', 1, matrix=[['1', '1/2'], ['1/3', '7/6']])),
    ('minkowski', *_job('minkowski', 0, matrix=[['1', '0'], ['1/2', '1']])),
    ('multitile-rotation', *_job('multitile-build', 0, lattices=[Z2, {'rotation': 1.0}], grid_exponent=6)),
    ('direct-sum-irrational', *_job('direct-sum-check', 0, lattices=[Z2, {'rotation': 1.0}])),
    ('direct-sum-rational', *_job('direct-sum-check', 1, lattices=[Z2, {'rotation': 0.6435011087932844}])),
    ('three-lattice', *_job('three-lattice-obstruction', 0)),
    ('soft-tile', *_job('soft-tile', 0)),
    ('steinhaus-3d', *_job('steinhaus-certify', 0, form='paper3d', range=50)),
    ('steinhaus-4d', *_job('steinhaus-certify', 0, form='paper4d')),
    ('steinhaus-search', *_job('steinhaus-search', 0, range=20)),
    ('steinhaus-radii', *_job('steinhaus-radii', 0, dim=3, radius_max='3')),
    ('cube-spectrum-lattice', *_job('cube-spectrum', 0, tset=_lattice_tset([['1', '0'], ['0', '1']]))),
    ('cube-spectrum-columns', *_job('cube-spectrum', 0,
                                    tset={'kind': 'shifted_columns', 'shifts': {'0': '1/2', '1': '1/3'}})),
    ('cube-spectrum-dense', *_job('cube-spectrum', 0, tset=_lattice_tset([['1/2', '0'], ['0', '1']]))),
    ('cube-spectrum-four-columns', *_job('cube-spectrum', 0, tset={
        'kind': 'shifted_columns', 'shifts': {'0': '1/2', '1': '1/3', '2': '1/5', '3': '3/4'}})),
    ('cube-spectrum-half-shift', *_job('cube-spectrum', 0, tset={
        'kind': 'lattice_union', 'lattices': [Z2, {**Z2, 'offset': ['1/2', '1/2']}]})),
    ('cube-spectrum-punctured', *_job('cube-spectrum', 0, tset={'kind': 'patch', 'points': PUNCTURED_BLOCK})),
    ('lattice-spectrum', *_job('lattice-spectrum', 0, tile=UNIT_SQUARE, lattice=Z2)),
    ('packing-transfer', *_job('packing-transfer', 0)),
    ('rigid-motion', *_job('rigid-motion-demo', 0, resolution=128)),
    ('gabor-unit', *_job('gabor-check', 0, k_lattice=Z1, l_lattice=Z1, tile=UNIT_INTERVAL)),
    ('gabor-density-two', *_job('gabor-check', 2, k_lattice=Z1, l_lattice={'basis': [['1/2']]},
                                tile=UNIT_INTERVAL)),
    ('disk-certificate', *_job('disk-certificate', 0)),
    ('report', *_job('report', 0)),
    ('unknown-param', *_job('notched', 2, delta=['1/2', '1/3'], colour='blue')),
]


def result_hash(envelope):
    """Hash of an envelope without its timing field."""
    if envelope is None:
        return None
    stable = {k: v for k, v in envelope.items() if k != 'timing_ms'}
    return hashlib.sha256(canonical_json(stable).encode("utf-8")).hexdigest()


def run_corpus(names=None):
    """
    Run every corpus case (or those named) and compare exit codes.

    Returns one row per case.
    """
    from utils.jobs import input_hash, run

    rows = []
    for name, command, expected, jobspec in CORPUS:
        if names and name not in names:
            continue
        outcome = run(jobspec)
        matched = outcome.exit_code == expected
        debug_log(f"{name}: exit {outcome.exit_code} (expected {expected})",
                  "SUCCESS" if matched else "ERROR", "corpus")
        rows.append({
            'name': name,
            'command': command,
            'expected': expected,
            'exit_code': outcome.exit_code,
            'matched': matched,
            'input_hash': input_hash(jobspec),
            'result_hash': result_hash(outcome.envelope),
        })
    matched = sum(r['matched'] for r in rows)
    debug_log(f"Corpus complete: {matched}/{len(rows)} cases matched",
              "SUCCESS" if matched == len(rows) else "WARNING", "corpus")
    return rows


def format_corpus_table(rows):
    """Fixed-width text table of corpus rows."""
    width = max([len(r['name']) for r in rows] + [4])
    lines = [f"{'case':<{width}}  exp  got  ok  result_hash"]
    for r in rows:
        digest = (r['result_hash'] or '-')[:16]
        lines.append(f"{r['name']:<{width}}  {r['expected']:>3}  {r['exit_code']:>3}  "
                     f"{'✅' if r['matched'] else '❌'}  {digest}")
    return "\n".join(lines)
