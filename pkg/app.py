"""
tilinglab command line: run one JobSpec, one subcommand, or the
acceptance corpus.

Results go to stdout, logs and error objects to stderr.
"""
import argparse
import json
import sys

from tilings import __version__
from utils.formatting import canonical_json
from utils.jobs import EXIT_FAIL, EXIT_INTERNAL, EXIT_INVALID, EXIT_PASS, build_jobspec, run
from utils.logging import debug_log, set_log_level

COMMAND_HELP = {
    'notched': "notched cube and its lattice, checked by both verifiers",
    'extended-cube': "cube with a box attached at a vertex (odd codimension)",
    'cyclic-variants': "notched-cube lattices for every d-cycle",
    'verify-tiling': "tiling verdict for a box-union tile or a polygon",
    'verify-packing': "packing verdict (no overlap of positive measure)",
    'zero-grid': "zero-line grids of edge-measure transforms",
    'hajos': "Hajós predicate next to the cube-tiling Fourier check",
    'minkowski': "Minkowski vector for a unimodular matrix",
    'multitile-build': "common tile for a family of lattices",
    'direct-sum-check': "whether the dual lattices form a direct sum",
    'three-lattice-obstruction': "index-2 sublattices of Z² with no common tile",
    'soft-tile': "convolution of single-lattice tiles",
    'steinhaus-certify': "Steinhaus certificate for a quadratic form",
    'steinhaus-search': "search for forms taking only sums of squares",
    'steinhaus-radii': "radii of lattice-point spheres",
    'cube-spectrum': "cube spectrum versus tiling for a translation set",
    'lattice-spectrum': "dual lattice as spectrum of a lattice tile",
    'packing-transfer': "tiling transfer between two packing functions",
    'rigid-motion-demo': "set tiling by rigid motions whose packing partner does not",
    'gabor-check': "Gabor frame identity for a tile window",
    'disk-certificate': "the disk has no spectrum",
    'report': "markdown report bundling three certificates",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _global_options(parser, suppress):
    default = (lambda value: argparse.SUPPRESS) if suppress else (lambda value: value)
    parser.add_argument('--format', choices=['json', 'text', 'markdown'], default=default('json'),
                        help="output format (default json)")
    parser.add_argument('--timing', action='store_true', default=default(False),
                        help="add timing_ms to the envelope")
    parser.add_argument('--quiet', action='store_true', default=default(False),
                        help="only log warnings and errors")


def _json_argument(text, what):
    """JSON text, or @path to read it from a file."""
    try:
        if text.startswith('@'):
            with open(text[1:], "r", encoding="utf-8") as f:
                return json.load(f)
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"{what}: {e}") from e


def build_parser():
    parser = _Parser(prog="tilinglab", description="Tilings and spectral sets, verified.")
    parser.add_argument('--version', action='version', version=f"tilinglab {__version__}")
    parser.add_argument('--corpus', action='store_true', help="run the acceptance corpus and exit")
    _global_options(parser, suppress=False)

    common = _Parser(add_help=False)
    _global_options(common, suppress=True)

    subparsers = parser.add_subparsers(dest='command', parser_class=_Parser)
    run_parser = subparsers.add_parser('run', parents=[common], help="run a JobSpec file ('-' for stdin)")
    run_parser.add_argument('jobspec')

    for command, text in COMMAND_HELP.items():
        sub = subparsers.add_parser(command, parents=[common], help=text)
        sub.add_argument('--params', help="params as JSON, or @file")
        sub.add_argument('--tol', type=float)
        sub.add_argument('--radius')
        sub.add_argument('--window', help="window as JSON [[lo...], [hi...]]")
        sub.add_argument('--seed', type=int)
        sub.add_argument('--grid-exponent', type=int)
    return parser


def _load_jobspec(path):
    if path == '-':
        try:
            return json.load(sys.stdin)
        except json.JSONDecodeError as e:
            raise UsageError(f"jobspec: {e}") from e
    return _json_argument(f"@{path}", "jobspec")


def _jobspec_from_args(args):
    if args.command == 'run':
        return _load_jobspec(args.jobspec)
    params = _json_argument(args.params, "--params") if args.params else {}
    window = _json_argument(args.window, "--window") if args.window else None
    radius = args.radius
    if radius is not None and radius.isdigit():
        radius = int(radius)
    return build_jobspec(args.command, params, tol=args.tol, radius=radius, window=window,
                         seed=args.seed, grid_exponent=args.grid_exponent)


def _print_error(error):
    print(canonical_json({'error': error}), file=sys.stderr)


def _render(envelope, fmt):
    # pages pulls in the whole library
    from pages import render_markdown, render_text
    if fmt == 'text':
        return render_text(envelope)
    if fmt == 'markdown':
        return render_markdown(envelope)
    return canonical_json(envelope, indent=2)


def _run_corpus(fmt):
    from utils.diagnostics import format_corpus_table, run_corpus
    rows = run_corpus()
    print(canonical_json(rows, indent=2) if fmt == 'json' else format_corpus_table(rows))
    return EXIT_PASS if all(r['matched'] for r in rows) else EXIT_FAIL


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.quiet:
            set_log_level("WARNING")
        if args.corpus:
            return _run_corpus(args.format)
        if args.command is None:
            raise UsageError("a subcommand or --corpus is required")
        jobspec = _jobspec_from_args(args)
    except UsageError as e:
        _print_error({'kind': 'usage', 'message': str(e)})
        return EXIT_INVALID

    try:
        outcome = run(jobspec, timing=args.timing)
        if outcome.error is not None:
            _print_error(outcome.error)
            return outcome.exit_code
        print(_render(outcome.envelope, args.format))
    except Exception as e:
        _print_error({'kind': 'internal', 'message': f"{type(e).__name__}: {e}"})
        return EXIT_INTERNAL
    debug_log(f"Exit code {outcome.exit_code}", "DEBUG", "cli")
    return outcome.exit_code


if __name__ == "__main__":
    sys.exit(main())
