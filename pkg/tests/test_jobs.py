"""
Tests for JobSpec validation, the result envelope, exit codes, the CLI
entry point, parameter resolution and the acceptance corpus.
"""
import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import io
import json
import unittest
from contextlib import redirect_stderr, redirect_stdout
from unittest.mock import patch

from jsonschema.exceptions import ValidationError

import app
from pages.inputs import JobParams
from tilings.errors import DomainError
from utils.config import get_setting, resolve
from utils.diagnostics import CORPUS, result_hash, run_corpus
from utils.jobs import (
    EXIT_FAIL, EXIT_INVALID, EXIT_PASS, build_jobspec, input_hash, run, validate_envelope, validate_jobspec,
)
from utils.logging import get_log_level, set_log_level

NOTCHED = {'command': 'notched', 'params': {'delta': ['1/2', '1/3'], 'radius': 6}}


def _main(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = app.main(argv)
    return code, out.getvalue(), err.getvalue()


class TestValidation(unittest.TestCase):
    """JobSpec schema checks"""

    def test_valid_jobspec(self):
        validate_jobspec(NOTCHED)

    def test_unknown_command(self):
        with self.assertRaises(ValidationError):
            validate_jobspec({'command': 'tile-everything', 'params': {}})

    def test_extra_param(self):
        with self.assertRaises(ValidationError):
            validate_jobspec({'command': 'notched', 'params': {'delta': ['1/2'], 'colour': 'blue'}})

    def test_missing_required_param(self):
        with self.assertRaises(ValidationError):
            validate_jobspec({'command': 'notched', 'params': {}})

    def test_schedule_params(self):
        lattices = [{'basis': [['1', '0'], ['0', '1']]}, {'rotation': 1.0}]
        validate_jobspec({'command': 'multitile-build',
                          'params': {'lattices': lattices, 'epsilon': [0.25, 0.1], 'min_norm': 0}})
        with self.assertRaises(ValidationError):
            validate_jobspec({'command': 'multitile-build', 'params': {'lattices': lattices, 'epsilon': -1}})

    def test_build_jobspec_drops_unset_overrides(self):
        doc = build_jobspec('notched', {'delta': ['1/2']}, tol=None, seed=3)
        self.assertEqual(doc, {'command': 'notched', 'params': {'delta': ['1/2']}, 'seed': 3})


class TestRun(unittest.TestCase):
    """Envelope contents and exit codes"""

    def test_notched_envelope(self):
        outcome = run(NOTCHED)
        self.assertEqual(outcome.exit_code, EXIT_PASS)
        self.assertTrue(outcome.passed)
        validate_envelope(outcome.envelope)
        self.assertRegex(outcome.envelope['input_hash'], r'^[0-9a-f]{64}$')
        self.assertEqual(outcome.envelope['input_hash'], input_hash(NOTCHED))
        self.assertNotIn('timing_ms', outcome.envelope)

    def test_deterministic(self):
        first, second = run(NOTCHED), run(NOTCHED)
        self.assertEqual(result_hash(first.envelope), result_hash(second.envelope))

    def test_timing_field(self):
        outcome = run(NOTCHED, timing=True)
        self.assertGreaterEqual(outcome.envelope['timing_ms'], 0)
        validate_envelope(outcome.envelope)

    def test_override_is_echoed(self):
        outcome = run({**NOTCHED, 'tol': 1e-6})
        self.assertEqual(outcome.envelope['params']['tol'], 1e-6)
        self.assertEqual(outcome.envelope['params']['radius'], 6)

    def test_echoed_params_reproduce_result(self):
        first = run(NOTCHED)
        rerun = run({'command': 'notched', 'params': first.envelope['params']})
        self.assertEqual(rerun.exit_code, EXIT_PASS)
        self.assertEqual(rerun.envelope['result'], first.envelope['result'])

    def test_precondition_error(self):
        outcome = run({'command': 'extended-cube', 'params': {'gamma': ['1/2'] * 3, 'k': 2}})
        self.assertEqual(outcome.exit_code, EXIT_INVALID)
        self.assertIsNone(outcome.envelope)
        self.assertEqual(outcome.error['kind'], 'precondition')

    def test_validation_error_has_path(self):
        outcome = run({'command': 'notched', 'params': {'delta': 'half'}})
        self.assertEqual(outcome.exit_code, EXIT_INVALID)
        self.assertEqual(outcome.error['kind'], 'validation')

    def test_row_index_agrees_across_commands(self):
        matrix = [['1', '0'], ['1/2', '1']]
        hajos = run({'command': 'hajos', 'params': {'matrix': matrix}})
        minkowski = run({'command': 'minkowski', 'params': {'matrix': matrix}})
        self.assertEqual(hajos.envelope['result']['predicate']['integral_row'], 1)
        self.assertEqual(minkowski.envelope['result']['integral_row'], 1)

    def test_failing_verdict(self):
        outcome = run({'command': 'hajos', 'params': {'matrix': [['1', '1/2'], ['1/3', '7/6']]}})
        self.assertEqual(outcome.exit_code, EXIT_FAIL)
        self.assertFalse(outcome.envelope['passed'])


class TestCommandLine(unittest.TestCase):
    """app.main with captured streams"""

    def setUp(self):
        self.level = get_log_level()
        set_log_level("WARNING")

    def tearDown(self):
        set_log_level(self.level)

    def test_params_flag(self):
        code, out, _ = _main(['notched', '--params', json.dumps(NOTCHED['params'])])
        self.assertEqual(code, EXIT_PASS)
        envelope = json.loads(out)
        self.assertEqual(envelope['command'], 'notched')
        self.assertTrue(envelope['passed'])

    def test_unknown_subcommand(self):
        code, out, err = _main(['tile-everything'])
        self.assertEqual(code, EXIT_INVALID)
        self.assertEqual(out, "")
        self.assertEqual(json.loads(err.strip().splitlines()[-1])['error']['kind'], 'usage')

    def test_bad_params_json(self):
        code, _, err = _main(['notched', '--params', '{not json'])
        self.assertEqual(code, EXIT_INVALID)
        self.assertIn('--params', err)

    def test_text_format(self):
        code, out, _ = _main(['--format', 'text', 'disk-certificate'])
        self.assertEqual(code, EXIT_PASS)
        self.assertTrue(out.startswith('disk-certificate: PASS'))

    def test_format_after_subcommand(self):
        code, out, _ = _main(['disk-certificate', '--format', 'markdown'])
        self.assertEqual(code, EXIT_PASS)
        self.assertIn('**Verdict:** pass', out)

    def test_error_goes_to_stderr(self):
        code, out, err = _main(['extended-cube', '--params', '{"gamma": ["1/2", "1/2", "1/2"], "k": 2}'])
        self.assertEqual(code, EXIT_INVALID)
        self.assertEqual(out, "")
        self.assertIn('"precondition"', err)


class TestParams(unittest.TestCase):
    """Resolution order for job parameters"""

    def test_required(self):
        with self.assertRaises(DomainError):
            JobParams({}).required('delta')

    def test_integer_rejects_fraction(self):
        with self.assertRaises(DomainError):
            JobParams({'k': '3/2'}).integer('k')
        self.assertEqual(JobParams({'k': '6/2'}).integer('k'), 3)

    def test_precedence(self):
        job = JobParams({'radius': 4}, {'radius': 9, 'seed': 5})
        self.assertEqual(job.integer('radius'), 4)
        self.assertEqual(job.integer('seed'), 5)
        self.assertEqual(job.integer('grid_exponent', default=3), 3)
        self.assertEqual(job.resolved, {'radius': 4, 'seed': 5, 'grid_exponent': 3})

    def test_unknown_override_ignored(self):
        self.assertEqual(JobParams({}, {'colour': 'blue'}).overrides, {})

    def test_window_absent(self):
        self.assertIsNone(JobParams({}).window())

    def test_config_fallback(self):
        self.assertEqual(resolve({}, {}, 'radius'), get_setting('radius'))
        self.assertEqual(resolve({}, None, 'tol', default=0.5), 0.5)

    def test_environment_override(self):
        with patch.dict(os.environ, {'TILINGLAB_RADIUS': '7', 'TILINGLAB_TOL': 'tiny'}):
            self.assertEqual(get_setting('radius'), 7)
            self.assertEqual(get_setting('tol'), 1e-9)

    def test_unknown_setting(self):
        with self.assertRaises(KeyError):
            get_setting('colour')


class TestCorpus(unittest.TestCase):
    """Acceptance corpus bookkeeping"""

    def test_names_are_unique(self):
        names = [case[0] for case in CORPUS]
        self.assertEqual(len(names), len(set(names)))

    def test_result_hash_ignores_timing(self):
        outcome = run(NOTCHED, timing=True)
        stripped = {k: v for k, v in outcome.envelope.items() if k != 'timing_ms'}
        self.assertEqual(result_hash(outcome.envelope), result_hash(stripped))
        self.assertIsNone(result_hash(None))

    def test_selected_cases(self):
        rows = run_corpus(names=['notched-2d', 'extended-even-k', 'hajos-fails', 'unknown-param'])
        self.assertEqual(len(rows), 4)
        self.assertTrue(all(row['matched'] for row in rows))
        self.assertIsNone(next(r for r in rows if r['name'] == 'unknown-param')['result_hash'])

    def test_cube_spectrum_controls(self):
        names = ['cube-spectrum-four-columns', 'cube-spectrum-half-shift', 'cube-spectrum-punctured']
        rows = run_corpus(names=names)
        self.assertEqual([row['name'] for row in rows], names)
        self.assertTrue(all(row['matched'] and row['exit_code'] == EXIT_PASS for row in rows))


if __name__ == '__main__':
    unittest.main(verbosity=2)
