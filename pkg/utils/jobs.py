"""
JobSpec handling: schema validation, dispatch to command pages, and the
result envelope written by the CLI.

Exit codes: 0 pass, 1 fail, 2 invalid input or a library precondition
error, 3 unexpected internal error.
"""
import copy
import hashlib
import json
import time
from dataclasses import dataclass, field
from pathlib import Path

import jsonschema
from jsonschema.exceptions import ValidationError, best_match

from tilings import __version__
from tilings.errors import TilingLabError
from utils.cache import cache
from utils.formatting import canonical_json, to_jsonable
from utils.logging import debug_log

SCHEMA_DIR = Path(__file__).resolve().parent.parent / "schemas"

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INVALID = 2
EXIT_INTERNAL = 3


def load_schema(name):
    """Load schemas/<name>.schema.json once per process."""
    def read():
        with open(SCHEMA_DIR / f"{name}.schema.json", "r", encoding="utf-8") as f:
            return json.load(f)
    return cache.get_or_compute(('schema', name), read)


def _raise_best(validator, instance):
    error = best_match(validator.iter_errors(instance))
    if error is not None:
        raise error


def validate_jobspec(doc):
    """
    Validate a JobSpec document and the params of its command.

    Raises jsonschema ValidationError with the most relevant failure.
    """
    _raise_best(jsonschema.Draft7Validator(load_schema("jobspec")), doc)
    params_schema = copy.deepcopy(load_schema("params"))
    params_schema['$ref'] = f"#/commands/{doc['command']}"
    _raise_best(jsonschema.Draft7Validator(params_schema), doc.get('params', {}))


def validate_envelope(envelope):
    _raise_best(jsonschema.Draft7Validator(load_schema("result_envelope")), envelope)


def input_hash(doc):
    """sha256 of the canonical JSON of a JobSpec."""
    return hashlib.sha256(canonical_json(doc).encode("utf-8")).hexdigest()


def build_jobspec(command, params=None, **overrides):
    """Assemble a JobSpec from CLI pieces, dropping unset overrides."""
    doc = {'command': command, 'params': dict(params or {})}
    doc.update({k: v for k, v in overrides.items() if v is not None})
    return doc


@dataclass
class JobOutcome:
    exit_code: int
    envelope: dict = None
    error: dict = field(default=None)

    @property
    def passed(self):
        return self.exit_code == EXIT_PASS


def _error_path(error):
    return "/".join(str(p) for p in error.absolute_path)


def run(jobspec, timing=False):
    """
    Validate and execute one JobSpec.

    Returns a JobOutcome; errors are reported in `error` rather than raised.
    """
    # pages imports the whole library; keep utils importable without it
    from pages import COMMANDS, JobParams
    from pages.inputs import OVERRIDE_KEYS

    started = time.perf_counter()
    try:
        validate_jobspec(jobspec)
        command = jobspec['command']
        params = jobspec.get('params', {})
        overrides = {k: jobspec[k] for k in OVERRIDE_KEYS if k in jobspec}
        job = JobParams(params, overrides)
        debug_log(f"Running {command}", "INFO", "jobs")
        result = to_jsonable(COMMANDS[command](job))
    except ValidationError as e:
        debug_log(f"Invalid job: {e.message}", "ERROR", "jobs")
        return JobOutcome(EXIT_INVALID, error={'kind': 'validation', 'message': e.message,
                                               'path': _error_path(e)})
    except TilingLabError as e:
        debug_log(f"{e.kind}: {e}", "ERROR", "jobs")
        return JobOutcome(EXIT_INVALID, error=e.to_dict())
    except Exception as e:
        debug_log(f"Internal error: {type(e).__name__}: {e}", "ERROR", "jobs")
        return JobOutcome(EXIT_INTERNAL, error={'kind': 'internal',
                                                'message': f"{type(e).__name__}: {e}"})

    passed = bool(result.get('passed'))
    result['passed'] = passed
    envelope = {
        'command': command,
        'params': {**to_jsonable(params), **job.resolved},
        'result': result,
        'passed': passed,
        'version': __version__,
        'input_hash': input_hash(jobspec),
    }
    if timing:
        envelope['timing_ms'] = round((time.perf_counter() - started) * 1000.0, 3)
    debug_log(f"{command}: {'PASS' if passed else 'FAIL'}", "SUCCESS" if passed else "WARNING", "jobs")
    return JobOutcome(EXIT_PASS if passed else EXIT_FAIL, envelope=envelope)
