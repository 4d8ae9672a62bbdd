"""
Ambient helpers for tilinglab: logging, configuration, caching,
thread-pool mapping and serialization.
"""
from .logging import debug_log, set_log_level
from .config import DEFAULTS, get_setting, thread_count
from .cache import SimpleCache, cache
from .parallel import parallel_map, chunked
from .formatting import as_rational, rational_to_str, canonical_json

__all__ = [
    'debug_log',
    'set_log_level',
    'DEFAULTS',
    'get_setting',
    'thread_count',
    'SimpleCache',
    'cache',
    'parallel_map',
    'chunked',
    'as_rational',
    'rational_to_str',
    'canonical_json',
]
