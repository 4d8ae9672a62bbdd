"""
Runtime configuration: defaults plus TILINGLAB_* environment overrides.
"""
import os

from utils.logging import debug_log

DEFAULTS = {
    'enumeration_cap': 10_000_000,
    'period_cap': 1_000_000,
    'tol': 1e-9,
    'radius': 20,
    'seed': 0,
    'grid_exponent': 8,
    'samples': 4096,
    'steinhaus_range': 50,
    'characterization_limit': 100_000,
    'direct_sum_bound': 50,
    'tile_epsilon_scale': 0.25,
    'tile_radius_step': 1.0,
    'cache_entries': 128,
    'log_level': 'INFO',
}


def get_setting(name):
    """
    Look up a configuration value, honouring TILINGLAB_<NAME> overrides.

    The override string is coerced to the type of the default value.
    """
    if name not in DEFAULTS:
        raise KeyError(f"unknown setting: {name}")
    default = DEFAULTS[name]
    raw = os.environ.get(f"TILINGLAB_{name.upper()}")
    if raw is None:
        return default
    try:
        if isinstance(default, int):
            return int(raw)
        if isinstance(default, float):
            return float(raw)
        return raw
    except ValueError:
        debug_log(f"Ignoring bad override TILINGLAB_{name.upper()}={raw!r}", "WARNING", "config")
        return default


def thread_count():
    """Worker cap from TILINGLAB_THREADS; None means the executor default."""
    raw = os.environ.get("TILINGLAB_THREADS")
    if not raw:
        return None
    try:
        value = int(raw)
    except ValueError:
        debug_log(f"Ignoring bad TILINGLAB_THREADS={raw!r}", "WARNING", "config")
        return None
    return max(1, value)


def resolve(params, overrides, name, key=None, default=None):
    """
    Resolve one job parameter: explicit params win, then JobSpec overrides,
    then the command default, then configuration defaults.
    """
    key = key or name
    if params.get(name) is not None:
        return params[name]
    if overrides and overrides.get(key) is not None:
        return overrides[key]
    if default is not None:
        return default
    return get_setting(key)
