"""
Serialization helpers: exact rationals as "p/q" strings and canonical JSON.
"""
import dataclasses
import json
import math
from fractions import Fraction

import numpy as np


def as_rational(value):
    """
    Parse an exact rational from a Fraction, int, or "p/q" / decimal string.

    Floats are accepted only when they are integral; anything else would
    silently lose exactness.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError(f"not a rational: {value!r}")
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, (float, np.floating)) and float(value).is_integer():
        return Fraction(int(value))
    raise ValueError(f"not an exact rational: {value!r}")


def rational_to_str(value):
    """Fraction -> "p/q" with "/q" omitted when q = 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def vector_to_str(vector):
    return [rational_to_str(x) for x in vector]


def matrix_to_str(rows):
    return [vector_to_str(row) for row in rows]


def to_jsonable(obj):
    """Recursively convert library results into JSON-ready structures."""
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        if hasattr(obj, 'to_dict'):
            return to_jsonable(obj.to_dict())
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, Fraction):
        return rational_to_str(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    if isinstance(obj, np.ndarray):
        return [to_jsonable(x) for x in obj.tolist()]
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x) for x in obj]
    if hasattr(obj, 'to_dict'):
        return to_jsonable(obj.to_dict())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def canonical_json(obj, indent=None):
    """Deterministic JSON: sorted keys, fixed separators."""
    if indent is None:
        return json.dumps(to_jsonable(obj), sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=indent, ensure_ascii=False)


def format_float(value, digits=10):
    return f"{value:.{digits}g}"
