"""Matrix JSON format and deterministic JSON output.

Complex matrices are written as ``{"n": n, "entries": [[[re, im], ...], ...]}``
(row-major); real matrices use plain numbers in place of ``[re, im]`` pairs.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .errors import InvariantError


def matrix_to_json(a) -> dict:
    a = np.asarray(a)
    if np.iscomplexobj(a):
        entries = [[[float(z.real), float(z.imag)] for z in row] for row in a]
    else:
        entries = [[float(x) for x in row] for row in a]
    return {"n": int(a.shape[0]), "entries": entries}


def matrix_from_json(obj: dict) -> np.ndarray:
    """Parse the matrix JSON object, returning a real or complex array.

    The element type is decided by the entries: ``[re, im]`` pairs give a
    complex matrix, plain numbers give a real one.
    """
    try:
        entries = obj["entries"]
        n = int(obj["n"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InvariantError(f"malformed matrix JSON: {exc}") from None
    if not isinstance(entries, list) or not entries or not all(isinstance(r, list) for r in entries):
        raise InvariantError("malformed matrix JSON: 'entries' must be a list of rows")
    try:
        if isinstance(entries[0][0], list):
            arr = np.array([[complex(re, im) for re, im in row] for row in entries])
        else:
            arr = np.array(entries, dtype=float)
    except (TypeError, ValueError, IndexError) as exc:
        raise InvariantError(f"malformed matrix JSON: {exc}") from None
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise InvariantError(f"matrix JSON is not square: shape {arr.shape}")
    if arr.shape[0] not in (n, 2 * n):
        raise InvariantError(f"matrix JSON size {arr.shape[0]} inconsistent with n={n}")
    if not np.all(np.isfinite(arr)):
        raise InvariantError("matrix JSON has non-finite entries")
    return arr


def _encode(obj) -> str:
    if isinstance(obj, (bool, np.bool_)) or obj is None:
        return json.dumps(obj if obj is None else bool(obj))
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x) or math.isinf(x):
            return "null"
        return format(x, ".17g")
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_encode(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_encode(v) for v in obj) + "]"
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(obj) -> str:
    """JSON text with insertion-ordered keys and 17 significant digits per float.

    Non-finite floats (e.g. the log-determinant of a singular point) become null.
    """
    return _encode(obj)
