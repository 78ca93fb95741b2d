"""Decimal serialization helpers for CSV/JSON artifacts.

Floats are written with 17 significant digits, which round-trips every
finite double exactly; the same formatter is used for dataset CSVs,
model files, and reports so artifacts are byte-stable across runs.
"""

from __future__ import annotations

import json

import numpy as np


def format_float(v) -> str:
    """17-significant-digit decimal form of a finite double."""
    return format(float(v), ".17g")


def dumps(obj) -> str:
    """JSON-encode with 17-significant-digit floats and stable key order."""
    if isinstance(obj, dict):
        items = ", ".join(f"{json.dumps(str(k))}: {dumps(v)}" for k, v in obj.items())
        return "{" + items + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    if isinstance(obj, np.ndarray):
        return dumps(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    raise TypeError(f"cannot serialize value of type {type(obj).__name__}")


def write_json(obj, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj))
        fh.write("\n")
