"""Deterministic JSON and CSV emission.

Identical inputs must produce byte-identical files, so floats are written
with repr (shortest round-trip form), complex numbers as [re, im] pairs,
dict keys in insertion order (builders emit them deterministically), and
CSV numerics with 17 significant digits.
"""
from __future__ import annotations

import json
from typing import Any

import numpy as np

CSV_FLOAT = "%.17g"


def _normalize(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {str(k): _normalize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_normalize(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [_normalize(float(obj.real)), _normalize(float(obj.imag))]
    if isinstance(obj, (float, np.floating)):
        f = float(obj)
        if np.isnan(f):
            return "nan"
        if np.isinf(f):
            return "inf" if f > 0 else "-inf"
        return f
    if isinstance(obj, np.ndarray):
        return [_normalize(v) for v in obj.tolist()]
    if obj is None or isinstance(obj, str):
        return obj
    if hasattr(obj, "to_json"):
        return _normalize(obj.to_json())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dump_json(obj: Any) -> str:
    """Serialize to a stable JSON string (sorted nothing, repr floats)."""
    return json.dumps(_normalize(obj), indent=2, ensure_ascii=True,
                      separators=(",", ": ")) + "\n"


def write_json(path, obj: Any) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(dump_json(obj))


def format_cell(value: Any) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (complex, np.complexfloating)):
        return (CSV_FLOAT % float(value.real)) + "+" + (CSV_FLOAT % float(value.imag)) + "j"
    if isinstance(value, (float, np.floating)):
        return CSV_FLOAT % float(value)
    raise TypeError(f"cannot format {type(value).__name__} for CSV")


def write_csv(path, header: list[str], rows: list[tuple]) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(format_cell(v) for v in row))
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(lines) + "\n")


def matrix_csv_rows(entries: np.ndarray) -> list[tuple]:
    """Dense matrix as (row, col, re, im) tuples in row-major order."""
    rows = []
    for i in range(entries.shape[0]):
        for j in range(entries.shape[1]):
            v = entries[i, j]
            rows.append((i, j, float(v.real), float(v.imag)))
    return rows
