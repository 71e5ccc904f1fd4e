"""Deterministic CSV/JSON emission.

All floating-point output uses 17-significant-digit scientific notation
so that repeated runs with identical inputs are byte-identical and
values round-trip exactly.
"""

import math
import sys

import numpy as np


def fmt_float(x):
    """Round-trip-safe scientific notation (17 significant digits)."""
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".16e")


def _cell(value):
    if isinstance(value, (float, np.floating)):
        return fmt_float(value)
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return str(value)


def csv_lines(header, rows):
    """Header plus comma-joined rows with deterministic formatting."""
    lines = [header]
    lines.extend(",".join(_cell(v) for v in row) for row in rows)
    return lines


def json_text(obj, indent=0):
    """Serialize with fixed key order (dict insertion order) and
    fmt_float for every float; NaN/Infinity follow the Python json
    convention and remain loadable by json.loads."""
    pad = " " * indent
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x):
            return "NaN"
        if math.isinf(x):
            return "Infinity" if x > 0 else "-Infinity"
        return fmt_float(x)
    if isinstance(obj, str):
        import json as _json
        return _json.dumps(obj)
    if isinstance(obj, dict):
        items = [
            f'{pad}  {json_text(str(k))}: {json_text(v, indent + 2)}'
            for k, v in obj.items()
        ]
        if not items:
            return "{}"
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        items = [f"{pad}  {json_text(v, indent + 2)}" for v in seq]
        if not items:
            return "[]"
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def write_text(text, out=None):
    """Write to the given path, or stdout when out is None."""
    if out is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")


def write_csv(header, rows, out=None):
    write_text("\n".join(csv_lines(header, rows)), out)


def write_json(obj, out=None):
    write_text(json_text(obj), out)
