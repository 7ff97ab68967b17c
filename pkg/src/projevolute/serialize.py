"""Scalar formatting, polygon JSON and versioned CSV output."""

from __future__ import annotations

import csv
import json
from fractions import Fraction

from .evolute import Polygon
from .projective import HomTriple

CSV_SCHEMA = 1


def format_scalar(v) -> str:
    """Exact values as "p/q" (or "p"), floats with 17 significant digits."""
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        return format(v, ".17g")
    if isinstance(v, (int, Fraction)):
        return str(Fraction(v))
    return str(v)


def jsonable(obj):
    """Convert Fractions to strings and tuples to lists, recursively; floats stay numbers."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, Fraction):
        return format_scalar(obj)
    if isinstance(obj, (bool, int, float, str)) or obj is None:
        return obj
    if hasattr(obj, "item"):  # numpy scalars
        return obj.item()
    return str(obj)


def dump_json(obj, path=None) -> str:
    text = json.dumps(jsonable(obj), indent=2, sort_keys=True) + "\n"
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text


def parse_polygon(data) -> Polygon:
    """Polygon from {"vertices": [[a, b, c], ...]}: all "p/q" strings or all numbers."""
    if not isinstance(data, dict) or "vertices" not in data:
        raise ValueError('polygon JSON must be an object with a "vertices" array')
    rows = data["vertices"]
    if not isinstance(rows, list) or not rows:
        raise ValueError("vertices must be a nonempty array")
    entries = []
    for row in rows:
        if not isinstance(row, list) or len(row) != 3:
            raise ValueError("each vertex must be an array of three entries")
        entries.extend(row)
    strings = [isinstance(e, str) for e in entries]
    numbers = [isinstance(e, (int, float)) and not isinstance(e, bool) for e in entries]
    if all(strings):
        conv = Fraction
    elif all(numbers):
        conv = float
    else:
        raise ValueError("vertex entries must be all rational strings or all numbers, not mixed")
    try:
        return Polygon(tuple(HomTriple.point(*(conv(e) for e in row)) for row in rows))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad vertex entry: {exc}") from exc


def load_polygon(path) -> Polygon:
    with open(path, encoding="utf-8") as fh:
        return parse_polygon(json.load(fh))


def polygon_to_json(P: Polygon) -> dict:
    if P.exact:
        return {"vertices": [[format_scalar(c) for c in v.coords] for v in P.vertices]}
    return {"vertices": [[float(c) for c in v.coords] for v in P.vertices]}


def write_csv(path, columns: list, rows: list) -> None:
    """CSV with a leading ``schema`` column holding the format version."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["schema", *columns])
        for row in rows:
            w.writerow([CSV_SCHEMA, *(format_scalar(row[c]) for c in columns)])
