"""Deterministic text output helpers shared by the CLI and figure writers.

Numbers print with 12 significant digits so reruns diff cleanly at the
1e-9 test tolerance; CSV files are comma-separated with a header row, "."
decimals and Unix newlines, preceded by a ``# config=...`` line naming the
JSON configuration that produced them.
"""

from __future__ import annotations

import json
import math
import os
from typing import Iterable


def format_number(value) -> str:
    """Render a scalar with 12 significant digits (empty string for NaN)."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int,)) or (
        isinstance(value, float) and value.is_integer() and abs(value) < 1e15
    ):
        return str(int(value))
    if isinstance(value, float):
        if math.isnan(value):
            return ""
        return f"{value:.12g}"
    return str(value)


def _json_ready(obj):
    if isinstance(obj, float):
        if math.isnan(obj):
            return None
        return float(f"{obj:.12g}")
    if isinstance(obj, dict):
        return {k: _json_ready(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_ready(v) for v in obj]
    return obj


def dump_json(obj) -> str:
    """Stable JSON with floats rounded to 12 significant digits."""
    return json.dumps(_json_ready(obj), sort_keys=True)


def write_csv(path, columns: list[str], rows: Iterable, config: dict | None = None):
    """Write one CSV file with the self-describing config header line."""
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", newline="\n") as fh:
        if config is not None:
            fh.write(f"# config={dump_json(config)}\n")
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(format_number(v) for v in row) + "\n")
