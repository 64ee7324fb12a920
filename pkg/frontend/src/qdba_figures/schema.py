"""Strict readers for the simulator's CSV interfaces.

Sweep files carry exactly the seventeen harness columns; histogram files
carry exactly ``pattern, frequency``. Anything else is rejected with the
offending column named, and files without data rows are rejected outright.
"""

from __future__ import annotations

import csv
from pathlib import Path

SWEEP_COLUMNS = [
    "sweep_kind",
    "axis_name",
    "axis_value",
    "n",
    "m",
    "commander_traitor",
    "preset",
    "p",
    "k",
    "l",
    "iterations",
    "successes",
    "degenerates",
    "p_dba",
    "ci_low",
    "ci_high",
    "master_seed",
]

HISTOGRAM_COLUMNS = ["pattern", "frequency"]

_SWEEP_TYPES = {
    "axis_value": float,
    "n": int,
    "m": int,
    "p": float,
    "k": int,
    "l": int,
    "iterations": int,
    "successes": int,
    "degenerates": int,
    "p_dba": float,
    "ci_low": float,
    "ci_high": float,
    "master_seed": int,
}


class SchemaError(ValueError):
    """A CSV does not match the expected interface; names the first bad column."""

    def __init__(self, path: str, column: str, problem: str):
        self.column = column
        super().__init__(f"{path}: column {column!r} {problem}")


def _check_header(path: str, header: list[str] | None, expected: list[str]) -> None:
    if header is None:
        raise SchemaError(path, expected[0], "missing (file has no header row)")
    for name in expected:
        if name not in header:
            raise SchemaError(path, name, "missing")
    for name in header:
        if name not in expected:
            raise SchemaError(path, name, "unknown")
    if header != expected:
        first = next(h for h, e in zip(header, expected) if h != e)
        raise SchemaError(path, first, "out of order")


def _read(path: str, expected: list[str]) -> list[dict[str, str]]:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        _check_header(path, header, expected)
        rows = []
        for line in reader:
            if not line:
                continue
            if len(line) != len(expected):
                raise SchemaError(path, expected[min(len(line), len(expected) - 1)], "misaligned row")
            rows.append(dict(zip(expected, line)))
    if not rows:
        raise SchemaError(path, expected[0], "has no data rows")
    return rows


def load_sweep(path: str | Path) -> list[dict]:
    """Typed rows of a sweep CSV, validated against the exact schema."""
    path = str(path)
    rows = _read(path, SWEEP_COLUMNS)
    typed = []
    for row in rows:
        out: dict = dict(row)
        for column, cast in _SWEEP_TYPES.items():
            try:
                out[column] = cast(float(row[column])) if cast is int else cast(row[column])
            except ValueError as exc:
                raise SchemaError(path, column, f"holds a non-numeric value {row[column]!r}") from exc
        typed.append(out)
    return typed


def load_histogram(path: str | Path) -> list[dict]:
    """Typed rows of a histogram CSV: bit-string pattern plus frequency."""
    path = str(path)
    rows = _read(path, HISTOGRAM_COLUMNS)
    typed = []
    for row in rows:
        pattern = row["pattern"]
        if not pattern or set(pattern) - {"0", "1"}:
            raise SchemaError(path, "pattern", f"holds a non-binary value {pattern!r}")
        try:
            frequency = float(row["frequency"])
        except ValueError as exc:
            raise SchemaError(path, "frequency", f"holds a non-numeric value {row['frequency']!r}") from exc
        typed.append({"pattern": pattern, "frequency": frequency})
    return typed
