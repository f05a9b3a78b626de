"""CSV ingestion and emission.

Dialect is pinned: comma separator, dot decimal, UTF-8, no quoting tricks.
Tables carry a mandatory header; curve files are headerless and wide, one row
per curve, with the grid as the first row (or synthesized uniform on [0, 1]
via a flag).

Typing is strict and total: a column is numeric when every cell parses as a
finite plain decimal, otherwise categorical. Tokens that parse to non-finite
floats ("nan", "inf", ...) are rejected outright wherever they appear, and so
are blank cells; silently propagating them would poison every downstream
quadrature and mean. Underscored number literals are not treated as numeric.

Floats are written with ``repr``, whose shortest round-trip representation
makes write-then-read the identity on tables and curve sets.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .errors import (
    EmptyFileError,
    GridNotIncreasingError,
    InputError,
    ParseError,
    RaggedRowsError,
)
from .functional import CurveSet
from .tables import SampleTable


def _float_token(token: str) -> float | None:
    """The token's float value, None when it is not a plain decimal literal."""
    text = token.strip()
    if not text or "_" in text:
        return None
    try:
        return float(text)
    except ValueError:
        return None


def _reject_bad_cell(token: str, line: int, column) -> None:
    value = _float_token(token)
    if value is not None and not np.isfinite(value):
        raise ParseError(f"non-finite value {token.strip()!r}", line=line, column=column)
    if not token.strip():
        raise ParseError("blank cell", line=line, column=column)


def _read_rows(path) -> list[list[str]]:
    try:
        with open(path, newline="", encoding="utf-8") as handle:
            return list(csv.reader(handle))
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def read_table(path) -> SampleTable:
    """Read a headered CSV into typed columns."""
    rows = _read_rows(path)
    if not rows:
        raise EmptyFileError(f"{path} is empty")
    header, data = rows[0], rows[1:]
    if len(set(header)) != len(header) or any(not h.strip() for h in header):
        raise ParseError("header names must be nonempty and unique", line=1)
    if not data:
        raise EmptyFileError(f"{path} has a header but no data rows")
    for i, row in enumerate(data, start=2):
        if len(row) != len(header):
            raise ParseError(
                f"expected {len(header)} cells, found {len(row)}", line=i
            )

    columns = {}
    for j, name in enumerate(header):
        cells = [row[j] for row in data]
        for i, cell in enumerate(cells, start=2):
            _reject_bad_cell(cell, line=i, column=name)
        parsed = [_float_token(c) for c in cells]
        if all(v is not None for v in parsed):
            columns[name] = np.asarray(parsed, dtype=np.float64)
        else:
            columns[name] = np.asarray([c.strip() for c in cells], dtype=str)
    return SampleTable.from_columns(columns)


def write_table(table: SampleTable, path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(table.names)
        cols = [table.column(name) for name in table.names]
        kinds = [table.kind(name) for name in table.names]
        for i in range(table.n):
            writer.writerow(
                [
                    repr(float(col[i])) if kind == "numeric" else str(col[i])
                    for col, kind in zip(cols, kinds)
                ]
            )


def _read_float_rows(path) -> list[list[float]]:
    rows = _read_rows(path)
    if not rows:
        raise EmptyFileError(f"{path} is empty")
    parsed = []
    width = len(rows[0])
    for i, row in enumerate(rows, start=1):
        if len(row) != width:
            raise RaggedRowsError(
                f"row at line {i} has {len(row)} cells, expected {width}"
            )
        values = []
        for j, cell in enumerate(row, start=1):
            _reject_bad_cell(cell, line=i, column=j)
            value = _float_token(cell)
            if value is None:
                raise ParseError(f"not a number: {cell.strip()!r}", line=i, column=j)
            values.append(value)
        parsed.append(values)
    return parsed


def read_curves(path, uniform: bool = False, name: str = "curves") -> CurveSet:
    """Read a wide curve CSV: grid row first, then one row per curve.

    With ``uniform`` every row is a curve and the grid is synthesized as
    equally spaced points on [0, 1].
    """
    rows = _read_float_rows(path)
    if uniform:
        grid = np.linspace(0.0, 1.0, len(rows[0]))
        values = np.asarray(rows)
    else:
        grid = np.asarray(rows[0])
        if np.any(np.diff(grid) <= 0):
            raise GridNotIncreasingError("grid row must be strictly increasing")
        values = np.asarray(rows[1:])
        if values.size == 0:
            raise EmptyFileError(f"{path} has a grid row but no curves")
    return CurveSet(grid=grid, values=values, name=name)


def write_curves(curves: CurveSet, path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow([repr(float(t)) for t in curves.grid])
        for row in curves.values:
            writer.writerow([repr(float(v)) for v in row])


def resample_to_common(a: CurveSet, b: CurveSet) -> tuple[CurveSet, CurveSet]:
    """Linearly interpolate both sets onto one shared uniform grid.

    Already-shared grids pass through untouched. The common grid spans the
    overlap of the two spans with max(m_a, m_b) points, so no curve is ever
    extrapolated.
    """
    if a.grid.shape == b.grid.shape and np.array_equal(a.grid, b.grid):
        return a, b
    lo = max(float(a.grid[0]), float(b.grid[0]))
    hi = min(float(a.grid[-1]), float(b.grid[-1]))
    if hi <= lo:
        raise InputError("curve sets cover disjoint time spans; cannot resample")
    grid = np.linspace(lo, hi, max(a.m, b.m))

    def _resample(curves: CurveSet) -> CurveSet:
        values = np.vstack([np.interp(grid, curves.grid, row) for row in curves.values])
        return CurveSet(grid=grid, values=values, name=curves.name)

    return _resample(a), _resample(b)
