"""CSV ingestion with line-numbered validation errors."""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

__all__ = ["Table", "CsvFormatError", "NoDataError", "read_table", "pivot_grid"]


class CsvFormatError(ValueError):
    """The CSV input is malformed; the message carries the 1-based line."""


class NoDataError(ValueError):
    """The CSV parsed fine but holds no rows (or an empty grid)."""


@dataclass(frozen=True)
class Table:
    """A parsed CSV: column names plus a float matrix, one row per line."""

    columns: tuple[str, ...]
    data: np.ndarray  # shape (n_rows, n_cols)

    def column(self, name: str) -> np.ndarray:
        if name not in self.columns:
            raise CsvFormatError(
                f"missing required column {name!r}; found {list(self.columns)}"
            )
        return self.data[:, self.columns.index(name)]


def read_table(path: str) -> Table:
    """Parse a CSV file with a single header row and numeric body."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise NoDataError(f"{path}: file is empty")
        if not header or any(not c.strip() for c in header):
            raise CsvFormatError(f"{path}:1: blank column name in header")
        rows: list[list[float]] = []
        for lineno, raw in enumerate(reader, start=2):
            if not raw:
                continue
            if len(raw) != len(header):
                raise CsvFormatError(
                    f"{path}:{lineno}: expected {len(header)} fields, got {len(raw)}"
                )
            try:
                rows.append([float(x) for x in raw])
            except ValueError:
                bad = next(x for x in raw if not _is_float(x))
                raise CsvFormatError(
                    f"{path}:{lineno}: non-numeric value {bad!r}"
                )
    if not rows:
        raise NoDataError(f"{path}: no data rows")
    return Table(columns=tuple(header), data=np.array(rows, dtype=float))


def _is_float(x: str) -> bool:
    try:
        float(x)
        return True
    except ValueError:
        return False


def pivot_grid(
    table: Table, x_col: str, y_col: str, z_col: str
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Rebuild a rectangular grid from a flat (x, y, z) table.

    Returns (x_values, y_values, z[y, x]).  Raises NoDataError when the rows
    do not fill out a complete cartesian grid.
    """
    x = table.column(x_col)
    y = table.column(y_col)
    z = table.column(z_col)
    xs = np.unique(x)
    ys = np.unique(y)
    if xs.size * ys.size != z.size:
        raise NoDataError(
            f"no data grid: {z.size} rows do not tile "
            f"{xs.size} x {ys.size} unique ({x_col}, {y_col}) values"
        )
    zz = np.full((ys.size, xs.size), np.nan)
    xi = np.searchsorted(xs, x)
    yi = np.searchsorted(ys, y)
    zz[yi, xi] = z
    return xs, ys, zz
