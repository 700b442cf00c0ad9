"""Tabulation of the lambda function on a uniform grid."""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import List, Tuple

from .errors import DomainError
from .mucore import lambda_
from .query import render_decimal

MAX_ROWS = 10 ** 6


def _exact(x) -> Fraction:
    # floats go through their shortest repr so 0.001 means 1/1000
    if isinstance(x, float):
        return Fraction(repr(x))
    if isinstance(x, str):
        return Fraction(x.strip().replace("−", "-"))
    return Fraction(x)


def lambda_grid(start, stop, step) -> List[Tuple[Fraction, float]]:
    """Rows (r, lambda(r)) for r = start, start+step, ... <= stop.

    Grid points are formed exactly, so the removable point r = -1 is hit
    whenever it lies on the grid.
    """
    a, b, h = _exact(start), _exact(stop), _exact(step)
    if h <= 0:
        raise DomainError(f"step must be > 0, got {h}", code="E_GRID_SIZE")
    if a > b:
        raise DomainError(f"empty grid: from {a} > to {b}", code="E_GRID_SIZE")
    if (b - a) / h > MAX_ROWS:
        raise DomainError(f"(to - from)/step = {float((b - a) / h):g} exceeds {MAX_ROWS}",
                          code="E_GRID_SIZE")
    count = int((b - a) // h) + 1
    rows = []
    for i in range(count):
        r = a + i * h
        rows.append((r, lambda_(float(r))))
    return rows


def lambda_table(start, stop, step, fmt: str = "csv") -> str:
    rows = lambda_grid(start, stop, step)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["r", "lambda"])
        for r, lam in rows:
            w.writerow([render_decimal(r), render_decimal(lam)])
        return buf.getvalue()
    if fmt == "json":
        data = [{"r": float(render_decimal(r)), "lambda": float(render_decimal(lam))}
                for r, lam in rows]
        return json.dumps(data, indent=1) + "\n"
    raise DomainError(f"unknown table format {fmt!r}", code="E_FORMAT")
