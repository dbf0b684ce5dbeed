"""Tabulated upper and lower bounds for the critical exponent curves.

Rows are sampled along x = 4(1 - 1/q), the natural parametrization in
which the d = 1 upper bound is the identity; x runs over [0, 4] with
x = 4 mapping to q = inf.

d = 1:  upper  4(1 - 1/q)                       (kernel family)
        lower  0 on [1, 4/3)                    (endpoint)
               2q/(4-q) on [4/3, 2)             (interpolation)
               4q/(q+2) on [2, inf]             (interpolation)

d = 2:  upper  -1 below 4/3 (exact there), else 4 - q*
        lower  -1 below 4/3 (exact there)
               0 on [4/3, 8/5)                  (composed endpoint)
               2q/(8-3q) on [8/5, 2)            (composed interpolation)
               8q/(3q+2) on [2, inf]            (composed interpolation)

The composed d = 2 lower bounds are the d = 1 interpolation bounds
applied twice, using that the exponent in d1 + d2 variables dominates
the composition of the one-variable exponents.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

from .norms import conjectured_exponent


@dataclass(frozen=True)
class BoundRow:
    q: float
    upper: float
    lower: float
    upper_source: str
    lower_source: str

    def __post_init__(self) -> None:
        if self.lower > self.upper + 1e-12:
            raise ValueError(f"lower bound {self.lower} exceeds upper bound {self.upper} at q={self.q}")


@dataclass(frozen=True)
class BoundTable:
    dim: int
    rows: tuple[BoundRow, ...]


def _q_samples() -> list[float]:
    qs = []
    for i in range(33):  # x = 0, 1/8, ..., 4
        x = i / 8.0
        qs.append(math.inf if x == 4.0 else 4.0 / (4.0 - x))
    return qs


def _lower_d1(q: float) -> tuple[float, str]:
    if q < 4.0 / 3.0:
        return 0.0, "endpoint"
    if q < 2.0:
        return 2.0 * q / (4.0 - q), "interpolation"
    if math.isinf(q):
        return 4.0, "interpolation"
    return 4.0 * q / (q + 2.0), "interpolation"


def _lower_d2(q: float) -> tuple[float, str]:
    if q < 4.0 / 3.0:
        return -1.0, "exact"
    if q < 8.0 / 5.0:
        return 0.0, "composed-endpoint"
    if q < 2.0:
        return 2.0 * q / (8.0 - 3.0 * q), "composed-interpolation"
    if math.isinf(q):
        return 8.0 / 3.0, "composed-interpolation"
    return 8.0 * q / (3.0 * q + 2.0), "composed-interpolation"


def figure_tables(dim: int) -> BoundTable:
    """Bound table for d = 1 or d = 2."""
    if dim not in (1, 2):
        raise ValueError("bound tables are tabulated for d=1 and d=2 only")
    rows = []
    for q in _q_samples():
        if dim == 1:
            upper = conjectured_exponent(1, q) if q > 1 else 0.0
            upper_source = "conjectured" if q > 1 else "exact"
            lower, lower_source = _lower_d1(q)
        else:
            if q < 4.0 / 3.0:
                upper, upper_source = -1.0, "exact"
            else:
                upper, upper_source = conjectured_exponent(2, q), "conjectured"
            lower, lower_source = _lower_d2(q)
        rows.append(
            BoundRow(
                q=q, upper=upper, lower=lower, upper_source=upper_source, lower_source=lower_source
            )
        )
    return BoundTable(dim=dim, rows=tuple(rows))


def _fmt(x: float) -> str:
    if math.isinf(x):
        return "inf"
    return format(x, ".12g")


def table_csv(table: BoundTable) -> str:
    """Deterministic CSV rendering (fixed float format, LF newlines)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["q", "upper", "lower", "upper_source", "lower_source"])
    for row in table.rows:
        writer.writerow([_fmt(row.q), _fmt(row.upper), _fmt(row.lower), row.upper_source, row.lower_source])
    return buf.getvalue()
