"""Truncated power-series evaluation with tail accounting.

Every series in this package is a power series in a radius-like variable
whose terms eventually decay geometrically.  ``sum_series`` consumes the
first term together with a term-to-term ratio callback, adds terms until
the running term drops below ``rel_tol`` relative to the partial sum (or
the term cap is hit), and reports a geometric tail bound computed from
the asymptotic term ratio.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable


class NonconvergenceError(ArithmeticError):
    """A truncated series or iterative solve missed its accuracy target."""


@dataclass(frozen=True)
class SeriesControl:
    """Truncation policy: hard cap on terms plus a relative tolerance."""

    max_terms: int = 200
    rel_tol: float = 1e-16

    def __post_init__(self) -> None:
        if self.max_terms < 1:
            raise ValueError("max_terms must be a positive integer")
        if not 0.0 < self.rel_tol < 1.0:
            raise ValueError("rel_tol must lie in (0, 1)")


DEFAULT_CONTROL = SeriesControl()


@dataclass(frozen=True)
class SeriesTally:
    """Outcome of a truncated summation."""

    value: float
    terms: int
    tail_bound: float
    converged: bool


def general_binomial(x: float, j: int) -> float:
    """Generalized binomial coefficient C(x, j) = prod_{i=1..j} (x - i + 1)/i.

    Product recurrence; exact sign handling for x < j - 1 where the
    coefficients alternate.
    """
    if j < 0:
        raise ValueError("j must be a nonnegative integer")
    out = 1.0
    for i in range(1, j + 1):
        out *= (x - i + 1) / i
    return out


def central_binomial(j: int) -> float:
    """C(2j, j), exact via integer arithmetic before the float cast."""
    if j < 0:
        raise ValueError("j must be a nonnegative integer")
    return float(math.comb(2 * j, j))


def sum_series(
    first_term: float,
    ratio: Callable[[int], float],
    tail_ratio: float,
    ctl: SeriesControl = DEFAULT_CONTROL,
) -> SeriesTally:
    """Sum t_0 + t_1 + ... where t_{n+1} = t_n * ratio(n).

    Stops once |t_n| <= rel_tol * |sum|.  The reported tail bound is the
    geometric bound |t_last| * rho / (1 - rho) with rho = ``tail_ratio``,
    the asymptotic term-to-term ratio (e.g. the radius r for a series in
    powers of r).  If the cap is hit first, the summation still counts as
    converged when the tail bound is within a decade of the tolerance.
    """
    total = first_term
    term = first_term
    terms_used = 1
    hit_tolerance = False
    for n in range(ctl.max_terms - 1):
        term = term * ratio(n)
        total += term
        terms_used += 1
        if abs(term) <= ctl.rel_tol * abs(total):
            hit_tolerance = True
            break
    if 0.0 <= tail_ratio < 1.0:
        tail = abs(term) * tail_ratio / (1.0 - tail_ratio)
    else:
        tail = math.inf if term != 0.0 else 0.0
    converged = hit_tolerance or tail <= 10.0 * ctl.rel_tol * abs(total)
    return SeriesTally(value=total, terms=terms_used, tail_bound=tail, converged=converged)


def require_converged(tally: SeriesTally, what: str) -> float:
    """Unwrap a tally, raising ``NonconvergenceError`` when truncation failed."""
    if not tally.converged:
        raise NonconvergenceError(
            f"{what}: series not converged after {tally.terms} terms "
            f"(tail bound {tally.tail_bound:.3e})"
        )
    return tally.value
