"""Point-evaluation kernels on the circle and their binomial norm series.

For w in the open unit disc and k_w(z) = 1/(1 - conj(w) z), with
r = |w|^2:

    ||k_w||_p^p           = sum_n binom(n-1+p/2, n)^2 r^n
    min ||psi||_q over
    {P+ psi = k_w}        = (1 - r)^{-1/q*},   series sum_n binom(n-1+s, n) r^n
                            with s = p_power/q*

The comparison of the two series coefficientwise decides whether
||k_w||_p <= ||psi||_q can hold for all w: it does precisely when
p <= 4/q*, with the first violation at n = 1 otherwise.  The extremal
function for point evaluation at w is C (1 - conj(w) z)^{-2/q*}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .fourier import GridFunction, TrigPoly, axis_angles
from .norms import conjugate
from .series import (
    DEFAULT_CONTROL,
    SeriesControl,
    general_binomial,
    require_converged,
    sum_series,
)


@dataclass(frozen=True)
class KernelPoint:
    """Evaluation point w in the open unit disc; caches r = |w|^2."""

    w: complex
    r: float = field(init=False)

    def __post_init__(self) -> None:
        w = complex(self.w)
        r = abs(w) ** 2
        if not r < 1.0:
            raise ValueError(f"|w| = {abs(w)} must be < 1")
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "r", r)


def _point(w) -> KernelPoint:
    return w if isinstance(w, KernelPoint) else KernelPoint(complex(w))


def szego_norm(w, p: float, ctl: SeriesControl = DEFAULT_CONTROL) -> float:
    """||k_w||_p via the squared-binomial series (p > 0)."""
    p = float(p)
    if not p > 0 or math.isinf(p):
        raise ValueError("p must be a positive finite exponent")
    pt = _point(w)
    tally = sum_series(
        1.0,
        lambda n: ((n + p / 2.0) / (n + 1.0)) ** 2 * pt.r,
        pt.r,
        ctl,
    )
    total = require_converged(tally, f"szego_norm(w={pt.w}, p={p})")
    return total ** (1.0 / p)


@dataclass(frozen=True)
class ExtremalKernelNorm:
    """Closed form and independently summed series for the same quantity."""

    closed_form: float
    series: float


def extremal_kernel_norm(
    w, q: float, p_power: float = 1.0, ctl: SeriesControl = DEFAULT_CONTROL
) -> ExtremalKernelNorm:
    """((1-r)^{-1/q*})^{p_power} with its binomial-series cross-check.

    The two routes must agree within 10x the series tolerance; a larger
    discrepancy is reported as nonconvergence.
    """
    q = float(q)
    if not q > 1:
        raise ValueError("q must exceed 1")
    pt = _point(w)
    s = float(p_power) / conjugate(q)
    closed = (1.0 - pt.r) ** (-s)
    tally = sum_series(1.0, lambda n: (n + s) / (n + 1.0) * pt.r, pt.r, ctl)
    total = require_converged(tally, f"extremal_kernel_norm(w={pt.w}, q={q})")
    if abs(total - closed) > 10.0 * ctl.rel_tol * max(abs(closed), 1.0) + tally.tail_bound:
        raise ArithmeticError(
            f"series {total!r} and closed form {closed!r} disagree beyond tolerance"
        )
    return ExtremalKernelNorm(closed_form=closed, series=total)


@dataclass(frozen=True)
class CoefficientReport:
    """Coefficientwise comparison of the two norm series.

    ``margins[n-1]`` is binom(n-1+p/q*, n) - binom(n-1+p/2, n)^2 for
    n = 1..n_max; ``factor_margins[j-1]`` is the per-factor estimate
    j(j-1+(p/2)^2) - (j-1+p/2)^2 >= 0 that proves the sufficient
    direction.  ``first_violation`` is the smallest n with a negative
    margin, or None.
    """

    q: float
    p: float
    n_max: int
    first_violation: int | None
    margins: tuple[float, ...]
    factor_margins: tuple[float, ...]

    @property
    def passed(self) -> bool:
        return self.first_violation is None

    def to_json_dict(self) -> dict:
        return {
            "q": self.q,
            "p": self.p,
            "n_max": self.n_max,
            "first_violation": self.first_violation,
            "margins": list(self.margins),
            "factor_margins": list(self.factor_margins),
        }


def coefficient_check(q: float, p: float, n_max: int = 50) -> CoefficientReport:
    """Compare the extremal-kernel and Szego norm series term by term.

    The operative inequality binom(n-1+p/q*, n) >= binom(n-1+p/2, n)^2
    holds for every n iff p <= 4/q*; for larger p the n = 1 term
    p/q* >= (p/2)^2 already fails.
    """
    q = float(q)
    p = float(p)
    if not q > 1:
        raise ValueError("q must exceed 1")
    if not p > 0:
        raise ValueError("p must be positive")
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    s = p / conjugate(q)
    t = p / 2.0
    margins = []
    first_violation = None
    lhs = 1.0
    rhs = 1.0
    for n in range(1, n_max + 1):
        lhs *= (s + n - 1.0) / n
        rhs *= (t + n - 1.0) / n
        m = lhs - rhs * rhs
        margins.append(m)
        if first_violation is None and m < -1e-13 * max(abs(lhs), rhs * rhs, 1e-30):
            first_violation = n
    factor_margins = tuple(
        j * (j - 1.0 + t * t) - (j - 1.0 + t) ** 2 for j in range(1, n_max + 1)
    )
    return CoefficientReport(
        q=q,
        p=p,
        n_max=n_max,
        first_violation=first_violation,
        margins=tuple(margins),
        factor_margins=factor_margins,
    )


def point_extremal_function(
    w, q_star: float, n_per_axis: int = 256, offset: float = 0.5
) -> GridFunction:
    """Principal-branch samples of (1 - conj(w) z)^{-2/q*}, C = 1.

    For q* = 2 this is the Szego kernel itself.
    """
    q_star = float(q_star)
    if not q_star >= 1:
        raise ValueError("q_star must be >= 1")
    pt = _point(w)
    z = np.exp(1j * axis_angles(n_per_axis, offset))
    base = 1.0 - np.conj(pt.w) * z
    vals = base ** (-2.0 / q_star)
    return GridFunction(dim=1, n_per_axis=n_per_axis, samples=vals, offset=offset)


def szego_kernel_grid(w, n_per_axis: int = 256, offset: float = 0.5) -> GridFunction:
    """Samples of k_w(z) = 1/(1 - conj(w) z)."""
    return point_extremal_function(w, 2.0, n_per_axis, offset)


def truncated_szego_poly(w, degree: int) -> TrigPoly:
    """Degree-``degree`` Taylor truncation of k_w: sum of conj(w)^n z^n."""
    pt = _point(w)
    if degree < 0:
        raise ValueError("degree must be >= 0")
    wbar = np.conj(complex(pt.w))
    coeffs = {}
    term = 1.0 + 0.0j
    for n in range(degree + 1):
        coeffs[(n,)] = term
        term *= wbar
    return TrigPoly(1, coeffs)


def poisson_kernel(w, n_per_axis: int = 256, offset: float = 0.5) -> GridFunction:
    """Poisson kernel (1 - |w|^2)/|1 - conj(w) e^{i theta}|^2 (real part >= 0)."""
    pt = _point(w)
    z = np.exp(1j * axis_angles(n_per_axis, offset))
    vals = (1.0 - pt.r) / np.abs(1.0 - np.conj(pt.w) * z) ** 2
    return GridFunction(
        dim=1, n_per_axis=n_per_axis, samples=vals.astype(np.complex128), offset=offset
    )
