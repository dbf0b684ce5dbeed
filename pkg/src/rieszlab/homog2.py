"""The perturbed 2-homogeneous family on the two-torus.

The family is built from the analytic polynomial

    f = z1 z2 + eps (z1^2 - z2^2),      0 < eps < 1/4,

whose modulus satisfies |f|^2 = 1 + eps^2 |z1^2 - z2^2|^2 on T^2.  With
psi = N_{q*} f (so ||psi||_q^q = ||f||_{q*}^{q*}) and phi = P+ psi, all
norms of interest reduce to scalar series in eps^2:

    ||psi||_q^q = sum_j binom(q*/2, j)   C(2j, j)   eps^{2j}
    a           = sum_j binom(q*/2-1, j) C(2j, j)   eps^{2j}
    b           = sum_j binom(q*/2-1, j) C(2j+1, j+1) eps^{2j}
    phi         = a z1 z2 + eps b (z1^2 - z2^2)
    ||phi||_p   = a (sum_j binom(p/2, j) C(2j, j) (b eps/a)^{2j})^{1/p}
    ||phi||_0   = a exp( (1/2) sum_{j>=1} ((-1)^{j+1}/j) C(2j, j) (b eps/a)^{2j} )

Everything stays 2-homogeneous (coefficient support on the line
alpha_1 + alpha_2 = 2), which pins the structure of P+ psi to the two
coefficients (a, b).  The threshold scan locates the exponent p at which
||phi||_p crosses ||psi||_q and extrapolates it to eps -> 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .fourier import GridFunction, TrigPoly, sample
from .norms import conjugate, lp_norm, nonlinear_map
from .series import (
    DEFAULT_CONTROL,
    SeriesControl,
    central_binomial,
    general_binomial,
    require_converged,
    sum_series,
)

#: Series convergence guard: the projection norm series is summed only
#: while b*eps/a < 1/2 (radius of the central-binomial series); beyond
#: it the quadrature route takes over.
SERIES_GUARD = 0.5


def base_polynomial() -> TrigPoly:
    """z1 z2, the unperturbed extremal of the family."""
    return TrigPoly.monomial((1, 1))


def perturbation_polynomial() -> TrigPoly:
    """z1^2 - z2^2, the even 2-homogeneous perturbation direction."""
    return TrigPoly(2, {(2, 0): 1.0, (0, 2): -1.0})


def family_polynomial(eps: float) -> TrigPoly:
    return base_polynomial() + perturbation_polynomial().scale(float(eps))


def perturbation_even_norm(j: int) -> float:
    """||z1^2 - z2^2||_{2j}^{2j} = C(2j, j) (central binomial)."""
    if j < 0:
        raise ValueError("j must be nonnegative")
    return central_binomial(j)


@dataclass(frozen=True)
class PerturbedFamily:
    """Family member: perturbation size eps and conjugate exponent q*."""

    eps: float
    q_star: float
    ctl: SeriesControl = field(default=DEFAULT_CONTROL)

    def __post_init__(self) -> None:
        if not 0.0 < self.eps < 0.25:
            raise ValueError("eps must lie in (0, 1/4)")
        if not self.q_star >= 1.0:
            raise ValueError("q_star must be >= 1")

    @property
    def q(self) -> float:
        return conjugate(self.q_star) if self.q_star > 1 else math.inf


def build_family(
    eps: float, q_star: float, n_per_axis: int = 128, offset: float = 0.5
) -> tuple[TrigPoly, GridFunction]:
    """Return (f, psi) with psi = N_{q*} f sampled on the N^2 grid."""
    fam = PerturbedFamily(eps=float(eps), q_star=float(q_star))
    f = family_polynomial(fam.eps)
    psi = nonlinear_map(sample(f, n_per_axis, offset), fam.q_star)
    return f, psi


def kernel_polynomial(fam: PerturbedFamily) -> TrigPoly:
    """psi = N_{q*} f as an exact TrigPoly when q* is an even integer.

    |f|^{q*-2} f = f^{q*/2} conj(f)^{q*/2 - 1} is then a polynomial.
    """
    half = fam.q_star / 2.0
    if abs(half - round(half)) > 1e-12 or round(half) < 1:
        raise ValueError("exact kernel polynomial needs q* an even integer >= 2")
    m = int(round(half))
    f = family_polynomial(fam.eps)
    out = TrigPoly.monomial((0, 0))
    for _ in range(m):
        out = out * f
    fc = f.conjugate()
    for _ in range(m - 1):
        out = out * fc
    return out


def _central_series(s: float, x2: float, ctl: SeriesControl, what: str) -> float:
    """sum_j binom(s, j) C(2j, j) x2^j."""
    tally = sum_series(
        1.0,
        lambda j: (s - j) / (j + 1.0) * (2.0 * (2 * j + 1.0) / (j + 1.0)) * x2,
        4.0 * x2,
        ctl,
    )
    return require_converged(tally, what)


def kernel_norm_series(fam: PerturbedFamily, q: float) -> float:
    """||psi||_q from the eps^2 series; q must be conjugate to fam.q_star."""
    q = float(q)
    expected = fam.q
    if math.isinf(expected):
        if not math.isinf(q):
            raise ValueError("family with q*=1 measures psi in L^inf")
        return 1.0  # |psi| = 1 pointwise
    if abs(q - expected) > 1e-12 * max(1.0, expected):
        raise ValueError(f"q={q} does not conjugate fam.q_star={fam.q_star}")
    total = _central_series(
        fam.q_star / 2.0, fam.eps**2, fam.ctl, f"kernel_norm_series(q*={fam.q_star})"
    )
    return total ** (1.0 / q)


class ProjectionCoefficients:
    """Coefficients (a, b) of P+ psi = a z1 z2 + eps b (z1^2 - z2^2)."""

    __slots__ = ("a", "b")

    def __init__(self, a: float, b: float):
        self.a = a
        self.b = b

    def __iter__(self):
        yield self.a
        yield self.b

    def __repr__(self) -> str:
        return f"ProjectionCoefficients(a={self.a!r}, b={self.b!r})"


def projection_coefficients(fam: PerturbedFamily) -> ProjectionCoefficients:
    s = fam.q_star / 2.0 - 1.0
    x2 = fam.eps**2
    a = _central_series(s, x2, fam.ctl, f"projection a(q*={fam.q_star})")
    tally_b = sum_series(
        1.0,  # j=0: binom(s,0) C(1,1) = 1
        lambda j: (s - j)
        / (j + 1.0)
        * ((2 * j + 3.0) * (2 * j + 2.0) / ((j + 2.0) * (j + 1.0)))
        * x2,
        4.0 * x2,
        fam.ctl,
    )
    b = require_converged(tally_b, f"projection b(q*={fam.q_star})")
    return ProjectionCoefficients(a=a, b=b)


def projection_polynomial(fam: PerturbedFamily) -> TrigPoly:
    """P+ psi as an exact two-term polynomial built from (a, b)."""
    a, b = projection_coefficients(fam)
    return base_polynomial().scale(a) + perturbation_polynomial().scale(fam.eps * b)


def projection_norm_series(fam: PerturbedFamily, p: float) -> float:
    """||P+ psi||_p from the series; p = 0 gives the geometric mean.

    Falls back to quadrature if the series argument b*eps/a leaves the
    convergence disc (cannot happen for eps < 1/4 with moderate q*).
    """
    p = float(p)
    if p < 0:
        raise ValueError("p must be >= 0")
    a, b = projection_coefficients(fam)
    x = b * fam.eps / a
    if math.isinf(p):
        # |phi|^2 = a^2 + 4 (b eps)^2 sin^2(t1 - t2) peaks at sin^2 = 1
        return a * math.sqrt(1.0 + 4.0 * x * x)
    if not abs(x) < SERIES_GUARD:
        phi = projection_polynomial(fam)
        return lp_norm(sample(phi, 128), p)
    x2 = x * x
    if p == 0.0:
        tally = sum_series(
            2.0 * x2,  # j=1 term: (1/1) C(2,1) x^2
            lambda j: -( (j + 1.0) / (j + 2.0)) * (2.0 * (2 * j + 3.0) / (j + 2.0)) * x2,
            4.0 * x2,
            fam.ctl,
        )
        log_sum = require_converged(tally, "projection geometric-mean series")
        return a * math.exp(0.5 * log_sum)
    total = _central_series(p / 2.0, x2, fam.ctl, f"projection norm series(p={p})")
    return a * total ** (1.0 / p)


def projection_geometric_mean_closed(fam: PerturbedFamily) -> float:
    """Independent closed form for ||P+ psi||_0.

    On the grid |phi|^2 = a^2 + 4 eps^2 b^2 sin^2(t1 - t2), and the
    geometric mean of A + B cos has the classical closed form
    ((A + sqrt(A^2 - B^2))/2)^{1/2}; this collapses to
    a (1 + sqrt(1 + 4 x^2))/2 with x = b eps / a.
    """
    a, b = projection_coefficients(fam)
    x = b * fam.eps / a
    return a * (1.0 + math.sqrt(1.0 + 4.0 * x * x)) / 2.0


# ---------------------------------------------------------------------------
# threshold scan
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScanRow:
    eps: float
    threshold_p: float | None
    a: float
    b: float
    psi_norm: float
    gm_gap: float  # ||phi||_0 - ||psi||_q (positive = violation at p=0)


@dataclass(frozen=True)
class ThresholdScan:
    q: float
    q_star: float
    rows: tuple[ScanRow, ...]
    extrapolated: float | None
    metadata: dict

    def to_json_dict(self) -> dict:
        return {
            "q": self.q,
            "q_star": self.q_star,
            "extrapolated": self.extrapolated,
            "rows": [
                {
                    "eps": r.eps,
                    "threshold_p": r.threshold_p,
                    "a": r.a,
                    "b": r.b,
                    "psi_norm": r.psi_norm,
                    "gm_gap": r.gm_gap,
                }
                for r in self.rows
            ],
            "metadata": self.metadata,
        }


def threshold_scan(
    q: float,
    eps_list: tuple[float, ...] = (0.08, 0.04, 0.02),
    p_lo: float = 0.05,
    p_hi: float = 4.5,
    resolution: float = 1e-4,
    ctl: SeriesControl = DEFAULT_CONTROL,
) -> ThresholdScan:
    """Largest p with ||P+ psi||_p <= ||psi||_q for each eps, then the
    Richardson limit in eps^2 of those thresholds.

    ||phi||_p is increasing in p, so the crossing is located by
    bisection to ``resolution``.  A row reports ``threshold_p = None``
    when even p = p_lo violates the bound (no positive p survives on
    the scanned range).
    """
    q = float(q)
    q_star = conjugate(q)
    rows = []
    for eps in sorted(eps_list, reverse=True):
        fam = PerturbedFamily(eps=float(eps), q_star=q_star, ctl=ctl)
        psi_norm = kernel_norm_series(fam, q)
        a, b = projection_coefficients(fam)
        gm_gap = projection_norm_series(fam, 0.0) - psi_norm

        def diff(p: float) -> float:
            return projection_norm_series(fam, p) - psi_norm

        if diff(p_lo) > 0.0:
            threshold = None
        elif diff(p_hi) <= 0.0:
            threshold = p_hi
        else:
            lo, hi = p_lo, p_hi
            while hi - lo > resolution:
                mid = 0.5 * (lo + hi)
                if diff(mid) <= 0.0:
                    lo = mid
                else:
                    hi = mid
            threshold = 0.5 * (lo + hi)
        rows.append(
            ScanRow(
                eps=float(eps),
                threshold_p=threshold,
                a=a,
                b=b,
                psi_norm=psi_norm,
                gm_gap=gm_gap,
            )
        )

    extrapolated = None
    found = [(r.eps, r.threshold_p) for r in rows if r.threshold_p is not None]
    if len(found) >= 2:
        (e1, t1), (e2, t2) = found[-2], found[-1]  # e2 is the smallest eps
        extrapolated = (t2 * e1**2 - t1 * e2**2) / (e1**2 - e2**2)
    return ThresholdScan(
        q=q,
        q_star=q_star,
        rows=tuple(rows),
        extrapolated=extrapolated,
        metadata={
            "eps_list": [float(e) for e in eps_list],
            "p_lo": p_lo,
            "p_hi": p_hi,
            "resolution": resolution,
            "max_terms": ctl.max_terms,
            "rel_tol": ctl.rel_tol,
        },
    )
