"""Spherical Dirichlet kernels D_{R,d} = sum_{|alpha| <= R} z^alpha.

Experimental probe of small-exponent norm growth: for d > 1 and
0 < p <= 1 the L^p quasinorm grows like R^{(d-1)/2} (up to constants),
while d = 1 is the degenerate control with only logarithmic growth.
``growth_fit`` estimates the exponent by least squares on log-log data,
discarding the smallest radius as preasymptotic.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .fourier import GridFunction, TrigPoly, grid_from_spectrum
from .norms import lp_norm

#: Refuse to enumerate lattice balls beyond this many points.
LATTICE_CAP = 2_000_000

#: Dimension and radius guardrails for the desk-scale experiments.
MAX_DIM = 3
MAX_RADIUS = {1: 4096.0, 2: 40.0, 3: 12.0}


@dataclass(frozen=True)
class DirichletSpec:
    """Kernel parameters: Euclidean radius and dimension."""

    radius: float
    dim: int

    def __post_init__(self) -> None:
        if self.dim < 1 or self.dim > MAX_DIM:
            raise ValueError(f"dim must be in 1..{MAX_DIM}")
        if not 0.0 <= self.radius <= MAX_RADIUS[self.dim]:
            raise ValueError(
                f"radius {self.radius} outside [0, {MAX_RADIUS[self.dim]}] for d={self.dim}"
            )


def lattice_points(radius: float, dim: int) -> np.ndarray:
    """Integer points with Euclidean norm <= radius, shape (count, dim)."""
    m = int(math.floor(radius))
    side = 2 * m + 1
    if side**dim > LATTICE_CAP:
        raise ValueError(f"lattice ball would enumerate {side ** dim} points; cap is {LATTICE_CAP}")
    axes = np.meshgrid(*([np.arange(-m, m + 1)] * dim), indexing="ij")
    stacked = np.stack([a.ravel() for a in axes], axis=1)
    mask = (stacked.astype(float) ** 2).sum(axis=1) <= radius**2 + 1e-9
    return stacked[mask]


def lattice_count(radius: float, dim: int) -> int:
    return int(lattice_points(radius, dim).shape[0])


def spherical_dirichlet(spec: DirichletSpec) -> TrigPoly:
    """The kernel as a sparse polynomial with unit coefficients."""
    pts = lattice_points(spec.radius, spec.dim)
    return TrigPoly(spec.dim, {tuple(int(v) for v in row): 1.0 + 0.0j for row in pts})


def default_grid(spec: DirichletSpec, p: float) -> int:
    """Grid size resolving |D|^p: exact for even integer p, 4x
    oversampled otherwise.

    For p = 2m the integrand is band-limited with bandwidth 2mR per
    axis, so N = 2m*floor(R) + 2 integrates it exactly.  For other p
    the integrand has cusps on the kernel's zero set and the bandwidth
    rule N >= 2R+2 is quadrupled instead.
    """
    m = int(math.floor(spec.radius))
    even_integer = p > 0 and not math.isinf(p) and float(p).is_integer() and int(p) % 2 == 0
    n = int(p) * m + 2 if even_integer else 4 * (2 * m + 2)
    return n + (n % 2)


def dirichlet_kernel_grid(spec: DirichletSpec, n_per_axis: int, offset: float = 0.5) -> GridFunction:
    """Sample the kernel via a dense spectrum and one inverse FFT."""
    m = int(math.floor(spec.radius))
    if n_per_axis < 2 * m + 2:
        raise ValueError(f"grid {n_per_axis} does not resolve bandwidth {m}; need >= {2 * m + 2}")
    n = int(n_per_axis)
    spectrum = np.zeros((n,) * spec.dim, dtype=np.complex128)
    for row in lattice_points(spec.radius, spec.dim):
        spectrum[tuple(int(v) % n for v in row)] += 1.0
    return grid_from_spectrum(spectrum, spec.dim, n, offset)


def dirichlet_norm(spec: DirichletSpec, p: float, n_per_axis: int | None = None) -> float:
    """||D_{R,d}||_p; the sup norm is the lattice count exactly."""
    p = float(p)
    if math.isinf(p):
        return float(lattice_count(spec.radius, spec.dim))
    n = int(n_per_axis) if n_per_axis is not None else default_grid(spec, p)
    return lp_norm(dirichlet_kernel_grid(spec, n), p)


def _thread_count(threads: int | None = None) -> int:
    if threads is not None:
        return max(1, int(threads))
    env = os.environ.get("RIESZ_LAB_THREADS")
    if env:
        return max(1, int(env))
    return min(8, os.cpu_count() or 1)


@dataclass(frozen=True)
class GrowthFit:
    """Least-squares growth fit log||D|| ~ exponent * log R + intercept."""

    dim: int
    p: float
    exponent: float
    c_hat: float  # exp(p * intercept): implied constant for ||D||_p^p ~ c R^{p*exponent}
    radii: tuple[float, ...]
    norms: tuple[float, ...]
    target: float  # (d-1)/2, the predicted exponent for 0 < p <= 1

    def to_json_dict(self) -> dict:
        return {
            "dim": self.dim,
            "p": self.p,
            "exponent": self.exponent,
            "c_hat": self.c_hat,
            "radii": list(self.radii),
            "norms": list(self.norms),
            "target": self.target,
        }


def growth_fit(
    dim: int,
    p: float,
    radii,
    n_per_axis: int | None = None,
    threads: int | None = None,
) -> GrowthFit:
    """Fit the growth exponent of R -> ||D_{R,d}||_p.

    Needs at least four increasing radii; the smallest is kept in the
    report but excluded from the regression as preasymptotic.
    """
    radii = [float(r) for r in radii]
    if len(radii) < 4:
        raise ValueError("need at least 4 radii")
    if any(b <= a for a, b in zip(radii, radii[1:])):
        raise ValueError("radii must be strictly increasing")
    specs = [DirichletSpec(radius=r, dim=dim) for r in radii]

    def norm_of(spec: DirichletSpec) -> float:
        return dirichlet_norm(spec, p, n_per_axis)

    workers = _thread_count(threads)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            norms = list(pool.map(norm_of, specs))
    else:
        norms = [norm_of(s) for s in specs]

    log_r = np.log(np.asarray(radii[1:]))
    log_n = np.log(np.asarray(norms[1:]))
    slope, intercept = np.polyfit(log_r, log_n, 1)
    return GrowthFit(
        dim=dim,
        p=float(p),
        exponent=float(slope),
        c_hat=float(math.exp(float(p) * float(intercept))),
        radii=tuple(radii),
        norms=tuple(float(v) for v in norms),
        target=(dim - 1) / 2.0,
    )
