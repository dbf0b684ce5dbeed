"""Empirical search for violations of ||P+ psi||_p <= ||psi||_q.

Candidates come from four families -- seeded random polynomials, the
point-kernel family over w (d=1), the perturbed 2-homogeneous family
over eps (d=2), and frequency-shifted spherical Dirichlet kernels --
followed by coordinate-wise ascent on the coefficients of the best
candidates.  A certificate is emitted only when the measured ratio
clears 1 + RATIO_MARGIN *and* survives re-verification on a grid of
twice the resolution; merely grazing 1 proves nothing at grid accuracy.

Everything is deterministic for a fixed seed: candidates are generated
up front, evaluated in a fixed order (optionally on a thread pool,
which does not change the reduction order), and ties are broken by
candidate index.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .config import RunConfig, thread_count
from .dirichlet import DirichletSpec, MAX_RADIUS, lattice_points
from .fourier import GridFunction, TrigPoly, coefficients, riesz_project, sample
from .homog2 import PerturbedFamily, kernel_polynomial
from .kernels import point_extremal_function
from .norms import conjugate, lp_norm, nonlinear_map

#: A ratio must exceed 1 by this margin to count as a violation.
RATIO_MARGIN = 1e-8


def projection_ratio(psi: TrigPoly, p: float, q: float, n_per_axis: int, offset: float = 0.5) -> float:
    """||P+ psi||_p / ||psi||_q with the projection done exactly in
    coefficient space and both norms by grid quadrature."""
    denom = lp_norm(sample(psi, n_per_axis, offset), q)
    if denom == 0.0:
        raise ValueError("psi vanishes identically")
    projected = riesz_project(psi)
    if not projected.coeffs:
        return 0.0
    num = lp_norm(sample(projected, n_per_axis, offset), p)
    return num / denom


@dataclass(frozen=True)
class ViolationCertificate:
    """Self-contained, re-checkable record of an observed violation."""

    dim: int
    q: float
    p: float
    psi: TrigPoly
    ratio: float
    seed: int
    n_per_axis: int
    offset: float
    family: str

    @property
    def valid(self) -> bool:
        return self.ratio > 1.0 + RATIO_MARGIN

    def recompute_ratio(self, scale: int = 1) -> float:
        n = self.n_per_axis * scale
        n = max(n, 2 * (self.psi.bandwidth() + 1))
        n += n % 2
        return projection_ratio(self.psi, self.p, self.q, n, self.offset)

    def to_json_dict(self) -> dict:
        return {
            "dim": self.dim,
            "q": self.q,
            "p": self.p,
            "ratio": self.ratio,
            "seed": self.seed,
            "n_per_axis": self.n_per_axis,
            "offset": self.offset,
            "family": self.family,
            "psi": self.psi.to_json_dict(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, doc: dict) -> "ViolationCertificate":
        return cls(
            dim=int(doc["dim"]),
            q=float(doc["q"]),
            p=float(doc["p"]),
            psi=TrigPoly.from_json_dict(doc["psi"]),
            ratio=float(doc["ratio"]),
            seed=int(doc["seed"]),
            n_per_axis=int(doc["n_per_axis"]),
            offset=float(doc["offset"]),
            family=str(doc["family"]),
        )


@dataclass
class SearchResult:
    certificate: ViolationCertificate | None
    best_ratio: float
    best_family: str
    evaluations: int
    dim: int
    q: float
    p: float
    seed: int

    def to_json_dict(self) -> dict:
        return {
            "found": self.certificate is not None,
            "best_ratio": self.best_ratio,
            "best_family": self.best_family,
            "evaluations": self.evaluations,
            "dim": self.dim,
            "q": self.q,
            "p": self.p,
            "seed": self.seed,
            "certificate": self.certificate.to_json_dict() if self.certificate else None,
            "method": "finite empirical search; no certificate proves nothing",
        }


# ---------------------------------------------------------------------------
# candidate families
# ---------------------------------------------------------------------------


def _random_poly(rng: np.random.Generator, dim: int, max_degree: int) -> TrigPoly:
    rng_degree = int(rng.integers(1, max_degree + 1))
    span = range(-rng_degree, rng_degree + 1)
    coeffs = {}
    for alpha in np.ndindex(*([2 * rng_degree + 1] * dim)):
        idx = tuple(a - rng_degree for a in alpha)
        re, im = rng.standard_normal(2)
        coeffs[idx] = complex(re, im)
    return TrigPoly(dim, coeffs)


def _kernel_family_candidates(q: float, n_per_axis: int, cutoff: int = 24) -> list[tuple[str, TrigPoly]]:
    """Truncated minimal kernels psi_w = N_{q*} (1-conj(w)z)^{-2/q*}."""
    q_star = conjugate(q)
    out = []
    for r_pow in (0.02, 0.05, 0.1, 0.2, 0.4):
        w = math.sqrt(r_pow)
        f = point_extremal_function(w, q_star, n_per_axis)
        psi_grid = nonlinear_map(f, q_star)
        psi = coefficients(psi_grid, cutoff).prune(1e-13)
        out.append((f"kernel(w={w:.4f})", psi))
    return out


def _homog2_candidates(q: float, n_per_axis: int) -> list[tuple[str, TrigPoly]]:
    q_star = conjugate(q)
    out = []
    for eps in (0.02, 0.05, 0.1, 0.2):
        fam = PerturbedFamily(eps=eps, q_star=q_star)
        half = q_star / 2.0
        if abs(half - round(half)) < 1e-12 and round(half) >= 1:
            psi = kernel_polynomial(fam)
        else:
            from .homog2 import build_family

            _, psi_grid = build_family(eps, q_star, n_per_axis)
            psi = coefficients(psi_grid, min(16, n_per_axis // 2 - 1)).prune(1e-13)
        out.append((f"homog2(eps={eps})", psi))
    return out


def _shifted_dirichlet_candidates(
    rng: np.random.Generator, dim: int, count: int
) -> list[tuple[str, TrigPoly]]:
    """Spherical kernels with the spectrum shifted so the projection
    cuts through the ball."""
    out = []
    max_r = {1: 12.0, 2: 6.0, 3: 3.0}[dim]
    for _ in range(count):
        radius = float(rng.integers(1, int(max_r) + 1))
        pts = lattice_points(radius, dim)
        beta = rng.integers(0, int(radius) + 1, size=dim)
        coeffs = {tuple(int(v) for v in row - beta): 1.0 + 0.0j for row in pts}
        out.append((f"dirichlet(R={radius},shift={tuple(int(b) for b in beta)})", TrigPoly(dim, coeffs)))
    return out


def _ascend(
    psi: TrigPoly,
    p: float,
    q: float,
    n_per_axis: int,
    offset: float,
    steps: int,
) -> tuple[TrigPoly, float, int]:
    """Coordinate-wise ascent on coefficient real/imag parts."""
    best = psi
    best_ratio = projection_ratio(psi, p, q, n_per_axis, offset)
    evals = 1
    step = 0.1
    keys = sorted(best.coeffs.keys())
    while evals < steps and step > 1e-4:
        improved = False
        for alpha in keys:
            base = best.coeffs.get(alpha, 0.0 + 0.0j)
            scale = max(abs(base), 0.1)
            for delta in (step * scale, -step * scale, 1j * step * scale, -1j * step * scale):
                if evals >= steps:
                    break
                trial_coeffs = dict(best.coeffs)
                trial_coeffs[alpha] = base + delta
                trial = TrigPoly(best.dim, trial_coeffs)
                if not trial.coeffs:
                    continue
                ratio = projection_ratio(trial, p, q, n_per_axis, offset)
                evals += 1
                if ratio > best_ratio * (1.0 + 1e-12):
                    best, best_ratio = trial, ratio
                    base = trial.coeffs.get(alpha, 0.0 + 0.0j)
                    improved = True
        if not improved:
            step *= 0.5
    return best, best_ratio, evals


def violation_search(
    dim: int,
    q: float,
    p: float,
    budget: int = 200,
    config: RunConfig | None = None,
    seed: int | None = None,
) -> SearchResult:
    """Maximize the projection ratio over the candidate families.

    ``budget`` caps the total number of ratio evaluations (roughly);
    40% goes to scanning the families, the rest to local ascent from
    the best candidate.  Deterministic for fixed seed.
    """
    cfg = config or RunConfig()
    seed = cfg.seed if seed is None else int(seed)
    if dim < 1 or dim > 3:
        raise ValueError("search supports d in {1, 2, 3}")
    if not q >= 1:
        raise ValueError("q must be >= 1")
    if not p >= 0:
        raise ValueError("p must be >= 0")
    n = cfg.grid_for(dim)
    rng = np.random.default_rng(seed)

    candidates: list[tuple[str, TrigPoly]] = []
    n_random = max(4, int(budget * 0.25))
    for _ in range(n_random):
        candidates.append(("random", _random_poly(rng, dim, min(cfg.max_degree, 8 // dim + 2))))
    if dim == 1 and q > 1:
        candidates.extend(_kernel_family_candidates(q, max(n, 256)))
    if dim == 2 and q > 1:
        candidates.extend(_homog2_candidates(q, n))
    candidates.extend(_shifted_dirichlet_candidates(rng, dim, count=max(4, budget // 20)))

    def evaluate(item: tuple[str, TrigPoly]) -> float:
        name, poly = item
        needed = 2 * (poly.bandwidth() + 1)
        grid = n if n >= needed else needed + (needed % 2)
        return projection_ratio(poly, p, q, grid, cfg.offset)

    workers = thread_count(cfg.threads)
    if workers > 1 and len(candidates) > 8:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            ratios = list(pool.map(evaluate, candidates))
    else:
        ratios = [evaluate(c) for c in candidates]
    evaluations = len(candidates)

    order = sorted(range(len(candidates)), key=lambda i: (-ratios[i], i))
    best_idx = order[0]
    best_family, best_poly = candidates[best_idx]
    best_ratio = ratios[best_idx]

    ascent_budget = max(0, budget - evaluations)
    if ascent_budget > 10:
        needed = 2 * (best_poly.bandwidth() + 1)
        grid = n if n >= needed else needed + (needed % 2)
        improved, improved_ratio, used = _ascend(best_poly, p, q, grid, cfg.offset, ascent_budget)
        evaluations += used
        if improved_ratio > best_ratio:
            best_poly, best_ratio = improved, improved_ratio
            best_family = best_family + "+ascent"

    certificate = None
    if best_ratio > 1.0 + RATIO_MARGIN:
        needed = 2 * (best_poly.bandwidth() + 1)
        grid = n if n >= needed else needed + (needed % 2)
        cert = ViolationCertificate(
            dim=dim,
            q=float(q),
            p=float(p),
            psi=best_poly,
            ratio=best_ratio,
            seed=seed,
            n_per_axis=grid,
            offset=cfg.offset,
            family=best_family,
        )
        if cert.recompute_ratio(scale=2) > 1.0 + RATIO_MARGIN:
            certificate = cert

    return SearchResult(
        certificate=certificate,
        best_ratio=best_ratio,
        best_family=best_family,
        evaluations=evaluations,
        dim=dim,
        q=float(q),
        p=float(p),
        seed=seed,
    )
