"""Inner-outer machinery and dual extremal problems on the circle.

Two groups of tools:

* Factorization helpers: the outer function with prescribed boundary
  modulus (exponentiate the analytic completion of log m), finite
  Blaschke products, and checks for the geometric-mean bound
  exp(mean log |P+ psi|) <= ||psi||_1 together with its equality
  certificate (conj(I) psi >= 0 a.e. for the inner factor I of P+ psi).

* The dual extremal problem for an analytic polynomial phi and
  1 < q < inf:

      minimize ||phi + conj(phi0)||_q over phi0 in H^q with phi0(0)=0,

  solved as a smooth convex program in the truncated coefficients of
  phi0 (quasi-Newton with line search).  The dual witness
  f = N_q(psi) certifies optimality: for analytic f,
  |<f, phi>| / ||f||_{q*} is a lower bound for the minimum, so the
  duality gap sandwiches the value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np
from scipy.optimize import minimize

from .fourier import (
    GridFunction,
    TrigPoly,
    axis_angles,
    coefficients,
    grid_inner,
    grid_spectrum,
    riesz_project,
    sample,
)
from .norms import conjugate, lp_norm, nonlinear_map
from .series import NonconvergenceError


# ---------------------------------------------------------------------------
# factorization
# ---------------------------------------------------------------------------


def outer_from_modulus(m: GridFunction) -> GridFunction:
    """Outer function with boundary modulus m (d=1, m > 0 on the grid).

    Doubles the positive frequencies of log m, keeps the mean, drops the
    negatives, and exponentiates; the value at the origin is then
    exp(mean log m) > 0.
    """
    if m.dim != 1:
        raise ValueError("outer_from_modulus is defined for dim=1 only")
    vals = m.samples
    if np.max(np.abs(vals.imag)) > 1e-12 * max(1.0, float(np.max(np.abs(vals)))):
        raise ValueError("modulus data must be real")
    mags = vals.real
    if mags.min() <= 0.0:
        raise ValueError("modulus data must be strictly positive")
    log_m = m.with_samples(np.log(mags).astype(np.complex128))
    spec = grid_spectrum(log_m)
    n = m.n_per_axis
    freqs = np.fft.fftfreq(n, d=1.0 / n).astype(int)
    weight = np.zeros(n)
    weight[freqs == 0] = 1.0
    weight[freqs > 0] = 2.0  # negative and Nyquist bins stay zero
    analytic = spec * weight
    from .fourier import grid_from_spectrum

    completion = grid_from_spectrum(analytic, 1, n, m.offset)
    return m.with_samples(np.exp(completion.samples))


def blaschke_product(
    zeros: Sequence[complex], n_per_axis: int = 256, offset: float = 0.5
) -> GridFunction:
    """Finite Blaschke product with the given zeros (|a| < 1 required).

    Each factor is (|a|/a)(a - z)/(1 - conj(a) z), normalized to be
    positive at the origin; a zero at the origin contributes a factor z.
    """
    z = np.exp(1j * axis_angles(n_per_axis, offset))
    out = np.ones_like(z)
    for a in zeros:
        a = complex(a)
        if not abs(a) < 1.0:
            raise ValueError(f"Blaschke zero |{a}| must be < 1")
        if a == 0:
            out = out * z
        else:
            out = out * (abs(a) / a) * (a - z) / (1.0 - np.conj(a) * z)
    return GridFunction(dim=1, n_per_axis=n_per_axis, samples=out, offset=offset)


@dataclass(frozen=True)
class Factorization:
    """Inner-outer data: zeros of the Blaschke part, a unimodular
    constant, and the boundary modulus of the outer part."""

    inner_zeros: tuple[complex, ...]
    unimodular_constant: complex
    outer_modulus: GridFunction

    def __post_init__(self) -> None:
        if abs(abs(self.unimodular_constant) - 1.0) > 1e-12:
            raise ValueError("constant must be unimodular")

    def boundary_samples(self) -> GridFunction:
        """Samples of constant * (Blaschke) * (outer from modulus)."""
        g = self.outer_modulus
        inner = blaschke_product(self.inner_zeros, g.n_per_axis, g.offset)
        outer = outer_from_modulus(g)
        return g.with_samples(self.unimodular_constant * inner.samples * outer.samples)


class L1BoundCheck(NamedTuple):
    """lhs = exp(mean log |P+ psi|), rhs = ||psi||_1, gap = rhs - lhs."""

    lhs: float
    rhs: float
    gap: float


def geometric_mean_l1_check(psi: GridFunction) -> L1BoundCheck:
    """Evaluate the geometric-mean bound for the projection (d=1)."""
    if psi.dim != 1:
        raise ValueError("check is defined for dim=1 only")
    projected = riesz_project(psi)
    lhs = lp_norm(projected, 0.0)
    rhs = lp_norm(psi, 1.0)
    return L1BoundCheck(lhs=lhs, rhs=rhs, gap=rhs - lhs)


class EqualityCertificate(NamedTuple):
    holds: bool
    min_real: float
    max_imag: float


def l1_equality_certificate(
    psi: GridFunction, inner_zeros: Sequence[complex], tol: float = 1e-8
) -> EqualityCertificate:
    """Check conj(I) psi >= 0 on the grid for the inner function I with
    the given zeros; this is the equality condition in the L^1 bound."""
    inner = blaschke_product(inner_zeros, psi.n_per_axis, psi.offset)
    u = np.conj(inner.samples) * psi.samples
    min_real = float(u.real.min())
    max_imag = float(np.abs(u.imag).max())
    return EqualityCertificate(
        holds=(min_real >= -tol and max_imag <= tol),
        min_real=min_real,
        max_imag=max_imag,
    )


def holder_equality_residual(f: GridFunction, q_star: float) -> float:
    """| ||psi||_q ||f||_{q*} - <f, psi> | for psi = N_{q*} f.

    Vanishes identically: the nonlinear map builds the function that
    saturates Holder against f.
    """
    q_star = float(q_star)
    q = conjugate(q_star)
    psi = nonlinear_map(f, q_star)
    lhs = lp_norm(psi, q) * lp_norm(f, q_star)
    rhs = grid_inner(f, psi).real
    return abs(lhs - rhs)


# ---------------------------------------------------------------------------
# dual extremal solver
# ---------------------------------------------------------------------------


@dataclass
class ExtremalTriple:
    """Solution bundle of the dual extremal problem.

    natural_kernel:    the analytic datum phi
    extremal_kernel:   psi = phi + conj(phi0) attaining the minimum
    extremal_function: f = N_q(psi), the dual witness with psi = N_{q*} f
    value:             ||psi||_q = sup |<f, phi>| / ||f||_{q*}
    """

    natural_kernel: TrigPoly
    extremal_kernel: GridFunction
    extremal_function: GridFunction
    value: float
    q: float
    q_star: float
    iterations: int
    duality_gap: float
    trunc_degree: int
    history: list[float] = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {
            "q": self.q,
            "q_star": self.q_star,
            "value": self.value,
            "duality_gap": self.duality_gap,
            "iterations": self.iterations,
            "trunc_degree": self.trunc_degree,
            "natural_kernel": self.natural_kernel.to_json_dict(),
            "extremal_kernel_coeffs": coefficients(
                self.extremal_kernel,
                min(
                    max(self.trunc_degree, self.natural_kernel.bandwidth()),
                    self.extremal_kernel.n_per_axis // 2 - 1,
                ),
            )
            .prune(1e-14)
            .to_json_dict(),
        }


def _next_pow2(n: int) -> int:
    out = 1
    while out < n:
        out *= 2
    return out


def dual_extremal_solve(
    phi: TrigPoly,
    q: float,
    trunc_degree: int | None = None,
    tol: float = 1e-6,
    n_per_axis: int | None = None,
    max_iter: int = 4000,
    record_history: bool = False,
    check_truncation: bool = False,
) -> ExtremalTriple:
    """Solve min ||phi + conj(phi0)||_q over truncated phi0 in H^q_0.

    Parameters
    ----------
    phi : analytic TrigPoly, d=1, not identically zero.
    q : exponent in [1.05, 64] (the solver's supported range).
    trunc_degree : degree cap for phi0.  When omitted, the cap starts at
        4x deg(phi) and doubles until the duality gap certifies ``tol``
        (the weak-duality witness sees the truncation tail, so a small
        gap certifies the untruncated optimum too).
    tol : required duality gap |primal - dual| at the solution.
    n_per_axis : quadrature grid; defaults to a power of two resolving
        4x the combined bandwidth.
    check_truncation : re-solve with twice the truncation degree and
        require the value to move by at most tol.

    Raises ``NonconvergenceError`` when the gap cannot be certified.
    """
    if phi.dim != 1:
        raise ValueError("dual_extremal_solve expects d=1 input")
    if not phi.coeffs:
        raise ValueError("phi must not be identically zero")
    if not phi.is_analytic():
        raise ValueError("phi must be analytic (nonnegative frequencies only)")
    q = float(q)
    if not 1.05 <= q <= 64.0:
        raise ValueError("q outside the supported range [1.05, 64]")

    deg = phi.bandwidth()
    if trunc_degree is not None:
        if trunc_degree < 1:
            raise ValueError("trunc_degree must be >= 1")
        caps = [int(trunc_degree)]
    else:
        # escalate the cap until the gap certifies tol
        k0 = max(4 * deg, 8)
        caps = [k0 * (2**i) for i in range(6)]
    last_exc: NonconvergenceError | None = None
    for cap in caps:
        try:
            triple = _solve_at_degree(
                phi, q, cap, tol, n_per_axis, max_iter, record_history
            )
            break
        except NonconvergenceError as exc:
            last_exc = exc
    else:
        raise last_exc  # type: ignore[misc]

    if check_truncation:
        refined = dual_extremal_solve(
            phi,
            q,
            trunc_degree=2 * triple.trunc_degree,
            tol=tol,
            max_iter=max_iter,
        )
        if abs(refined.value - triple.value) > tol:
            raise NonconvergenceError(
                f"value drifted {abs(refined.value - triple.value):.3e} when doubling "
                f"the truncation degree; tail not negligible"
            )
    return triple


def _solve_at_degree(
    phi: TrigPoly,
    q: float,
    trunc_degree: int,
    tol: float,
    n_per_axis: int | None,
    max_iter: int,
    record_history: bool,
) -> ExtremalTriple:
    q_star = conjugate(q)
    deg = phi.bandwidth()
    K = int(trunc_degree)
    n = int(n_per_axis) if n_per_axis is not None else max(256, _next_pow2(4 * (deg + K)))
    if n < 2 * (deg + K + 1):
        raise ValueError("grid too small for phi plus the truncated phi0")

    offset = 0.5
    phi_grid = sample(phi, n, offset)
    phi_s = phi_grid.samples
    ks = np.arange(1, K + 1)
    fwd_phase = np.exp(2j * np.pi * offset * ks / n)  # spectrum -> samples
    rev_phase = np.exp(-2j * np.pi * offset * ks / n)  # samples -> spectrum

    def unpack(x: np.ndarray) -> np.ndarray:
        return x[:K] + 1j * x[K:]

    def psi_samples(x: np.ndarray) -> np.ndarray:
        c = unpack(x)
        spec = np.zeros(n, dtype=np.complex128)
        spec[1 : K + 1] = c * fwd_phase
        phi0 = np.fft.ifft(spec) * n
        return phi_s + np.conj(phi0)

    def fun_and_grad(x: np.ndarray):
        psi = psi_samples(x)
        a = np.abs(psi)
        F = float(np.mean(a**q))
        with np.errstate(divide="ignore", invalid="ignore"):
            nq = np.where(a > 0, a ** (q - 2.0) * psi, 0.0)
        h_hat = np.fft.fft(np.conj(nq))[1 : K + 1] / n * rev_phase
        grad = q * np.concatenate([h_hat.real, h_hat.imag])
        return F, grad

    history: list[float] = []

    def callback(xk: np.ndarray) -> None:
        psi = psi_samples(xk)
        history.append(float(np.mean(np.abs(psi) ** q)) ** (1.0 / q))

    x0 = np.zeros(2 * K)
    result = minimize(
        fun_and_grad,
        x0,
        jac=True,
        method="L-BFGS-B",
        callback=callback if record_history else None,
        options={"maxiter": max_iter, "ftol": 1e-18, "gtol": 1e-14, "maxcor": 30},
    )

    psi = psi_samples(result.x)
    psi_grid = phi_grid.with_samples(psi)
    primal = lp_norm(psi_grid, q)
    f_grid = nonlinear_map(psi_grid, q)
    f_analytic = riesz_project(f_grid)
    denom = lp_norm(f_analytic, q_star)
    dual = abs(grid_inner(f_analytic, phi_grid)) / denom if denom > 0 else 0.0
    gap = primal - dual
    if not math.isfinite(gap) or gap > tol:
        raise NonconvergenceError(
            f"duality gap {gap:.3e} above tol={tol:.1e} after {result.nit} iterations"
        )

    return ExtremalTriple(
        natural_kernel=phi,
        extremal_kernel=psi_grid,
        extremal_function=f_grid,
        value=primal,
        q=q,
        q_star=q_star,
        iterations=int(result.nit),
        duality_gap=float(gap),
        trunc_degree=K,
        history=history,
    )
