import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import nonzero_polys, trig_polys
from rieszlab.extremal import (
    Factorization,
    blaschke_product,
    dual_extremal_solve,
    geometric_mean_l1_check,
    holder_equality_residual,
    l1_equality_certificate,
    outer_from_modulus,
)
from rieszlab.fourier import TrigPoly, coefficients, grid_from_function, riesz_project, sample
from rieszlab.kernels import truncated_szego_poly
from rieszlab.norms import conjugate, lp_norm
from rieszlab.series import NonconvergenceError

WORKED_EXAMPLE = TrigPoly(1, {(-1,): 1.0, (1,): 2.0, (3,): 1.0})


# ---------------------------------------------------------------------------
# outer functions and Blaschke products
# ---------------------------------------------------------------------------


def test_outer_constant():
    grid = grid_from_function(lambda t: np.full_like(t, 3.0, dtype=complex), 1, 64)
    outer = outer_from_modulus(grid)
    assert np.allclose(outer.samples, 3.0, atol=1e-12)


def test_outer_reproduces_modulus():
    grid = grid_from_function(lambda t: np.abs(2.0 + np.exp(1j * t)), 1, 256)
    outer = outer_from_modulus(grid)
    assert np.allclose(np.abs(outer.samples), grid.samples.real, atol=1e-10)
    # analytic: negative-frequency content at noise level
    back = coefficients(outer, 100)
    neg = [abs(c) for a, c in back.coeffs.items() if a[0] < 0]
    assert max(neg, default=0.0) <= 1e-10
    # zero-frequency value is the geometric mean (= 2 for this modulus)
    assert back.coeff((0,)) == pytest.approx(2.0, rel=1e-10)


def test_outer_requires_positive_modulus():
    grid = grid_from_function(lambda t: np.cos(t), 1, 32)
    with pytest.raises(ValueError):
        outer_from_modulus(grid)


def disc_value(poly, z):
    """Evaluate the Taylor (analytic) part at an interior point."""
    return sum(c * z ** alpha[0] for alpha, c in poly.coeffs.items() if alpha[0] >= 0)


def test_blaschke_unimodular_and_zero():
    zeros = [0.5, -0.3 + 0.4j, 0.0]
    b = blaschke_product(zeros, 256)
    assert np.allclose(np.abs(b.samples), 1.0, atol=1e-12)
    # analytic in the disc: negative Taylor coefficients at noise level
    taylor = coefficients(b, 120)
    neg_mass = sum(abs(c) for a, c in taylor.coeffs.items() if a[0] < 0)
    assert neg_mass <= 1e-10  # ~120 bins of rounding noise
    # the rational function vanishes at each prescribed zero (the Taylor
    # tail beyond degree 120 is far below tolerance for |a| <= 0.5)
    for a in zeros:
        assert abs(disc_value(taylor, a)) <= 1e-10


def test_blaschke_rejects_boundary_zero():
    with pytest.raises(ValueError):
        blaschke_product([1.0], 64)


# ---------------------------------------------------------------------------
# geometric-mean vs L1 bound
# ---------------------------------------------------------------------------


def test_worked_example_equality():
    check = geometric_mean_l1_check(sample(WORKED_EXAMPLE, 512))
    assert check.lhs == pytest.approx(2.0, abs=1e-9)
    assert check.rhs == pytest.approx(2.0, abs=1e-9)
    assert abs(check.gap) <= 1e-9


def test_worked_example_certificate():
    cert = l1_equality_certificate(sample(WORKED_EXAMPLE, 512), inner_zeros=[0.0])
    assert cert.holds


def test_certificate_fails_for_wrong_inner():
    cert = l1_equality_certificate(sample(WORKED_EXAMPLE, 512), inner_zeros=[0.5])
    assert not cert.holds


@given(nonzero_polys(1, max_degree=6))
def test_gap_nonnegative(psi):
    grid = sample(psi, 128)
    if not np.abs(riesz_project(grid).samples).max() > 0:
        return  # projection annihilated everything; bound is vacuous
    check = geometric_mean_l1_check(grid)
    assert check.gap >= -1e-9 * max(1.0, check.rhs)


def test_blaschke_times_positive_saturates():
    # psi = conj(z) * (2 + 2 cos 2 theta) rebuilt from the worked example
    # pattern: inner factor z, nonnegative remaining mass
    psi = TrigPoly(1, {(-2,): 1.0, (0,): 2.0, (2,): 1.0})  # 2 + 2 cos 2t >= 0
    shifted = TrigPoly(1, {(a[0] + 1,): c for a, c in psi.coeffs.items()})
    check = geometric_mean_l1_check(sample(shifted, 256))
    assert abs(check.gap) <= 1e-9


# ---------------------------------------------------------------------------
# Holder saturation
# ---------------------------------------------------------------------------


@given(nonzero_polys(1, max_degree=4), st.sampled_from([4.0 / 3.0, 2.0, 3.0]))
def test_holder_residual_vanishes(f, q_star):
    grid = sample(f, 64)
    scale = lp_norm(grid, 2.0) ** 2  # bilinear scale of the residual
    assert holder_equality_residual(grid, q_star) <= 1e-9 * max(1.0, scale)


# ---------------------------------------------------------------------------
# dual extremal solver
# ---------------------------------------------------------------------------


def test_solve_q2_returns_l2_norm():
    phi = TrigPoly(1, {(0,): 1.0, (1,): -2.0j, (3,): 0.5})
    triple = dual_extremal_solve(phi, q=2.0, tol=1e-8)
    assert triple.value == pytest.approx(phi.l2_norm(), rel=1e-8)
    # at q=2 the minimizer is phi itself: the co-analytic correction dies
    corr = triple.extremal_kernel.samples - sample(phi, triple.extremal_kernel.n_per_axis).samples
    assert np.abs(corr).max() <= 1e-6 * phi.l2_norm()


def test_solve_kernel_closed_form():
    w = 0.4
    r = w * w
    q = 4.0 / 3.0
    phi = truncated_szego_poly(w, 24)
    triple = dual_extremal_solve(phi, q=q, tol=1e-8)
    assert triple.value == pytest.approx((1 - r) ** (-1.0 / conjugate(q)), abs=2e-6)
    assert triple.duality_gap <= 1e-8


def test_solve_value_never_below_projection_norm():
    # weak duality: value is at least |<f, phi>|/||f||_{q*} for the witness,
    # and at most ||phi||_q for the trivial extension
    phi = TrigPoly(1, {(0,): 1.0, (2,): 0.7})
    q = 3.0
    triple = dual_extremal_solve(phi, q=q, tol=1e-8)
    upper = lp_norm(sample(phi, 512), q)
    assert triple.value <= upper * (1 + 1e-10)
    assert triple.value > 0


def test_solve_monotone_in_truncation():
    phi = truncated_szego_poly(0.5, 12)
    v_small = dual_extremal_solve(phi, q=1.5, trunc_degree=4, tol=1e-2).value
    v_large = dual_extremal_solve(phi, q=1.5, trunc_degree=48, tol=1e-8).value
    assert v_large <= v_small * (1 + 1e-9)


def test_solve_truncation_check_passes():
    phi = truncated_szego_poly(0.3, 8)
    triple = dual_extremal_solve(phi, q=1.5, tol=1e-7, check_truncation=True)
    assert triple.duality_gap <= 1e-7


def test_solve_validation():
    with pytest.raises(ValueError):
        dual_extremal_solve(TrigPoly.zero(1), q=2.0)
    with pytest.raises(ValueError):
        dual_extremal_solve(TrigPoly.monomial((-1,)), q=2.0)
    with pytest.raises(ValueError):
        dual_extremal_solve(TrigPoly.monomial((1, 1)), q=2.0)
    with pytest.raises(ValueError):
        dual_extremal_solve(TrigPoly.monomial((1,)), q=1.01)


def test_solve_nonconvergence_raises():
    phi = truncated_szego_poly(0.6, 16)
    with pytest.raises(NonconvergenceError):
        dual_extremal_solve(phi, q=1.3333, tol=1e-12, max_iter=2)


def test_triple_json():
    phi = TrigPoly(1, {(0,): 1.0, (1,): 0.5})
    triple = dual_extremal_solve(phi, q=2.5, tol=1e-7)
    doc = json.loads(json.dumps(triple.to_json_dict()))
    assert doc["q"] == 2.5
    assert doc["value"] == pytest.approx(triple.value)
    back = TrigPoly.from_json_dict(doc["natural_kernel"])
    assert back.distance(phi) == 0.0
    assert "extremal_kernel_coeffs" in doc
