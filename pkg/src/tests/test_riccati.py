"""
Tests for the RK4/Simpson solution of the affine coefficient ODEs.
"""

from __future__ import annotations

import math

import numpy as np
import pytest

from affine_rates_core.models import AffineParams, MertonParams, VasicekParams
from affine_rates.closed_form.bonds import merton_ab, vasicek_ab
from affine_rates.engine.riccati import (
    make_grid,
    riccati_upper_bound,
    solve_b,
    solve_coefficients,
)

VASICEK = VasicekParams(kappa=0.4, theta=0.05, sigma=0.03)
SQUARE_ROOT = AffineParams(alpha1=0.02, alpha2=0.4, beta1=0.0009, beta2=0.05)


class TestGrid:
    def test_exact_multiple(self) -> None:
        grid = make_grid(1.0, 0.25)
        np.testing.assert_allclose(grid, [0.0, 0.25, 0.5, 0.75, 1.0])

    def test_short_last_step(self) -> None:
        grid = make_grid(1.0, 0.3)
        np.testing.assert_allclose(grid, [0.0, 0.3, 0.6, 0.9, 1.0])
        assert grid[-1] == 1.0


class TestUpperBound:
    def test_gaussian_bound(self) -> None:
        assert riccati_upper_bound(0.4, 0.0) == pytest.approx(2.5)

    def test_square_root_bound(self) -> None:
        expected = (-0.4 + math.sqrt(0.16 + 0.1)) / 0.05
        assert riccati_upper_bound(0.4, 0.05) == pytest.approx(expected)

    def test_unbounded(self) -> None:
        assert riccati_upper_bound(0.0, 0.0) is None


class TestSolveB:
    def test_merton_b_is_tau(self) -> None:
        coeffs = solve_b(MertonParams(phi=0.02, sigma=0.03), 10.0)
        np.testing.assert_allclose(coeffs.b_values, coeffs.grid, atol=1e-9)

    def test_vasicek_matches_closed_form(self) -> None:
        coeffs = solve_b(VASICEK, 5.0)
        for tau in (0.5, 1.7, 5.0):
            assert coeffs.b(tau) == pytest.approx(vasicek_ab(VASICEK, tau)[1], abs=1e-10)

    def test_square_root_positive_and_bounded(self) -> None:
        coeffs = solve_b(SQUARE_ROOT, 30.0, 0.01)
        bound = riccati_upper_bound(SQUARE_ROOT.alpha2, SQUARE_ROOT.beta2)
        assert np.all(coeffs.b_values[1:] > 0)
        assert np.all(np.diff(coeffs.b_values) > 0)
        assert coeffs.b_values[-1] <= bound + 1e-12
        assert coeffs.b_values[-1] == pytest.approx(bound, rel=1e-5)

    def test_richardson_estimate_small(self) -> None:
        coeffs = solve_b(VASICEK, 5.0)
        assert 0.0 <= coeffs.b_error < 1e-10

    def test_no_extrapolation(self) -> None:
        coeffs = solve_b(VASICEK, 5.0)
        with pytest.raises(ValueError, match="no extrapolation"):
            coeffs.b(5.5)
        with pytest.raises(ValueError):
            coeffs.b(-0.1)

    def test_vectorized_lookup(self) -> None:
        coeffs = solve_b(VASICEK, 5.0)
        out = coeffs.b(np.array([1.0, 2.0]))
        assert isinstance(out, np.ndarray)
        assert out.shape == (2,)

    def test_a_before_compute(self) -> None:
        with pytest.raises(ValueError, match="compute_a"):
            solve_b(VASICEK, 5.0).a(1.0)

    @pytest.mark.parametrize("horizon,step", [(0.0, 0.1), (-1.0, 0.1), (1.0, 2.0), (1.0, 0.0)])
    def test_bad_arguments(self, horizon: float, step: float) -> None:
        with pytest.raises(ValueError):
            solve_b(VASICEK, horizon, step)

    def test_blow_up_reported(self) -> None:
        # b' = 1 + b^2/2 explodes near tau = pi / sqrt(2)
        explosive = AffineParams(alpha1=0.0, alpha2=0.0, beta1=0.0009, beta2=-1.0)
        with pytest.raises(RuntimeError):
            solve_b(explosive, 5.0, 0.01)


class TestSolveCoefficients:
    def test_merton_a(self) -> None:
        params = MertonParams(phi=0.02, sigma=0.03)
        coeffs = solve_coefficients(params, 30.0)
        for tau in (0.5, 5.0, 30.0):
            assert coeffs.a(tau) == pytest.approx(merton_ab(params, tau)[0], abs=1e-10)

    def test_vasicek_a(self) -> None:
        coeffs = solve_coefficients(VASICEK, 10.0)
        for tau in (1.0, 5.0, 10.0):
            assert coeffs.a(tau) == pytest.approx(vasicek_ab(VASICEK, tau)[0], abs=1e-10)
        assert coeffs.a(0.0) == 0.0

    def test_error_estimates_non_negative(self) -> None:
        coeffs = solve_coefficients(SQUARE_ROOT, 5.0, 0.01)
        assert coeffs.a_error >= 0.0
        assert coeffs.b_error >= 0.0
        assert coeffs.a_error < 1e-8
