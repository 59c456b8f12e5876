"""
Numeric solution of the affine bond-price ODE system.

    b'(tau) = 1 - alpha2 b - 1/2 beta2 b^2,          b(0) = 0
    a(tau)  = alpha1 int_0^tau b - 1/2 beta1 int_0^tau b^2

b is tabulated by classical fixed-step RK4 (the final partial step is
shortened), a by cumulative Simpson quadrature over the b grid. Off-grid
tenors use a cubic spline; there is no extrapolation past the horizon.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Optional, Union

import numpy as np
from scipy.integrate import cumulative_simpson
from scipy.interpolate import CubicSpline

from affine_rates_core.embedding import to_generic
from affine_rates_core.models import AffineParams, MertonParams, VasicekParams

logger = logging.getLogger(__name__)

DEFAULT_STEP = 1e-3

# slack on the Riccati upper bound
BOUND_TOLERANCE = 1e-12

FloatOrArray = Union[float, np.ndarray]


@dataclass(frozen=True, eq=False)
class AffineCoefficients:
    """Tabulated a(tau), b(tau) on a strictly increasing grid starting at 0."""

    grid: np.ndarray
    b_values: np.ndarray
    step: float
    a_values: Optional[np.ndarray] = None
    # Richardson (h vs 2h) max-norm error estimates
    b_error: float = 0.0
    a_error: float = 0.0
    coarse_grid: np.ndarray = field(default_factory=lambda: np.zeros(0), repr=False)
    coarse_b: np.ndarray = field(default_factory=lambda: np.zeros(0), repr=False)

    @property
    def horizon(self) -> float:
        return float(self.grid[-1])

    @cached_property
    def _b_spline(self) -> CubicSpline:
        return CubicSpline(self.grid, self.b_values)

    @cached_property
    def _a_spline(self) -> CubicSpline:
        if self.a_values is None:
            raise ValueError("a(tau) has not been computed; call compute_a() first")
        return CubicSpline(self.grid, self.a_values)

    def _check_range(self, tau: FloatOrArray) -> None:
        arr = np.asarray(tau, dtype=float)
        limit = self.horizon * (1.0 + 1e-12)
        if np.any(arr < 0.0) or np.any(arr > limit):
            raise ValueError(
                f"tenor outside solved horizon [0, {self.horizon:g}]; no extrapolation"
            )

    def b(self, tau: FloatOrArray) -> FloatOrArray:
        self._check_range(tau)
        out = self._b_spline(np.minimum(tau, self.horizon))
        return float(out) if np.ndim(out) == 0 else out

    def a(self, tau: FloatOrArray) -> FloatOrArray:
        self._check_range(tau)
        out = self._a_spline(np.minimum(tau, self.horizon))
        return float(out) if np.ndim(out) == 0 else out


def make_grid(horizon: float, step: float) -> np.ndarray:
    """Nodes 0, h, 2h, ... with a shortened last interval ending exactly at *horizon*."""
    n_full = int(math.floor(horizon / step + 1e-9))
    nodes = step * np.arange(n_full + 1, dtype=float)
    if horizon - nodes[-1] > 1e-12 * max(1.0, horizon):
        nodes = np.append(nodes, horizon)
    else:
        nodes[-1] = horizon
    return nodes


def riccati_upper_bound(alpha2: float, beta2: float) -> Optional[float]:
    """Upper bound on b: 1/alpha2 (beta2 == 0, alpha2 > 0) or the positive root
    of 1/2 beta2 y^2 + alpha2 y - 1 = 0 (beta2 > 0). None when b is unbounded."""
    if beta2 > 0:
        return (-alpha2 + math.sqrt(alpha2 * alpha2 + 2.0 * beta2)) / beta2
    if alpha2 > 0:
        return 1.0 / alpha2
    return None


def _rk4(alpha2: float, beta2: float, grid: np.ndarray) -> np.ndarray:
    def rhs(y: float) -> float:
        return 1.0 - alpha2 * y - 0.5 * beta2 * y * y

    nodes = grid.tolist()
    out = [0.0]
    y = 0.0
    for prev, node in zip(nodes, nodes[1:]):
        h = node - prev
        k1 = rhs(y)
        k2 = rhs(y + 0.5 * h * k1)
        k3 = rhs(y + 0.5 * h * k2)
        k4 = rhs(y + h * k3)
        y = y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not math.isfinite(y):
            raise RuntimeError(f"ODE blow-up at tau={node:.6g} (step {h:.3g})")
        out.append(y)
    return np.asarray(out)


def _coarse_nodes(grid: np.ndarray) -> np.ndarray:
    coarse = grid[::2]
    if coarse[-1] != grid[-1]:
        coarse = np.append(coarse, grid[-1])
    return coarse


def _check_solution(grid: np.ndarray, b: np.ndarray, alpha2: float, beta2: float) -> None:
    if np.any(b[1:] <= 0.0):
        tau = grid[1:][b[1:] <= 0.0][0]
        raise RuntimeError(f"Riccati solution lost positivity at tau={tau:.6g}")
    bound = riccati_upper_bound(alpha2, beta2)
    if bound is not None and np.max(b) > bound + BOUND_TOLERANCE:
        raise RuntimeError(
            f"Riccati solution exceeds its bound {bound:.12g} (max b={np.max(b):.12g}); "
            "reduce the step"
        )


def solve_b(
    params: Union[AffineParams, MertonParams, VasicekParams],
    horizon: float,
    step: float = DEFAULT_STEP,
) -> AffineCoefficients:
    """Tabulate b on [0, horizon] with classical RK4 at fixed step *step*."""
    if not horizon > 0:
        raise ValueError("horizon must be positive")
    if not (0 < step <= horizon):
        raise ValueError("step must satisfy 0 < step <= horizon")

    gp = to_generic(params)
    grid = make_grid(horizon, step)
    b = _rk4(gp.alpha2, gp.beta2, grid)
    _check_solution(grid, b, gp.alpha2, gp.beta2)

    b_error = 0.0
    coarse_grid = np.zeros(0)
    coarse_b = np.zeros(0)
    if len(grid) >= 3:
        coarse_grid = _coarse_nodes(grid)
        coarse_b = _rk4(gp.alpha2, gp.beta2, coarse_grid)
        b_error = float(np.max(np.abs(b[::2][: len(coarse_b)] - coarse_b[: len(b[::2])]))) / 15.0

    logger.debug(
        "solved b on %d nodes (h=%g, horizon=%g, err~%.2e)", len(grid), step, horizon, b_error
    )
    return AffineCoefficients(
        grid=grid,
        b_values=b,
        step=step,
        b_error=b_error,
        coarse_grid=coarse_grid,
        coarse_b=coarse_b,
    )


def _integrate_a(grid: np.ndarray, b: np.ndarray, alpha1: float, beta1: float) -> np.ndarray:
    int_b = cumulative_simpson(b, x=grid, initial=0.0)
    int_b2 = cumulative_simpson(b * b, x=grid, initial=0.0)
    a = alpha1 * int_b - 0.5 * beta1 * int_b2
    a[0] = 0.0
    return a


def compute_a(coeffs: AffineCoefficients, alpha1: float, beta1: float) -> AffineCoefficients:
    """Fill a(tau) on the solved grid by cumulative Simpson quadrature."""
    if len(coeffs.grid) < 3:
        raise ValueError("grid too coarse for Simpson quadrature (needs at least 3 nodes)")

    a = _integrate_a(coeffs.grid, coeffs.b_values, alpha1, beta1)

    a_error = 0.0
    if len(coeffs.coarse_grid) >= 3:
        coarse_a = _integrate_a(coeffs.coarse_grid, coeffs.coarse_b, alpha1, beta1)
        fine_a = a[::2]
        n = min(len(fine_a), len(coarse_a))
        a_error = float(np.max(np.abs(fine_a[:n] - coarse_a[:n]))) / 15.0

    return replace(coeffs, a_values=a, a_error=a_error)


def solve_coefficients(
    params: Union[AffineParams, MertonParams, VasicekParams],
    horizon: float,
    step: float = DEFAULT_STEP,
) -> AffineCoefficients:
    """solve_b followed by compute_a for any model (named models are embedded first)."""
    gp = to_generic(params)
    return compute_a(solve_b(gp, horizon, step), gp.alpha1, gp.beta1)
