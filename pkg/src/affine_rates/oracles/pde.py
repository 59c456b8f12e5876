"""
Finite-difference oracle for the pricing PDE

    V_t + (alpha1 - alpha2 r) V_r + 1/2 (beta1 + beta2 r) V_rr - r V = 0,   V(r, T) = H(r)

solved backwards in time on a uniform rate grid with a theta scheme
(Crank-Nicolson by default, started with fully implicit steps). The outer
nodes carry the linearity condition V_rr = 0, folded into the first and last
interior rows so the system stays tridiagonal.
"""

from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional, Tuple, Union

import numpy as np
from pydantic import Field, model_validator
from scipy.interpolate import CubicSpline
from scipy.linalg import LinAlgError, solve_banded

from affine_rates_core.embedding import to_generic
from affine_rates_core.models import (
    AffineParams,
    MarketState,
    MertonParams,
    OptionSpec,
    RatesBaseModel,
    VasicekParams,
)
from affine_rates_core.validation import require_valid

from ..engine.pricing import PriceEstimate, bond_price_function

logger = logging.getLogger(__name__)

AnyParams = Union[MertonParams, VasicekParams, AffineParams]
Payoff = Callable[[np.ndarray], np.ndarray]

# half-width of the default domain in terminal standard deviations
DOMAIN_WIDTH_SD = 8.0
MIN_HALF_WIDTH = 0.05


class PDEGrid(RatesBaseModel):
    """Rate/time mesh. ``None`` bounds are derived from the model (see default_domain)."""

    r_min: Optional[float] = None
    r_max: Optional[float] = None
    n_r: int = Field(default=801, ge=5)
    n_t: int = Field(default=2000, ge=1)
    theta: float = Field(default=0.5, ge=0.0, le=1.0)
    rannacher_steps: int = Field(default=2, ge=0)

    @model_validator(mode="after")
    def _check_mesh(self) -> PDEGrid:
        if self.n_r % 2 == 0:
            raise ValueError("n_r must be odd")
        if (self.r_min is None) != (self.r_max is None):
            raise ValueError("give both r_min and r_max, or neither")
        if self.r_min is not None and self.r_max is not None and not self.r_min < self.r_max:
            raise ValueError("r_min must be < r_max")
        return self

    def coarsened(self) -> PDEGrid:
        """Half the resolution in both directions, same domain and scheme."""
        n_r = (self.n_r - 1) // 2 + 1
        if n_r % 2 == 0:
            n_r += 1
        return self.model_copy(update={"n_r": max(n_r, 5), "n_t": max(self.n_t // 2, 1)})


@dataclass(frozen=True)
class ValueSurface:
    """V(r_i, t_j); ``values[j, i]`` with ``times`` ascending from t to T."""

    times: np.ndarray
    rates: np.ndarray
    values: np.ndarray

    def value_at(self, r: float) -> float:
        """Cubic interpolation of V(., t) at the valuation time."""
        if not self.rates[0] <= r <= self.rates[-1]:
            raise ValueError(
                f"r={r} outside PDE domain [{self.rates[0]:.6g}, {self.rates[-1]:.6g}]"
            )
        return float(CubicSpline(self.rates, self.values[0])(r))


def default_domain(params: AnyParams, state: MarketState, horizon: float) -> Tuple[float, float]:
    """[r - w, r + w] with w = |m - r| + 8 sd of the rate at *horizon* (a tenor).

    For beta2 > 0 the lower bound is clamped at -beta1/beta2.
    """
    gp = to_generic(params)
    r, tau = state.r, max(horizon, 0.0)
    if gp.alpha2 > 0:
        decay = -math.expm1(-gp.alpha2 * tau)
        mean = r + (gp.alpha1 / gp.alpha2 - r) * decay
        spread = -math.expm1(-2.0 * gp.alpha2 * tau) / (2.0 * gp.alpha2)
    else:
        mean = r + (gp.alpha1 - gp.alpha2 * r) * tau
        spread = tau
    level = max(abs(r), abs(mean))
    variance = max(gp.beta1 + gp.beta2 * level, 0.0) * spread
    half_width = max(abs(mean - r) + DOMAIN_WIDTH_SD * math.sqrt(variance), MIN_HALF_WIDTH)
    r_min, r_max = r - half_width, r + half_width
    if gp.beta2 > 0:
        r_min = max(r_min, -gp.beta1 / gp.beta2)
    return r_min, r_max


def _operator(gp: AffineParams, rates: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Tridiagonal generator on the interior nodes, boundary rows folded."""
    dr = rates[1] - rates[0]
    inner = rates[1:-1]
    drift = gp.alpha1 - gp.alpha2 * inner
    diffusion = 0.5 * np.maximum(gp.beta1 + gp.beta2 * inner, 0.0)

    lower = diffusion / dr**2 - drift / (2.0 * dr)
    centre = -2.0 * diffusion / dr**2 - inner
    upper = diffusion / dr**2 + drift / (2.0 * dr)

    # V_0 = 2 V_1 - V_2 and V_{n-1} = 2 V_{n-2} - V_{n-3}
    centre[0] += 2.0 * lower[0]
    upper[0] -= lower[0]
    centre[-1] += 2.0 * upper[-1]
    lower[-1] -= upper[-1]
    return lower, centre, upper


def _apply(lower: np.ndarray, centre: np.ndarray, upper: np.ndarray, v: np.ndarray) -> np.ndarray:
    out = centre * v
    out[1:] += lower[1:] * v[:-1]
    out[:-1] += upper[:-1] * v[1:]
    return out


def _extend(v: np.ndarray) -> np.ndarray:
    return np.concatenate(([2.0 * v[0] - v[1]], v, [2.0 * v[-1] - v[-2]]))


def solve_fk(
    params: AnyParams,
    payoff: Payoff,
    t: float,
    T: float,
    grid: Optional[PDEGrid] = None,
    *,
    r0: float = 0.0,
) -> ValueSurface:
    """Backward theta-scheme solve from V(., T) = payoff to time t.

    *r0* centres the default domain when the grid carries no bounds.
    """
    grid = grid or PDEGrid()
    if T < t:
        raise ValueError(f"terminal time T={T} precedes t={t}")
    gp = to_generic(params)

    if grid.r_min is not None and grid.r_max is not None:
        r_min, r_max = grid.r_min, grid.r_max
    else:
        r_min, r_max = default_domain(gp, MarketState(t=t, r=r0), T - t)
    rates = np.linspace(r_min, r_max, grid.n_r)
    times = np.linspace(t, T, grid.n_t + 1)

    v = np.asarray(payoff(rates), dtype=float)
    if v.shape != rates.shape or not np.all(np.isfinite(v)):
        raise ValueError("payoff must return finite values on the rate grid")
    if T == t:
        return ValueSurface(np.array([t]), rates, v[np.newaxis, :].copy())

    values = np.empty((grid.n_t + 1, grid.n_r))
    values[-1] = v

    lower, centre, upper = _operator(gp, rates)
    dt = (T - t) / grid.n_t
    interior = v[1:-1].copy()
    logger.debug(
        "PDE solve: r in [%.6g, %.6g], n_r=%d, n_t=%d, theta=%g",
        r_min, r_max, grid.n_r, grid.n_t, grid.theta,
    )

    for step in range(grid.n_t):
        theta = 1.0 if step < grid.rannacher_steps else grid.theta
        rhs = interior + (1.0 - theta) * dt * _apply(lower, centre, upper, interior)
        banded = np.zeros((3, interior.size))
        banded[0, 1:] = -theta * dt * upper[:-1]
        banded[1] = 1.0 - theta * dt * centre
        banded[2, :-1] = -theta * dt * lower[1:]
        try:
            interior = solve_banded((1, 1), banded, rhs)
        except (LinAlgError, ValueError) as exc:
            raise RuntimeError(
                f"tridiagonal solve failed at step {step} (dr={rates[1] - rates[0]:.3g}, "
                f"dt={dt:.3g}, r in [{r_min:.4g}, {r_max:.4g}])"
            ) from exc
        if not np.all(np.isfinite(interior)):
            raise RuntimeError(
                f"tridiagonal solve failed at step {step}: non-finite values "
                f"(dr={rates[1] - rates[0]:.3g}, dt={dt:.3g})"
            )
        values[grid.n_t - 1 - step] = _extend(interior)

    return ValueSurface(times, rates, values)


def _price(
    params: AnyParams,
    state: MarketState,
    payoff: Payoff,
    T: float,
    grid: PDEGrid,
) -> PriceEstimate:
    fine = solve_fk(params, payoff, state.t, T, grid, r0=state.r)
    value = fine.value_at(state.r)
    coarse_grid = grid.coarsened()
    if grid.r_min is None:
        coarse_grid = coarse_grid.model_copy(
            update={"r_min": float(fine.rates[0]), "r_max": float(fine.rates[-1])}
        )
    coarse = solve_fk(params, payoff, state.t, T, coarse_grid, r0=state.r).value_at(state.r)
    # second order: the fine error is about a third of the fine-coarse gap
    return PriceEstimate(value, abs(value - coarse) / 3.0)


def pde_bond_price(
    params: AnyParams,
    state: MarketState,
    T: float,
    grid: Optional[PDEGrid] = None,
) -> PriceEstimate:
    """Zero-coupon bond from the PDE with H = 1."""
    require_valid(params, state)
    if T < state.t:
        raise ValueError(f"maturity T={T} precedes valuation time t={state.t}")
    if T == state.t:
        return PriceEstimate(1.0, 0.0)
    return _price(params, state, lambda r: np.ones_like(r), T, grid or PDEGrid())


def pde_option_price(
    params: AnyParams,
    state: MarketState,
    spec: OptionSpec,
    grid: Optional[PDEGrid] = None,
) -> PriceEstimate:
    """European bond option from one risk-neutral solve with H = max(B(r,T;S) - K, 0)."""
    require_valid(params, state, spec)
    bond = bond_price_function(params, spec.bond_maturity - spec.expiry)
    strike = spec.strike

    def payoff(r: np.ndarray) -> np.ndarray:
        if spec.kind == "call":
            return np.maximum(bond(r) - strike, 0.0)
        return np.maximum(strike - bond(r), 0.0)

    if spec.expiry == state.t:
        return PriceEstimate(float(payoff(np.array([state.r]))[0]), 0.0)
    return _price(params, state, payoff, spec.expiry, grid or PDEGrid())


def write_surface_csv(
    surface: ValueSurface,
    path: Path,
    *,
    time_stride: int = 1,
    rate_stride: int = 1,
) -> int:
    """Write ``t,r,V`` rows (LF line endings); returns the number of data rows."""
    if time_stride < 1 or rate_stride < 1:
        raise ValueError("strides must be >= 1")
    path.parent.mkdir(parents=True, exist_ok=True)
    rows = 0
    with path.open("w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["t", "r", "V"])
        for j in range(0, surface.times.size, time_stride):
            t = f"{surface.times[j]:.10g}"
            for i in range(0, surface.rates.size, rate_stride):
                writer.writerow([t, f"{surface.rates[i]:.10g}", f"{surface.values[j, i]:.12g}"])
                rows += 1
    return rows
