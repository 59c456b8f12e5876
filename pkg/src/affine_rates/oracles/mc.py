"""
Monte Carlo oracle for bond and bond-option prices.

Paths are simulated under the risk-neutral measure as pairs (r_T, I) with
I = int_t^T r_u du: exactly from their joint Gaussian law when beta2 == 0,
by full-truncation Euler otherwise. Forward-measure moments reuse the same
paths with the likelihood weight e^{-I} / B_t^T.

Randomness is counter based. Draws come in blocks of ``BLOCK_SIZE`` units
(antithetic pairs, or single paths when antithetic is off); block k is drawn
from ``Philox(key=(k << 64) | seed)``. Blocks are concatenated in order, so the
worker count never changes the numbers.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import Field

from affine_rates_core.embedding import from_generic, to_generic
from affine_rates_core.models import (
    AffineParams,
    MarketState,
    MertonParams,
    OptionSpec,
    RatesBaseModel,
    VasicekParams,
)
from affine_rates_core.validation import require_valid

from ..closed_form.bonds import bond_price_closed
from ..engine.pricing import bond_price_function

logger = logging.getLogger(__name__)

AnyParams = Union[MertonParams, VasicekParams, AffineParams]

BLOCK_SIZE = 8192


class MCConfig(RatesBaseModel):
    """Simulation budget and scheme."""

    paths: int = Field(default=1_000_000, ge=100)
    steps: int = Field(default=500, ge=1)
    seed: int = Field(default=42, ge=0, lt=2**64)
    scheme: Literal["exact", "euler"] = "exact"
    antithetic: bool = True
    workers: int = Field(default=1, ge=1)


@dataclass(frozen=True)
class MCResult:
    estimate: float
    std_error: float
    paths_used: int


@dataclass(frozen=True)
class ForwardMoments:
    """Moments of X = ln(F_T^{T,S} / F_t^{T,S}) under the T-forward measure,
    plus the weighted mean of F_T^{T,S} for the martingale check."""

    mean: float
    variance: float
    mean_error: float
    variance_error: float
    forward_mean: float
    forward_error: float
    forward_t: float
    paths_used: int


# ---------------------------------------------------------------------------
# Random blocks
# ---------------------------------------------------------------------------


def _generator(seed: int, block: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=(block << 64) | seed))


def _block_normals(seed: int, block: int, units: int, dim: int, antithetic: bool) -> np.ndarray:
    """Standard normals for one block; antithetic rows are interleaved (+Z, -Z)."""
    z = _generator(seed, block).standard_normal((units, dim))
    if not antithetic:
        return z
    out = np.empty((2 * units, dim))
    out[0::2] = z
    out[1::2] = -z
    return out


def _units(config: MCConfig) -> int:
    return (config.paths + 1) // 2 if config.antithetic else config.paths


def _run_blocks(
    config: MCConfig,
    dim: int,
    transform: Callable[[np.ndarray], Tuple[np.ndarray, np.ndarray]],
) -> Tuple[np.ndarray, np.ndarray]:
    n_units = _units(config)
    n_blocks = -(-n_units // BLOCK_SIZE)

    def run(block: int) -> Tuple[np.ndarray, np.ndarray]:
        units = min(BLOCK_SIZE, n_units - block * BLOCK_SIZE)
        return transform(_block_normals(config.seed, block, units, dim, config.antithetic))

    logger.debug(
        "simulating %d units in %d blocks (scheme=%s, workers=%d)",
        n_units, n_blocks, config.scheme, config.workers,
    )
    if config.workers > 1 and n_blocks > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            parts = list(pool.map(run, range(n_blocks)))
    else:
        parts = [run(k) for k in range(n_blocks)]
    r_T = np.concatenate([p[0] for p in parts])
    integral = np.concatenate([p[1] for p in parts])
    return r_T, integral


# ---------------------------------------------------------------------------
# Exact joint Gaussian law of (r_T, I)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _JointMoments:
    mean_r: float
    sd_r: float
    mean_i: float
    sd_i: float
    rho: float

    def transform(self, z: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        z1, z2 = z[:, 0], z[:, 1]
        r_T = self.mean_r + self.sd_r * z1
        integral = self.mean_i + self.sd_i * (
            self.rho * z1 + math.sqrt(max(1.0 - self.rho**2, 0.0)) * z2
        )
        return r_T, integral


def _joint_moments(params: AnyParams, r: float, tau: float) -> _JointMoments:
    named = from_generic(params)
    if isinstance(named, AffineParams):
        raise ValueError("exact scheme needs beta2 == 0; use euler scheme")

    if isinstance(named, MertonParams):
        phi, sigma = named.phi, named.sigma
        sd_r = sigma * math.sqrt(tau)
        sd_i = sigma * math.sqrt(tau**3 / 3.0)
        rho = math.sqrt(3.0) / 2.0 if sd_r > 0 else 0.0
        return _JointMoments(
            mean_r=r + phi * tau,
            sd_r=sd_r,
            mean_i=r * tau + 0.5 * phi * tau * tau,
            sd_i=sd_i,
            rho=rho,
        )

    kappa, theta, sigma = named.kappa, named.theta, named.sigma
    b = -math.expm1(-kappa * tau) / kappa
    b2 = -math.expm1(-2.0 * kappa * tau) / (2.0 * kappa)
    var_r = sigma**2 * b2
    var_i = max(sigma**2 / kappa**2 * (tau - 2.0 * b + b2), 0.0)
    cov = 0.5 * sigma**2 * b * b
    sd_r, sd_i = math.sqrt(var_r), math.sqrt(var_i)
    rho = min(cov / (sd_r * sd_i), 1.0) if sd_r > 0 and sd_i > 0 else 0.0
    return _JointMoments(
        mean_r=r * math.exp(-kappa * tau) + theta * (1.0 - math.exp(-kappa * tau)),
        sd_r=sd_r,
        mean_i=r * b + theta * (tau - b),
        sd_i=sd_i,
        rho=rho,
    )


def sample_rate_and_integral(
    params: AnyParams,
    state: MarketState,
    horizon: float,
    seed: int,
    path_index: int,
    *,
    antithetic: bool = True,
) -> Tuple[float, float]:
    """One exact draw of (r_T, int_t^T r du) for path *path_index*.

    Returns the same numbers as row *path_index* of the vectorized simulation
    with the same seed.
    """
    tau = horizon - state.t
    if tau < 0:
        raise ValueError(f"horizon T={horizon} precedes valuation time t={state.t}")
    if path_index < 0:
        raise ValueError("path_index must be >= 0")
    moments = _joint_moments(params, state.r, tau)

    if antithetic:
        unit, sign = path_index // 2, (-1.0 if path_index % 2 else 1.0)
    else:
        unit, sign = path_index, 1.0
    block, offset = divmod(unit, BLOCK_SIZE)
    # standard_normal fills row by row, so a short draw is a prefix of the block
    z = _generator(seed, block).standard_normal((offset + 1, 2))[offset] * sign
    r_T, integral = moments.transform(z.reshape(1, 2))
    return float(r_T[0]), float(integral[0])


# ---------------------------------------------------------------------------
# Euler-Maruyama with full truncation
# ---------------------------------------------------------------------------


def _euler_transform(
    gp: AffineParams, r0: float, tau: float, steps: int
) -> Callable[[np.ndarray], Tuple[np.ndarray, np.ndarray]]:
    dt = tau / steps
    sqrt_dt = math.sqrt(dt)

    def transform(z: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        r = np.full(z.shape[0], r0)
        integral = np.zeros(z.shape[0])
        for k in range(steps):
            diffusion = np.sqrt(np.maximum(gp.beta1 + gp.beta2 * r, 0.0))
            r_next = r + (gp.alpha1 - gp.alpha2 * r) * dt + diffusion * sqrt_dt * z[:, k]
            integral += 0.5 * (r + r_next) * dt
            r = r_next
        return r, integral

    return transform


def euler_paths(
    params: AnyParams,
    state: MarketState,
    horizon: float,
    config: Optional[MCConfig] = None,
) -> Tuple[np.ndarray, np.ndarray]:
    """Ensemble of (r_T, I) by Euler-Maruyama; the radicand beta1 + beta2 r is floored at 0."""
    config = config or MCConfig(scheme="euler")
    tau = horizon - state.t
    if tau < 0:
        raise ValueError(f"horizon T={horizon} precedes valuation time t={state.t}")
    gp = to_generic(params)
    if tau == 0:
        n = _paths_used(config)
        return np.full(n, state.r), np.zeros(n)
    return _run_blocks(config, config.steps, _euler_transform(gp, state.r, tau, config.steps))


def _paths_used(config: MCConfig) -> int:
    return 2 * _units(config) if config.antithetic else config.paths


def simulate(
    params: AnyParams,
    state: MarketState,
    horizon: float,
    config: MCConfig,
) -> Tuple[np.ndarray, np.ndarray]:
    """(r_T, I) for every path, in path order, with the configured scheme."""
    if config.scheme == "euler":
        return euler_paths(params, state, horizon, config)
    tau = horizon - state.t
    if tau < 0:
        raise ValueError(f"horizon T={horizon} precedes valuation time t={state.t}")
    moments = _joint_moments(params, state.r, tau)
    return _run_blocks(config, 2, moments.transform)


# ---------------------------------------------------------------------------
# Estimators
# ---------------------------------------------------------------------------


def _mean_and_error(samples: np.ndarray, antithetic: bool) -> Tuple[float, float]:
    units = samples.reshape(-1, 2).mean(axis=1) if antithetic else samples
    mean = float(np.mean(units))
    if units.size < 2:
        return mean, 0.0
    return mean, float(np.std(units, ddof=1) / math.sqrt(units.size))


def mc_bond_price(
    params: AnyParams,
    state: MarketState,
    T: float,
    config: Optional[MCConfig] = None,
) -> MCResult:
    """Mean and standard error of e^{-I} over simulated paths."""
    config = config or MCConfig()
    require_valid(params, state)
    if T == state.t:
        return MCResult(1.0, 0.0, _paths_used(config))
    _, integral = simulate(params, state, T, config)
    estimate, error = _mean_and_error(np.exp(-integral), config.antithetic)
    return MCResult(estimate, error, integral.size)


def mc_option_price(
    params: AnyParams,
    state: MarketState,
    spec: OptionSpec,
    config: Optional[MCConfig] = None,
) -> MCResult:
    """Mean and standard error of e^{-I} max(B(r_T,T;S) - K, 0) (or the put payoff)."""
    config = config or MCConfig()
    require_valid(params, state, spec)
    bond = bond_price_function(params, spec.bond_maturity - spec.expiry)
    r_T, integral = simulate(params, state, spec.expiry, config)
    if spec.expiry == state.t:
        integral = np.zeros_like(integral)
    b_T = bond(r_T)
    if spec.kind == "call":
        payoff = np.maximum(b_T - spec.strike, 0.0)
    else:
        payoff = np.maximum(spec.strike - b_T, 0.0)
    estimate, error = _mean_and_error(np.exp(-integral) * payoff, config.antithetic)
    return MCResult(estimate, error, r_T.size)


def mc_forward_moments(
    params: AnyParams,
    state: MarketState,
    T: float,
    S: float,
    config: Optional[MCConfig] = None,
) -> ForwardMoments:
    """Forward-measure moments of ln(F_T / F_t), weighting risk-neutral paths by e^{-I}/B_t^T."""
    config = config or MCConfig()
    require_valid(params, state)
    if isinstance(from_generic(params), AffineParams):
        raise ValueError("forward moments need a Merton or Vasicek model")
    if not state.t <= T <= S:
        raise ValueError("need t <= T <= S")

    bond_T = bond_price_closed(params, state, T)
    forward_t = bond_price_closed(params, state, S) / bond_T
    r_T, integral = simulate(params, state, T, config)
    if T == state.t:
        integral = np.zeros_like(integral)
    weight = np.exp(-integral) / bond_T
    forward_T = bond_price_function(params, S - T)(r_T)
    x = np.log(forward_T / forward_t)

    mean, mean_error = _mean_and_error(weight * x, config.antithetic)
    second, _ = _mean_and_error(weight * x * x, config.antithetic)
    _, variance_error = _mean_and_error(weight * (x - mean) ** 2, config.antithetic)
    forward_mean, forward_error = _mean_and_error(weight * forward_T, config.antithetic)
    return ForwardMoments(
        mean=mean,
        variance=max(second - mean * mean, 0.0),
        mean_error=mean_error,
        variance_error=variance_error,
        forward_mean=forward_mean,
        forward_error=forward_error,
        forward_t=forward_t,
        paths_used=r_T.size,
    )
