"""
Bond prices, spot rates, yield curves, bond volatilities and forwards
from tabulated affine coefficients.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Literal, Sequence, Tuple, Union

import numpy as np

from affine_rates_core.embedding import has_closed_form, to_generic
from affine_rates_core.models import AffineParams, MarketState, MertonParams, VasicekParams
from affine_rates_core.validation import require_valid

from ..closed_form.bonds import bond_price_closed, closed_ab
from .riccati import DEFAULT_STEP, AffineCoefficients, solve_b, solve_coefficients

logger = logging.getLogger(__name__)

AnyParams = Union[MertonParams, VasicekParams, AffineParams]
PricingMethod = Literal["auto", "engine"]


@dataclass(frozen=True)
class PriceEstimate:
    """A price in units of face value 1 with a one-sigma error (0 for analytic values)."""

    value: float
    uncertainty: float = 0.0

    def __post_init__(self) -> None:
        if not self.uncertainty >= 0:
            raise ValueError("uncertainty must be >= 0")


def bond_price_generic(coeffs: AffineCoefficients, state: MarketState, T: float) -> PriceEstimate:
    """B_t^T = exp(-a(T-t) - r b(T-t)) from solved coefficients."""
    tau = T - state.t
    if tau < 0:
        raise ValueError(f"maturity T={T} precedes valuation time t={state.t}")
    if tau == 0:
        return PriceEstimate(1.0, 0.0)
    a = float(coeffs.a(tau))
    b = float(coeffs.b(tau))
    value = math.exp(-a - state.r * b)
    return PriceEstimate(value, value * (coeffs.a_error + abs(state.r) * coeffs.b_error))


def spot_rate(bond_price: float, tenor: float) -> float:
    """y = -ln(B)/tenor."""
    if tenor == 0:
        raise ValueError("zero tenor: use short rate limit (the state's r)")
    if tenor < 0:
        raise ValueError("tenor must be positive")
    if not bond_price > 0:
        raise ValueError("bond price must be positive")
    return -math.log(bond_price) / tenor


def bond_price(
    params: AnyParams,
    state: MarketState,
    T: float,
    *,
    method: PricingMethod = "auto",
    step: float = DEFAULT_STEP,
) -> PriceEstimate:
    """Closed form when the model has one (and *method* is "auto"), numeric engine otherwise."""
    require_valid(params, state)
    tau = T - state.t
    if tau < 0:
        raise ValueError(f"maturity T={T} precedes valuation time t={state.t}")
    if tau == 0:
        return PriceEstimate(1.0, 0.0)
    if method == "auto" and has_closed_form(params):
        return PriceEstimate(bond_price_closed(params, state, T), 0.0)
    coeffs = solve_coefficients(params, tau, min(step, tau / 2.0))
    return bond_price_generic(coeffs, state, T)


def yield_curve(
    params: AnyParams,
    state: MarketState,
    tenors: Sequence[float],
    *,
    method: PricingMethod = "auto",
    step: float = DEFAULT_STEP,
) -> List[Tuple[float, float]]:
    """Spot rates for each tenor tau, as (T, y_t^T) pairs with T = t + tau.

    The engine path solves once up to the longest tenor.
    """
    require_valid(params, state)
    taus = [float(x) for x in tenors]
    if not taus:
        return []
    if any(x <= 0 for x in taus):
        raise ValueError("tenors must be positive")
    if any(b < a for a, b in zip(taus, taus[1:])):
        raise ValueError("tenors must be sorted")

    curve: List[Tuple[float, float]] = []
    if method == "auto" and has_closed_form(params):
        for tau in taus:
            price = bond_price_closed(params, state, state.t + tau)
            curve.append((state.t + tau, spot_rate(price, tau)))
        return curve

    coeffs = solve_coefficients(params, taus[-1], min(step, taus[-1] / 2.0))
    for tau in taus:
        est = bond_price_generic(coeffs, state, state.t + tau)
        curve.append((state.t + tau, spot_rate(est.value, tau)))
    logger.debug("yield curve over %d tenors (horizon %g)", len(taus), taus[-1])
    return curve


def bond_volatility(
    params: AnyParams,
    state: MarketState,
    T: float,
    *,
    step: float = DEFAULT_STEP,
) -> float:
    """sigma_t^T = -b(T-t) sqrt(beta1 + beta2 r); non-positive by sign convention."""
    require_valid(params, state)
    gp = to_generic(params)
    radicand = gp.beta1 + gp.beta2 * state.r
    if radicand < 0:
        raise ValueError(f"negative diffusion radicand beta1 + beta2*r = {radicand:.6g}")
    tau = T - state.t
    if tau < 0:
        raise ValueError(f"maturity T={T} precedes valuation time t={state.t}")
    if tau == 0:
        return 0.0
    if has_closed_form(params):
        _, b = closed_ab(params, tau)
    else:
        b = float(solve_b(gp, tau, min(step, tau)).b(tau))
    return -b * math.sqrt(radicand)


def bond_price_function(
    params: AnyParams,
    tenor: float,
    *,
    step: float = DEFAULT_STEP,
) -> Callable[[np.ndarray], np.ndarray]:
    """r -> B(r; tenor) = exp(-a(tenor) - r b(tenor)), vectorized over rates.

    Used for the terminal bond value inside option payoffs.
    """
    if tenor < 0:
        raise ValueError("tenor must be >= 0")
    if tenor == 0:
        return lambda r: np.ones_like(np.asarray(r, dtype=float))
    if has_closed_form(params):
        a, b = closed_ab(params, tenor)
    else:
        coeffs = solve_coefficients(params, tenor, min(step, tenor / 2.0))
        a, b = float(coeffs.a(tenor)), float(coeffs.b(tenor))
    return lambda r: np.exp(-a - np.asarray(r, dtype=float) * b)


def forward_price(bond_S: float, bond_T: float) -> float:
    """F_t^{T,S} = B_t^S / B_t^T."""
    if bond_T == 0:
        raise ValueError("bond_T must be non-zero")
    return bond_S / bond_T


def forward_value(bond_S: float, bond_T: float, K: float) -> float:
    """V_t^{T,S} = B_t^S - K B_t^T."""
    return bond_S - K * bond_T
