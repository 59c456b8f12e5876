"""
Closed-form affine coefficients, bond prices and forward-price volatilities
for the Merton and Vasicek models.

Generic affine parameters with beta2 == 0 and alpha2 >= 0 are mapped back onto
the named models, so they are priced here as well.
"""

from __future__ import annotations

import logging
import math
import warnings
from typing import Literal, Tuple, Union

from affine_rates_core.embedding import from_generic
from affine_rates_core.models import AffineParams, MarketState, MertonParams, VasicekParams

logger = logging.getLogger(__name__)

AnyParams = Union[MertonParams, VasicekParams, AffineParams]
VFormula = Literal["derived", "printed"]


def merton_ab(params: MertonParams, tau: float) -> Tuple[float, float]:
    """a(tau) = 1/2 phi tau^2 - 1/6 sigma^2 tau^3, b(tau) = tau."""
    if tau < 0:
        raise ValueError("tau must be >= 0")
    a = 0.5 * params.phi * tau**2 - params.sigma**2 * tau**3 / 6.0
    return a, tau


def vasicek_b(kappa: float, tau: float) -> float:
    return -math.expm1(-kappa * tau) / kappa


def vasicek_ab(params: VasicekParams, tau: float) -> Tuple[float, float]:
    """b = (1 - e^{-kappa tau})/kappa,
    a = (theta - sigma^2/(2 kappa^2)) (tau - b) + sigma^2/(4 kappa) b^2."""
    if tau < 0:
        raise ValueError("tau must be >= 0")
    kappa = params.kappa
    if not kappa > 0:
        raise ValueError("kappa must be positive")
    if tau == 0:
        return 0.0, 0.0
    b = vasicek_b(kappa, tau)
    s2 = params.sigma**2
    a = (params.theta - s2 / (2.0 * kappa**2)) * (tau - b) + s2 / (4.0 * kappa) * b * b
    return a, b


def _named(params: AnyParams) -> Union[MertonParams, VasicekParams]:
    named = from_generic(params)
    if isinstance(named, AffineParams):
        raise ValueError(
            "no closed form for this affine model (beta2 != 0 or alpha2 < 0); "
            "use the numeric engine"
        )
    return named


def closed_ab(params: AnyParams, tau: float) -> Tuple[float, float]:
    """(a(tau), b(tau)) from the closed forms of the model family."""
    named = _named(params)
    if isinstance(named, MertonParams):
        return merton_ab(named, tau)
    return vasicek_ab(named, tau)


def bond_price_closed(params: AnyParams, state: MarketState, T: float) -> float:
    """B_t^T = exp(-a(T-t) - r b(T-t))."""
    tau = T - state.t
    if tau < 0:
        raise ValueError(f"maturity T={T} precedes valuation time t={state.t}")
    if tau == 0:
        return 1.0
    a, b = closed_ab(params, tau)
    return math.exp(-a - state.r * b)


def forward_bond_volatility(params: AnyParams, u: float, T: float, S: float) -> float:
    """Diffusion coefficient of the forward price F^{T,S} at time u <= T:
    sigma^{T,S}(u) = -sigma [b(S-u) - b(T-u)]."""
    if not (u <= T <= S):
        raise ValueError("need u <= T <= S")
    named = _named(params)
    _, b_s = closed_ab(named, S - u)
    _, b_t = closed_ab(named, T - u)
    return -named.sigma * (b_s - b_t)


def integrated_vol(
    params: AnyParams,
    t: float,
    T: float,
    S: float,
    *,
    v_formula: VFormula = "derived",
) -> float:
    """Standard deviation v(t,T,S) of ln(F_T^{T,S} / F_t^{T,S}).

    Merton: sigma (S - T) sqrt(T - t).
    Vasicek ("derived"): the integral of sigma^{T,S}(u)^2 over [t, T],
        v^2 = sigma^2/kappa^2 (1 - e^{-kappa(S-T)})^2 (1 - e^{-2 kappa(T-t)}) / (2 kappa).
    Vasicek ("printed"): sigma/kappa^{3/2} (1 - e^{-kappa(S-t)}) sqrt(1 - e^{-2 kappa(T-t)}),
        the published variant, kept only for figure comparison.
    """
    if t > T:
        raise ValueError(f"valuation time t={t} is after option expiry T={T}")
    if T > S:
        raise ValueError(f"option expiry T={T} is after bond maturity S={S}")

    named = _named(params)
    if isinstance(named, MertonParams):
        return named.sigma * (S - T) * math.sqrt(T - t)

    kappa, sigma = named.kappa, named.sigma
    if v_formula == "printed":
        warnings.warn(
            "printed Vasicek v(t,T,S) disagrees with the integral of the forward "
            "volatility; use it for figure comparison only",
            UserWarning,
            stacklevel=2,
        )
        return (
            sigma / kappa**1.5
            * -math.expm1(-kappa * (S - t))
            * math.sqrt(-math.expm1(-2.0 * kappa * (T - t)))
        )
    if v_formula != "derived":
        raise ValueError(f"unknown v formula {v_formula!r}")

    spread = -math.expm1(-kappa * (S - T)) / kappa
    decay = -math.expm1(-2.0 * kappa * (T - t)) / (2.0 * kappa)
    return sigma * spread * math.sqrt(decay)
