"""
European options on zero-coupon bonds: the Black-style call formula,
put-call parity, and the lognormal expectation it rests on.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Union

from scipy.special import ndtr

from affine_rates_core.models import (
    AffineParams,
    MarketState,
    MertonParams,
    OptionSpec,
    VasicekParams,
)
from affine_rates_core.validation import require_valid

from .bonds import VFormula, bond_price_closed, integrated_vol

logger = logging.getLogger(__name__)

AnyParams = Union[MertonParams, VasicekParams, AffineParams]


def norm_cdf(x: float) -> float:
    """Standard normal CDF via the complementary error function (scipy ``ndtr``)."""
    return float(ndtr(x))


@dataclass(frozen=True)
class LognormalParams:
    """Y = e^X with X ~ N(m, s^2)."""

    m: float
    s: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.m):
            raise ValueError("m must be finite")
        if not (self.s >= 0 and math.isfinite(self.s)):
            raise ValueError("s must be finite and >= 0")


def lognormal_call_expectation(params: LognormalParams, K: float) -> float:
    """E[max(Y - K, 0)] = e^{m + s^2/2} N((m - ln K)/s + s) - K N((m - ln K)/s)."""
    if not K > 0:
        raise ValueError("K must be positive")
    m, s = params.m, params.s
    if s == 0:
        return max(math.exp(m) - K, 0.0)
    d = (m - math.log(K)) / s
    return math.exp(m + 0.5 * s * s) * norm_cdf(d + s) - K * norm_cdf(d)


@dataclass(frozen=True)
class BlackInputs:
    bond_S: float
    bond_T: float
    strike: float
    v: float

    def __post_init__(self) -> None:
        if not self.bond_S > 0:
            raise ValueError("bond_S must be positive")
        if not self.bond_T > 0:
            raise ValueError("bond_T must be positive")
        if not self.strike > 0:
            raise ValueError("strike must be positive")
        if not self.v >= 0:
            raise ValueError("v must be >= 0")


def black_call(inputs: BlackInputs) -> float:
    """C = B^S N(d1) - K B^T N(d2); d1, d2 built in log space.

    v == 0 is the deterministic limit max(B^S - K B^T, 0).
    """
    intrinsic = inputs.bond_S - inputs.strike * inputs.bond_T
    if inputs.v == 0:
        return max(intrinsic, 0.0)
    log_moneyness = math.log(inputs.bond_S) - math.log(inputs.bond_T) - math.log(inputs.strike)
    d1 = log_moneyness / inputs.v + 0.5 * inputs.v
    d2 = d1 - inputs.v
    call = inputs.bond_S * norm_cdf(d1) - inputs.strike * inputs.bond_T * norm_cdf(d2)
    return max(call, 0.0)


def black_put(inputs: BlackInputs) -> float:
    """Put from parity: pi = C + K B^T - B^S."""
    return black_call(inputs) + inputs.strike * inputs.bond_T - inputs.bond_S


def black_inputs(
    model: AnyParams,
    state: MarketState,
    spec: OptionSpec,
    *,
    v_formula: VFormula = "derived",
) -> BlackInputs:
    require_valid(model, state, spec)
    return BlackInputs(
        bond_S=bond_price_closed(model, state, spec.bond_maturity),
        bond_T=bond_price_closed(model, state, spec.expiry),
        strike=spec.strike,
        v=integrated_vol(
            model, state.t, spec.expiry, spec.bond_maturity, v_formula=v_formula
        ),
    )


def call_price(
    model: AnyParams,
    state: MarketState,
    spec: OptionSpec,
    *,
    v_formula: VFormula = "derived",
) -> float:
    """European call on the S-bond with expiry T (``spec.kind`` is ignored)."""
    return black_call(black_inputs(model, state, spec, v_formula=v_formula))


def put_price(
    model: AnyParams,
    state: MarketState,
    spec: OptionSpec,
    *,
    v_formula: VFormula = "derived",
) -> float:
    """European put via put-call parity (``spec.kind`` is ignored)."""
    return black_put(black_inputs(model, state, spec, v_formula=v_formula))


def option_price(
    model: AnyParams,
    state: MarketState,
    spec: OptionSpec,
    *,
    v_formula: VFormula = "derived",
) -> float:
    """Price according to ``spec.kind``."""
    if spec.kind == "call":
        return call_price(model, state, spec, v_formula=v_formula)
    return put_price(model, state, spec, v_formula=v_formula)
