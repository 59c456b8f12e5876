"""
Property-based checks of the bond-option formulas: parity, bounds and
monotonicity over random Merton/Vasicek models.
"""

from __future__ import annotations

from hypothesis import given, settings
from hypothesis import strategies as st

from affine_rates_core.models import MarketState, MertonParams, OptionSpec, VasicekParams
from affine_rates.closed_form.bonds import bond_price_closed
from affine_rates.closed_form.options import BlackInputs, black_call, call_price, put_price
from affine_rates.engine.pricing import bond_price

kappa_strategy = st.floats(min_value=0.05, max_value=2.0)
theta_strategy = st.floats(min_value=-0.02, max_value=0.1)
sigma_strategy = st.floats(min_value=0.001, max_value=0.05)
rate_strategy = st.floats(min_value=-0.05, max_value=0.15)
strike_strategy = st.floats(min_value=0.3, max_value=1.2)
expiry_strategy = st.floats(min_value=0.1, max_value=4.9)


@st.composite
def models(draw):
    if draw(st.booleans()):
        return VasicekParams(
            kappa=draw(kappa_strategy), theta=draw(theta_strategy), sigma=draw(sigma_strategy)
        )
    return MertonParams(phi=draw(st.floats(min_value=-0.02, max_value=0.05)),
                        sigma=draw(sigma_strategy))


@settings(max_examples=200, deadline=None)
@given(model=models(), r=rate_strategy, K=strike_strategy, T=expiry_strategy)
def test_put_call_parity(model, r, K, T):
    """C - P = B^S - K B^T to rounding."""
    state = MarketState(t=0.0, r=r)
    spec = OptionSpec(strike=K, expiry=T, bond_maturity=5.0)
    call = call_price(model, state, spec)
    put = put_price(model, state, spec)
    forward = bond_price_closed(model, state, 5.0) - K * bond_price_closed(model, state, T)
    assert abs(call - put - forward) < 1e-12


@settings(max_examples=200, deadline=None)
@given(model=models(), r=rate_strategy, K=strike_strategy, T=expiry_strategy)
def test_call_bounds(model, r, K, T):
    """max(B^S - K B^T, 0) <= C <= B^S."""
    state = MarketState(t=0.0, r=r)
    spec = OptionSpec(strike=K, expiry=T, bond_maturity=5.0)
    call = call_price(model, state, spec)
    bond_S = bond_price_closed(model, state, 5.0)
    bond_T = bond_price_closed(model, state, T)
    assert call <= bond_S + 1e-14
    assert call >= max(bond_S - K * bond_T, 0.0) - 1e-14


@settings(max_examples=200, deadline=None)
@given(model=models(), r=rate_strategy, K=strike_strategy, T=expiry_strategy)
def test_call_non_increasing_in_strike(model, r, K, T):
    state = MarketState(t=0.0, r=r)
    low = call_price(model, state, OptionSpec(strike=K, expiry=T, bond_maturity=5.0))
    high = call_price(model, state, OptionSpec(strike=K * 1.01, expiry=T, bond_maturity=5.0))
    assert high <= low + 1e-14


@given(
    bond_S=st.floats(min_value=0.3, max_value=1.1),
    ratio=st.floats(min_value=0.8, max_value=1.0),
    K=strike_strategy,
    v=st.floats(min_value=0.0, max_value=0.5),
)
def test_black_call_non_decreasing_in_volatility(bond_S, ratio, K, v):
    bond_T = bond_S / ratio
    low = black_call(BlackInputs(bond_S=bond_S, bond_T=bond_T, strike=K, v=v))
    high = black_call(BlackInputs(bond_S=bond_S, bond_T=bond_T, strike=K, v=v + 0.01))
    assert high >= low - 1e-14


@settings(max_examples=100, deadline=None)
@given(model=models(), r=rate_strategy, T=st.floats(min_value=0.1, max_value=10.0))
def test_bond_decreasing_in_rate(model, r, T):
    lower = bond_price(model, MarketState(r=r), T).value
    higher = bond_price(model, MarketState(r=r + 0.01), T).value
    assert 0.0 < higher < lower
