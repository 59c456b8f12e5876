from .bonds import (
    VFormula,
    merton_ab,
    vasicek_ab,
    vasicek_b,
    closed_ab,
    bond_price_closed,
    forward_bond_volatility,
    integrated_vol,
)
from .options import (
    norm_cdf,
    LognormalParams,
    lognormal_call_expectation,
    BlackInputs,
    black_call,
    black_put,
    black_inputs,
    call_price,
    put_price,
    option_price,
)

__all__ = [
    "VFormula",
    "merton_ab",
    "vasicek_ab",
    "vasicek_b",
    "closed_ab",
    "bond_price_closed",
    "forward_bond_volatility",
    "integrated_vol",
    "norm_cdf",
    "LognormalParams",
    "lognormal_call_expectation",
    "BlackInputs",
    "black_call",
    "black_put",
    "black_inputs",
    "call_price",
    "put_price",
    "option_price",
]
