from .riccati import (
    DEFAULT_STEP,
    AffineCoefficients,
    make_grid,
    riccati_upper_bound,
    solve_b,
    compute_a,
    solve_coefficients,
)
from .pricing import (
    PriceEstimate,
    bond_price_generic,
    spot_rate,
    bond_price,
    yield_curve,
    bond_volatility,
    bond_price_function,
    forward_price,
    forward_value,
)

__all__ = [
    "DEFAULT_STEP",
    "AffineCoefficients",
    "make_grid",
    "riccati_upper_bound",
    "solve_b",
    "compute_a",
    "solve_coefficients",
    "PriceEstimate",
    "bond_price_generic",
    "spot_rate",
    "bond_price",
    "yield_curve",
    "bond_volatility",
    "bond_price_function",
    "forward_price",
    "forward_value",
]
