"""
affine_rates

Bond and bond-option pricing in one-factor affine short-rate models:
a generic Riccati engine, Merton/Vasicek closed forms, Monte Carlo and
PDE reference oracles, and the cross-validation service tying them together.
"""

from .engine import (
    DEFAULT_STEP,
    AffineCoefficients,
    solve_coefficients,
    PriceEstimate,
    bond_price_generic,
    spot_rate,
    bond_price,
    yield_curve,
    bond_volatility,
    forward_price,
    forward_value,
)
from .closed_form import (
    VFormula,
    bond_price_closed,
    forward_bond_volatility,
    integrated_vol,
    lognormal_call_expectation,
    black_call,
    black_put,
    call_price,
    put_price,
    option_price,
)
from .oracles import (
    MCConfig,
    MCResult,
    ForwardMoments,
    mc_bond_price,
    mc_option_price,
    mc_forward_moments,
    PDEGrid,
    ValueSurface,
    solve_fk,
    pde_bond_price,
    pde_option_price,
)
from .acceptance import AcceptanceRegistry
from .figures import FigureSpec, figure1_rows, figure2_rows, write_figure1_csv, write_figure2_csv
from .services import BUDGETS, CheckResult, OracleValidationService, ValidationBudget

__all__ = [
    # engine
    "DEFAULT_STEP",
    "AffineCoefficients",
    "solve_coefficients",
    "PriceEstimate",
    "bond_price_generic",
    "spot_rate",
    "bond_price",
    "yield_curve",
    "bond_volatility",
    "forward_price",
    "forward_value",
    # closed forms
    "VFormula",
    "bond_price_closed",
    "forward_bond_volatility",
    "integrated_vol",
    "lognormal_call_expectation",
    "black_call",
    "black_put",
    "call_price",
    "put_price",
    "option_price",
    # oracles
    "MCConfig",
    "MCResult",
    "ForwardMoments",
    "mc_bond_price",
    "mc_option_price",
    "mc_forward_moments",
    "PDEGrid",
    "ValueSurface",
    "solve_fk",
    "pde_bond_price",
    "pde_option_price",
    # acceptance / figures / services
    "AcceptanceRegistry",
    "FigureSpec",
    "figure1_rows",
    "figure2_rows",
    "write_figure1_csv",
    "write_figure2_csv",
    "BUDGETS",
    "CheckResult",
    "OracleValidationService",
    "ValidationBudget",
]
