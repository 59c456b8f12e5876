from .mc import (
    BLOCK_SIZE,
    MCConfig,
    MCResult,
    ForwardMoments,
    sample_rate_and_integral,
    euler_paths,
    simulate,
    mc_bond_price,
    mc_option_price,
    mc_forward_moments,
)
from .pde import (
    PDEGrid,
    ValueSurface,
    default_domain,
    solve_fk,
    pde_bond_price,
    pde_option_price,
    write_surface_csv,
)

__all__ = [
    "BLOCK_SIZE",
    "MCConfig",
    "MCResult",
    "ForwardMoments",
    "sample_rate_and_integral",
    "euler_paths",
    "simulate",
    "mc_bond_price",
    "mc_option_price",
    "mc_forward_moments",
    "PDEGrid",
    "ValueSurface",
    "default_domain",
    "solve_fk",
    "pde_bond_price",
    "pde_option_price",
    "write_surface_csv",
]
