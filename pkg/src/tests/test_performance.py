"""
Performance benchmarks for the pricing engine and the two oracles.

Uses pytest-benchmark (--benchmark-enable); the assertions double as
sanity checks on the benchmarked results.
"""

from __future__ import annotations

import pytest

from affine_rates_core.models import AffineParams, MarketState, OptionSpec, VasicekParams
from affine_rates.closed_form.options import call_price
from affine_rates.engine.riccati import solve_coefficients
from affine_rates.oracles.mc import MCConfig, mc_bond_price
from affine_rates.oracles.pde import PDEGrid, pde_bond_price

VASICEK = VasicekParams(kappa=0.4, theta=0.05, sigma=0.03)
SQUARE_ROOT = AffineParams(alpha1=0.02, alpha2=0.4, beta1=0.0009, beta2=0.05)


class TestPerformance:
    """Benchmarks for the main pricing paths."""

    # --- 1. Riccati engine over a 30y horizon at the default step ----------

    def test_solve_coefficients_30y(self, benchmark):
        coeffs = benchmark(solve_coefficients, SQUARE_ROOT, 30.0)
        assert coeffs.horizon == 30.0
        assert coeffs.a_values is not None

    # --- 2. closed-form option sweep ---------------------------------------

    def test_call_price_sweep(self, benchmark):
        state = MarketState(r=0.0)
        specs = [
            OptionSpec(strike=0.5 + 0.01 * k, expiry=3.0, bond_maturity=5.0) for k in range(50)
        ]

        def sweep():
            return [call_price(VASICEK, state, s) for s in specs]

        prices = benchmark(sweep)
        assert all(b <= a for a, b in zip(prices, prices[1:]))

    # --- 3. Monte Carlo bond with the quick budget --------------------------

    def test_mc_bond_quick_budget(self, benchmark):
        result = benchmark(mc_bond_price, VASICEK, MarketState(r=0.03), 5.0,
                           MCConfig(paths=100_000))
        assert result.estimate == pytest.approx(0.81757, abs=1e-3)

    # --- 4. PDE bond on the quick grid ---------------------------------------

    def test_pde_bond_quick_grid(self, benchmark):
        result = benchmark(pde_bond_price, VASICEK, MarketState(r=0.03), 5.0,
                           PDEGrid(n_r=401, n_t=500))
        assert result.value == pytest.approx(0.81757, abs=1e-4)
