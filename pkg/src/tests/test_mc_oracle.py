"""
Tests for the Monte Carlo oracle: reproducibility, the exact joint law,
Euler paths and the forward-measure moments.
"""

from __future__ import annotations

import numpy as np
import pytest
from pydantic import ValidationError

from affine_rates_core.models import (
    AffineParams,
    MarketState,
    MertonParams,
    OptionSpec,
    VasicekParams,
)
from affine_rates.acceptance.registry import AcceptanceRegistry
from affine_rates.closed_form.bonds import bond_price_closed, integrated_vol
from affine_rates.closed_form.options import call_price
from affine_rates.engine.pricing import bond_price
from affine_rates.oracles.mc import (
    BLOCK_SIZE,
    MCConfig,
    euler_paths,
    mc_bond_price,
    mc_forward_moments,
    mc_option_price,
    sample_rate_and_integral,
    simulate,
)

VASICEK = VasicekParams(kappa=0.4, theta=0.05, sigma=0.03)
VASICEK_FIG = VasicekParams(kappa=0.4, theta=0.02, sigma=0.03)
MERTON = MertonParams(phi=0.02, sigma=0.03)
SQUARE_ROOT = AffineParams(alpha1=0.02, alpha2=0.4, beta1=0.0009, beta2=0.05)
SMALL = MCConfig(paths=20_000)


class TestConfig:
    def test_defaults(self) -> None:
        cfg = MCConfig()
        assert cfg.paths == 1_000_000
        assert cfg.seed == 42
        assert cfg.scheme == "exact"
        assert cfg.antithetic

    @pytest.mark.parametrize("field,value", [("paths", 10), ("steps", 0), ("seed", -1),
                                             ("workers", 0), ("scheme", "milstein")])
    def test_rejects(self, field: str, value) -> None:
        with pytest.raises(ValidationError):
            MCConfig(**{field: value})


class TestReproducibility:
    def test_same_seed_same_paths(self) -> None:
        state = MarketState(r=0.03)
        a = simulate(VASICEK, state, 5.0, SMALL)
        b = simulate(VASICEK, state, 5.0, SMALL)
        np.testing.assert_array_equal(a[0], b[0])
        np.testing.assert_array_equal(a[1], b[1])

    def test_different_seed_different_paths(self) -> None:
        state = MarketState(r=0.03)
        a = simulate(VASICEK, state, 5.0, SMALL)
        b = simulate(VASICEK, state, 5.0, SMALL.model_copy(update={"seed": 7}))
        assert not np.array_equal(a[1], b[1])

    def test_worker_count_does_not_change_numbers(self) -> None:
        cfg = MCConfig(paths=4 * BLOCK_SIZE + 10)
        state = MarketState(r=0.03)
        single = simulate(VASICEK, state, 5.0, cfg)
        pooled = simulate(VASICEK, state, 5.0, cfg.model_copy(update={"workers": 3}))
        np.testing.assert_array_equal(single[0], pooled[0])
        np.testing.assert_array_equal(single[1], pooled[1])

    def test_worker_count_does_not_change_euler_numbers(self) -> None:
        cfg = MCConfig(paths=2 * BLOCK_SIZE + 100, steps=20, scheme="euler")
        state = MarketState(r=0.03)
        single = simulate(SQUARE_ROOT, state, 2.0, cfg)
        pooled = simulate(SQUARE_ROOT, state, 2.0, cfg.model_copy(update={"workers": 2}))
        np.testing.assert_array_equal(single[1], pooled[1])

    @pytest.mark.parametrize("index", [0, 1, 7, 2 * BLOCK_SIZE + 3, 3 * BLOCK_SIZE + 1])
    def test_single_draw_matches_ensemble(self, index: int) -> None:
        cfg = MCConfig(paths=4 * BLOCK_SIZE)
        state = MarketState(r=0.03)
        r_T, integral = simulate(VASICEK, state, 5.0, cfg)
        r_one, i_one = sample_rate_and_integral(VASICEK, state, 5.0, cfg.seed, index)
        assert r_one == pytest.approx(r_T[index], abs=1e-15)
        assert i_one == pytest.approx(integral[index], abs=1e-15)

    def test_single_draw_without_antithetic(self) -> None:
        cfg = MCConfig(paths=1000, antithetic=False)
        state = MarketState(r=0.05)
        r_T, integral = simulate(MERTON, state, 2.0, cfg)
        r_one, i_one = sample_rate_and_integral(MERTON, state, 2.0, 42, 11, antithetic=False)
        assert r_one == pytest.approx(r_T[11], abs=1e-15)
        assert i_one == pytest.approx(integral[11], abs=1e-15)


class TestExactLaw:
    def test_antithetic_pairs_mirror_the_mean(self) -> None:
        state = MarketState(r=0.05)
        r0, i0 = sample_rate_and_integral(MERTON, state, 2.0, 42, 0)
        r1, i1 = sample_rate_and_integral(MERTON, state, 2.0, 42, 1)
        assert r0 + r1 == pytest.approx(2.0 * (0.05 + 0.02 * 2.0))
        assert i0 + i1 == pytest.approx(2.0 * (0.05 * 2.0 + 0.5 * 0.02 * 4.0))

    def test_vasicek_terminal_moments(self) -> None:
        r_T, _ = simulate(VASICEK, MarketState(r=0.03), 5.0, MCConfig(paths=200_000))
        mean = 0.03 * np.exp(-2.0) + 0.05 * (1.0 - np.exp(-2.0))
        sd = 0.03 * np.sqrt((1.0 - np.exp(-4.0)) / 0.8)
        assert r_T.mean() == pytest.approx(mean, abs=1e-4)
        assert r_T.std() == pytest.approx(sd, rel=0.01)

    def test_odd_path_count_rounds_up_to_pairs(self) -> None:
        r_T, _ = simulate(VASICEK, MarketState(r=0.03), 1.0, MCConfig(paths=1001))
        assert r_T.size == 1002

    def test_exact_scheme_needs_gaussian_model(self) -> None:
        with pytest.raises(ValueError, match="euler"):
            simulate(SQUARE_ROOT, MarketState(r=0.03), 1.0, SMALL)

    def test_negative_index(self) -> None:
        with pytest.raises(ValueError):
            sample_rate_and_integral(VASICEK, MarketState(r=0.03), 1.0, 42, -1)


class TestEuler:
    def test_truncation_keeps_diffusion_real(self) -> None:
        cfg = MCConfig(paths=5000, steps=50, scheme="euler")
        r_T, integral = euler_paths(SQUARE_ROOT, MarketState(r=0.0), 3.0, cfg)
        assert np.all(np.isfinite(r_T))
        assert np.all(np.isfinite(integral))

    def test_zero_horizon(self) -> None:
        cfg = MCConfig(paths=200, scheme="euler")
        r_T, integral = euler_paths(SQUARE_ROOT, MarketState(t=1.0, r=0.03), 1.0, cfg)
        assert np.all(r_T == 0.03)
        assert np.all(integral == 0.0)

    def test_vasicek_bond_close_to_closed_form(self) -> None:
        cfg = MCConfig(paths=20_000, steps=50, scheme="euler")
        result = mc_bond_price(VASICEK, MarketState(r=0.03), 5.0, cfg)
        closed = bond_price_closed(VASICEK, MarketState(r=0.03), 5.0)
        assert abs(result.estimate - closed) < 4.0 * result.std_error + 1e-3

    def test_square_root_bond_close_to_engine(self) -> None:
        cfg = MCConfig(paths=20_000, steps=100, scheme="euler")
        state = MarketState(r=0.03)
        result = mc_bond_price(SQUARE_ROOT, state, 5.0, cfg)
        engine = bond_price(SQUARE_ROOT, state, 5.0).value
        assert abs(result.estimate - engine) < 4.0 * result.std_error + 2e-3


class TestEstimators:
    def test_bond_within_four_sigma(self) -> None:
        state = MarketState(r=0.03)
        result = mc_bond_price(VASICEK, state, 5.0, SMALL)
        assert result.std_error > 0.0
        assert result.paths_used == 20_000
        assert abs(result.estimate - 0.81757) < 4.0 * result.std_error + 1e-5

    def test_bond_at_valuation_time(self) -> None:
        result = mc_bond_price(VASICEK, MarketState(t=2.0, r=0.03), 2.0, SMALL)
        assert result.estimate == 1.0
        assert result.std_error == 0.0

    def test_antithetic_reduces_error(self) -> None:
        state = MarketState(r=0.03)
        paired = mc_bond_price(VASICEK, state, 5.0, SMALL)
        plain = mc_bond_price(VASICEK, state, 5.0, SMALL.model_copy(update={"antithetic": False}))
        assert paired.std_error < plain.std_error

    def test_antithetic_never_worse_over_repeats(self) -> None:
        state = MarketState(r=0.03)
        for seed in range(20):
            paired_cfg = MCConfig(paths=2_000, seed=seed)
            plain_cfg = paired_cfg.model_copy(update={"antithetic": False})
            paired = mc_bond_price(VASICEK, state, 5.0, paired_cfg)
            plain = mc_bond_price(VASICEK, state, 5.0, plain_cfg)
            assert paired.std_error <= plain.std_error, seed

    def test_call_within_four_sigma(self) -> None:
        spec = OptionSpec(strike=0.8, expiry=3.0, bond_maturity=5.0)
        state = MarketState(r=0.0)
        result = mc_option_price(VASICEK_FIG, state, spec, SMALL)
        closed = call_price(VASICEK_FIG, state, spec)
        assert abs(result.estimate - closed) < 4.0 * result.std_error + 1e-6

    def test_put_is_non_negative(self) -> None:
        spec = OptionSpec(kind="put", strike=0.95, expiry=3.0, bond_maturity=5.0)
        result = mc_option_price(VASICEK_FIG, MarketState(r=0.0), spec, SMALL)
        assert result.estimate > 0.0

    def test_option_at_expiry_is_intrinsic(self) -> None:
        state = MarketState(t=3.0, r=0.01)
        spec = OptionSpec(strike=0.8, expiry=3.0, bond_maturity=5.0)
        result = mc_option_price(VASICEK_FIG, state, spec, MCConfig(paths=200))
        intrinsic = bond_price_closed(VASICEK_FIG, state, 5.0) - 0.8
        assert result.estimate == pytest.approx(intrinsic, abs=1e-12)


class TestExactVersusEuler:
    @pytest.mark.parametrize("point_id", ["merton-bond", "vasicek-bond", "vasicek-zero-level-bond"])
    def test_gaussian_bond_points(self, point_id: str) -> None:
        point = AcceptanceRegistry.load_defaults().get_point(point_id)
        exact_cfg = MCConfig(paths=10_000, antithetic=False)
        euler_cfg = exact_cfg.model_copy(update={"scheme": "euler", "steps": 2000, "seed": 43})
        exact = mc_bond_price(point.params, point.state, point.maturity, exact_cfg)
        euler = mc_bond_price(point.params, point.state, point.maturity, euler_cfg)
        combined = np.hypot(exact.std_error, euler.std_error)
        assert abs(exact.estimate - euler.estimate) < 4.0 * combined


class TestForwardMoments:
    @pytest.mark.parametrize("model", [VASICEK_FIG, MertonParams(phi=0.008, sigma=0.03)])
    def test_lognormal_forward(self, model) -> None:
        state = MarketState(r=0.0)
        m = mc_forward_moments(model, state, 3.0, 5.0, MCConfig(paths=100_000))
        v = integrated_vol(model, 0.0, 3.0, 5.0)
        assert abs(m.variance - v * v) < 5.0 * m.variance_error
        assert abs(m.mean + 0.5 * v * v) < 5.0 * m.mean_error
        assert abs(m.forward_mean - m.forward_t) < 5.0 * m.forward_error

    def test_generic_model_rejected(self) -> None:
        with pytest.raises(ValueError):
            mc_forward_moments(SQUARE_ROOT, MarketState(r=0.03), 3.0, 5.0, SMALL)

    def test_bad_dates(self) -> None:
        with pytest.raises(ValueError):
            mc_forward_moments(VASICEK, MarketState(r=0.03), 6.0, 5.0, SMALL)
