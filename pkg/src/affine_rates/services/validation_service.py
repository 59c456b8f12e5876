"""
High-level oracle validation service.

Runs closed-form prices against the numeric engine, the Monte Carlo oracle
and the PDE oracle at the packaged acceptance points, plus the property and
figure checks, and formats a pass/fail table.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Literal, Optional

import numpy as np

from affine_rates_core.embedding import has_closed_form
from affine_rates_core.models import (
    AffineParams,
    MarketState,
    MertonParams,
    OptionSpec,
    VasicekParams,
)

from ..acceptance.models import BondPoint, EquivalenceCheck, OptionPoint
from ..acceptance.registry import AcceptanceRegistry
from ..closed_form.bonds import VFormula, bond_price_closed, integrated_vol
from ..closed_form.options import call_price, option_price, put_price
from ..engine.pricing import bond_price_generic
from ..engine.riccati import solve_b, solve_coefficients
from ..figures import FigureSpec, figure1_rows, figure2_rows
from ..oracles.mc import MCConfig, mc_bond_price, mc_forward_moments, mc_option_price
from ..oracles.pde import PDEGrid, pde_bond_price, pde_option_price

__all__ = [
    "OracleValidationService",
    "CheckResult",
    "ValidationBudget",
    "BUDGETS",
]

logger = logging.getLogger(__name__)

Severity = Literal["error", "warning"]

# below this theta the Merton convexity can outweigh the Vasicek premium
FIGURE_ORDER_MIN_THETA = 0.01
# widest |ln C_V - ln C_M| at theta = 0 over the default mesh is about 0.07
FIGURE_ZERO_LOG_GAP = 0.1
FIGURE_ZERO_PRICE_GAP = 0.02
ORDER_TOLERANCE = 0.3
# a zero-variance MC estimate may still miss a price this small
MC_ABSOLUTE_FLOOR = 1e-7


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a single check. Only failed "error" checks fail a run."""

    name: str
    severity: Severity
    passed: bool
    detail: str


@dataclass(frozen=True)
class ValidationBudget:
    name: str
    mc: MCConfig
    pde: PDEGrid
    property_draws: int


BUDGETS: Dict[str, ValidationBudget] = {
    "quick": ValidationBudget(
        name="quick",
        mc=MCConfig(paths=100_000),
        pde=PDEGrid(n_r=401, n_t=500),
        property_draws=200,
    ),
    "full": ValidationBudget(
        name="full",
        mc=MCConfig(paths=1_000_000),
        pde=PDEGrid(),
        property_draws=1000,
    ),
}


class OracleValidationService:
    """Cross-checks every pricing path at the acceptance points."""

    def __init__(
        self,
        *,
        budget: ValidationBudget | str = "quick",
        seed: int = 42,
        v_formula: VFormula = "derived",
        registry: Optional[AcceptanceRegistry] = None,
        figure: Optional[FigureSpec] = None,
    ) -> None:
        base = BUDGETS[budget] if isinstance(budget, str) else budget
        self._budget = ValidationBudget(
            name=base.name,
            mc=base.mc.model_copy(update={"seed": seed}),
            pde=base.pde,
            property_draws=base.property_draws,
        )
        self._v_formula = v_formula
        self._registry = registry or AcceptanceRegistry.load_defaults()
        self._figure = figure or FigureSpec()

    @property
    def budget(self) -> ValidationBudget:
        return self._budget

    def run(self) -> List[CheckResult]:
        """Run every check group in a fixed order.

        Returns:
            One :class:`CheckResult` per check.
        """
        results: List[CheckResult] = []
        groups: List[Callable[[], List[CheckResult]]] = [
            self.check_engine_equivalence,
            self.check_bond_oracles,
            self.check_option_oracles,
            self.check_parity,
            self.check_figure_claims,
            self.check_forward_moments,
            self.check_properties,
            self.check_convergence,
        ]
        for group in groups:
            batch = group()
            for r in batch:
                logger.debug("%s %s: %s", "PASS" if r.passed else "FAIL", r.name, r.detail)
            results.extend(batch)
        return results

    @staticmethod
    def ok(results: List[CheckResult]) -> bool:
        return all(r.passed for r in results if r.severity == "error")

    def format_report(self, results: List[CheckResult]) -> str:
        """Format a pass/fail table of check results.

        Args:
            results: Output of :meth:`run` (or of any single check group).

        Returns:
            A multi-line string, one row per check plus a summary line.
        """
        width = max((len(r.name) for r in results), default=10)
        lines = [f"Budget: {self._budget.name} ({self._budget.mc.paths} paths, "
                 f"{self._budget.pde.n_r}x{self._budget.pde.n_t} PDE grid, v={self._v_formula})"]
        for r in results:
            status = "PASS" if r.passed else ("FAIL" if r.severity == "error" else "WARN")
            lines.append(f"{status}  {r.name:<{width}}  {r.detail}")
        failed = sum(1 for r in results if not r.passed and r.severity == "error")
        warned = sum(1 for r in results if not r.passed and r.severity == "warning")
        lines.append(f"{len(results)} checks: {failed} failed, {warned} warnings")
        return "\n".join(lines)

    # -- 1. closed form versus engine -------------------------------------

    def check_engine_equivalence(self) -> List[CheckResult]:
        results = []
        for check in self._registry.equivalence_checks():
            results.append(self._equivalence(check))
        return results

    def _equivalence(self, check: EquivalenceCheck) -> CheckResult:
        coeffs = solve_coefficients(check.params, max(check.tenors))
        worst = 0.0
        for tau in check.tenors:
            T = check.state.t + tau
            closed = bond_price_closed(check.params, check.state, T)
            numeric = bond_price_generic(coeffs, check.state, T).value
            worst = max(worst, abs(closed - numeric))
        return CheckResult(
            name=f"equivalence/{check.check_id}",
            severity="error",
            passed=worst < check.tolerance,
            detail=f"max |B_closed - B_engine| = {worst:.3e} (tol {check.tolerance:g})",
        )

    # -- 2. bond oracle triangle ------------------------------------------

    def check_bond_oracles(self) -> List[CheckResult]:
        results: List[CheckResult] = []
        for point in self._registry.bond_points():
            results.extend(self._bond_point(point))
        return results

    def _bond_point(self, point: BondPoint) -> List[CheckResult]:
        results: List[CheckResult] = []
        tenor = point.maturity - point.state.t
        engine = bond_price_generic(
            solve_coefficients(point.params, tenor), point.state, point.maturity
        ).value
        if has_closed_form(point.params):
            reference = bond_price_closed(point.params, point.state, point.maturity)
            if "engine" in point.oracles:
                results.append(_within(
                    f"bond/{point.point_id}/engine", engine, reference, 1e-8
                ))
        else:
            reference = engine

        if point.expected is not None:
            results.append(_within(
                f"bond/{point.point_id}/expected", reference, point.expected, 1e-4
            ))
        if "mc" in point.oracles:
            mc = mc_bond_price(point.params, point.state, point.maturity, self._budget.mc)
            results.append(_within_sigmas(
                f"bond/{point.point_id}/mc", mc.estimate, mc.std_error, reference, point.mc_sigmas
            ))
        if "pde" in point.oracles:
            pde = pde_bond_price(point.params, point.state, point.maturity, self._budget.pde)
            results.append(_within(
                f"bond/{point.point_id}/pde", pde.value, reference, point.pde_tolerance
            ))
        return results

    # -- 3. option arbitration --------------------------------------------

    def check_option_oracles(self) -> List[CheckResult]:
        results: List[CheckResult] = []
        for point in self._registry.option_points():
            results.extend(self._option_point(point))
        return results

    def _option_point(self, point: OptionPoint) -> List[CheckResult]:
        results: List[CheckResult] = []
        closed = option_price(point.params, point.state, point.spec, v_formula=self._v_formula)
        if point.expected is not None and self._v_formula == "derived":
            results.append(_within(
                f"option/{point.point_id}/expected", closed, point.expected, 1e-4
            ))

        mc = mc_option_price(point.params, point.state, point.spec, self._budget.mc)
        pde = pde_option_price(point.params, point.state, point.spec, self._budget.pde)
        if "mc" in point.oracles:
            results.append(_within_sigmas(
                f"option/{point.point_id}/mc", mc.estimate, mc.std_error, closed, point.mc_sigmas
            ))
        if "pde" in point.oracles:
            results.append(_within(
                f"option/{point.point_id}/pde", pde.value, closed, point.pde_tolerance
            ))

        if point.arbitrates_v and isinstance(point.params, VasicekParams):
            printed = option_price(point.params, point.state, point.spec, v_formula="printed")
            mc_miss = abs(printed - mc.estimate) > point.mc_sigmas * mc.std_error
            pde_miss = abs(printed - pde.value) > point.pde_tolerance
            results.append(CheckResult(
                name=f"option/{point.point_id}/printed-v-rejected",
                severity="error",
                passed=mc_miss or pde_miss,
                detail=(
                    f"printed-v price {printed:.6f}; MC {mc.estimate:.6f} +/- {mc.std_error:.1e}, "
                    f"PDE {pde.value:.6f}"
                ),
            ))
        return results

    # -- 4. put-call parity sweep -----------------------------------------

    def check_parity(self) -> List[CheckResult]:
        models = [
            MertonParams(phi=0.02, sigma=0.03),
            MertonParams(phi=0.008, sigma=0.03),
            VasicekParams(kappa=0.4, theta=0.05, sigma=0.03),
            VasicekParams(kappa=0.4, theta=0.02, sigma=0.03),
            VasicekParams(kappa=0.4, theta=0.0, sigma=0.03),
        ]
        strikes = [0.5, 0.7, 0.8, 0.9, 1.0]
        expiries = [0.5, 1.0, 2.0, 3.0, 4.0]
        state = MarketState(t=0.0, r=0.0)
        worst = 0.0
        for model in models:
            for K in strikes:
                for T in expiries:
                    spec = OptionSpec(strike=K, expiry=T, bond_maturity=5.0)
                    call = call_price(model, state, spec, v_formula=self._v_formula)
                    put = put_price(model, state, spec, v_formula=self._v_formula)
                    forward = bond_price_closed(model, state, 5.0) - K * bond_price_closed(
                        model, state, T
                    )
                    worst = max(worst, abs(call - put - forward))
        return [CheckResult(
            name="parity/sweep-5x5x5",
            severity="error",
            passed=worst < 1e-12,
            detail=f"max |C - P - (B^S - K B^T)| = {worst:.2e}",
        )]

    # -- 5. figure claims --------------------------------------------------

    def check_figure_claims(self) -> List[CheckResult]:
        spec = self._figure
        rows = figure1_rows(spec, v_formula=self._v_formula)
        results: List[CheckResult] = []

        inverted = [r for r in rows if r.theta > 0 and r.c_vasicek < r.c_merton]
        small = [r for r in inverted if r.theta < FIGURE_ORDER_MIN_THETA]
        large = [r for r in inverted if r.theta >= FIGURE_ORDER_MIN_THETA]
        results.append(CheckResult(
            name="figure1/vasicek-above-merton",
            severity="error",
            passed=not large,
            detail=f"{len(large)} violations for theta >= {FIGURE_ORDER_MIN_THETA:g}",
        ))
        results.append(CheckResult(
            name="figure1/vasicek-above-merton-small-theta",
            severity="warning",
            passed=not small,
            detail=(
                f"{len(small)} points with 0 < theta < {FIGURE_ORDER_MIN_THETA:g} "
                "where the Merton call is higher"
            ),
        ))

        zero = [r for r in rows if r.theta == 0]
        gap = max((abs(r.c_merton - r.c_vasicek) for r in zero), default=0.0)
        results.append(CheckResult(
            name="figure1/zero-theta-gap",
            severity="error",
            passed=gap < FIGURE_ZERO_PRICE_GAP,
            detail=f"max |C_M - C_V| at theta=0 = {gap:.4f}",
        ))

        expiry_rows = [r for r in rows if r.T == spec.bond_maturity]
        state = spec.state()
        worst = 0.0
        for r in expiry_rows:
            scale = 1.0 - spec.strike
            b_m = bond_price_closed(spec.merton(r.theta), state, spec.bond_maturity)
            b_v = bond_price_closed(spec.vasicek(r.theta), state, spec.bond_maturity)
            worst = max(worst, abs(r.c_merton - scale * b_m), abs(r.c_vasicek - scale * b_v))
        results.append(CheckResult(
            name="figure1/expiry-limit",
            severity="error",
            passed=worst < 1e-12,
            detail=f"max |C - (B^S - K B^S)| at T=S = {worst:.1e} ({len(expiry_rows)} rows)",
        ))

        diffs = figure2_rows(spec, v_formula=self._v_formula)
        zero_gap = max(
            (abs(d.log_diff) for d in diffs if d.theta == 0 and d.log_diff is not None),
            default=0.0,
        )
        results.append(CheckResult(
            name="figure2/zero-theta-column",
            severity="error",
            passed=zero_gap < FIGURE_ZERO_LOG_GAP,
            detail=f"max |ln C_V - ln C_M| at theta=0 = {zero_gap:.4f}",
        ))

        for T in (3.0, spec.bond_maturity):
            column = [d.log_diff for d in diffs if d.T == T and d.log_diff is not None]
            if len(column) < 2:
                continue
            increasing = all(b >= a for a, b in zip(column, column[1:]))
            results.append(CheckResult(
                name=f"figure2/increasing-in-theta/T={T:g}",
                severity="error",
                passed=increasing,
                detail=f"{len(column)} theta values",
            ))

        at_expiry = [d.log_diff for d in diffs if d.T == spec.bond_maturity]
        fade = max((abs(x) for x in at_expiry if x is not None), default=0.0)
        results.append(CheckResult(
            name="figure2/fades-at-expiry",
            severity="warning",
            passed=fade < 0.03,
            detail=f"max |ln C_V - ln C_M| at T=S = {fade:.4f} (a_M(S) - a_V(S))",
        ))
        return results

    # -- 6. forward-price GBM properties ----------------------------------

    def check_forward_moments(self) -> List[CheckResult]:
        spec = self._figure
        theta = 0.02
        state = spec.state()
        T, S = 3.0, spec.bond_maturity
        results: List[CheckResult] = []
        for label, model in (
            ("merton", spec.merton(theta)),
            ("vasicek", spec.vasicek(theta)),
        ):
            v = integrated_vol(model, state.t, T, S)
            m = mc_forward_moments(model, state, T, S, self._budget.mc)
            results.append(_within_sigmas(
                f"forward/{label}/variance", m.variance, m.variance_error, v * v, 3.0
            ))
            results.append(_within_sigmas(
                f"forward/{label}/mean", m.mean, m.mean_error, -0.5 * v * v, 3.0
            ))
            results.append(_within_sigmas(
                f"forward/{label}/martingale", m.forward_mean, m.forward_error, m.forward_t, 3.0
            ))
        return results

    # -- 7. positivity and monotonicity -----------------------------------

    def check_properties(self) -> List[CheckResult]:
        rng = np.random.Generator(np.random.Philox(key=self._budget.mc.seed))
        failures = 0
        for _ in range(self._budget.property_draws):
            params = AffineParams(
                alpha1=float(rng.uniform(-0.05, 0.1)),
                alpha2=float(rng.uniform(0.0, 2.0)),
                beta1=float(rng.uniform(1e-4, 0.01)),
                beta2=float(rng.uniform(0.0, 0.5)),
            )
            try:
                coeffs = solve_b(params, 10.0, 0.01)
            except RuntimeError:
                failures += 1
                continue
            if not np.all(coeffs.b_values[1:] > 0):
                failures += 1
        results = [CheckResult(
            name="property/b-positive",
            severity="error",
            passed=failures == 0,
            detail=f"{failures} of {self._budget.property_draws} random models lost positivity",
        )]

        rates = np.linspace(-0.05, 0.15, 21)
        decreasing = True
        for check in self._registry.equivalence_checks():
            prices = [
                bond_price_closed(check.params, MarketState(t=0.0, r=float(r)), 5.0)
                for r in rates
            ]
            decreasing &= all(b < a for a, b in zip(prices, prices[1:]))
        results.append(CheckResult(
            name="property/bond-decreasing-in-r",
            severity="error",
            passed=decreasing,
            detail=f"{len(rates)} rates per model",
        ))

        strikes = np.linspace(0.5, 1.2, 29)
        state = MarketState(t=0.0, r=0.0)
        monotone = True
        models = (
            MertonParams(phi=0.008, sigma=0.03),
            VasicekParams(kappa=0.4, theta=0.02, sigma=0.03),
        )
        for model in models:
            calls = [
                call_price(model, state, OptionSpec(strike=float(k), expiry=3.0, bond_maturity=5.0))
                for k in strikes
            ]
            monotone &= all(b <= a for a, b in zip(calls, calls[1:]))
        results.append(CheckResult(
            name="property/call-non-increasing-in-K",
            severity="error",
            passed=monotone,
            detail=f"{len(strikes)} strikes per model",
        ))
        return results

    # -- 8. convergence orders --------------------------------------------

    def check_convergence(self) -> List[CheckResult]:
        params = AffineParams(alpha1=0.02, alpha2=0.4, beta1=0.0009, beta2=0.05)
        horizon, h = 5.0, 0.1
        reference = solve_b(params, horizon, h / 8.0).b_values
        coarse = solve_b(params, horizon, h).b_values
        fine = solve_b(params, horizon, h / 2.0).b_values
        err_coarse = float(np.max(np.abs(coarse - reference[::8])))
        err_fine = float(np.max(np.abs(fine - reference[::4])))
        rk_ratio = err_coarse / err_fine
        results = [_ratio("convergence/rk4-step-halving", rk_ratio, 16.0)]

        vasicek = VasicekParams(kappa=0.4, theta=0.05, sigma=0.03)
        state = MarketState(t=0.0, r=0.03)
        closed = bond_price_closed(vasicek, state, 5.0)
        errors = []
        for n_r, n_t in ((81, 40), (161, 80)):
            grid = PDEGrid(n_r=n_r, n_t=n_t)
            errors.append(abs(pde_bond_price(vasicek, state, 5.0, grid).value - closed))
        results.append(_ratio("convergence/pde-grid-doubling", errors[0] / errors[1], 4.0))
        return results


def _within(name: str, value: float, reference: float, tol: float) -> CheckResult:
    gap = abs(value - reference)
    return CheckResult(
        name=name,
        severity="error",
        passed=gap < tol,
        detail=f"{value:.8f} vs {reference:.8f} (|diff| {gap:.2e}, tol {tol:g})",
    )


def _within_sigmas(
    name: str, estimate: float, std_error: float, reference: float, sigmas: float
) -> CheckResult:
    gap = abs(estimate - reference)
    return CheckResult(
        name=name,
        severity="error",
        passed=gap <= sigmas * std_error + MC_ABSOLUTE_FLOOR,
        detail=(
            f"{estimate:.8f} +/- {std_error:.2e} vs {reference:.8f} "
            f"({gap / std_error if std_error > 0 else math.inf:.2f} sigma)"
        ),
    )


def _ratio(name: str, measured: float, expected: float) -> CheckResult:
    return CheckResult(
        name=name,
        severity="error",
        passed=abs(measured / expected - 1.0) <= ORDER_TOLERANCE,
        detail=f"error ratio {measured:.2f} (expected {expected:g} +/- {ORDER_TOLERANCE:.0%})",
    )
