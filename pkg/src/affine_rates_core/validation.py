"""
Validation helpers for model parameters, market states and option specs.

Design: Non-raising validation returning a list of ValidationIssue objects.
Each issue has a severity ("error" or "warning"), a path string, and a message.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional, Union

from .models import AffineParams, MarketState, MertonParams, OptionSpec, VasicekParams

logger = logging.getLogger(__name__)

AnyParams = Union[MertonParams, VasicekParams, AffineParams]


@dataclass(frozen=True)
class ValidationIssue:
    """A single validation finding."""
    severity: str   # "error" | "warning"
    path: str       # e.g. "params.kappa", "state.r"
    message: str


def _check_sigma(sigma: float) -> list[ValidationIssue]:
    # sigma == 0 is the deterministic limit; the formulas all have it
    if sigma < 0:
        return [ValidationIssue("error", "params.sigma", "sigma must be positive")]
    if sigma == 0:
        return [ValidationIssue(
            "warning", "params.sigma", "zero volatility: deterministic short rate"
        )]
    return []


def validate_params(params: AnyParams) -> list[ValidationIssue]:
    """Check the sign constraints of each model family."""
    issues: list[ValidationIssue] = []

    if isinstance(params, MertonParams):
        issues.extend(_check_sigma(params.sigma))

    elif isinstance(params, VasicekParams):
        if not params.kappa > 0:
            issues.append(ValidationIssue("error", "params.kappa", "kappa must be positive"))
        issues.extend(_check_sigma(params.sigma))
        if params.theta < 0:
            issues.append(ValidationIssue(
                "warning", "params.theta", "negative long-term level theta"
            ))

    else:
        if params.beta1 < 0:
            issues.append(ValidationIssue("error", "params.beta1", "beta1 must be non-negative"))
        if params.beta2 < 0:
            issues.append(ValidationIssue("error", "params.beta2", "beta2 must be non-negative"))
        if params.beta1 == 0 and params.beta2 == 0:
            issues.append(ValidationIssue(
                "error", "params.beta", "degenerate diffusion: beta1 and beta2 are both zero"
            ))

    return issues


def validate_state(state: MarketState, params: Optional[AnyParams] = None) -> list[ValidationIssue]:
    """Check the market state, and against *params* the reality of the diffusion coefficient."""
    issues: list[ValidationIssue] = []

    if state.t < 0:
        issues.append(ValidationIssue("error", "state.t", "valuation time t must be >= 0"))

    if isinstance(params, AffineParams) and params.beta2 > 0:
        radicand = params.beta1 + params.beta2 * state.r
        if radicand < 0:
            issues.append(ValidationIssue(
                "error", "state.r",
                f"beta1 + beta2*r = {radicand:.6g} is negative; diffusion is not real",
            ))

    return issues


def validate_option(spec: OptionSpec, state: MarketState) -> list[ValidationIssue]:
    """Check the (t, T, S) ordering of an option against the valuation time."""
    issues: list[ValidationIssue] = []

    if spec.expiry < state.t:
        issues.append(ValidationIssue(
            "error", "spec.expiry",
            f"option expiry T={spec.expiry} precedes valuation time t={state.t}",
        ))
    if spec.bond_maturity < spec.expiry:
        issues.append(ValidationIssue(
            "error", "spec.bond_maturity", "bond maturity S must not precede expiry T"
        ))
    if not (spec.strike > 0 and math.isfinite(spec.strike)):
        issues.append(ValidationIssue("error", "spec.strike", "strike K must be positive"))

    return issues


def validate(params: AnyParams, state: Optional[MarketState] = None) -> list[ValidationIssue]:
    """Run all validations. ok iff the result holds no "error" issue."""
    issues = validate_params(params)
    if state is not None:
        issues.extend(validate_state(state, params))
    return issues


def is_ok(issues: list[ValidationIssue]) -> bool:
    return not any(i.severity == "error" for i in issues)


def require_valid(
    params: AnyParams,
    state: Optional[MarketState] = None,
    spec: Optional[OptionSpec] = None,
) -> None:
    """Raise ValueError listing every error-level issue."""
    issues = validate(params, state)
    if spec is not None and state is not None:
        issues.extend(validate_option(spec, state))
    errors = [i for i in issues if i.severity == "error"]
    if errors:
        logger.debug("rejected inputs: %s", errors)
        raise ValueError("; ".join(f"{i.path}: {i.message}" for i in errors))
