from __future__ import annotations

"""
Domain types for one-factor affine short-rate models (Pydantic v2).

Design goals:
- Immutable values, safe to share between threads
- JSON shape with a "model" discriminator ("merton" | "vasicek" | "affine")
- Structural checks at construction; model invariants (signs, degenerate
  diffusion) are reported by :mod:`affine_rates_core.validation`
"""

from typing import Annotated, Any, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, model_validator


class RatesBaseModel(BaseModel):
    """Base for all domain models. Frozen, strict about unknown fields, finite floats."""

    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)


class MertonParams(RatesBaseModel):
    """dr = phi dt + sigma dW (arithmetic Brownian short rate)."""

    model: Literal["merton"] = "merton"
    phi: float
    sigma: float


class VasicekParams(RatesBaseModel):
    """dr = kappa (theta - r) dt + sigma dW (Ornstein-Uhlenbeck short rate)."""

    model: Literal["vasicek"] = "vasicek"
    kappa: float
    theta: float
    sigma: float


class AffineParams(RatesBaseModel):
    """Generic affine model: drift alpha1 - alpha2 r, squared volatility beta1 + beta2 r."""

    model: Literal["affine"] = "affine"
    alpha1: float
    alpha2: float
    beta1: float
    beta2: float


ModelParams = Annotated[
    Union[MertonParams, VasicekParams, AffineParams],
    Field(discriminator="model"),
]

params_adapter: TypeAdapter[Union[MertonParams, VasicekParams, AffineParams]] = TypeAdapter(
    ModelParams
)


def parse_params(data: Any) -> Union[MertonParams, VasicekParams, AffineParams]:
    """Parse a dict (or already-built model) into the matching parameter variant."""
    if isinstance(data, (MertonParams, VasicekParams, AffineParams)):
        return data
    return params_adapter.validate_python(data)


class MarketState(RatesBaseModel):
    """Valuation time t (years) and current short rate r (may be negative)."""

    t: float = 0.0
    r: float


class Tenor(RatesBaseModel):
    t: float
    T: float

    @model_validator(mode="after")
    def _check_order(self) -> Tenor:
        if self.T < self.t:
            raise ValueError(f"maturity T={self.T} precedes valuation time t={self.t}")
        return self

    @property
    def length(self) -> float:
        return self.T - self.t


OptionKind = Literal["call", "put"]


class OptionSpec(RatesBaseModel):
    """European option with expiry T on a zero-coupon bond maturing at S."""

    kind: OptionKind = "call"
    strike: float = Field(gt=0.0)
    expiry: float
    bond_maturity: float

    @model_validator(mode="after")
    def _check_dates(self) -> OptionSpec:
        if self.expiry > self.bond_maturity:
            raise ValueError(
                f"option expiry T={self.expiry} is after bond maturity S={self.bond_maturity}"
            )
        return self
