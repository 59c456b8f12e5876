from __future__ import annotations

from typing import List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

from affine_rates_core.models import MarketState, ModelParams, OptionSpec

Oracle = Literal["engine", "mc", "pde"]


class AcceptanceBaseModel(BaseModel):
    """Base for all acceptance-data models. Strict: no extra fields allowed."""

    model_config = ConfigDict(extra="forbid", frozen=True)


class BondPoint(AcceptanceBaseModel):
    """A zero-coupon bond re-priced by every listed oracle."""

    point_id: str
    description: str = ""
    params: ModelParams
    state: MarketState
    maturity: float
    expected: Optional[float] = None  # reference value, None when no closed form exists
    oracles: List[Oracle] = Field(default_factory=lambda: ["engine", "mc", "pde"])
    pde_tolerance: float = 1e-4
    mc_sigmas: float = 3.0


class OptionPoint(AcceptanceBaseModel):
    """A European bond option checked against the MC and PDE oracles."""

    point_id: str
    description: str = ""
    params: ModelParams
    state: MarketState
    spec: OptionSpec
    expected: Optional[float] = None
    oracles: List[Oracle] = Field(default_factory=lambda: ["mc", "pde"])
    pde_tolerance: float = 1e-4
    mc_sigmas: float = 3.0
    # points where the printed Vasicek v must be caught by at least one oracle
    arbitrates_v: bool = False


class EquivalenceCheck(AcceptanceBaseModel):
    """Closed form versus numeric engine over a tenor list."""

    check_id: str
    params: ModelParams
    state: MarketState
    tenors: List[float]
    tolerance: float = 1e-8


AcceptancePoint = Union[BondPoint, OptionPoint, EquivalenceCheck]


class AcceptanceSuite(AcceptanceBaseModel):
    """One packaged file of acceptance data."""

    suite_id: str
    version: str
    title: str
    bonds: List[BondPoint] = Field(default_factory=list)
    options: List[OptionPoint] = Field(default_factory=list)
    equivalence: List[EquivalenceCheck] = Field(default_factory=list)

    def point_ids(self) -> List[str]:
        return (
            [p.point_id for p in self.bonds]
            + [p.point_id for p in self.options]
            + [c.check_id for c in self.equivalence]
        )
