"""
Data behind the Merton/Vasicek option comparison figures.

Figure 1 tabulates call prices under both models over a (theta, T) mesh with
Merton's drift tied to phi = kappa * theta; figure 2 tabulates the log-price
difference ln C_V - ln C_M. Output is CSV with LF line endings.
"""

from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional

from pydantic import Field, model_validator

from affine_rates_core.models import (
    MarketState,
    MertonParams,
    OptionSpec,
    RatesBaseModel,
    VasicekParams,
)

from .closed_form.bonds import VFormula
from .closed_form.options import call_price

logger = logging.getLogger(__name__)


def _default_theta_grid() -> List[float]:
    return [round(0.005 * k, 10) for k in range(11)]


def _default_T_grid() -> List[float]:
    return [round(0.25 * k, 10) for k in range(1, 21)]


class FigureSpec(RatesBaseModel):
    theta_grid: List[float] = Field(default_factory=_default_theta_grid)
    T_grid: List[float] = Field(default_factory=_default_T_grid)
    kappa: float = 0.4
    sigma: float = 0.03
    r: float = 0.0
    strike: float = 0.8
    bond_maturity: float = 5.0

    @model_validator(mode="after")
    def _check_grids(self) -> FigureSpec:
        if not self.theta_grid or not self.T_grid:
            raise ValueError("theta_grid and T_grid must be non-empty")
        if self.theta_grid != sorted(self.theta_grid) or self.T_grid != sorted(self.T_grid):
            raise ValueError("grids must be sorted")
        if not (0 < self.T_grid[0] and self.T_grid[-1] <= self.bond_maturity):
            raise ValueError(f"T_grid must lie in (0, {self.bond_maturity}]")
        return self

    def state(self) -> MarketState:
        return MarketState(t=0.0, r=self.r)

    def option(self, expiry: float) -> OptionSpec:
        return OptionSpec(
            kind="call", strike=self.strike, expiry=expiry, bond_maturity=self.bond_maturity
        )

    def merton(self, theta: float) -> MertonParams:
        return MertonParams(phi=self.kappa * theta, sigma=self.sigma)

    def vasicek(self, theta: float) -> VasicekParams:
        return VasicekParams(kappa=self.kappa, theta=theta, sigma=self.sigma)


@dataclass(frozen=True)
class Figure1Row:
    theta: float
    T: float
    c_merton: float
    c_vasicek: float


@dataclass(frozen=True)
class Figure2Row:
    theta: float
    T: float
    log_diff: Optional[float]  # None when either price is not positive


def figure1_rows(spec: FigureSpec, *, v_formula: VFormula = "derived") -> List[Figure1Row]:
    rows: List[Figure1Row] = []
    state = spec.state()
    for theta in spec.theta_grid:
        merton, vasicek = spec.merton(theta), spec.vasicek(theta)
        for T in spec.T_grid:
            option = spec.option(T)
            rows.append(Figure1Row(
                theta=theta,
                T=T,
                c_merton=call_price(merton, state, option),
                c_vasicek=call_price(vasicek, state, option, v_formula=v_formula),
            ))
    logger.debug("figure 1: %d rows", len(rows))
    return rows


def figure2_rows(spec: FigureSpec, *, v_formula: VFormula = "derived") -> List[Figure2Row]:
    rows: List[Figure2Row] = []
    for row in figure1_rows(spec, v_formula=v_formula):
        diff = None
        if row.c_merton > 0 and row.c_vasicek > 0:
            diff = math.log(row.c_vasicek) - math.log(row.c_merton)
        rows.append(Figure2Row(theta=row.theta, T=row.T, log_diff=diff))
    return rows


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def write_figure1_csv(
    spec: FigureSpec, path: Path, *, v_formula: VFormula = "derived"
) -> int:
    """Write ``theta,T,C_merton,C_vasicek``; returns the number of data rows."""
    rows = figure1_rows(spec, v_formula=v_formula)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["theta", "T", "C_merton", "C_vasicek"])
        for row in rows:
            writer.writerow([_fmt(row.theta), _fmt(row.T), _fmt(row.c_merton), _fmt(row.c_vasicek)])
    return len(rows)


def write_figure2_csv(
    spec: FigureSpec, path: Path, *, v_formula: VFormula = "derived"
) -> int:
    """Write ``theta,T,ln_CV_minus_ln_CM``; returns the number of empty cells."""
    rows = figure2_rows(spec, v_formula=v_formula)
    empty = 0
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["theta", "T", "ln_CV_minus_ln_CM"])
        for row in rows:
            if row.log_diff is None:
                empty += 1
                cell = ""
            else:
                cell = _fmt(row.log_diff)
            writer.writerow([_fmt(row.theta), _fmt(row.T), cell])
    if empty:
        logger.info("figure 2: %d cells left empty (non-positive price)", empty)
    return empty
