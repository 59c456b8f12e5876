from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Union

from .export import to_json
from .models import (
    AffineParams,
    MarketState,
    MertonParams,
    RatesBaseModel,
    VasicekParams,
    parse_params,
)

AnyParams = Union[MertonParams, VasicekParams, AffineParams]


def _read_source(source: Union[str, Path]) -> Any:
    """Decode *source* as inline JSON when it looks like an object, else as a file path."""
    if isinstance(source, str) and source.lstrip().startswith("{"):
        return json.loads(source)
    path = Path(source)
    with path.open("r", encoding="utf-8") as f:
        return json.load(f)


def load_params(source: Union[str, Path]) -> AnyParams:
    """Load model parameters from a JSON file or an inline JSON string.

    Example:
        load_params('{"model": "vasicek", "kappa": 0.4, "theta": 0.05, "sigma": 0.03}')
        load_params(Path("models/vasicek.json"))

    A document may also wrap the parameters as {"params": {...}}.
    """
    data = _read_source(source)
    if isinstance(data, dict) and "params" in data and "model" not in data:
        data = data["params"]
    return parse_params(data)


def load_state(source: Union[str, Path]) -> MarketState:
    """Load a market state ({"t": ..., "r": ...}) from a file or inline JSON."""
    data = _read_source(source)
    if isinstance(data, dict) and "state" in data:
        data = data["state"]
    return MarketState.model_validate(data)


def save_model(path: Path, obj: RatesBaseModel) -> None:
    """Write any domain model as indented JSON, creating parent directories."""
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(to_json(obj, indent=2), encoding="utf-8")
