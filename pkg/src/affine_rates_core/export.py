from __future__ import annotations

"""
Export helpers: convenience wrappers for serialising domain models to dict / JSON.

Usage::

    from affine_rates_core.export import to_dict, to_json

    data = to_dict(VasicekParams(kappa=0.4, theta=0.05, sigma=0.03))
    text = to_json(MarketState(t=0.0, r=0.03), indent=2)
"""

import json
from typing import Any, Optional

from .models import RatesBaseModel


def to_dict(
    model: RatesBaseModel,
    *,
    root_key: Optional[str] = None,
) -> dict[str, Any]:
    """Serialize a domain model to a dict.

    Args:
        model: Any RatesBaseModel (parameters, market state, option spec)
        root_key: If set, wraps output in {root_key: ...} (e.g. "params", "state")
    """
    data = model.model_dump(mode="json")
    if root_key:
        return {root_key: data}
    return data


def to_json(
    model: RatesBaseModel,
    *,
    root_key: Optional[str] = None,
    indent: Optional[int] = 2,
) -> str:
    """Serialize a domain model to a JSON string.

    The "model" discriminator is always emitted for parameter sets so the
    output parses back into the same variant.
    """
    data = to_dict(model, root_key=root_key)
    return json.dumps(data, indent=indent)
