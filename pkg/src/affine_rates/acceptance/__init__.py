from __future__ import annotations

from .models import (
    AcceptanceBaseModel,
    BondPoint,
    OptionPoint,
    EquivalenceCheck,
    AcceptanceSuite,
)
from .registry import AcceptanceRegistry
from .loader import load_acceptance_json, load_acceptance_dir

__all__ = [
    "AcceptanceBaseModel",
    "BondPoint",
    "OptionPoint",
    "EquivalenceCheck",
    "AcceptanceSuite",
    "AcceptanceRegistry",
    "load_acceptance_json",
    "load_acceptance_dir",
]
