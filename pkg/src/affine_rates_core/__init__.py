"""
affine_rates_core

Domain types and plumbing for one-factor affine short-rate models.

Scope (intentionally small):
- Immutable parameter/state/option models (Pydantic v2) with a JSON discriminator
- Embedding of Merton and Vasicek into the generic affine form
- Non-raising validation helpers
- JSON file / inline IO
"""

# Models
from .models import (
    RatesBaseModel,
    MertonParams,
    VasicekParams,
    AffineParams,
    ModelParams,
    MarketState,
    Tenor,
    OptionSpec,
    OptionKind,
    params_adapter,
    parse_params,
)

# Embedding
from .embedding import to_generic, from_generic, has_closed_form

# Validation
from .validation import (
    ValidationIssue,
    validate,
    validate_params,
    validate_state,
    validate_option,
    is_ok,
    require_valid,
)

# Export / IO
from .export import to_dict, to_json
from .repo import load_params, load_state, save_model

__all__ = [
    # models
    "RatesBaseModel",
    "MertonParams",
    "VasicekParams",
    "AffineParams",
    "ModelParams",
    "MarketState",
    "Tenor",
    "OptionSpec",
    "OptionKind",
    "params_adapter",
    "parse_params",
    # embedding
    "to_generic",
    "from_generic",
    "has_closed_form",
    # validation
    "ValidationIssue",
    "validate",
    "validate_params",
    "validate_state",
    "validate_option",
    "is_ok",
    "require_valid",
    # export / io
    "to_dict",
    "to_json",
    "load_params",
    "load_state",
    "save_model",
]
