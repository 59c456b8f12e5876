from __future__ import annotations

from .validation_service import (
    BUDGETS,
    CheckResult,
    OracleValidationService,
    ValidationBudget,
)

__all__ = [
    "BUDGETS",
    "CheckResult",
    "OracleValidationService",
    "ValidationBudget",
]
