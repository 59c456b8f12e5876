from __future__ import annotations

from pathlib import Path
from typing import Dict, List

from .loader import load_acceptance_dir
from .models import AcceptancePoint, AcceptanceSuite, BondPoint, EquivalenceCheck, OptionPoint


class AcceptanceRegistry:
    """Registry of acceptance suites; load_defaults() reads the packaged data."""

    def __init__(self) -> None:
        self._suites: Dict[str, AcceptanceSuite] = {}

    def register(self, suite: AcceptanceSuite) -> None:
        """Register a suite. Overwrites an existing one with the same suite_id."""
        self._suites[suite.suite_id] = suite

    def get_suite(self, suite_id: str) -> AcceptanceSuite:
        """Get a suite by ID. Raises KeyError if not found."""
        return self._suites[suite_id]

    def suite_ids(self) -> List[str]:
        return sorted(self._suites.keys())

    def bond_points(self) -> List[BondPoint]:
        return [p for sid in self.suite_ids() for p in self._suites[sid].bonds]

    def option_points(self) -> List[OptionPoint]:
        return [p for sid in self.suite_ids() for p in self._suites[sid].options]

    def equivalence_checks(self) -> List[EquivalenceCheck]:
        return [c for sid in self.suite_ids() for c in self._suites[sid].equivalence]

    def get_point(self, point_id: str) -> AcceptancePoint:
        """Find a point in any suite. Raises KeyError if not found."""
        for p in self.bond_points():
            if p.point_id == point_id:
                return p
        for o in self.option_points():
            if o.point_id == point_id:
                return o
        for c in self.equivalence_checks():
            if c.check_id == point_id:
                return c
        raise KeyError(f"Acceptance point '{point_id}' not found")

    @classmethod
    def load_defaults(cls) -> AcceptanceRegistry:
        """Load all default suites from the packaged data directory."""
        from importlib.resources import files

        data_dir = Path(str(files("affine_rates"))) / "data" / "acceptance"
        registry = cls()
        if data_dir.exists():
            for suite in load_acceptance_dir(data_dir):
                registry.register(suite)
        return registry
