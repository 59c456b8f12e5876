"""
Tests for the acceptance-data loader, models and registry.
"""

from __future__ import annotations

import json
from pathlib import Path

import pytest
from pydantic import ValidationError

from affine_rates_core.embedding import has_closed_form
from affine_rates_core.models import VasicekParams
from affine_rates.acceptance.loader import load_acceptance_dir, load_acceptance_json
from affine_rates.acceptance.models import AcceptanceSuite, BondPoint, OptionPoint
from affine_rates.acceptance.registry import AcceptanceRegistry
from affine_rates.closed_form.bonds import bond_price_closed
from affine_rates.closed_form.options import option_price


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------

def _acceptance_dir() -> Path:
    """Return the packaged acceptance directory."""
    from importlib.resources import files

    return Path(str(files("affine_rates"))) / "data" / "acceptance"


def _make_suite(suite_id: str = "test-suite", maturity: float = 2.0) -> AcceptanceSuite:
    return AcceptanceSuite.model_validate(
        {
            "suite_id": suite_id,
            "version": "1.0.0",
            "title": "Test suite",
            "bonds": [
                {
                    "point_id": f"{suite_id}-bond",
                    "params": {"model": "merton", "phi": 0.01, "sigma": 0.02},
                    "state": {"t": 0.0, "r": 0.02},
                    "maturity": maturity,
                }
            ],
        }
    )


# ===========================================================================
# Loader tests
# ===========================================================================


class TestLoader:
    def test_load_single_file(self) -> None:
        suite = load_acceptance_json(_acceptance_dir() / "bond_oracles.json")
        assert suite.suite_id == "bond-oracles"
        assert len(suite.bonds) == 4

    def test_load_dir(self) -> None:
        suites = load_acceptance_dir(_acceptance_dir())
        assert [s.suite_id for s in suites] == [
            "bond-oracles",
            "engine-equivalence",
            "option-arbitration",
        ]

    def test_missing_file(self) -> None:
        with pytest.raises(FileNotFoundError):
            load_acceptance_json(Path("/nonexistent/suite.json"))

    def test_unknown_field_rejected(self, tmp_path: Path) -> None:
        data = _make_suite().model_dump(mode="json")
        data["bonds"][0]["colour"] = "blue"
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(data), encoding="utf-8")
        with pytest.raises(ValidationError):
            load_acceptance_json(path)

    def test_round_trip(self, tmp_path: Path) -> None:
        suite = _make_suite()
        path = tmp_path / "suite.json"
        path.write_text(suite.model_dump_json(indent=2), encoding="utf-8")
        assert load_acceptance_json(path) == suite


# ===========================================================================
# Registry tests
# ===========================================================================


class TestRegistry:
    def test_load_defaults(self) -> None:
        reg = AcceptanceRegistry.load_defaults()
        assert reg.suite_ids() == ["bond-oracles", "engine-equivalence", "option-arbitration"]
        assert len(reg.bond_points()) == 4
        assert len(reg.option_points()) == 3
        assert len(reg.equivalence_checks()) == 2

    def test_get_point(self) -> None:
        reg = AcceptanceRegistry.load_defaults()
        point = reg.get_point("vasicek-call")
        assert isinstance(point, OptionPoint)
        assert isinstance(point.params, VasicekParams)
        assert point.arbitrates_v
        assert isinstance(reg.get_point("merton-bond"), BondPoint)
        assert reg.get_point("vasicek-curve").tenors[-1] == 30.0

    def test_get_point_missing(self) -> None:
        with pytest.raises(KeyError):
            AcceptanceRegistry.load_defaults().get_point("no-such-point")

    def test_get_suite_missing(self) -> None:
        with pytest.raises(KeyError):
            AcceptanceRegistry().get_suite("no-such-suite")

    def test_register_overwrites(self) -> None:
        reg = AcceptanceRegistry()
        reg.register(_make_suite(maturity=2.0))
        reg.register(_make_suite(maturity=3.0))
        assert reg.suite_ids() == ["test-suite"]
        assert reg.get_suite("test-suite").bonds[0].maturity == 3.0

    def test_point_ids(self) -> None:
        suite = AcceptanceRegistry.load_defaults().get_suite("option-arbitration")
        assert suite.point_ids() == ["vasicek-call", "vasicek-put", "merton-call"]


# ===========================================================================
# Data consistency
# ===========================================================================


class TestPackagedValues:
    def test_bond_expectations_match_closed_form(self) -> None:
        for point in AcceptanceRegistry.load_defaults().bond_points():
            if point.expected is None:
                assert not has_closed_form(point.params)
                continue
            price = bond_price_closed(point.params, point.state, point.maturity)
            assert price == pytest.approx(point.expected, abs=1e-5), point.point_id

    def test_option_expectations_match_closed_form(self) -> None:
        for point in AcceptanceRegistry.load_defaults().option_points():
            if point.expected is None:
                continue
            price = option_price(point.params, point.state, point.spec)
            assert price == pytest.approx(point.expected, abs=1e-5), point.point_id
