"""Load acceptance suites for the validation service, one `AcceptanceSuite` per JSON file."""

from __future__ import annotations

import json
from pathlib import Path
from typing import List

from .models import AcceptanceSuite


def load_acceptance_json(path: Path) -> AcceptanceSuite:
    """Load a single acceptance suite from a JSON file."""
    data = json.loads(path.read_text(encoding="utf-8"))
    return AcceptanceSuite.model_validate(data)


def load_acceptance_dir(directory: Path) -> List[AcceptanceSuite]:
    """Load all acceptance suites from JSON files in a directory."""
    suites = []
    for path in sorted(directory.glob("*.json")):
        suites.append(load_acceptance_json(path))
    return suites
