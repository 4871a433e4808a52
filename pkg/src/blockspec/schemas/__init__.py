"""JSON Schemas for the reports the CLI writes."""

from __future__ import annotations

import json
from importlib import resources


def load_schema(name: str) -> dict:
    """``name`` is ``analysis_report`` or ``conjecture_report``."""
    return json.loads(resources.files(__name__).joinpath(f"{name}.schema.json").read_text())
