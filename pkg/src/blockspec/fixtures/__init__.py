"""Hand-built reference graphs shipped with the package.

Each JSON file holds ``name``, a free-text ``note``, the ``expected`` class
flags and singularity, and the graph in edge-list form.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from ..graph import LoopWeightedGraph, graph_from_dict


@dataclass(frozen=True)
class Fixture:
    name: str
    note: str
    expected: dict
    graph: LoopWeightedGraph


def fixture_names() -> list[str]:
    return sorted(p.name[:-5] for p in resources.files(__name__).iterdir() if p.name.endswith(".json"))


def load_fixture(name: str) -> Fixture:
    path = resources.files(__name__).joinpath(f"{name}.json")
    if not path.is_file():
        raise KeyError(f"no fixture named {name!r}; known: {', '.join(fixture_names())}")
    d = json.loads(path.read_text())
    return Fixture(d["name"], d["note"], d["expected"], graph_from_dict(d["graph"]))
