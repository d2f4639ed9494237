"""Bundled signed-graph fixtures (see data/README.md)."""
import json
from importlib import resources

from .errors import GraphFormatError
from .graph import SignedGraph, loads

NAMES = ("cyl2conn", "cyl3conn", "cylint4", "t6")


def path(name: str):
    if name not in NAMES:
        raise GraphFormatError(f"unknown fixture {name!r}; choose from {', '.join(NAMES)}")
    return resources.files("signet.data") / f"{name}.json"


def load_fixture(name: str) -> SignedGraph:
    return loads(path(name).read_text())


def i4c_corpus() -> list:
    """Frozen internally 4-connected cylindrical graphs (scripts/build_fixtures.py)."""
    d = json.loads((resources.files("signet.data") / "i4c_cylindrical.json").read_text())
    return [SignedGraph.from_dict(x) for x in d["graphs"]]
