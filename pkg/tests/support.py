"""Fixture loading shared by the test modules."""
from pathlib import Path

from rivervote import read_margin_graph, read_profile

FIXTURES = Path(__file__).parent / "fixtures"


def fixture_profile(name):
    return read_profile(FIXTURES / f"{name}.prof")


def fixture_graph(name):
    return read_margin_graph(FIXTURES / f"{name}.mg")
