"""Bundled 200-triple example graph (people, companies, projects)."""

from __future__ import annotations

from importlib import resources

from .parser import parse_graph
from .rdf import RdfGraph


def sample_text() -> str:
    return resources.files("kgsheets").joinpath("data/sample.ttl").read_text(encoding="utf-8")


def sample_path():
    """A traversable pointing at the Turtle file; use with ``resources.as_file`` if a real path is needed."""
    return resources.files("kgsheets").joinpath("data/sample.ttl")


def load_sample() -> RdfGraph:
    return parse_graph(sample_text(), "turtle")
