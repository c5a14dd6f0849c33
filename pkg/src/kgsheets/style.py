"""Formatting patterns: value colors, outdated strikethrough, partial formatting."""

from __future__ import annotations

from dataclasses import dataclass, replace
from types import MappingProxyType
from typing import Mapping

from .cells import BOOLEAN, DATE, NUMBER, RICH, Cell, CellRun, StyleSpec
from .config import PatternConfig
from .draws import draw_choice, draw_sample
from .layout import ColumnPlan, WorkbookPlan
from .patterns import OUTDATED, PARTIAL_FORMATTING, VALUE_AS_COLOR
from .rdf import RDF_TYPE, RdfGraph, canonical_object

# Fixed value-encoding palette; order is part of the output-stability contract.
PALETTE: tuple[str, ...] = (
    "E6194B",  # red
    "3CB44B",  # green
    "FFE119",  # yellow
    "4363D8",  # blue
    "F58231",  # orange
    "911EB4",  # purple
    "42D4F4",  # cyan
    "F032E6",  # magenta
    "BFEF45",  # lime
    "FABED4",  # pink
    "469990",  # teal
    "DCBEFF",  # lavender
    "9A6324",  # brown
    "FFFAC8",  # beige
    "800000",  # maroon
    "AAFFC3",  # mint
)

# Run styles that mark which property a fragment of a merged cell belongs to.
STYLE_POOL: tuple[StyleSpec, ...] = (
    StyleSpec(bold=True),
    StyleSpec(italic=True),
    StyleSpec(underline=True),
    *(StyleSpec(foreground=c) for c in ("E6194B", "3CB44B", "4363D8", "F58231", "911EB4", "469990", "9A6324", "800000")),
)

CHANNELS = ("background", "foreground")


@dataclass(frozen=True)
class ColorAssignment:
    sheet: str
    property: str
    channel: str
    value_to_color: Mapping[str, str]

    def __post_init__(self) -> None:
        object.__setattr__(self, "value_to_color", MappingProxyType(dict(sorted(self.value_to_color.items()))))
        if self.channel not in CHANNELS:
            raise ValueError(f"unknown channel {self.channel!r}")
        if len(set(self.value_to_color.values())) != len(self.value_to_color):
            raise ValueError("value colors must be distinct")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ColorAssignment):
            return NotImplemented
        return (self.sheet, self.property, self.channel, dict(self.value_to_color)) == (
            other.sheet, other.property, other.channel, dict(other.value_to_color))

    def decode(self, color: str) -> str | None:
        """Canonical object form encoded by ``color``."""
        for value, c in self.value_to_color.items():
            if c == color:
                return value
        return None


def _eligible_values(column: ColumnPlan, rows: tuple[str, ...], graph: RdfGraph, limit: int) -> list[str] | None:
    if column.color_encoded or len(column.properties) != 1 or column.properties[0] == RDF_TYPE:
        return None
    prop = column.properties[0]
    values = set()
    for row in rows:
        objects = graph.objects(row, prop)
        if len(objects) > 1:
            return None
        values.update(canonical_object(o)[0] for o in objects)
    if not 2 <= len(values) <= limit:
        return None
    return sorted(values)


def assign_property_value_colors(
    plan: WorkbookPlan, graph: RdfGraph, config: PatternConfig
) -> tuple[WorkbookPlan, list[ColorAssignment]]:
    """Replace low-cardinality columns by subject-cell colors.

    A sheet gets at most one assignment per channel, so a color on the
    subject cell always decodes to a single property value.
    """
    if not config.enabled(VALUE_AS_COLOR):
        return plan, []
    assignments: list[ColorAssignment] = []
    sheets = []
    for sheet in plan.sheets:
        used: list[str] = []
        columns = []
        for col in sheet.columns:
            values = None if len(used) == len(CHANNELS) else _eligible_values(col, sheet.rows, graph, config.max_palette_size)
            if values is None or not config.applies(VALUE_AS_COLOR, ("pvac", sheet.name, col.header)):
                columns.append(col)
                continue
            free = [c for c in CHANNELS if c not in used]
            channel = free[draw_choice(config.seed, ("pvac-channel", sheet.name, col.header), len(free))]
            used.append(channel)
            colors = draw_sample(config.seed, ("pvac-color", sheet.name, col.header), list(PALETTE), len(values))
            assignments.append(ColorAssignment(sheet.name, col.properties[0], channel, dict(zip(values, colors))))
            columns.append(replace(col, index=None, color_encoded=True))
        index = 1
        reindexed = []
        for col in columns:
            if not col.color_encoded:
                col = replace(col, index=index)
                index += 1
            reindexed.append(col)
        sheets.append(replace(sheet, columns=tuple(reindexed)))
    return WorkbookPlan(tuple(sheets)), assignments


def apply_outdated_strikethrough(cell: Cell, config: PatternConfig) -> Cell:
    """Strike through every run (or native value) rendered from an outdated property."""
    outdated = set(config.outdated_properties)
    if not config.enabled(OUTDATED) or not outdated:
        return cell
    content = cell.content
    if content.kind == RICH:
        runs = tuple(
            replace(r, style=replace(r.style, strikethrough=True))
            if any(s.predicate in outdated for s in r.refs) else r
            for r in content.runs
        )
        return replace(cell, content=content.with_runs(runs))
    if content.kind in (NUMBER, DATE, BOOLEAN) and any(s.predicate in outdated for s in content.refs):
        return replace(cell, style=replace(cell.style, strikethrough=True))
    return cell


def assign_partial_formatting(
    column: ColumnPlan, sheet_key: tuple[str, ...], config: PatternConfig
) -> dict[str, StyleSpec]:
    """Distinct run style per property of a merged column."""
    if len(column.properties) < 2 or not config.enabled(PARTIAL_FORMATTING):
        return {}
    if not config.applies(PARTIAL_FORMATTING, sheet_key + ("pfir", column.header)):
        return {}
    styles = draw_sample(config.seed, sheet_key + ("pfir-style", column.header), list(STYLE_POOL), len(column.properties))
    return dict(zip(column.properties, styles))


def apply_run_styles(runs: tuple[CellRun, ...], styles: Mapping[str, StyleSpec]) -> tuple[CellRun, ...]:
    if not styles:
        return runs
    out = []
    for r in runs:
        style = next((styles[s.predicate] for s in r.refs if s.predicate in styles), None)
        out.append(replace(r, style=r.style.merged(style)) if style else r)
    return tuple(out)
