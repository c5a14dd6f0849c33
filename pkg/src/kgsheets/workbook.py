"""Workbook model and the end-to-end generation pipeline."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import NamedTuple

from . import __version__
from .cells import RICH, Cell, CellContent, StyleSpec
from .config import PatternConfig
from .layout import (
    SheetPlan,
    WorkbookPlan,
    apply_intra_cell_merge,
    apply_multiple_types,
    plan_default,
)
from .patterns import (
    ACRONYMS,
    INTRA_CELL,
    MULTIPLE_TYPES,
    OUTDATED,
    PARTIAL_FORMATTING,
    SURFACE_FORMS,
    VALUE_AS_COLOR,
)
from .provenance import ProvenanceRecord, sort_records
from .rdf import RDF_TYPE, RdfGraph, Statement, Triple, canonical_object, iri, node
from .render import column_delimiter, compose_cell, render_resource, surface_forms
from .style import (
    ColorAssignment,
    apply_outdated_strikethrough,
    apply_run_styles,
    assign_partial_formatting,
    assign_property_value_colors,
)
from .terminology import CoverageEntry, Terminology, build_terminology

TOOL = "kgsheets"


class AppliedPattern(NamedTuple):
    pattern: str
    scope: str
    target: str


@dataclass(frozen=True)
class GenerationReport:
    dropped: tuple[tuple[Statement, str], ...] = ()
    excluded: tuple[CoverageEntry, ...] = ()
    applied: tuple[AppliedPattern, ...] = ()
    malformed: tuple[Statement, ...] = ()
    pattern_cells: dict[str, int] = field(default_factory=dict)

    @property
    def dropped_statements(self) -> set[Statement]:
        return {s for s, _ in self.dropped}


@dataclass(frozen=True)
class Sheet:
    name: str
    classes: tuple[str, ...]
    rows: tuple[tuple[Cell, ...], ...]
    color_assignments: tuple[ColorAssignment, ...] = ()

    @property
    def header(self) -> tuple[str, ...]:
        return tuple(c.display_text for c in self.rows[0]) if self.rows else ()

    def cells(self):
        for row in self.rows:
            yield from row

    def cell(self, row: int, column: int) -> Cell:
        return self.rows[row][column]


@dataclass(frozen=True)
class Workbook:
    sheets: tuple[Sheet, ...] = ()
    provenance: tuple[ProvenanceRecord, ...] = ()
    report: GenerationReport = GenerationReport()
    meta: dict = field(default_factory=dict)

    def sheet(self, name: str) -> Sheet:
        for s in self.sheets:
            if s.name == name:
                return s
        raise KeyError(name)

    def cell(self, sheet: str, row: int, column: int) -> Cell:
        return self.sheet(sheet).cell(row, column)

    @property
    def statements(self) -> set[Statement]:
        return {r.statement for r in self.provenance}


def _statement(subject: str, predicate: str, obj) -> Statement:
    return Statement.from_triple(Triple(node(subject), iri(predicate), obj))


def planned(graph: RdfGraph, config: PatternConfig) -> tuple[Terminology, WorkbookPlan, list[ColorAssignment]]:
    """Terminology and final plan, with every structural pattern applied."""
    terminology = build_terminology(graph, config.auxiliary_properties())
    plan = plan_default(terminology, graph)
    plan = apply_multiple_types(plan, config)
    plan = apply_intra_cell_merge(plan, config)
    plan, assignments = assign_property_value_colors(plan, graph, config)
    return terminology, plan, assignments


def in_scope_statements(graph: RdfGraph, terminology: Terminology, plan: WorkbookPlan) -> set[Statement]:
    """Statements a workbook built from ``plan`` is meant to represent."""
    sheet_of = plan.sheet_of()
    classes = set(terminology.classes)
    out = set()
    for t in graph.triples:
        sheet = sheet_of.get(t.subject.id)
        if sheet is None:
            continue
        p = t.predicate.value
        if p == RDF_TYPE:
            if t.object.kind == "iri" and t.object.value in classes:
                out.add(Statement.from_triple(t))
        elif p in sheet.properties:
            out.add(Statement.from_triple(t))
    return out


def _records_for(cell: Cell, sheet: str, patterns: set[str], config: PatternConfig) -> list[ProvenanceRecord]:
    outdated = set(config.outdated_properties) if config.enabled(OUTDATED) else set()
    content = cell.content
    if content.kind == RICH:
        bearing = [(i, r) for i, r in enumerate(content.runs) if r.refs]
        located = [(i if len(bearing) > 1 else None, s) for i, r in bearing for s in r.refs]
    else:
        located = [(None, s) for s in content.refs]
    records = []
    for run_index, stmt in located:
        tags = set(patterns)
        qualifiers: tuple[str, ...] = ()
        if stmt.predicate in outdated:
            tags.add(OUTDATED)
            qualifiers = ("outdated",)
        records.append(ProvenanceRecord(sheet, cell.row, cell.column, run_index, stmt, tuple(sorted(tags)), qualifiers))
    return records


def _build_sheet(
    sheet: SheetPlan,
    assignments: list[ColorAssignment],
    terminology: Terminology,
    graph: RdfGraph,
    config: PatternConfig,
    report: dict,
) -> tuple[Sheet, list[ProvenanceRecord]]:
    sheet_tags = {MULTIPLE_TYPES} if len(sheet.classes) > 1 else set()
    if sheet_tags:
        report["applied"].append(AppliedPattern(MULTIPLE_TYPES, "sheet", sheet.name))
    grid = sheet.grid_columns
    styles = {}
    delimiters = {}
    for col in grid:
        if len(col.properties) > 1:
            report["applied"].append(AppliedPattern(INTRA_CELL, "column", f"{sheet.name}/{col.header}"))
        styles[col.header] = assign_partial_formatting(col, ("sheet", sheet.name), config)
        if styles[col.header]:
            report["applied"].append(AppliedPattern(PARTIAL_FORMATTING, "column", f"{sheet.name}/{col.header}"))
        delimiters[col.header] = column_delimiter(sheet.name, col, config)
    for a in assignments:
        report["applied"].append(AppliedPattern(VALUE_AS_COLOR, "column", f"{sheet.name}/{a.property}"))

    classes = set(terminology.classes)
    records: list[ProvenanceRecord] = []
    header = [Cell(0, 0, CellContent.text(sheet.subject_column.header))]
    header += [Cell(0, c.index, CellContent.text(c.header)) for c in grid]
    rows = [tuple(header)]

    for r, subject in enumerate(sheet.rows, start=1):
        types = tuple(sorted(
            _statement(subject, RDF_TYPE, o)
            for o in graph.objects(subject, RDF_TYPE)
            if o.kind == "iri" and o.value in classes
        ))
        form = render_resource(subject, ("subject", sheet.name, subject), graph, config)
        tags = set(sheet_tags)
        if form != surface_forms(subject, graph, config.given_name_properties, config.family_name_properties)[0]:
            tags.add(SURFACE_FORMS)
        if form.variant == "acronym":
            tags.add(ACRONYMS)
        cell_style = StyleSpec()
        color_records = []
        for a in assignments:
            objects = graph.objects(subject, a.property)
            if not objects:
                continue
            color = a.value_to_color[canonical_object(objects[0])[0]]
            cell_style = replace(cell_style, **{a.channel: color})
            stmt = _statement(subject, a.property, objects[0])
            color_records.append(
                ProvenanceRecord(sheet.name, r, 0, None, stmt, tuple(sorted(sheet_tags | {VALUE_AS_COLOR})))
            )
        subject_cell = apply_outdated_strikethrough(
            Cell(r, 0, CellContent.text(form.text, types), cell_style), config
        )
        row = [subject_cell]
        records += _records_for(subject_cell, sheet.name, tags, config)
        records += color_records

        for col in grid:
            objects = [
                (p, o, _statement(subject, p, o)) for p in col.properties for o in graph.objects(subject, p)
            ]
            composed = compose_cell(
                subject, col, objects, ("cell", sheet.name, subject, col.header), graph, config,
                delimiters[col.header],
            )
            report["dropped"] += composed.dropped
            report["malformed"] += composed.malformed
            cell = apply_outdated_strikethrough(Cell(r, col.index, composed.content), config)
            tags = set(composed.patterns) | sheet_tags
            col_styles = styles[col.header]
            if col_styles and not cell.content.is_empty:
                tags.add(PARTIAL_FORMATTING)
                if cell.content.kind == RICH:
                    cell = replace(cell, content=cell.content.with_runs(apply_run_styles(cell.content.runs, col_styles)))
                else:
                    cell = replace(cell, style=cell.style.merged(col_styles[cell.content.refs[0].predicate]))
            records += _records_for(cell, sheet.name, tags, config)
            row.append(cell)
        rows.append(tuple(row))

    return Sheet(sheet.name, sheet.classes, tuple(rows), tuple(assignments)), records


def _pattern_cells(records: list[ProvenanceRecord]) -> dict[str, int]:
    cells: dict[str, set] = {}
    for rec in records:
        for tag in rec.patterns:
            cells.setdefault(tag, set()).add(rec.address)
    return {tag: len(addrs) for tag, addrs in sorted(cells.items())}


def build_workbook(graph: RdfGraph, config: PatternConfig) -> Workbook:
    """Generate a workbook and its provenance from a graph and a pattern config."""
    terminology, plan, assignments = planned(graph, config)
    by_sheet: dict[str, list[ColorAssignment]] = {}
    for a in assignments:
        by_sheet.setdefault(a.sheet, []).append(a)

    report: dict = {"applied": [], "dropped": [], "malformed": []}
    sheets = []
    records: list[ProvenanceRecord] = []
    for sheet_plan in plan.sheets:
        sheet, sheet_records = _build_sheet(
            sheet_plan, by_sheet.get(sheet_plan.name, []), terminology, graph, config, report
        )
        sheets.append(sheet)
        records += sheet_records

    return Workbook(
        sheets=tuple(sheets),
        provenance=sort_records(records),
        report=GenerationReport(
            dropped=tuple(sorted(set(report["dropped"]))),
            excluded=terminology.coverage_report,
            applied=tuple(sorted(report["applied"])),
            malformed=tuple(sorted(set(report["malformed"]))),
            pattern_cells=_pattern_cells(records),
        ),
        meta={"tool": TOOL, "version": __version__, "seed": config.seed, "configDigest": config.digest()},
    )
