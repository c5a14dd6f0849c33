"""Mapping terminology to sheets, columns and rows."""

from __future__ import annotations

import re
from dataclasses import dataclass, replace

from .config import PatternConfig
from .draws import draw_choice
from .patterns import INTRA_CELL, MULTIPLE_TYPES
from .rdf import RDF_TYPE, RdfGraph, local_name
from .terminology import Terminology

SHEET_NAME_LIMIT = 31
_BAD_SHEET_CHARS = re.compile(r"[\[\]:*?/\\]")


@dataclass(frozen=True)
class ColumnPlan:
    index: int | None
    header: str
    properties: tuple[str, ...]
    color_encoded: bool = False

    def __post_init__(self) -> None:
        if not 1 <= len(self.properties) <= 3:
            raise ValueError(f"a column carries 1-3 properties, got {len(self.properties)}")
        if self.color_encoded != (self.index is None):
            raise ValueError("color-encoded columns, and only those, have no grid index")


@dataclass(frozen=True)
class SheetPlan:
    name: str
    classes: tuple[str, ...]
    subject_column: ColumnPlan
    columns: tuple[ColumnPlan, ...]
    rows: tuple[str, ...]

    @property
    def grid_columns(self) -> tuple[ColumnPlan, ...]:
        return tuple(c for c in self.columns if not c.color_encoded)

    @property
    def properties(self) -> tuple[str, ...]:
        return tuple(p for c in self.columns for p in c.properties)


@dataclass(frozen=True)
class WorkbookPlan:
    sheets: tuple[SheetPlan, ...] = ()

    def sheet(self, name: str) -> SheetPlan:
        for s in self.sheets:
            if s.name == name:
                return s
        raise KeyError(name)

    def sheet_of(self) -> dict[str, SheetPlan]:
        """Instance id -> the sheet whose rows list it."""
        return {r: s for s in self.sheets for r in s.rows}


def humanize(name: str) -> str:
    """``worksAt`` -> ``works at``; all-caps words are kept as they are."""
    words = re.findall(r"[A-Z]{2,}(?![a-z])|[A-Z]?[a-z]+|[A-Z]|\d+", name)
    if not words:
        return name
    return " ".join(w if w.isupper() and len(w) > 1 else w.lower() for w in words)


def class_label(graph: RdfGraph, cls: str) -> str:
    return graph.primary_label(cls) or local_name(cls)


def property_header(graph: RdfGraph, prop: str) -> str:
    return graph.primary_label(prop) or humanize(local_name(prop))


def _sanitize_sheet_name(name: str) -> str:
    name = _BAD_SHEET_CHARS.sub("_", name).strip().strip("'")
    return name[:SHEET_NAME_LIMIT] or "Sheet"


def _uniquify(name: str, taken: set[str]) -> str:
    name = _sanitize_sheet_name(name)
    candidate, n = name, 2
    while candidate.lower() in taken:
        suffix = f"_{n}"
        candidate = name[: SHEET_NAME_LIMIT - len(suffix)] + suffix
        n += 1
    taken.add(candidate.lower())
    return candidate


def _unique_headers(columns: list[ColumnPlan], reserved: str) -> list[ColumnPlan]:
    seen = {reserved}
    out = []
    for c in columns:
        header, n = c.header, 2
        while header in seen:
            header = f"{c.header} ({n})"
            n += 1
        seen.add(header)
        out.append(replace(c, header=header))
    return out


def _reindex(columns: list[ColumnPlan]) -> tuple[ColumnPlan, ...]:
    out, index = [], 1
    for c in columns:
        if c.color_encoded:
            out.append(c)
        else:
            out.append(replace(c, index=index))
            index += 1
    return tuple(out)


def plan_default(terminology: Terminology, graph: RdfGraph) -> WorkbookPlan:
    """One sheet per class, one column per class property, one row per instance.

    An instance typed with several classes is listed only on the sheet of its
    first class (by IRI), so that every instance occupies exactly one row.
    """
    home: dict[str, str] = {}
    for cls in terminology.classes:
        for inst in terminology.instances.get(cls, ()):
            home.setdefault(inst, cls)

    taken: set[str] = set()
    sheets = []
    for cls in terminology.classes:
        label = class_label(graph, cls)
        columns = [
            ColumnPlan(0, property_header(graph, p), (p,)) for p in terminology.class_properties.get(cls, ())
        ]
        sheets.append(
            SheetPlan(
                name=_uniquify(label, taken),
                classes=(cls,),
                subject_column=ColumnPlan(0, label, (RDF_TYPE,)),
                columns=_reindex(_unique_headers(columns, label)),
                rows=tuple(i for i in terminology.instances.get(cls, ()) if home[i] == cls),
            )
        )
    return WorkbookPlan(tuple(sorted(sheets, key=lambda s: s.name)))


def _merge_sheets(a: SheetPlan, b: SheetPlan, name: str) -> SheetPlan:
    headers: dict[str, str] = {}
    for c in a.columns + b.columns:
        for p in c.properties:
            headers.setdefault(p, c.header)
    subject_header = f"{a.subject_column.header}+{b.subject_column.header}"
    columns = [ColumnPlan(0, headers[p], (p,)) for p in sorted(headers)]
    return SheetPlan(
        name=name,
        classes=a.classes + b.classes,
        subject_column=ColumnPlan(0, subject_header, (RDF_TYPE,)),
        columns=_reindex(_unique_headers(columns, subject_header)),
        rows=a.rows + tuple(r for r in b.rows if r not in a.rows),
    )


def apply_multiple_types(plan: WorkbookPlan, config: PatternConfig) -> WorkbookPlan:
    """Greedily pair each sheet with its successor when its keyed draw says so."""
    if not config.enabled(MULTIPLE_TYPES):
        return plan
    sheets = list(plan.sheets)
    merged: list[tuple[SheetPlan, ...]] = []
    i = 0
    while i < len(sheets):
        if i + 1 < len(sheets) and config.applies(MULTIPLE_TYPES, ("mtt", sheets[i].name)):
            merged.append((sheets[i], sheets[i + 1]))
            i += 2
        else:
            merged.append((sheets[i],))
            i += 1
    taken = {group[0].name.lower() for group in merged if len(group) == 1}
    out = []
    for group in merged:
        if len(group) == 1:
            out.append(group[0])
        else:
            a, b = group
            out.append(_merge_sheets(a, b, _uniquify(f"{a.name}+{b.name}", taken)))
    return WorkbookPlan(tuple(sorted(out, key=lambda s: s.name)))


def apply_intra_cell_merge(plan: WorkbookPlan, config: PatternConfig) -> WorkbookPlan:
    """Let keyed merge-head columns absorb the following one or two columns."""
    if not config.enabled(INTRA_CELL):
        return plan
    sheets = []
    for sheet in plan.sheets:
        cols = list(sheet.columns)
        out: list[ColumnPlan] = []
        i = 0
        while i < len(cols):
            head = cols[i]
            run = 0
            while (
                i + 1 + run < len(cols)
                and run < 2
                and not cols[i + 1 + run].color_encoded
                and len(cols[i + 1 + run].properties) == 1
            ):
                run += 1
            mergeable = not head.color_encoded and len(head.properties) == 1 and run > 0
            if mergeable and config.applies(INTRA_CELL, ("icai", sheet.name, head.header)):
                width = min(run, 1 + draw_choice(config.seed, ("icai-width", sheet.name, head.header), 2))
                group = cols[i:i + 1 + width]
                out.append(
                    ColumnPlan(
                        0,
                        " / ".join(c.header for c in group),
                        tuple(p for c in group for p in c.properties),
                    )
                )
                i += 1 + width
            else:
                out.append(head)
                i += 1
        sheets.append(replace(sheet, columns=_reindex(out)))
    return WorkbookPlan(tuple(sheets))
