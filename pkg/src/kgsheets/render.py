"""Rendering RDF nodes into cell content.

Every random choice is keyed by the logical location of the mention
(sheet, subject, column header, object), never by evaluation order.
"""

from __future__ import annotations

import datetime as _dt
import re
from decimal import Decimal
from typing import Iterable, NamedTuple

from .cells import BOOLEAN, DATE, NUMBER, CellContent, CellRun, NativeValue
from .config import PatternConfig
from .draws import draw_choice
from .layout import ColumnPlan
from .patterns import ACRONYMS, INTRA_CELL, MULTIPLE_ENTITIES, NUMERIC_AS_TEXT, SURFACE_FORMS
from .rdf import (
    DATE_TYPES,
    NUMERIC_TYPES,
    XSD_BOOLEAN,
    XSD_DATE,
    MalformedLiteral,
    RdfGraph,
    Statement,
    Term,
    canonical_object,
    local_name,
    parse_boolean,
    parse_date,
    parse_datetime,
    parse_number,
)
from .terminology import FAMILY_NAME_PROPERTIES, GIVEN_NAME_PROPERTIES

VARIANTS = ("label", "last-first", "initial-last", "last-only", "acronym", "local-name")

# Integers beyond this lose precision as spreadsheet numbers.
_MAX_NATIVE_INT = 10**15

_WORD = re.compile(r"[^\W\d_][\w'’-]*")


class SurfaceForm(NamedTuple):
    text: str
    variant: str


class Composed(NamedTuple):
    content: CellContent
    patterns: frozenset[str]
    dropped: tuple[tuple[Statement, str], ...]
    malformed: tuple[Statement, ...]


def acronym(label: str, allow_initials: bool = True) -> str | None:
    """An ALL-CAPS token of the label, else the initials of a multi-word label."""
    words = _WORD.findall(label)
    for w in words:
        if len(w) >= 2 and w.isupper():
            return w
    if allow_initials and len(words) >= 2:
        return "".join(w[0].upper() for w in words)
    return None


def surface_forms(
    resource: str,
    graph: RdfGraph,
    given_properties: Iterable[str] = GIVEN_NAME_PROPERTIES,
    family_properties: Iterable[str] = FAMILY_NAME_PROPERTIES,
) -> list[SurfaceForm]:
    forms = []
    label = graph.primary_label(resource)
    if label:
        forms.append(SurfaceForm(label, "label"))
    given = graph.first_value(resource, given_properties)
    family = graph.first_value(resource, family_properties)
    if given and family:
        forms.append(SurfaceForm(f"{family}, {given}", "last-first"))
        forms.append(SurfaceForm(f"{given[0]}. {family}", "initial-last"))
    if family:
        forms.append(SurfaceForm(family, "last-only"))
    if label:
        # people are varied through their name parts, not initials
        short = acronym(label, allow_initials=not (given or family))
        if short:
            forms.append(SurfaceForm(short, "acronym"))
    forms.append(SurfaceForm(local_name(resource), "local-name"))

    seen: set[str] = set()
    unique = []
    for f in forms:
        if f.text.strip() and f.text not in seen:
            seen.add(f.text)
            unique.append(f)
    return unique


def render_resource(resource: str, cell_key: tuple[str, ...], graph: RdfGraph, config: PatternConfig) -> SurfaceForm:
    forms = surface_forms(resource, graph, config.given_name_properties, config.family_name_properties)
    if not config.applies(SURFACE_FORMS, cell_key + ("msf",)):
        return forms[0]
    eligible = [f for f in forms if f.variant != "acronym" or config.enabled(ACRONYMS)]
    return eligible[draw_choice(config.seed, cell_key + ("msf-variant",), len(eligible))]


class _Literal(NamedTuple):
    kind: str  # a native kind, or "text"
    value: NativeValue | None
    text: str
    patterns: frozenset[str]
    malformed: bool


def _grouped(value: int | Decimal | float) -> str:
    return f"{value:,}"


def _render_literal(lit: Term, key: tuple[str, ...], config: PatternConfig) -> _Literal:
    dt = lit.datatype
    lexical = lit.value
    none: frozenset[str] = frozenset()
    try:
        if dt == XSD_BOOLEAN:
            flag = parse_boolean(lexical)
            if config.applies(ACRONYMS, key + ("symbol",)):
                symbol = config.param(ACRONYMS, "trueSymbol" if flag else "falseSymbol")
                return _Literal("text", None, symbol, frozenset({ACRONYMS}), False)
            return _Literal(BOOLEAN, flag, lexical.strip(), none, False)
        if dt in NUMERIC_TYPES:
            number = parse_number(lexical, dt)
            if config.applies(NUMERIC_AS_TEXT, key + ("niat",)):
                style = draw_choice(config.seed, key + ("niat-style",), 2)
                text = lexical.strip() if style == 0 else _grouped(number)
                return _Literal("text", None, text, frozenset({NUMERIC_AS_TEXT}), False)
            if isinstance(number, int) and abs(number) >= _MAX_NATIVE_INT:
                return _Literal("text", None, lexical.strip(), none, False)
            native = float(number) if isinstance(number, Decimal) else number
            return _Literal(NUMBER, native, lexical.strip(), none, False)
        if dt in DATE_TYPES:
            when: _dt.date = parse_date(lexical) if dt == XSD_DATE else parse_datetime(lexical)
            if config.applies(NUMERIC_AS_TEXT, key + ("niat",)):
                style = draw_choice(config.seed, key + ("niat-style",), 2)
                if style == 0:
                    text = when.isoformat()
                elif isinstance(when, _dt.datetime):
                    text = when.strftime("%d.%m.%Y %H:%M:%S")
                else:
                    text = when.strftime("%d.%m.%Y")
                return _Literal("text", None, text, frozenset({NUMERIC_AS_TEXT}), False)
            if isinstance(when, _dt.datetime) and when.tzinfo is not None:
                return _Literal("text", None, when.isoformat(), none, False)
            return _Literal(DATE, when, when.isoformat(), none, False)
    except MalformedLiteral:
        return _Literal("text", None, lexical, none, True)
    return _Literal("text", None, lexical, none, False)


def render_literal(lit: Term, cell_key: tuple[str, ...], config: PatternConfig) -> CellContent:
    if not lit.is_literal:
        raise ValueError(f"not a literal: {lit!r}")
    r = _render_literal(lit, cell_key, config)
    if r.kind == "text":
        return CellContent.text(r.text)
    return CellContent(r.kind, r.value)


def column_delimiter(sheet: str, column: ColumnPlan, config: PatternConfig) -> str:
    return config.delimiters[draw_choice(config.seed, ("delim", sheet, column.header), len(config.delimiters))]


def compose_cell(
    subject: str,
    column: ColumnPlan,
    objects: Iterable[tuple[str, Term, Statement]],
    cell_key: tuple[str, ...],
    graph: RdfGraph,
    config: PatternConfig,
    delimiter: str | None = None,
) -> Composed:
    """Render all objects of one (row, column) pair into a single cell.

    With multiple-entities-in-one-cell disabled each property keeps only its
    first object; the rest are reported as dropped. Objects of different
    properties (merged columns) always share the cell.
    """
    if delimiter is None:
        delimiter = config.delimiters[0]
    ordered = sorted(objects, key=lambda x: (x[0], canonical_object(x[1])[0]))
    patterns: set[str] = set()
    dropped: list[tuple[Statement, str]] = []
    malformed: list[Statement] = []

    kept = []
    per_property: dict[str, int] = {}
    for prop, obj, stmt in ordered:
        if obj.is_literal and not obj.value.strip():
            dropped.append((stmt, "empty-literal"))
            continue
        seen = per_property.get(prop, 0)
        per_property[prop] = seen + 1
        if seen and not config.enabled(MULTIPLE_ENTITIES):
            dropped.append((stmt, "dropped-by-config"))
            continue
        kept.append((prop, obj, stmt))
    if not kept:
        return Composed(CellContent(), frozenset(), tuple(dropped), ())
    if any(n > 1 for n in per_property.values()) and config.enabled(MULTIPLE_ENTITIES):
        patterns.add(MULTIPLE_ENTITIES)
    if len(column.properties) > 1:
        patterns.add(INTRA_CELL)

    rendered = []
    for prop, obj, stmt in kept:
        key = cell_key + (canonical_object(obj)[0],)
        if obj.is_literal:
            lit = _render_literal(obj, key, config)
            patterns |= lit.patterns
            if lit.malformed:
                malformed.append(stmt)
            rendered.append((lit, stmt))
        else:
            form = render_resource(obj.id, key, graph, config)
            primary = surface_forms(obj.id, graph, config.given_name_properties, config.family_name_properties)[0]
            if form != primary:
                patterns.add(SURFACE_FORMS)
            if form.variant == "acronym":
                patterns.add(ACRONYMS)
            rendered.append((_Literal("text", None, form.text, frozenset(), False), stmt))

    if len(rendered) == 1:
        lit, stmt = rendered[0]
        if lit.kind == "text":
            content = CellContent.text(lit.text, (stmt,))
        else:
            content = CellContent(lit.kind, lit.value, refs=(stmt,))
    else:
        runs: list[CellRun] = []
        for i, (lit, stmt) in enumerate(rendered):
            if i:
                runs.append(CellRun(delimiter))
            runs.append(CellRun(lit.text, refs=(stmt,)))
        content = CellContent("richText", runs=tuple(runs))
    return Composed(content, frozenset(patterns), tuple(dropped), tuple(malformed))
