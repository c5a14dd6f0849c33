"""Registry of the implemented generation patterns."""

from __future__ import annotations

from typing import NamedTuple

MULTIPLE_ENTITIES = "multiple-entities-in-one-cell"
MULTIPLE_TYPES = "multiple-types-in-a-table"
INTRA_CELL = "intra-cell-additional-information"
NUMERIC_AS_TEXT = "numeric-information-as-text"
SURFACE_FORMS = "multiple-surface-forms"
ACRONYMS = "acronyms-or-symbols"
VALUE_AS_COLOR = "property-value-as-color"
OUTDATED = "outdated-is-formatted"
PARTIAL_FORMATTING = "partial-formatting-indicates-relations"


class PatternInfo(NamedTuple):
    id: str
    category: str
    scope: str
    default_probability: float
    probability_meaning: str
    description: str
    parameters: dict[str, object]


PATTERNS: dict[str, PatternInfo] = {
    p.id: p
    for p in (
        PatternInfo(
            MULTIPLE_ENTITIES, "layout", "per-cell", 1.0, "not consulted",
            "All objects of a multi-valued property share one cell, separated by "
            "the column's delimiter. When disabled only the first object is kept.",
            {},
        ),
        PatternInfo(
            MULTIPLE_TYPES, "layout", "per-sheet", 0.25, "chance a sheet absorbs the next sheet",
            "Adjacent sheets are merged pairwise so one table lists instances of two classes.",
            {},
        ),
        PatternInfo(
            INTRA_CELL, "layout", "per-column", 0.25, "chance a column absorbs the next 1-2 columns",
            "Neighbouring columns are merged so a single cell holds values of two or three properties.",
            {},
        ),
        PatternInfo(
            NUMERIC_AS_TEXT, "modelling", "per-cell", 0.5, "chance a number or date is written as text",
            "Numbers and dates are stored as text (plain or digit-grouped numbers; "
            "ISO or day.month.year dates) instead of native cell values.",
            {},
        ),
        PatternInfo(
            SURFACE_FORMS, "modelling", "per-cell", 0.5, "chance a mention draws a random label variant",
            "Resources are mentioned by varying labels: full label, 'Family, Given', "
            "'G. Family', family name only, or the IRI local name.",
            {"givenNameProperties": None, "familyNameProperties": None},
        ),
        PatternInfo(
            ACRONYMS, "modelling", "per-cell", 1.0, "chance a boolean is written as a symbol",
            "Acronyms become eligible label variants and booleans are written as check/cross symbols.",
            {"trueSymbol": "✓", "falseSymbol": "✗"},
        ),
        PatternInfo(
            VALUE_AS_COLOR, "formatting", "per-column", 0.5, "chance an eligible column is color-encoded",
            "A low-cardinality property is encoded as the subject cell's background or "
            "font color and its column is removed.",
            {},
        ),
        PatternInfo(
            OUTDATED, "formatting", "per-cell", 1.0, "not consulted",
            "Mentions made through properties configured as outdated are struck through.",
            {},
        ),
        PatternInfo(
            PARTIAL_FORMATTING, "formatting", "per-column", 1.0, "chance a merged column gets run styles",
            "In merged columns every property gets its own run style (bold, italic, "
            "underline or a font color) so relations stay recognizable.",
            {},
        ),
    )
}

PATTERN_IDS: tuple[str, ...] = tuple(PATTERNS)

UNIMPLEMENTED_NOTE = (
    "The full pattern catalog has 11 entries; 2 of them are not documented well enough "
    "to reproduce and are not implemented."
)
