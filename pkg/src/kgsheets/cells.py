"""Value types for cell content and styling."""

from __future__ import annotations

import datetime as _dt
import re
from dataclasses import dataclass, fields, replace
from typing import Any, Union

from .rdf import Statement

NativeValue = Union[int, float, bool, _dt.date, _dt.datetime]

_RGB = re.compile(r"[0-9A-F]{6}")

EMPTY = "empty"
NUMBER = "nativeNumber"
DATE = "nativeDate"
BOOLEAN = "nativeBoolean"
RICH = "richText"
KINDS = (EMPTY, NUMBER, DATE, BOOLEAN, RICH)


@dataclass(frozen=True)
class StyleSpec:
    """Font and fill attributes; colors are ``RRGGBB`` hex strings."""

    foreground: str | None = None
    background: str | None = None
    bold: bool = False
    italic: bool = False
    underline: bool = False
    strikethrough: bool = False

    def __post_init__(self) -> None:
        for name in ("foreground", "background"):
            color = getattr(self, name)
            if color is not None and not _RGB.fullmatch(color):
                raise ValueError(f"{name} must be a 24-bit RGB hex string, got {color!r}")

    def is_default(self) -> bool:
        return self == DEFAULT_STYLE

    def merged(self, other: "StyleSpec") -> "StyleSpec":
        """``other``'s non-default attributes layered over this style."""
        changes = {f.name: getattr(other, f.name) for f in fields(other) if getattr(other, f.name) not in (None, False)}
        return replace(self, **changes)

    def to_dict(self) -> dict[str, Any]:
        return {f.name: getattr(self, f.name) for f in fields(self) if getattr(self, f.name) not in (None, False)}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "StyleSpec":
        return cls(**data)


DEFAULT_STYLE = StyleSpec()


@dataclass(frozen=True)
class CellRun:
    text: str
    style: StyleSpec = DEFAULT_STYLE
    refs: tuple[Statement, ...] = ()

    @property
    def is_delimiter(self) -> bool:
        return not self.refs


@dataclass(frozen=True)
class CellContent:
    """What a cell holds: nothing, a native value, or rich-text runs.

    Native kinds keep their statement references in ``refs``; rich text keeps
    them on the runs.
    """

    kind: str = EMPTY
    value: NativeValue | None = None
    runs: tuple[CellRun, ...] = ()
    refs: tuple[Statement, ...] = ()

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown cell kind {self.kind!r}")
        if self.kind == EMPTY and (self.runs or self.value is not None or self.refs):
            raise ValueError("empty cells carry no value, runs or refs")
        if self.kind == RICH and (self.value is not None or self.refs):
            raise ValueError("rich-text cells keep refs on their runs")

    @classmethod
    def text(cls, text: str, refs: tuple[Statement, ...] = (), style: StyleSpec = DEFAULT_STYLE) -> "CellContent":
        return cls(RICH, runs=(CellRun(text, style, refs),))

    @property
    def is_empty(self) -> bool:
        return self.kind == EMPTY

    @property
    def display_text(self) -> str:
        if self.kind == RICH:
            return "".join(r.text for r in self.runs)
        return display_native(self.kind, self.value)

    @property
    def statements(self) -> tuple[Statement, ...]:
        if self.kind == RICH:
            return tuple(s for r in self.runs for s in r.refs)
        return self.refs

    def with_runs(self, runs: tuple[CellRun, ...]) -> "CellContent":
        return replace(self, runs=runs)


def display_native(kind: str, value: NativeValue | None) -> str:
    if kind == EMPTY or value is None:
        return ""
    if kind == BOOLEAN:
        return "TRUE" if value else "FALSE"
    if kind == DATE:
        return value.isoformat()  # type: ignore[union-attr]
    return format_number(value)  # type: ignore[arg-type]


def format_number(value: int | float) -> str:
    """General-format text of a number; integral floats print without ``.0``."""
    if isinstance(value, float):
        if value.is_integer() and abs(value) < 1e15:
            return str(int(value))
        return repr(value)
    return str(value)


@dataclass(frozen=True)
class Cell:
    row: int
    column: int
    content: CellContent = CellContent()
    style: StyleSpec = DEFAULT_STYLE

    @property
    def display_text(self) -> str:
        return self.content.display_text
