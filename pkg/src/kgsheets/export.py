"""Canonical JSON, XLSX and CSV serialization of generated workbooks.

The canonical document is the determinism surface: UTF-8 JSON with sorted
object keys, no insignificant whitespace, and a single trailing newline.
Sheets keep workbook order, rows and cells keep grid order, provenance is
sorted by (sheet, row, column, run index, statement). XLSX files embed
timestamps and are therefore not byte-stable.
"""

from __future__ import annotations

import csv
import datetime as _dt
import json
import re
from pathlib import Path
from typing import Any, NamedTuple

from openpyxl import Workbook as XlsxWorkbook
from openpyxl import load_workbook
from openpyxl.cell.rich_text import CellRichText, TextBlock
from openpyxl.cell.text import InlineFont
from openpyxl.styles import Font, PatternFill

from .cells import DATE, EMPTY, RICH, Cell, CellContent, CellRun, StyleSpec, format_number
from .provenance import ProvenanceRecord
from .rdf import Statement
from .style import ColorAssignment
from .terminology import CoverageEntry
from .workbook import AppliedPattern, GenerationReport, Sheet, Workbook


# -- canonical JSON -----------------------------------------------------------

def _stmt(s: Statement) -> list[str]:
    return list(s)


def _cell_to_json(cell: Cell) -> dict[str, Any]:
    c = cell.content
    out: dict[str, Any] = {"kind": c.kind}
    if c.kind == RICH:
        runs = []
        for r in c.runs:
            run: dict[str, Any] = {"text": r.text}
            if r.refs:
                run["refs"] = [_stmt(s) for s in r.refs]
            if not r.style.is_default():
                run["style"] = r.style.to_dict()
            runs.append(run)
        out["runs"] = runs
    elif c.kind != EMPTY:
        out["value"] = c.value.isoformat() if c.kind == DATE else c.value
        if c.refs:
            out["refs"] = [_stmt(s) for s in c.refs]
    if not cell.style.is_default():
        out["style"] = cell.style.to_dict()
    return out


def _cell_from_json(row: int, column: int, data: dict[str, Any]) -> Cell:
    kind = data["kind"]
    refs = tuple(Statement(*s) for s in data.get("refs", ()))
    if kind == RICH:
        runs = tuple(
            CellRun(r["text"], StyleSpec.from_dict(r.get("style", {})), tuple(Statement(*s) for s in r.get("refs", ())))
            for r in data["runs"]
        )
        content = CellContent(RICH, runs=runs)
    elif kind == EMPTY:
        content = CellContent()
    else:
        value = data["value"]
        if kind == DATE:
            value = _dt.datetime.fromisoformat(value) if "T" in value else _dt.date.fromisoformat(value)
        content = CellContent(kind, value, refs=refs)
    return Cell(row, column, content, StyleSpec.from_dict(data.get("style", {})))


def _assignment_to_json(a: ColorAssignment) -> dict[str, Any]:
    return {"sheet": a.sheet, "property": a.property, "channel": a.channel, "valueToColor": dict(a.value_to_color)}


def report_to_json(report: GenerationReport) -> dict[str, Any]:
    return {
        "dropped": [{"statement": _stmt(s), "reason": reason} for s, reason in report.dropped],
        "excluded": [{"subject": e.subject, "reason": e.reason} for e in report.excluded],
        "applied": [a._asdict() for a in report.applied],
        "malformed": [_stmt(s) for s in report.malformed],
        "patternCells": dict(report.pattern_cells),
    }


def report_from_json(data: dict[str, Any]) -> GenerationReport:
    return GenerationReport(
        dropped=tuple((Statement(*d["statement"]), d["reason"]) for d in data["dropped"]),
        excluded=tuple(CoverageEntry(e["subject"], e["reason"]) for e in data["excluded"]),
        applied=tuple(AppliedPattern(**a) for a in data["applied"]),
        malformed=tuple(Statement(*s) for s in data["malformed"]),
        pattern_cells=dict(data["patternCells"]),
    )


def to_json(workbook: Workbook) -> dict[str, Any]:
    return {
        "meta": dict(workbook.meta),
        "sheets": [
            {
                "name": s.name,
                "classes": list(s.classes),
                "colorAssignments": [_assignment_to_json(a) for a in s.color_assignments],
                "rows": [[_cell_to_json(c) for c in row] for row in s.rows],
            }
            for s in workbook.sheets
        ],
        "provenance": [r.to_dict() for r in workbook.provenance],
        "report": report_to_json(workbook.report),
    }


def serialize_canonical(workbook: Workbook) -> str:
    text = json.dumps(to_json(workbook), sort_keys=True, ensure_ascii=False, separators=(",", ":"))
    return text + "\n"


def parse_canonical(text: str | bytes) -> Workbook:
    data = json.loads(text)
    sheets = tuple(
        Sheet(
            name=s["name"],
            classes=tuple(s["classes"]),
            rows=tuple(
                tuple(_cell_from_json(r, c, cell) for c, cell in enumerate(row)) for r, row in enumerate(s["rows"])
            ),
            color_assignments=tuple(
                ColorAssignment(a["sheet"], a["property"], a["channel"], a["valueToColor"])
                for a in s["colorAssignments"]
            ),
        )
        for s in data["sheets"]
    )
    return Workbook(
        sheets=sheets,
        provenance=tuple(ProvenanceRecord.from_dict(r) for r in data["provenance"]),
        report=report_from_json(data["report"]),
        meta=dict(data["meta"]),
    )


def write_canonical(workbook: Workbook, path: str | Path) -> Path:
    path = Path(path)
    path.write_bytes(serialize_canonical(workbook).encode("utf-8"))
    return path


# -- XLSX ----------------------------------------------------------------------

def _argb(rgb: str) -> str:
    return "FF" + rgb


def _inline_font(style: StyleSpec) -> InlineFont:
    return InlineFont(
        b=style.bold or None,
        i=style.italic or None,
        u="single" if style.underline else None,
        strike=style.strikethrough or None,
        color=_argb(style.foreground) if style.foreground else None,
    )


def _xlsx_value(content: CellContent):
    if content.kind == EMPTY:
        return None
    if content.kind != RICH:
        return content.value
    if all(r.style.is_default() for r in content.runs):
        return content.display_text
    return CellRichText(
        [r.text if r.style.is_default() else TextBlock(_inline_font(r.style), r.text) for r in content.runs]
    )


def export_xlsx(workbook: Workbook, path: str | Path) -> Path:
    """Write an .xlsx file with native values, rich-text runs and cell styles.

    A workbook without sheets is written with one empty placeholder sheet,
    since the format requires at least one.
    """
    path = Path(path)
    book = XlsxWorkbook()
    placeholder = book.active
    for sheet in workbook.sheets:
        ws = book.create_sheet(sheet.name)
        for cell in sheet.cells():
            target = ws.cell(row=cell.row + 1, column=cell.column + 1)
            target.value = _xlsx_value(cell.content)
            if cell.content.kind == DATE:
                target.number_format = "yyyy-mm-dd hh:mm:ss" if isinstance(cell.content.value, _dt.datetime) else "yyyy-mm-dd"
            style = cell.style
            if style.background:
                target.fill = PatternFill("solid", fgColor=_argb(style.background))
            if any((style.foreground, style.bold, style.italic, style.underline, style.strikethrough)):
                target.font = Font(
                    color=_argb(style.foreground) if style.foreground else None,
                    b=style.bold,
                    i=style.italic,
                    u="single" if style.underline else None,
                    strike=style.strikethrough,
                )
    if workbook.sheets:
        book.remove(placeholder)
    book.save(path)
    return path


class XlsxCell(NamedTuple):
    """A cell as re-read from an exported file."""

    display_text: str
    style: StyleSpec
    runs: tuple[tuple[str, StyleSpec], ...]


def _rgb(color) -> str | None:
    if color is None or color.type != "rgb" or not isinstance(color.rgb, str):
        return None
    return color.rgb.upper()[-6:]


def _style_from_font(font, fill=None) -> StyleSpec:
    background = None
    if fill is not None and fill.fill_type == "solid":
        background = _rgb(fill.fgColor)
    if font is None:
        return StyleSpec(background=background)
    return StyleSpec(
        foreground=_rgb(font.color) if font.color is not None else None,
        background=background,
        bold=bool(font.b),
        italic=bool(font.i),
        underline=bool(font.u) and font.u != "none",
        strikethrough=bool(font.strike),
    )


def _display(value, number_format: str) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "TRUE" if value else "FALSE"
    if isinstance(value, _dt.datetime):
        if "h" not in number_format.lower():
            return value.date().isoformat()
        return value.isoformat()
    if isinstance(value, _dt.date):
        return value.isoformat()
    if isinstance(value, (int, float)):
        return format_number(value)
    return str(value)


def read_xlsx(path: str | Path) -> dict[str, list[list[XlsxCell]]]:
    """Re-read an exported workbook: display text, cell style and run styles per cell."""
    book = load_workbook(path, rich_text=True)
    out: dict[str, list[list[XlsxCell]]] = {}
    for ws in book.worksheets:
        rows = []
        for row in ws.iter_rows():
            cells = []
            for c in row:
                value = c.value
                style = _style_from_font(c.font, c.fill)
                if isinstance(value, CellRichText):
                    runs = tuple(
                        (b.text, _style_from_font(b.font)) if isinstance(b, TextBlock) else (str(b), StyleSpec())
                        for b in value
                    )
                    cells.append(XlsxCell("".join(t for t, _ in runs), style, runs))
                else:
                    text = _display(value, c.number_format or "")
                    cells.append(XlsxCell(text, style, ((text, StyleSpec()),) if text else ()))
            rows.append(cells)
        out[ws.title] = rows
    return out


# -- CSV -------------------------------------------------------------------------

def csv_filename(sheet_name: str) -> str:
    return re.sub(r"[^\w+\-. ]", "_", sheet_name) + ".csv"


def export_csv(workbook: Workbook, directory: str | Path) -> list[Path]:
    """One RFC 4180 CSV per sheet holding display text only; styles and types are lost."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for sheet in workbook.sheets:
        path = directory / csv_filename(sheet.name)
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\r\n")
            for row in sheet.rows:
                writer.writerow([c.display_text for c in row])
        paths.append(path)
    return paths
