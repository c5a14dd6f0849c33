"""Provenance records and their JSON-Lines ground-truth form."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterable

from .rdf import Statement


@dataclass(frozen=True)
class ProvenanceRecord:
    """Links one cell (or one run of it) to a statement it renders.

    ``run_index`` is set only when the cell holds more than one
    statement-bearing run.
    """

    sheet: str
    row: int
    column: int
    run_index: int | None
    statement: Statement
    patterns: tuple[str, ...] = ()
    qualifiers: tuple[str, ...] = ()

    @property
    def address(self) -> tuple[str, int, int]:
        return (self.sheet, self.row, self.column)

    @property
    def outdated(self) -> bool:
        return "outdated" in self.qualifiers

    def sort_key(self) -> tuple:
        return (self.sheet, self.row, self.column, -1 if self.run_index is None else self.run_index, self.statement)

    def to_dict(self) -> dict[str, Any]:
        return {
            "sheet": self.sheet,
            "row": self.row,
            "column": self.column,
            "runIndex": self.run_index,
            "subject": self.statement.subject,
            "predicate": self.statement.predicate,
            "object": self.statement.object,
            "objectKind": self.statement.object_kind,
            "patterns": list(self.patterns),
            "qualifiers": {q: True for q in self.qualifiers},
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ProvenanceRecord":
        return cls(
            sheet=data["sheet"],
            row=data["row"],
            column=data["column"],
            run_index=data["runIndex"],
            statement=Statement(data["subject"], data["predicate"], data["object"], data["objectKind"]),
            patterns=tuple(data.get("patterns", ())),
            qualifiers=tuple(sorted(k for k, v in data.get("qualifiers", {}).items() if v)),
        )


def sort_records(records: Iterable[ProvenanceRecord]) -> tuple[ProvenanceRecord, ...]:
    return tuple(sorted(records, key=ProvenanceRecord.sort_key))


def dumps_ground_truth(records: Iterable[ProvenanceRecord]) -> str:
    return "".join(
        json.dumps(r.to_dict(), sort_keys=True, ensure_ascii=False, separators=(",", ":")) + "\n"
        for r in sort_records(records)
    )


def export_ground_truth(workbook, path: str | Path) -> Path:
    """Write one JSON line per provenance record of ``workbook`` (or of a record iterable)."""
    records = getattr(workbook, "provenance", workbook)
    path = Path(path)
    path.write_bytes(dumps_ground_truth(records).encode("utf-8"))
    return path


def read_ground_truth(path: str | Path) -> list[ProvenanceRecord]:
    records = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                records.append(ProvenanceRecord.from_dict(json.loads(line)))
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                raise ValueError(f"{path}:{lineno}: malformed ground-truth record ({exc})") from exc
    return records
