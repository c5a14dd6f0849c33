"""Scoring candidate extractions against ground truth, plus a reference extractor.

Candidate files are either N-Triples (``.nt``) or tab-separated text with
three columns per line: subject, predicate, object. Subjects and predicates
may be written bare or in angle brackets; the object is an N-Triples term
(``<iri>``, ``_:label``, ``"lexical"^^<datatype>``, ``"text"@lang``) or a
bare absolute IRI. Blank lines and ``#`` comments are ignored.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from decimal import Decimal
from pathlib import Path
from typing import Iterable

from .cells import BOOLEAN, DATE, NUMBER, CellContent
from .config import DEFAULT_DELIMITERS
from .layout import plan_default
from .parser import RdfSyntaxError, parse_triples
from .provenance import ProvenanceRecord, read_ground_truth
from .rdf import (
    INTEGER_TYPES,
    NUMERIC_TYPES,
    RDF_TYPE,
    XSD_BOOLEAN,
    XSD_DATE,
    XSD_DATETIME,
    XSD_DECIMAL,
    RdfGraph,
    Statement,
    Term,
    Triple,
    format_decimal,
    iri,
    literal,
    node,
)
from .render import surface_forms
from .terminology import Terminology
from .workbook import Workbook


@dataclass(frozen=True)
class Metrics:
    true_positives: int
    false_positives: int
    false_negatives: int
    precision: float
    recall: float
    f1: float
    per_pattern: dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "truePositives": self.true_positives,
            "falsePositives": self.false_positives,
            "falseNegatives": self.false_negatives,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "perPattern": dict(self.per_pattern),
        }


def score(candidate: Iterable[Statement], truth: Iterable[Statement]) -> Metrics:
    """Micro-averaged set comparison.

    Precision is 1.0 for an empty candidate and recall is 1.0 for empty
    truth; F1 is 0.0 whenever there is no true positive, except that two
    empty sets agree perfectly.
    """
    cand, gold = set(candidate), set(truth)
    tp = len(cand & gold)
    fp = len(cand - gold)
    fn = len(gold - cand)
    precision = tp / (tp + fp) if tp + fp else 1.0
    recall = tp / (tp + fn) if tp + fn else 1.0
    # count form of the harmonic mean; avoids rounding twice
    if not cand and not gold:
        f1 = 1.0
    else:
        f1 = 2 * tp / (2 * tp + fp + fn)
    return Metrics(tp, fp, fn, precision, recall, f1)


def evaluate(
    candidate: Iterable[Statement] | str | Path,
    ground_truth: Iterable[ProvenanceRecord] | str | Path,
) -> Metrics:
    if isinstance(candidate, (str, Path)):
        candidate = read_candidate(candidate)
    if isinstance(ground_truth, (str, Path)):
        ground_truth = read_ground_truth(ground_truth)
    records = list(ground_truth)
    cand = set(candidate)
    metrics = score(cand, (r.statement for r in records))
    by_pattern: dict[str, set[Statement]] = {}
    for r in records:
        for p in r.patterns:
            by_pattern.setdefault(p, set()).add(r.statement)
    per_pattern = {p: len(cand & stmts) / len(stmts) for p, stmts in sorted(by_pattern.items())}
    return Metrics(**{**metrics.__dict__, "per_pattern": per_pattern})


# -- candidate files ------------------------------------------------------------

class CandidateError(ValueError):
    def __init__(self, path: str, line: int, message: str):
        self.line = line
        super().__init__(f"{path}: line {line}: {message}")


def _bracket(term: str) -> str:
    term = term.strip()
    if term.startswith(("<", "_:", '"')):
        return term
    return f"<{term}>"


def _parse_tsv(text: str, path: str) -> set[Statement]:
    out = set()
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise CandidateError(path, lineno, f"expected 3 tab-separated columns, got {len(parts)}")
        try:
            (triple,) = parse_triples(
                " ".join(_bracket(p) for p in parts) + " .", "ntriples", relabel_blanks=False
            )
        except (RdfSyntaxError, ValueError) as exc:
            raise CandidateError(path, lineno, str(getattr(exc, "message", exc))) from exc
        out.add(Statement.from_triple(triple))
    return out


def _parse_nt(text: str, path: str) -> set[Statement]:
    try:
        triples = parse_triples(text, "ntriples", relabel_blanks=False)
    except RdfSyntaxError as exc:
        raise CandidateError(path, exc.line, exc.message) from exc
    except ValueError as exc:
        raise CandidateError(path, 0, str(exc)) from exc
    return {Statement.from_triple(t) for t in triples}


def read_candidate(path: str | Path) -> set[Statement]:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix == ".nt":
        return _parse_nt(text, str(path))
    if path.suffix in (".tsv", ".txt"):
        return _parse_tsv(text, str(path))
    first = next((line for line in text.splitlines() if line.strip() and not line.startswith("#")), "")
    return _parse_tsv(text, str(path)) if "\t" in first else _parse_nt(text, str(path))


def write_candidate(statements: Iterable[Statement], path: str | Path) -> Path:
    """N-Triples candidate file, one sorted line per statement."""
    path = Path(path)
    path.write_text("".join(s.n3() + "\n" for s in sorted(set(statements))), encoding="utf-8")
    return path


def statements_of(records: Iterable[ProvenanceRecord]) -> set[Statement]:
    return {r.statement for r in records}


# -- reference extractor ---------------------------------------------------------

class ReferenceExtractionError(ValueError):
    def __init__(self, failures: list[str]):
        self.failures = failures
        more = f" (+{len(failures) - 5} more)" if len(failures) > 5 else ""
        super().__init__("; ".join(failures[:5]) + more)


def _column_types(graph: RdfGraph) -> dict[str, tuple[bool, set[tuple[str | None, str | None]]]]:
    types: dict[str, tuple[bool, set]] = {}
    for _, p, o in graph.triples:
        has_iri, lits = types.get(p.value, (False, set()))
        if o.is_literal:
            lits.add((o.datatype, o.language))
        else:
            has_iri = True
        types[p.value] = (has_iri, lits)
    return types


def _native_literal(content: CellContent, datatypes: set) -> Term | None:
    value = content.value
    if content.kind == NUMBER:
        options = [dt for dt, _ in datatypes if dt in NUMERIC_TYPES]
    elif content.kind == DATE:
        want = XSD_DATETIME if hasattr(value, "hour") else XSD_DATE
        options = [dt for dt, _ in datatypes if dt == want]
    else:
        options = [dt for dt, _ in datatypes if dt == XSD_BOOLEAN]
    if len(options) != 1:
        return None
    dt = options[0]
    if content.kind == NUMBER:
        if dt in INTEGER_TYPES:
            lexical = str(int(value))
        elif dt == XSD_DECIMAL:
            lexical = format_decimal(Decimal(repr(float(value))))
        else:
            lexical = repr(float(value))
    elif content.kind == DATE:
        lexical = value.isoformat()
    else:
        lexical = "true" if value else "false"
    return literal(lexical, dt)


def extract_with_failures(
    workbook: Workbook,
    terminology: Terminology,
    graph: RdfGraph,
    delimiters: Iterable[str] = DEFAULT_DELIMITERS,
) -> tuple[set[Statement], list[str]]:
    """Naively invert noise-free generation; returns statements and resolution failures."""
    plan = {s.name: s for s in plan_default(terminology, graph).sheets}
    col_types = _column_types(graph)
    delimiters = list(delimiters)

    by_label: dict[str, set[str]] = {}
    for t in graph.triples:
        for n in (t.subject, t.object):
            if not n.is_literal:
                by_label.setdefault(surface_forms(n.id, graph)[0].text, set()).add(n.id)

    found: set[Statement] = set()
    failures: list[str] = []

    def resolve(text: str, prop: str) -> Term | None:
        has_iri, lits = col_types.get(prop, (False, set()))
        if has_iri:
            nodes = by_label.get(text, set())
            if len(nodes) == 1:
                return node(next(iter(nodes)))
        if len(lits) == 1:
            dt, lang = next(iter(lits))
            return literal(text, dt, lang)
        return None

    for ws in workbook.sheets:
        sp = plan.get(ws.name)
        if sp is None:
            failures.append(f"{ws.name}: no class for sheet name")
            continue
        if not ws.rows:
            continue
        headers = {c.header: c for c in sp.grid_columns}
        columns = []
        for j, text in enumerate(ws.header[1:], 1):
            col = headers.get(text)
            if col is None or len(col.properties) != 1:
                failures.append(f"{ws.name}!{j}: unknown header {text!r}")
            columns.append(col)
        subjects_by_label: dict[str, list[str]] = {}
        for inst in sp.rows:
            subjects_by_label.setdefault(surface_forms(inst, graph)[0].text, []).append(inst)

        for r, row in enumerate(ws.rows[1:], 1):
            matches = subjects_by_label.get(row[0].display_text, [])
            if len(matches) != 1:
                failures.append(f"{ws.name}!{r},0: cannot resolve subject {row[0].display_text!r}")
                continue
            subject = matches[0]
            for cls in sp.classes:
                if subject in terminology.instances.get(cls, ()):
                    found.add(Statement.from_triple(Triple(node(subject), iri(RDF_TYPE), iri(cls))))
            for col, cell in zip(columns, row[1:]):
                content = cell.content
                if col is None or content.is_empty:
                    continue
                prop = col.properties[0]
                if content.kind in (NUMBER, DATE, BOOLEAN):
                    term = _native_literal(content, col_types.get(prop, (False, set()))[1])
                    terms = [term] if term is not None else None
                else:
                    text = content.display_text
                    terms = None
                    whole = resolve(text, prop)
                    if whole is not None:
                        terms = [whole]
                    else:
                        for d in delimiters:
                            if d in text:
                                parts = [resolve(part, prop) for part in text.split(d)]
                                if all(p is not None for p in parts):
                                    terms = parts
                                    break
                if terms is None:
                    failures.append(f"{ws.name}!{r},{cell.column}: cannot resolve {content.display_text!r}")
                    continue
                for term in terms:
                    found.add(Statement.from_triple(Triple(node(subject), iri(prop), term)))
    return found, failures


def reference_extract(
    workbook: Workbook,
    terminology: Terminology,
    graph: RdfGraph,
    delimiters: Iterable[str] = DEFAULT_DELIMITERS,
) -> set[Statement]:
    """Statements recovered from a workbook generated with all noise patterns off.

    Raises :class:`ReferenceExtractionError` when any cell cannot be resolved,
    which signals that the workbook lies outside that operating envelope.
    """
    found, failures = extract_with_failures(workbook, terminology, graph, delimiters)
    if failures:
        raise ReferenceExtractionError(failures)
    return found


def write_metrics(metrics: Metrics, path: str | Path) -> Path:
    path = Path(path)
    path.write_text(json.dumps(metrics.to_dict(), sort_keys=True, indent=2) + "\n", encoding="utf-8")
    return path
