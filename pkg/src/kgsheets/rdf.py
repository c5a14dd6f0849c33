"""RDF terms, triples and the indexed in-memory graph.

Nodes are addressed downstream by a plain string id: the IRI itself for
named nodes, ``_:<label>`` for blank nodes. IRIs always carry a scheme, so
the two never collide.
"""

from __future__ import annotations

import datetime as _dt
import decimal
import math
from collections import defaultdict
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from typing import Iterable, Iterator, NamedTuple

RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS = "http://www.w3.org/2000/01/rdf-schema#"
OWL = "http://www.w3.org/2002/07/owl#"
XSD = "http://www.w3.org/2001/XMLSchema#"
FOAF = "http://xmlns.com/foaf/0.1/"
SCHEMA = "http://schema.org/"

RDF_TYPE = RDF + "type"
RDFS_LABEL = RDFS + "label"
RDFS_DOMAIN = RDFS + "domain"
RDFS_RANGE = RDFS + "range"
RDFS_CLASS = RDFS + "Class"
RDF_LANG_STRING = RDF + "langString"

XSD_STRING = XSD + "string"
XSD_BOOLEAN = XSD + "boolean"
XSD_INTEGER = XSD + "integer"
XSD_DECIMAL = XSD + "decimal"
XSD_DOUBLE = XSD + "double"
XSD_FLOAT = XSD + "float"
XSD_DATE = XSD + "date"
XSD_DATETIME = XSD + "dateTime"

INTEGER_TYPES = frozenset(
    XSD + t
    for t in (
        "integer", "int", "long", "short", "byte", "nonNegativeInteger",
        "positiveInteger", "negativeInteger", "nonPositiveInteger",
        "unsignedInt", "unsignedLong", "unsignedShort", "unsignedByte",
    )
)
NUMERIC_TYPES = INTEGER_TYPES | {XSD_DECIMAL, XSD_DOUBLE, XSD_FLOAT}
DATE_TYPES = frozenset({XSD_DATE, XSD_DATETIME})

# Vocabulary namespaces whose terms describe schema, not data.
SCHEMA_NAMESPACES = (RDF, RDFS, OWL)


@dataclass(frozen=True)
class Term:
    """An RDF node: ``kind`` is ``iri``, ``literal`` or ``blank``."""

    kind: str
    value: str
    datatype: str | None = None
    language: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("iri", "literal", "blank"):
            raise ValueError(f"unknown term kind {self.kind!r}")
        if self.kind == "iri" and (not self.value or ":" not in self.value):
            raise ValueError(f"IRI must be absolute: {self.value!r}")
        if self.kind == "blank" and not self.value:
            raise ValueError("blank node id must be non-empty")
        if self.kind != "literal" and (self.datatype or self.language):
            raise ValueError("only literals carry a datatype or language tag")
        if self.datatype is not None and self.language is not None:
            raise ValueError("a literal has either a datatype or a language tag")

    def _key(self) -> tuple[str, str, str, str]:
        return (self.kind, self.value, self.datatype or "", self.language or "")

    def __lt__(self, other: "Term") -> bool:
        return self._key() < other._key()

    @property
    def id(self) -> str:
        """String id of a node (IRI or ``_:label``); literals use their N-Triples form."""
        if self.kind == "iri":
            return self.value
        if self.kind == "blank":
            return "_:" + self.value
        return self.n3()

    @property
    def is_literal(self) -> bool:
        return self.kind == "literal"

    def n3(self) -> str:
        if self.kind == "iri":
            return "<" + _escape_iri(self.value) + ">"
        if self.kind == "blank":
            return "_:" + self.value
        out = '"' + escape_string(self.value) + '"'
        if self.language:
            return out + "@" + self.language
        if self.datatype:
            return out + "^^<" + _escape_iri(self.datatype) + ">"
        return out


def iri(value: str) -> Term:
    return Term("iri", value)


def literal(value: str, datatype: str | None = None, language: str | None = None) -> Term:
    return Term("literal", value, datatype, language.lower() if language else None)


def blank(label: str) -> Term:
    return Term("blank", label)


def node(node_id: str) -> Term:
    """Inverse of :attr:`Term.id` for non-literal nodes."""
    if node_id.startswith("_:"):
        return blank(node_id[2:])
    return iri(node_id)


class Triple(NamedTuple):
    subject: Term
    predicate: Term
    object: Term

    def n3(self) -> str:
        return f"{self.subject.n3()} {self.predicate.n3()} {self.object.n3()} ."


_STRING_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t", "\b": "\\b", "\f": "\\f"}


def escape_string(text: str) -> str:
    return "".join(_STRING_ESCAPES.get(ch, ch) for ch in text)


def _escape_iri(text: str) -> str:
    return "".join(
        f"\\u{ord(ch):04X}" if ch in '<>"{}|^`\\' or ord(ch) <= 0x20 else ch for ch in text
    )


def local_name(node_id: str) -> str:
    """Text after the last ``#``, ``/`` or ``:``; the whole id when that is empty."""
    if node_id.startswith("_:"):
        return node_id[2:]
    cut = max(node_id.rfind("#"), node_id.rfind("/"), node_id.rfind(":"))
    tail = node_id[cut + 1:]
    return tail or node_id


def is_schema_term(node_id: str) -> bool:
    return node_id.startswith(SCHEMA_NAMESPACES)


# -- canonical literal forms ------------------------------------------------

class MalformedLiteral(ValueError):
    pass


def parse_date(lexical: str) -> _dt.date:
    text = lexical.strip()
    if len(text) != 10:
        raise MalformedLiteral(f"not an xsd:date: {lexical!r}")
    try:
        return _dt.date.fromisoformat(text)
    except ValueError as exc:
        raise MalformedLiteral(f"not an xsd:date: {lexical!r}") from exc


def parse_datetime(lexical: str) -> _dt.datetime:
    text = lexical.strip()
    if text.endswith("Z"):
        text = text[:-1] + "+00:00"
    if "T" not in text:
        raise MalformedLiteral(f"not an xsd:dateTime: {lexical!r}")
    try:
        return _dt.datetime.fromisoformat(text)
    except ValueError as exc:
        raise MalformedLiteral(f"not an xsd:dateTime: {lexical!r}") from exc


def parse_boolean(lexical: str) -> bool:
    text = lexical.strip()
    if text in ("true", "1"):
        return True
    if text in ("false", "0"):
        return False
    raise MalformedLiteral(f"not an xsd:boolean: {lexical!r}")


def parse_number(lexical: str, datatype: str) -> int | Decimal | float:
    text = lexical.strip()
    try:
        if datatype in INTEGER_TYPES:
            if not text.lstrip("+-").isdigit():
                raise ValueError(text)
            return int(text)
        if datatype == XSD_DECIMAL:
            if any(c in text for c in "eEnN"):
                raise ValueError(text)
            return Decimal(text)
        value = float(text)
    except (ValueError, InvalidOperation) as exc:
        raise MalformedLiteral(f"not a valid <{datatype}>: {lexical!r}") from exc
    if math.isnan(value) or math.isinf(value):
        raise MalformedLiteral(f"non-finite number: {lexical!r}")
    return value


def format_decimal(value: Decimal) -> str:
    # normalize() rounds to context precision, so widen it to keep every digit
    ctx = decimal.Context(prec=max(28, len(value.as_tuple().digits)))
    text = format(value.normalize(ctx), "f")
    if "." not in text:
        text += ".0"
    return "0.0" if text in ("-0.0",) else text


def canonical_lexical(term: Term) -> str:
    """Lexical form normalized per datatype; malformed values stay verbatim."""
    dt = term.datatype
    try:
        if dt in INTEGER_TYPES:
            return str(parse_number(term.value, dt))
        if dt == XSD_DECIMAL:
            return format_decimal(parse_number(term.value, dt))  # type: ignore[arg-type]
        if dt in (XSD_DOUBLE, XSD_FLOAT):
            return repr(float(parse_number(term.value, dt)))
        if dt == XSD_BOOLEAN:
            return "true" if parse_boolean(term.value) else "false"
        if dt == XSD_DATE:
            return parse_date(term.value).isoformat()
        if dt == XSD_DATETIME:
            return parse_datetime(term.value).isoformat()
    except MalformedLiteral:
        return term.value
    return term.value


def canonical_object(term: Term) -> tuple[str, str]:
    """(canonical form, kind) used for statement identity.

    IRIs and blank nodes use their id. Literals use N-Triples syntax over
    the normalized lexical form; ``xsd:string`` is folded into plain literals.
    """
    if term.kind != "literal":
        return term.id, term.kind
    dt = None if term.datatype in (None, XSD_STRING, RDF_LANG_STRING) else term.datatype
    return literal(canonical_lexical(term), dt, term.language).n3(), "literal"


class Statement(NamedTuple):
    """Canonical statement identity used by provenance and scoring."""

    subject: str
    predicate: str
    object: str
    object_kind: str

    @classmethod
    def from_triple(cls, triple: Triple) -> "Statement":
        obj, kind = canonical_object(triple.object)
        return cls(triple.subject.id, triple.predicate.value, obj, kind)

    def n3(self) -> str:
        subj = self.subject if self.subject.startswith("_:") else "<" + _escape_iri(self.subject) + ">"
        obj = "<" + _escape_iri(self.object) + ">" if self.object_kind == "iri" else self.object
        return f"{subj} <{_escape_iri(self.predicate)}> {obj} ."


def _label_order(term: Term) -> tuple[str, str]:
    return (term.language or "", term.value)


class RdfGraph:
    """Immutable triple set with label, type and subject/predicate indexes."""

    def __init__(self, triples: Iterable[Triple] = ()):
        triples = frozenset(triples)
        for t in triples:
            if t.predicate.kind != "iri":
                raise ValueError(f"predicate must be an IRI: {t.predicate!r}")
            if t.subject.kind == "literal":
                raise ValueError(f"subject must not be a literal: {t.subject!r}")
        self.triples: frozenset[Triple] = triples

        by_sp: dict[tuple[str, str], list[Term]] = defaultdict(list)
        labels: dict[str, list[Term]] = defaultdict(list)
        types: dict[str, list[str]] = defaultdict(list)
        for s, p, o in triples:
            by_sp[(s.id, p.value)].append(o)
            if p.value == RDFS_LABEL and o.is_literal:
                labels[s.id].append(o)
            elif p.value == RDF_TYPE and o.kind == "iri":
                types[o.value].append(s.id)
        self._by_sp = {k: tuple(sorted(v, key=lambda t: canonical_object(t)[0])) for k, v in by_sp.items()}
        self.label_index: dict[str, tuple[Term, ...]] = {
            k: tuple(sorted(v, key=_label_order)) for k, v in sorted(labels.items())
        }
        self.type_index: dict[str, tuple[str, ...]] = {k: tuple(sorted(v)) for k, v in sorted(types.items())}

    def __len__(self) -> int:
        return len(self.triples)

    def __iter__(self) -> Iterator[Triple]:
        return iter(sorted(self.triples))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RdfGraph) and self.triples == other.triples

    def __hash__(self) -> int:
        return hash(self.triples)

    def objects(self, subject: str, predicate: str) -> tuple[Term, ...]:
        """Objects of ``(subject, predicate)`` in canonical-form order."""
        return self._by_sp.get((subject, predicate), ())

    def subjects(self) -> list[str]:
        return sorted({t.subject.id for t in self.triples})

    def primary_label(self, node_id: str) -> str | None:
        labels = self.label_index.get(node_id)
        return labels[0].value if labels else None

    def first_value(self, subject: str, predicates: Iterable[str]) -> str | None:
        """First literal (by language, lexical form) among the given properties."""
        for p in predicates:
            values = sorted((o for o in self.objects(subject, p) if o.is_literal), key=_label_order)
            if values:
                return values[0].value
        return None

    def to_ntriples(self) -> str:
        return "".join(t.n3() + "\n" for t in sorted(self.triples))
