"""Classes, class properties and instances derived from a graph."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .rdf import (
    FOAF,
    RDF_TYPE,
    RDFS_CLASS,
    RDFS_DOMAIN,
    RDFS_LABEL,
    SCHEMA,
    RdfGraph,
    is_schema_term,
)

GIVEN_NAME_PROPERTIES = (FOAF + "givenName", FOAF + "firstName", SCHEMA + "givenName")
FAMILY_NAME_PROPERTIES = (FOAF + "familyName", FOAF + "lastName", SCHEMA + "familyName")


class CoverageEntry(NamedTuple):
    subject: str
    reason: str  # "untyped-subject" or "schema-resource"


@dataclass(frozen=True)
class Terminology:
    classes: tuple[str, ...] = ()
    class_properties: dict[str, tuple[str, ...]] = field(default_factory=dict)
    instances: dict[str, tuple[str, ...]] = field(default_factory=dict)
    coverage_report: tuple[CoverageEntry, ...] = ()
    auxiliary_properties: frozenset[str] = frozenset()

    def classes_of(self, instance: str) -> tuple[str, ...]:
        return tuple(c for c in self.classes if instance in self.instances.get(c, ()))


def auxiliary_properties(
    given: Iterable[str] = GIVEN_NAME_PROPERTIES, family: Iterable[str] = FAMILY_NAME_PROPERTIES
) -> frozenset[str]:
    """Properties that feed rendering and never get a column."""
    return frozenset({RDF_TYPE, RDFS_LABEL, *given, *family})


def build_terminology(graph: RdfGraph, auxiliary: frozenset[str] | None = None) -> Terminology:
    """Derive sheet-driving terminology from ``graph``.

    Classes are the objects of ``rdf:type`` plus subjects typed
    ``rdfs:Class``; vocabulary terms from the RDF, RDFS and OWL namespaces
    are never classes. A property belongs to a class when its ``rdfs:domain``
    names the class or when it is used on one of the class's instances.
    """
    if auxiliary is None:
        auxiliary = auxiliary_properties()

    classes: set[str] = set()
    for t in graph.triples:
        if t.predicate.value != RDF_TYPE or t.object.kind != "iri":
            continue
        if not is_schema_term(t.object.value):
            classes.add(t.object.value)
        if t.object.value == RDFS_CLASS and t.subject.kind == "iri" and not is_schema_term(t.subject.value):
            classes.add(t.subject.value)

    instances = {c: graph.type_index.get(c, ()) for c in sorted(classes)}
    members: dict[str, set[str]] = defaultdict(set)
    for c, subjects in instances.items():
        for s in subjects:
            members[s].add(c)

    props: dict[str, set[str]] = {c: set() for c in classes}
    properties_seen: set[str] = set()
    for s, p, o in graph.triples:
        properties_seen.add(p.value)
        if p.value == RDFS_DOMAIN and o.kind == "iri" and o.value in classes:
            if s.kind == "iri" and s.value not in auxiliary:
                props[o.value].add(s.value)
        if p.value in auxiliary:
            continue
        for c in members.get(s.id, ()):
            props[c].add(p.value)

    coverage = []
    for subject in graph.subjects():
        if subject in members:
            continue
        if subject in classes or subject in properties_seen or graph.objects(subject, RDFS_DOMAIN):
            coverage.append(CoverageEntry(subject, "schema-resource"))
        elif any(graph.objects(subject, RDF_TYPE)):
            # typed only with vocabulary classes, e.g. owl:Ontology
            coverage.append(CoverageEntry(subject, "schema-resource"))
        else:
            coverage.append(CoverageEntry(subject, "untyped-subject"))

    return Terminology(
        classes=tuple(sorted(classes)),
        class_properties={c: tuple(sorted(props[c])) for c in sorted(classes)},
        instances=instances,
        coverage_report=tuple(coverage),
        auxiliary_properties=auxiliary,
    )
