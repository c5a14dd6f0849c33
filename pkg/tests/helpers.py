"""Shared test data and independent oracles."""

from __future__ import annotations

import rdflib
from rdflib.namespace import RDF as R, RDFS as RS, OWL as O

from kgsheets.config import PatternConfig
from kgsheets.rdf import Statement, Triple, iri, literal
from kgsheets.terminology import FAMILY_NAME_PROPERTIES, GIVEN_NAME_PROPERTIES

EX = "http://example.org/kg/"
MINI = "http://example.org/mini/"

MINI_TTL = """\
@prefix : <http://example.org/mini/> .
@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .
@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .

:alice a :Person ; rdfs:label "Alice Smith" ; :worksAt :acme ; :age 34 .
:bob a :Person ; rdfs:label "Bob Jones" ; :worksAt :acme .
:acme a :Company ; rdfs:label "ACME" ; :founded "1947-06-01"^^xsd:date .
"""


def all_on(seed: int = 0) -> PatternConfig:
    """Every pattern enabled at its default probability, with an outdated property set."""
    return PatternConfig(seed=seed, outdated_properties=(EX + "formerEmployer",))


def _term(t):
    if isinstance(t, rdflib.Literal):
        dt = str(t.datatype) if t.datatype is not None else None
        return literal(str(t), dt, t.language)
    return iri(str(t))


_SKIP_NS = (str(R), str(RS), str(O))
_AUX = {str(R.type), str(RS.label), *GIVEN_NAME_PROPERTIES, *FAMILY_NAME_PROPERTIES}


def oracle_in_scope(turtle: str) -> set[Statement]:
    """In-scope statements computed with rdflib, independently of the package's planner.

    Valid for graphs without blank nodes where every typed subject's
    properties are attached to its sheet (true for the bundled data).
    """
    g = rdflib.Graph().parse(data=turtle, format="turtle")
    classes = {o for o in g.objects(None, R.type) if not str(o).startswith(_SKIP_NS)}
    instances = {s for s, o in g.subject_objects(R.type) if o in classes}
    out = set()
    for s, p, o in g:
        if s not in instances:
            continue
        if p == R.type:
            if o in classes:
                out.add(Statement.from_triple(Triple(iri(str(s)), iri(str(p)), _term(o))))
        elif str(p) not in _AUX:
            out.add(Statement.from_triple(Triple(iri(str(s)), iri(str(p)), _term(o))))
    return out
