import pytest
import rdflib
from hypothesis import given, settings
from hypothesis import strategies as st

from kgsheets.parser import RdfSyntaxError, UnsupportedConstructError, parse_graph, parse_triples
from kgsheets.rdf import RDF_TYPE, XSD_DECIMAL, XSD_INTEGER, XSD_BOOLEAN, RdfGraph, Triple, iri, literal

from helpers import oracle_in_scope


def _rdflib_set(text, fmt="turtle"):
    # language tags compare case-insensitively
    g = rdflib.Graph().parse(data=text, format=fmt)
    out = set()
    for s, p, o in g:
        if isinstance(o, rdflib.Literal) and o.language:
            o = rdflib.Literal(str(o), lang=o.language.lower())
        out.add((str(s), str(p), o.n3()))
    return out


def _our_set(graph):
    out = set()
    for t in graph:
        o = t.object
        if o.is_literal:
            out.add((t.subject.value, t.predicate.value, rdflib.Literal(o.value, lang=o.language, datatype=o.datatype).n3()))
        else:
            out.add((t.subject.value, t.predicate.value, rdflib.URIRef(o.value).n3()))
    return out


def test_empty_document():
    assert len(parse_graph("")) == 0
    assert len(parse_graph("# only a comment\n")) == 0


def test_single_ntriple():
    g = parse_graph('<urn:a> <urn:p> "x" .')
    (t,) = list(g)
    assert t.object == literal("x")
    assert t.object.datatype is None and t.object.language is None


def test_prefix_and_predicate_list_match_rdflib():
    doc = '@prefix ex: <http://e.org/> .\nex:a ex:p "1" ; ex:q ex:b .\n'
    g = parse_graph(doc)
    assert len(g) == 2
    assert _our_set(g) == _rdflib_set(doc)


def test_sample_graph_matches_rdflib(sample_graph, sample_ttl):
    assert len(sample_graph) == 200
    assert _our_set(sample_graph) == _rdflib_set(sample_ttl)


def test_turtle_shorthands():
    doc = """PREFIX ex: <http://e.org/>
ex:a a ex:C ; ex:n 42, -1.5, true ; ex:s '''two
lines''' ; ex:l "hi"@EN-gb .
"""
    g = parse_graph(doc)
    objs = set(g.objects("http://e.org/a", "http://e.org/n"))
    assert objs == {literal("42", XSD_INTEGER), literal("-1.5", XSD_DECIMAL), literal("true", XSD_BOOLEAN)}
    assert g.objects("http://e.org/a", RDF_TYPE) == (iri("http://e.org/C"),)
    assert g.objects("http://e.org/a", "http://e.org/s")[0].value == "two\nlines"
    assert g.objects("http://e.org/a", "http://e.org/l")[0].language == "en-gb"
    assert _our_set(g) == _rdflib_set(doc)


def test_escapes():
    g = parse_graph(r'<urn:a> <urn:p> "tab\there é \"q\"" .')
    assert next(iter(g)).object.value == 'tab\there é "q"'


def test_ntriples_mode_rejects_prefixed_names():
    with pytest.raises(RdfSyntaxError):
        parse_graph("@prefix ex: <http://e.org/> .\nex:a ex:p ex:b .", "ntriples")


@pytest.mark.parametrize(
    "doc",
    [
        "<urn:a> <urn:p> (1 2) .",
        "<urn:a> <urn:p> [ <urn:q> 1 ] .",
        "@base <http://e.org/> .",
        "<< <urn:a> <urn:p> <urn:b> >> <urn:q> 1 .",
    ],
)
def test_unsupported_constructs(doc):
    with pytest.raises(UnsupportedConstructError):
        parse_graph(doc)


def test_syntax_error_reports_line_and_column():
    doc = '<urn:a> <urn:p> "ok" .\n<urn:b> <urn:p> "unterminated .\n'
    with pytest.raises(RdfSyntaxError) as err:
        parse_graph(doc)
    assert err.value.line == 2
    assert err.value.column >= 1
    assert "line 2" in str(err.value)


def test_undeclared_prefix():
    with pytest.raises(RdfSyntaxError):
        parse_graph("ex:a ex:p ex:b .")


def test_blank_nodes_relabelled_in_order():
    a = parse_graph("_:zz <urn:p> _:yy . _:yy <urn:p> _:zz .")
    ids = sorted({t.subject.id for t in a})
    assert ids == ["_:b0", "_:b1"]
    assert a == parse_graph("_:zz <urn:p> _:yy . _:yy <urn:p> _:zz .")


def test_bytes_and_bom():
    assert len(parse_graph('﻿<urn:a> <urn:p> "x" .'.encode("utf-8"))) == 1


def test_ntriples_roundtrip(sample_graph):
    again = parse_graph(sample_graph.to_ntriples(), "ntriples")
    assert again == sample_graph


def test_duplicates_collapse_in_graph():
    doc = '<urn:a> <urn:p> "x" .\n<urn:a> <urn:p> "x" .'
    assert len(parse_triples(doc)) == 2
    assert len(parse_graph(doc)) == 1


def test_oracle_agrees_on_mini(mini_graph):
    from helpers import MINI_TTL

    assert len(oracle_in_scope(MINI_TTL)) == 7


_iri_text = st.text(alphabet="abcdefghijklmnopqrstuvwxyz0123456789", min_size=1, max_size=6)
_lex = st.text(alphabet=st.characters(blacklist_categories=("Cs",), blacklist_characters="\x00"), max_size=12)


@st.composite
def _triples(draw):
    s = iri("urn:s:" + draw(_iri_text))
    p = iri("urn:p:" + draw(_iri_text))
    kind = draw(st.sampled_from(["iri", "plain", "lang", "typed"]))
    if kind == "iri":
        o = iri("urn:o:" + draw(_iri_text))
    elif kind == "plain":
        o = literal(draw(_lex))
    elif kind == "lang":
        o = literal(draw(_lex), language=draw(st.sampled_from(["en", "de-at"])))
    else:
        o = literal(draw(_lex), "http://e.org/dt")
    return Triple(s, p, o)


@settings(max_examples=150, deadline=None)
@given(st.lists(_triples(), max_size=15))
def test_serialize_parse_idempotent(triples):
    g = RdfGraph(triples)
    once = parse_graph(g.to_ntriples(), "ntriples")
    assert once == g
    assert parse_graph(once.to_ntriples(), "ntriples") == once
