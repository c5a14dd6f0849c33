from hypothesis import given, settings
from hypothesis import strategies as st

from kgsheets.cells import EMPTY, RICH
from kgsheets.config import PatternConfig, all_disabled
from kgsheets.parser import parse_graph
from kgsheets.patterns import OUTDATED, VALUE_AS_COLOR
from kgsheets.rdf import RDF_TYPE
from kgsheets.workbook import build_workbook, in_scope_statements, planned

from helpers import EX, MINI_TTL, all_on, oracle_in_scope


def test_empty_graph():
    wb = build_workbook(parse_graph(""), PatternConfig())
    assert wb.sheets == () and wb.provenance == ()


def test_mini_graph_counts(mini_graph):
    wb = build_workbook(mini_graph, all_disabled())
    types = [r for r in wb.provenance if r.statement.predicate == RDF_TYPE]
    others = [r for r in wb.provenance if r.statement.predicate != RDF_TYPE]
    assert len(types) == 3 and len(others) == 4
    assert wb.statements == oracle_in_scope(MINI_TTL)


def test_mini_graph_grid(mini_graph):
    wb = build_workbook(mini_graph, all_disabled())
    person = wb.sheet("Person")
    assert person.header == ("Person", "age", "works at")
    assert [c.display_text for c in person.rows[1]] == ["Alice Smith", "34", "ACME"]
    assert [c.display_text for c in person.rows[2]] == ["Bob Jones", "", "ACME"]
    assert wb.cell("Company", 1, 1).display_text == "1947-06-01"
    assert all(not c.content.statements for c in person.rows[0])


def test_same_inputs_same_workbook(sample_graph):
    assert build_workbook(sample_graph, all_on(3)) == build_workbook(sample_graph, all_on(3))


def test_dropped_statements_reported(sample_graph):
    wb = build_workbook(sample_graph, all_disabled())
    dropped = wb.report.dropped
    assert dropped and all(reason == "dropped-by-config" for _, reason in dropped)
    assert {s.predicate for s, _ in dropped} <= {EX + "worksAt", EX + "formerEmployer", EX + "member"}


def test_report_lists_excluded_subjects(sample_graph):
    wb = build_workbook(sample_graph, PatternConfig())
    assert (EX + "ghost", "untyped-subject") in [tuple(e) for e in wb.report.excluded]


def test_outdated_records_are_qualified(sample_graph):
    wb = build_workbook(sample_graph, all_on(0))
    outdated = [r for r in wb.provenance if r.statement.predicate == EX + "formerEmployer"]
    assert outdated and all(r.outdated and OUTDATED in r.patterns for r in outdated)
    assert not any(r.outdated for r in wb.provenance if r.statement.predicate != EX + "formerEmployer")


def _check_invariants(graph, config):
    wb = build_workbook(graph, config)
    terminology, plan, _ = planned(graph, config)
    in_scope = in_scope_statements(graph, terminology, plan)
    recorded = wb.statements
    dropped = wb.report.dropped_statements
    assert recorded | dropped == in_scope
    assert not recorded & dropped

    addresses = {}
    for r in wb.provenance:
        addresses.setdefault(r.address, []).append(r)
    for sheet in wb.sheets:
        for cell in sheet.cells():
            addr = (sheet.name, cell.row, cell.column)
            if cell.row == 0:
                assert addr not in addresses
            elif not cell.content.is_empty:
                assert addr in addresses
    for addr, recs in addresses.items():
        cell = wb.cell(*addr)
        assert cell.content.kind != EMPTY
        bearing = [r for r in cell.content.runs if r.refs] if cell.content.kind == RICH else []
        for r in recs:
            color_record = VALUE_AS_COLOR in r.patterns and addr[2] == 0 and r.statement.predicate != RDF_TYPE
            if color_record:
                assert r.run_index is None
            else:
                assert (r.run_index is not None) == (len(bearing) > 1)
    keys = [r.sort_key() for r in wb.provenance]
    assert keys == sorted(keys)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32))
def test_partition_and_totality_on_sample(sample_graph, seed):
    _check_invariants(sample_graph, all_on(seed))


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**32))
def test_partition_on_mini(seed):
    _check_invariants(parse_graph(MINI_TTL), all_on(seed).with_patterns(property_value_as_color={"probability": 1.0}))


def test_color_records_point_at_subject_cells(sample_graph):
    cfg = all_on(0).with_patterns(property_value_as_color={"probability": 1.0})
    wb = build_workbook(sample_graph, cfg)
    encoded = {(s.name, a.property) for s in wb.sheets for a in s.color_assignments}
    assert encoded
    for r in wb.provenance:
        if (r.sheet, r.statement.predicate) in encoded:
            assert r.column == 0 and VALUE_AS_COLOR in r.patterns
            cell = wb.cell(r.sheet, r.row, 0)
            sheet = wb.sheet(r.sheet)
            a = next(a for a in sheet.color_assignments if a.property == r.statement.predicate)
            assert getattr(cell.style, a.channel) == a.value_to_color[r.statement.object]
