import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kgsheets.cells import RICH, Cell, CellContent, CellRun, StyleSpec
from kgsheets.config import all_disabled, only
from kgsheets.layout import ColumnPlan, plan_default
from kgsheets.parser import parse_graph
from kgsheets.patterns import INTRA_CELL, MULTIPLE_ENTITIES, OUTDATED, PARTIAL_FORMATTING, VALUE_AS_COLOR
from kgsheets.rdf import Statement
from kgsheets.style import (
    PALETTE,
    STYLE_POOL,
    ColorAssignment,
    apply_outdated_strikethrough,
    assign_partial_formatting,
    assign_property_value_colors,
)
from kgsheets.terminology import build_terminology
from kgsheets.workbook import build_workbook

from helpers import EX, all_on

E = "http://e.org/"
PRE = "@prefix : <http://e.org/> .\n"


def _plan(doc):
    g = parse_graph(PRE + doc)
    return g, plan_default(build_terminology(g), g)


def test_palette_is_sixteen_distinct_rgb():
    assert len(PALETTE) == 16 == len(set(PALETTE))
    assert PALETTE[0] == "E6194B" and PALETTE[-1] == "AAFFC3"


def test_too_many_values_is_ineligible():
    g, plan = _plan("".join(f":i{i} a :T ; :v {i} ." for i in range(20)))
    out, assignments = assign_property_value_colors(plan, g, only(VALUE_AS_COLOR, probability=1.0))
    assert assignments == [] and out == plan


def test_three_values_become_colors():
    g, plan = _plan("".join(f":i{i} a :T ; :status :s{i % 3} ; :n {i} ." for i in range(9)))
    out, assignments = assign_property_value_colors(plan, g, only(VALUE_AS_COLOR, probability=1.0))
    status = next(a for a in assignments if a.property == E + "status")
    assert len(status.value_to_color) == 3
    assert len(set(status.value_to_color.values())) == 3
    assert set(status.value_to_color.values()) <= set(PALETTE)
    sheet = out.sheets[0]
    assert E + "status" not in {p for c in sheet.grid_columns for p in c.properties}
    assert E + "status" in sheet.properties
    assert status.decode(status.value_to_color[E + "s1"]) == E + "s1"


def test_multi_valued_property_is_ineligible():
    g, plan = _plan(":a a :T ; :v :x, :y . :b a :T ; :v :x .")
    assert assign_property_value_colors(plan, g, only(VALUE_AS_COLOR, probability=1.0))[1] == []


def test_disabled_is_identity():
    g, plan = _plan("".join(f":i{i} a :T ; :status :s{i % 3} ." for i in range(9)))
    assert assign_property_value_colors(plan, g, all_disabled()) == (plan, [])


def test_assignment_must_be_injective():
    with pytest.raises(ValueError):
        ColorAssignment("S", E + "p", "background", {"a": "E6194B", "b": "E6194B"})


def _two_run_cell():
    works = Statement("urn:alice", E + "worksAt", "urn:acme", "iri")
    former = Statement("urn:alice", E + "formerEmployer", "urn:globex", "iri")
    runs = (CellRun("ACME", refs=(works,)), CellRun(", "), CellRun("Globex", refs=(former,)))
    return Cell(1, 1, CellContent(RICH, runs=runs))


def test_only_outdated_run_struck():
    cfg = only(OUTDATED, outdated_properties=(E + "formerEmployer",))
    out = apply_outdated_strikethrough(_two_run_cell(), cfg)
    assert [r.style.strikethrough for r in out.content.runs] == [False, False, True]


def test_outdated_identity_cases():
    cell = _two_run_cell()
    assert apply_outdated_strikethrough(cell, only(OUTDATED)) == cell
    assert apply_outdated_strikethrough(cell, all_disabled(outdated_properties=(E + "formerEmployer",))) == cell


@pytest.mark.parametrize("n", [2, 3])
def test_partial_formatting_styles_are_distinct(n):
    col = ColumnPlan(1, "m", tuple(f"{E}p{i}" for i in range(n)))
    for seed in range(30):
        styles = assign_partial_formatting(col, ("sheet", "S"), only(PARTIAL_FORMATTING, seed=seed))
        assert len(styles) == n and len(set(styles.values())) == n
        assert set(styles.values()) <= set(STYLE_POOL)


def test_single_property_column_gets_no_partial_styles():
    assert assign_partial_formatting(ColumnPlan(1, "x", (E + "x",)), ("sheet", "S"), only(PARTIAL_FORMATTING)) == {}


def test_style_spec_validation():
    with pytest.raises(ValueError):
        StyleSpec(foreground="red")
    assert StyleSpec(bold=True).merged(StyleSpec(italic=True)) == StyleSpec(bold=True, italic=True)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_style_invariants_on_sample(sample_graph, seed):
    wb = build_workbook(sample_graph, all_on(seed))
    outdated = EX + "formerEmployer"
    for sheet in wb.sheets:
        for a in sheet.color_assignments:
            inverse = {c: v for v, c in a.value_to_color.items()}
            assert len(inverse) == len(a.value_to_color)
        channels = [a.channel for a in sheet.color_assignments]
        assert len(channels) == len(set(channels))
        assert [c.column for c in sheet.rows[0]] == list(range(len(sheet.rows[0])))
        for cell in sheet.cells():
            for run in cell.content.runs:
                if run.refs:
                    assert run.style.strikethrough == any(s.predicate == outdated for s in run.refs)
                else:
                    assert not run.style.strikethrough
            if cell.content.kind != RICH:
                assert cell.style.strikethrough == any(s.predicate == outdated for s in cell.content.refs)


def test_partial_formatting_off_leaves_runs_plain(sample_graph):
    wb = build_workbook(sample_graph, only(INTRA_CELL, MULTIPLE_ENTITIES, probability=1.0))
    merged = [c for s in wb.sheets for c in s.rows[0] if " / " in c.display_text]
    assert merged
    for sheet in wb.sheets:
        for cell in sheet.cells():
            assert all(r.style.is_default() for r in cell.content.runs)
