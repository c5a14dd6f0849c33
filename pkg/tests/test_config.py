import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kgsheets.config import (
    ConfigError,
    PatternConfig,
    all_disabled,
    dump_config,
    from_dict,
    load_config,
    only,
)
from kgsheets.patterns import NUMERIC_AS_TEXT, PATTERN_IDS, PATTERNS, SURFACE_FORMS


def test_empty_document_gives_defaults():
    cfg = load_config("")
    assert cfg.seed == 0
    assert all(cfg.enabled(p) for p in PATTERN_IDS)
    assert all(cfg.probability(p) == PATTERNS[p].default_probability for p in PATTERN_IDS)
    assert cfg == PatternConfig()


def test_documented_default_probabilities():
    cfg = PatternConfig()
    assert cfg.probability(NUMERIC_AS_TEXT) == 0.5
    assert cfg.probability(SURFACE_FORMS) == 0.5
    assert cfg.probability("multiple-types-in-a-table") == 0.25
    assert cfg.probability("intra-cell-additional-information") == 0.25


def test_out_of_range_probability_names_field():
    doc = json.dumps({"patterns": {NUMERIC_AS_TEXT: {"probability": 1.5}}})
    with pytest.raises(ConfigError) as err:
        load_config(doc)
    assert err.value.field == f"patterns.{NUMERIC_AS_TEXT}.probability"


def test_disable_all():
    doc = json.dumps({"patterns": {p: {"enabled": False} for p in PATTERN_IDS}})
    cfg = load_config(doc)
    assert not any(cfg.patterns[p].enabled for p in PATTERN_IDS)
    assert cfg == all_disabled()


@pytest.mark.parametrize(
    "doc,field",
    [
        ({"colour": 1}, "colour"),
        ({"patterns": {"nope": {}}}, "patterns.nope"),
        ({"patterns": {SURFACE_FORMS: {"weight": 1}}}, f"patterns.{SURFACE_FORMS}.weight"),
        ({"seed": -1}, "seed"),
        ({"seed": True}, "seed"),
        ({"maxPaletteSize": 1}, "maxPaletteSize"),
        ({"maxPaletteSize": 17}, "maxPaletteSize"),
        ({"delimiters": []}, "delimiters"),
        ({"outdatedProperties": ["notAnIri"]}, "outdatedProperties"),
    ],
)
def test_validation_errors(doc, field):
    with pytest.raises(ConfigError) as err:
        from_dict(doc)
    assert err.value.field == field


def test_invalid_json():
    with pytest.raises(ConfigError):
        load_config("{nope")


def test_only_and_with_patterns():
    cfg = only(SURFACE_FORMS, probability=1.0, seed=3)
    assert cfg.enabled(SURFACE_FORMS) and cfg.probability(SURFACE_FORMS) == 1.0
    assert sum(cfg.enabled(p) for p in PATTERN_IDS) == 1
    tweaked = cfg.with_patterns(multiple_surface_forms={"probability": 0.2})
    assert tweaked.probability(SURFACE_FORMS) == 0.2
    with pytest.raises(ConfigError):
        cfg.with_patterns(bogus={"enabled": True})


def test_applies_respects_enabled_flag():
    key = ("k",)
    assert not all_disabled().applies(SURFACE_FORMS, key)
    assert only(SURFACE_FORMS, probability=1.0).applies(SURFACE_FORMS, key)
    assert not only(SURFACE_FORMS, probability=0.0).applies(SURFACE_FORMS, key)


def test_digest_tracks_content():
    assert PatternConfig().digest() == PatternConfig().digest()
    assert PatternConfig().digest() != PatternConfig(seed=1).digest()


_settings = st.fixed_dictionaries(
    {},
    optional={
        "enabled": st.booleans(),
        "probability": st.floats(0.0, 1.0, allow_nan=False),
    },
)
_docs = st.fixed_dictionaries(
    {},
    optional={
        "seed": st.integers(0, 2**64 - 1),
        "patterns": st.dictionaries(st.sampled_from(PATTERN_IDS), _settings),
        "outdatedProperties": st.lists(st.sampled_from(["urn:p", "http://e.org/q"]), unique=True),
        "maxPaletteSize": st.integers(2, 16),
        "delimiters": st.lists(st.sampled_from([", ", "; ", "\n", " | "]), min_size=1, unique=True),
    },
)


@settings(max_examples=150, deadline=None)
@given(_docs)
def test_config_roundtrip(doc):
    cfg = load_config(json.dumps(doc))
    again = load_config(dump_config(cfg))
    assert again == cfg
    assert dump_config(again) == dump_config(cfg)
