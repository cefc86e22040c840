"""Canonical JSON documents: strict parsing, byte-stable serialization."""
import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import support
from glyphscore.model import (
    CRITERION_ORDER,
    AssessmentMode,
    ChannelKind,
    CriterionAssessment,
    CriterionId,
    DataType,
    DataVariable,
    GlyphDesign,
    ScoreSheet,
    VariableEntry,
    VisualChannel,
    sheet_from_scores,
)
from glyphscore.sheetio import (
    DocumentError,
    canonical_dumps,
    parse_design,
    parse_sheet,
    serialize_design,
    serialize_sheet,
)


def sheet_doc(**overrides):
    """A minimal valid sheet document as a plain dict."""
    assessments = []
    for criterion in CRITERION_ORDER:
        assessments.append(
            {
                "criterion": criterion.value,
                "mode": "D",
                "weight": "1" if assessments.__len__() < 3 else "0.5",
                "direct_score": "4",
            }
        )
    doc = {
        "schema_version": "1",
        "design": "d1",
        "assessor": "a1",
        "timestamp": "2026-01-05T10:00:00Z",
        "assessments": assessments,
    }
    doc.update(overrides)
    return doc


class TestFixtureRoundTrips:
    @pytest.mark.parametrize("design_id", support.SET1 + support.SET2)
    def test_design_parse_serialize_identity(self, design_id):
        text = support.design_bytes(design_id).decode("utf-8")
        assert serialize_design(parse_design(text)) == text

    @pytest.mark.parametrize("design_id", support.SET1 + support.SET2)
    def test_sheet_parse_serialize_identity(self, design_id):
        assessor = "a1" if design_id in support.SET1 else "panel"
        text = support.sheet_bytes(design_id, assessor).decode("utf-8")
        assert serialize_sheet(parse_sheet(text)) == text

    @pytest.mark.parametrize("design_id", support.SET1 + support.SET2)
    def test_serialization_is_stable_across_calls(self, design_id):
        text = support.design_bytes(design_id).decode("utf-8")
        design = parse_design(text)
        assert serialize_design(design) == serialize_design(design)


class TestCanonicalForm:
    def test_trailing_newline(self):
        sheet = parse_sheet(json.dumps(sheet_doc()))
        assert serialize_sheet(sheet).endswith("}\n")

    def test_inputs_keys_sorted_recursively(self):
        doc = sheet_doc()
        doc["assessments"][0]["inputs"] = {"zeta": {"b": 1, "a": 2}, "alpha": [3, 2]}
        out = serialize_sheet(parse_sheet(json.dumps(doc)))
        block = out[out.index('"inputs"'):]
        assert block.index('"alpha"') < block.index('"zeta"')
        inner = block[block.index('"zeta"'):]
        assert inner.index('"a"') < inner.index('"b"')

    def test_inputs_fractions_serialized_minimally(self):
        sheet = sheet_from_scores(
            design_id="d1", assessor="a1", timestamp="2026-01-05T10:00:00Z",
            scores={c: 4 for c in CRITERION_ORDER},
        )
        patched = []
        for a in sheet.assessments:
            if a.criterion is CriterionId.TYPEDNESS:
                a = CriterionAssessment(
                    a.criterion, a.mode, a.weight, direct_score=a.direct_score,
                    inputs={"ratio": Fraction(1, 2)},
                )
            patched.append(a)
        out = serialize_sheet(ScoreSheet("d1", "a1", "2026-01-05T10:00:00Z", tuple(patched)))
        assert '"ratio": "0.5"' in out

    def test_weights_always_written(self):
        out = serialize_sheet(parse_sheet(json.dumps(sheet_doc())))
        assert out.count('"weight"') == 12

    def test_empty_rationale_omitted(self):
        sheet = ScoreSheet(
            "d1", "a1", "2026-01-05T10:00:00Z",
            tuple(
                CriterionAssessment(
                    c,
                    AssessmentMode.A_AGGREGATED if c is CriterionId.TYPEDNESS else AssessmentMode.D_DIRECT,
                    1,
                    variable_entries=(
                        (VariableEntry("v1", 4, rationale="strong fit"), VariableEntry("v2", 5))
                        if c is CriterionId.TYPEDNESS else ()
                    ),
                    direct_score=None if c is CriterionId.TYPEDNESS else 4,
                )
                for c in CRITERION_ORDER
            ),
        )
        out = serialize_sheet(sheet)
        assert out.count('"rationale"') == 1


class TestSheetParseErrors:
    def assert_error(self, doc, needle):
        with pytest.raises(DocumentError) as info:
            parse_sheet(json.dumps(doc))
        assert needle in str(info.value)

    def test_not_an_object(self):
        with pytest.raises(DocumentError):
            parse_sheet("[]")

    def test_invalid_json(self):
        with pytest.raises(DocumentError):
            parse_sheet("{nope")

    def test_unknown_top_level_key(self):
        self.assert_error(sheet_doc(flavour="mint"), "flavour")

    def test_missing_assessor(self):
        doc = sheet_doc()
        doc.pop("assessor")
        self.assert_error(doc, "assessor")

    def test_unsupported_version(self):
        self.assert_error(sheet_doc(schema_version="2"), "schema_version")

    def test_float_score_rejected(self):
        doc = sheet_doc()
        doc["assessments"][3]["direct_score"] = 4.5
        self.assert_error(doc, "direct_score")

    def test_bool_weight_rejected(self):
        doc = sheet_doc()
        doc["assessments"][0]["weight"] = True
        self.assert_error(doc, "weight")

    def test_out_of_range_score(self):
        doc = sheet_doc()
        doc["assessments"][0]["direct_score"] = "6"
        with pytest.raises(DocumentError):
            parse_sheet(json.dumps(doc))

    def test_mode_conflict(self):
        doc = sheet_doc()
        doc["assessments"][0]["mode"] = "null"
        with pytest.raises(DocumentError):
            parse_sheet(json.dumps(doc))

    def test_unknown_criterion(self):
        doc = sheet_doc()
        doc["assessments"][0]["criterion"] = "sparkle"
        self.assert_error(doc, "criterion")

    def test_missing_criterion(self):
        doc = sheet_doc()
        doc["assessments"] = doc["assessments"][:-1]
        with pytest.raises(DocumentError):
            parse_sheet(json.dumps(doc))

    def test_duplicate_criterion(self):
        doc = sheet_doc()
        doc["assessments"][1] = dict(doc["assessments"][0])
        with pytest.raises(DocumentError):
            parse_sheet(json.dumps(doc))

    def test_entry_unknown_key(self):
        doc = sheet_doc()
        doc["assessments"][0] = {
            "criterion": "typedness",
            "mode": "A",
            "weight": "1",
            "variable_entries": [{"variable": "v1", "score": 4, "mood": "good"}],
        }
        self.assert_error(doc, "mood")

    def test_error_carries_path(self):
        doc = sheet_doc()
        doc["assessments"][2]["direct_score"] = 4.5
        with pytest.raises(DocumentError) as info:
            parse_sheet(json.dumps(doc))
        assert "assessments[2]" in str(info.value)


def design_doc(**overrides):
    doc = {
        "schema_version": "1",
        "id": "d1",
        "name": "probe",
        "variables": [
            {
                "id": "v1",
                "name": "kind",
                "data_type": "nominal",
                "key_value_count": 4,
            }
        ],
        "channels": [{"id": "c1", "name": "outline", "kind": "shape"}],
        "encoding": {"v1": ["c1"]},
    }
    doc.update(overrides)
    return doc


class TestDesignParseErrors:
    def test_round_trip_of_minimal_doc(self):
        design = parse_design(json.dumps(design_doc()))
        assert design.id == "d1"
        assert serialize_design(parse_design(serialize_design(design))) == serialize_design(design)

    def test_unknown_key(self):
        with pytest.raises(DocumentError) as info:
            parse_design(json.dumps(design_doc(palette="warm")))
        assert "palette" in str(info.value)

    def test_unknown_data_type(self):
        doc = design_doc()
        doc["variables"][0]["data_type"] = "fuzzy"
        with pytest.raises(DocumentError):
            parse_design(json.dumps(doc))

    def test_unknown_channel_kind(self):
        doc = design_doc()
        doc["channels"][0]["kind"] = "glitter"
        with pytest.raises(DocumentError):
            parse_design(json.dumps(doc))

    def test_validation_violations_surface(self):
        doc = design_doc(encoding={"v1": ["ghost"]})
        with pytest.raises(DocumentError) as info:
            parse_design(json.dumps(doc))
        assert "ghost" in str(info.value)

    def test_bool_key_value_count_rejected(self):
        doc = design_doc()
        doc["variables"][0]["key_value_count"] = True
        with pytest.raises(DocumentError):
            parse_design(json.dumps(doc))


identifiers = st.from_regex(r"[a-z][a-z0-9_-]{0,11}", fullmatch=True)
scores = st.one_of(
    st.none(),
    st.integers(1, 5),
    st.fractions(min_value=1, max_value=5, max_denominator=50),
)


@st.composite
def random_sheets(draw):
    design_id = draw(identifiers)
    assessor = draw(identifiers)
    values = {c: draw(scores) for c in CRITERION_ORDER}
    if all(v is None for v in values.values()):
        values[CriterionId.TYPEDNESS] = 3
    weights = {
        c: draw(st.fractions(min_value=Fraction(1, 4), max_value=4, max_denominator=8))
        for c in draw(st.sets(st.sampled_from(list(CRITERION_ORDER)), max_size=3))
    }
    return sheet_from_scores(
        design_id=design_id,
        assessor=assessor,
        timestamp="2026-02-01T09:30:00Z",
        scores=values,
        weights=weights,
    )


@given(random_sheets())
def test_random_sheet_round_trip(sheet):
    text = serialize_sheet(sheet)
    reparsed = parse_sheet(text)
    assert reparsed == sheet
    assert serialize_sheet(reparsed) == text


@given(st.dictionaries(identifiers, st.integers(0, 9), max_size=4))
def test_canonical_dumps_is_faithful_and_deterministic(mapping):
    text = canonical_dumps(mapping)
    assert text.endswith("\n")
    assert json.loads(text) == mapping
    assert canonical_dumps(json.loads(text)) == text
