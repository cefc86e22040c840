"""Regenerate the golden fixture documents in this directory.

Run from the repository root:

    python3 tests/fixtures/build_fixtures.py

The generated files are committed. Regeneration is only needed when the
canonical serialization format itself changes; review any diff as a format
change, not a data change.
"""
from __future__ import annotations

import pathlib

from glyphscore.model import (
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
    default_weight,
    sheet_from_scores,
)
from glyphscore.sheetio import serialize_design, serialize_sheet

HERE = pathlib.Path(__file__).resolve().parent
C = CriterionId

SET1_TS = "2025-11-04T09:00:00Z"
SET2_TS = "2026-02-17T15:00:00Z"


def var(vid, name, dtype, k, rank=None, group=None, identity=False):
    return DataVariable(vid, name, DataType(dtype), k, rank, group, identity)


def chan(cid, name, kind):
    return VisualChannel(cid, name, ChannelKind(kind))


def one_to_one(variables, channels):
    return {v.id: (c.id,) for v, c in zip(variables, channels)}


def a_mode(criterion, pairs):
    entries = tuple(
        VariableEntry(vid, score, rationale)
        for vid, score, rationale in pairs
    )
    return CriterionAssessment(
        criterion, AssessmentMode.A_AGGREGATED, default_weight(criterion),
        variable_entries=entries,
    )


def d_mode(criterion, score, inputs=None):
    return CriterionAssessment(
        criterion, AssessmentMode.D_DIRECT, default_weight(criterion),
        direct_score=score, inputs=inputs,
    )


def null_mode(criterion):
    return CriterionAssessment(criterion, AssessmentMode.NULL, default_weight(criterion))


def entries(var_ids, scores, rationales=None):
    rationales = rationales or {}
    return [(vid, s, rationales.get(vid, "")) for vid, s in zip(var_ids, scores)]


# --- golden set 1: five badge/disc designs, assessor a1 ----------------------

A_VARS = (
    var("v1", "task category", "nominal", 6, 1, identity=True),
    var("v2", "material pairing", "nominal", 5, 2),
    var("v3", "process step", "ordinal", 7, 3),
    var("v4", "batch size", "ratio", 4, 4),
    var("v5", "tool profile", "nominal", 7, 5),
    var("v6", "operator grade", "ordinal", 3, 6),
    var("v7", "shift phase", "nominal", 3, 7),
)
A_CHANS = (
    chan("c1", "outline icon", "isotype"),
    chan("c2", "corner mark", "shape"),
    chan("c3", "step dial", "orientation"),
    chan("c4", "bar height", "size"),
    chan("c5", "tool glyph", "symbol"),
    chan("c6", "ring fill", "brightness"),
    chan("c7", "dot count", "number"),
)
B_CHANS = (
    chan("c1", "fill hue", "color"),
    chan("c2", "outline hue", "color"),
    chan("c3", "step dial", "orientation"),
    chan("c4", "bar height", "size"),
    chan("c5", "basic shape", "shape"),
    chan("c6", "ring fill", "brightness"),
    chan("c7", "dot hue", "color"),
)

CD_VARS = (
    var("e1", "event kind", "nominal", 16, 1, identity=True),
    var("e2", "outcome", "nominal", 2, 2),
    var("e3", "territory", "nominal", 2, 3),
    var("e4", "player involvement", "ordinal", 4, 4),
    var("e5", "phase clock", "interval", 8, 5),
    var("e6", "pressure", "ordinal", 5, 6),
    var("e7", "position band", "nominal", 3, 7),
    var("e8", "possession side", "nominal", 2, 8),
)
C_CHANS = (
    chan("p1", "center pictogram", "isotype"),
    chan("p2", "outcome ring", "color"),
    chan("p3", "territory box", "inside-outside"),
    chan("p4", "sector wedge", "partition"),
    chan("p5", "clock hand", "orientation"),
    chan("p6", "halo weight", "halos"),
    chan("p7", "band stripe", "texture"),
    chan("p8", "side tilt", "orientation"),
)
D_CHANS = (
    chan("q1", "center shape", "shape"),
    chan("q2", "territory box", "inside-outside"),
    chan("q3", "outcome ring", "color"),
    chan("q4", "sector wedge", "partition"),
    chan("q5", "clock hand", "orientation"),
    chan("q6", "halo weight", "halos"),
    chan("q7", "band stripe", "texture"),
    chan("q8", "side tilt", "orientation"),
)

E_VARS = (
    var("m1", "event kind", "nominal", 12, 1, identity=True),
    var("m2", "gain", "ratio", 5, 2, "motion"),
    var("m3", "tortuosity", "ratio", 5, 3, "motion"),
    var("m4", "lateral drift", "ratio", 5, 4, "motion"),
    var("m5", "speed band", "ordinal", 4, 5),
    var("m6", "duration", "ratio", 6, 6),
    var("m7", "direction", "nominal", 8, 7),
    var("m8", "outcome", "nominal", 2, 8),
    var("m9", "team", "nominal", 2, 9),
    var("m10", "period", "ordinal", 4, 10),
)
E_CHANS = (
    chan("t1", "tile pictogram", "isotype"),
    chan("t2", "gain bar", "size"),
    chan("t3", "path curl", "curvature"),
    chan("t4", "drift offset", "distance"),
    chan("t5", "speed shade", "brightness"),
    chan("t6", "arc span", "size"),
    chan("t7", "heading tick", "orientation"),
    chan("t8", "outcome edge", "enclosure-boundary"),
    chan("t9", "team hue", "color"),
    chan("t10", "period notch", "partition"),
)

DESIGNS_SET1 = (
    GlyphDesign("A", "pictogram badge", A_VARS, A_CHANS, one_to_one(A_VARS, A_CHANS)),
    GlyphDesign("B", "recolored badge", A_VARS, B_CHANS, one_to_one(A_VARS, B_CHANS)),
    GlyphDesign("C", "event disc", CD_VARS, C_CHANS, one_to_one(CD_VARS, C_CHANS)),
    GlyphDesign("D", "abstract disc", CD_VARS, D_CHANS, one_to_one(CD_VARS, D_CHANS)),
    GlyphDesign("E", "metric tile", E_VARS, E_CHANS, one_to_one(E_VARS, E_CHANS)),
)

A_IDS = [v.id for v in A_VARS]
CD_IDS = [v.id for v in CD_VARS]
E_IDS = [v.id for v in E_VARS]

SHEETS_SET1 = {
    "A": (
        a_mode(C.TYPEDNESS, entries(A_IDS, [5] * 7)),
        a_mode(C.DISCERNABILITY, entries(A_IDS, [5] * 7)),
        a_mode(C.INTUITIVENESS, entries(
            A_IDS, [5, 5, 4, 4, 4, 4, 3],
            {"v7": "phase code needs the legend"},
        )),
        d_mode(C.INVARIANCE_GEOMETRY, 5, {
            "invariant_at": {"1/5": True, "2/5": True, "3/5": True, "4/5": True},
        }),
        d_mode(C.INVARIANCE_COLORIMETRY, 3, {
            "invariant_at": {"25.5": True, "51": True, "76.5": False, "102": False},
        }),
        d_mode(C.COMPOSITION_SEPARABILITY, 5),
        null_mode(C.COMPOSITION_COMPARABILITY),
        d_mode(C.ATTENTION_IMPORTANCE, 5),
        d_mode(C.ATTENTION_BALANCE, 5),
        d_mode(C.SEARCHABILITY, 5),
        d_mode(C.LEARNABILITY, 5),
        d_mode(C.MEMORABILITY, 4, {"pct_1h": 95, "pct_24h": 80}),
    ),
    "B": (
        a_mode(C.TYPEDNESS, entries(A_IDS, [5, 5, 5, 5, 5, 4, 4])),
        a_mode(C.DISCERNABILITY, entries(A_IDS, [5] * 7)),
        a_mode(C.INTUITIVENESS, entries(
            A_IDS, [4, 4, 4, 3, 3, 3, 2],
            {"v7": "arbitrary hue for shift phase"},
        )),
        d_mode(C.INVARIANCE_GEOMETRY, 4),
        d_mode(C.INVARIANCE_COLORIMETRY, 3),
        d_mode(C.COMPOSITION_SEPARABILITY, 1),
        null_mode(C.COMPOSITION_COMPARABILITY),
        d_mode(C.ATTENTION_IMPORTANCE, 5),
        d_mode(C.ATTENTION_BALANCE, 2),
        d_mode(C.SEARCHABILITY, 1),
        d_mode(C.LEARNABILITY, 2),
        d_mode(C.MEMORABILITY, 1, {"pct_1h": 40, "pct_24h": 20}),
    ),
    "C": (
        a_mode(C.TYPEDNESS, entries(CD_IDS, [5] * 8)),
        a_mode(C.DISCERNABILITY, entries(CD_IDS, [5] * 8)),
        a_mode(C.INTUITIVENESS, entries(
            CD_IDS, [5, 5, 4, 4, 4, 4, 4, 3],
            {"e8": "side tilt reads only after training"},
        )),
        d_mode(C.INVARIANCE_GEOMETRY, 5),
        d_mode(C.INVARIANCE_COLORIMETRY, 5),
        d_mode(C.COMPOSITION_SEPARABILITY, 5),
        null_mode(C.COMPOSITION_COMPARABILITY),
        d_mode(C.ATTENTION_IMPORTANCE, 5),
        d_mode(C.ATTENTION_BALANCE, 5),
        d_mode(C.SEARCHABILITY, 5),
        d_mode(C.LEARNABILITY, 5),
        d_mode(C.MEMORABILITY, 5),
    ),
    "D": (
        a_mode(C.TYPEDNESS, entries(CD_IDS, [5] * 8)),
        a_mode(C.DISCERNABILITY, entries(CD_IDS, [5] * 8)),
        a_mode(C.INTUITIVENESS, entries(CD_IDS, [4, 4, 4, 4, 4, 3, 3, 3])),
        d_mode(C.INVARIANCE_GEOMETRY, 5),
        d_mode(C.INVARIANCE_COLORIMETRY, 5),
        d_mode(C.COMPOSITION_SEPARABILITY, 3),
        null_mode(C.COMPOSITION_COMPARABILITY),
        d_mode(C.ATTENTION_IMPORTANCE, 4),
        d_mode(C.ATTENTION_BALANCE, 5),
        d_mode(C.SEARCHABILITY, 5),
        d_mode(C.LEARNABILITY, 3, {
            "learning_time_hours": "1.2",
            "learning_mode": "tutorial",
            "repeated_effort": "minor",
        }),
        d_mode(C.MEMORABILITY, 1),
    ),
    "E": (
        a_mode(C.TYPEDNESS, entries(E_IDS, [5] * 10)),
        a_mode(C.DISCERNABILITY, entries(E_IDS, [5] * 10)),
        a_mode(C.INTUITIVENESS, entries(E_IDS, [5, 5, 5, 4, 4, 4, 4, 4, 3, 3])),
        d_mode(C.INVARIANCE_GEOMETRY, 3),
        d_mode(C.INVARIANCE_COLORIMETRY, 4),
        d_mode(C.COMPOSITION_SEPARABILITY, 5),
        null_mode(C.COMPOSITION_COMPARABILITY),
        d_mode(C.ATTENTION_IMPORTANCE, 5, {
            "boxes": {"n11": 4, "n12": 0, "n21": 0, "n22": 6},
        }),
        d_mode(C.ATTENTION_BALANCE, 5),
        d_mode(C.SEARCHABILITY, 5),
        d_mode(C.LEARNABILITY, 4),
        d_mode(C.MEMORABILITY, 3),
    ),
}


# --- golden set 2: five rotation-range designs, merged panel sheet ------------

J_VARS = (
    var("flex_min", "flexion minimum", "interval", 36, 1, "flexion"),
    var("flex_max", "flexion maximum", "interval", 36, 2, "flexion"),
    var("abd_min", "abduction minimum", "interval", 36, 3, "abduction"),
    var("abd_max", "abduction maximum", "interval", 36, 4, "abduction"),
    var("rot_min", "rotation minimum", "interval", 36, 5, "rotation"),
    var("rot_max", "rotation maximum", "interval", 36, 6, "rotation"),
)


def j_design(jid, name, channels):
    encoding = {v.id: tuple(c.id for c in channels) for v in J_VARS}
    return GlyphDesign(jid, name, J_VARS, channels, encoding)


DESIGNS_SET2 = (
    j_design("J1", "line fan", (
        chan("len", "line length", "size"),
        chan("pos", "line anchor", "orientation"),
    )),
    j_design("J2", "paired line fan", (
        chan("len", "paired line length", "size"),
        chan("pos", "line anchor", "orientation"),
    )),
    j_design("J3", "paired arc fan", (
        chan("arc", "arc sweep", "curvature"),
        chan("pos", "arc anchor", "orientation"),
    )),
    j_design("J4", "paired arc fan 3d", (
        chan("arc", "arc sweep", "curvature"),
        chan("depth", "depth cue", "shading"),
    )),
    j_design("J5", "wedge ring", (
        chan("arc", "arc sweep", "curvature"),
        chan("wedge", "pair wedge", "color"),
    )),
)

# criterion order: typedness, discernability, intuitiveness, geometry,
# colorimetry, separability, comparability, importance, balance,
# searchability, learnability, memorability
SCORES_SET2 = {
    "J1": ["4.84", "4.6", "3.43", "4.5", "5", "5", "5", "5", "5", "4.5", "3.5", "4"],
    "J2": ["4.84", "3.14", "3.03", "4.5", "5", "3", "4", "5", "5", "4.5", "3.5", "3.5"],
    "J3": ["4.84", "3.46", "4.81", "5", "5", "3", "5", "5", "5", "4.5", "4", "4"],
    "J4": ["4.84", "3.46", "4.97", "4", "5", "3", "3", "5", "5", "5", "5", "5"],
    "J5": ["4.92", "3.68", "2.27", "5", "5", "3", "3", "5", "5", "5", "2", "3"],
}


def main() -> None:
    designs_dir = HERE / "designs"
    sheets_dir = HERE / "sheets"
    designs_dir.mkdir(exist_ok=True)
    sheets_dir.mkdir(exist_ok=True)

    for design in DESIGNS_SET1 + DESIGNS_SET2:
        path = designs_dir / f"{design.id}.json"
        path.write_text(serialize_design(design), encoding="utf-8")
        print(f"wrote {path.relative_to(HERE.parent.parent)}")

    for design_id, assessments in SHEETS_SET1.items():
        sheet = ScoreSheet(design_id, "a1", SET1_TS, assessments)
        path = sheets_dir / f"{design_id}__a1.json"
        path.write_text(serialize_sheet(sheet), encoding="utf-8")
        print(f"wrote {path.relative_to(HERE.parent.parent)}")

    order = list(CriterionId)
    for design_id, scores in SCORES_SET2.items():
        sheet = sheet_from_scores(
            design_id, "panel", SET2_TS, dict(zip(order, scores))
        )
        path = sheets_dir / f"{design_id}__panel.json"
        path.write_text(serialize_sheet(sheet), encoding="utf-8")
        print(f"wrote {path.relative_to(HERE.parent.parent)}")


if __name__ == "__main__":
    main()
