"""Core domain model: designs, criteria, assessments, score sheets.

A glyph design encodes data variables through visual channels. Assessors fill a
score sheet with one assessment per criterion; an assessment is either built
from per-variable entries (mode A), a direct whole-glyph level (mode D), or
marked not applicable (mode null). All scores are exact rationals in [1, 5].
"""
from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .rationals import frac


class DataType(str, Enum):
    NOMINAL = "nominal"
    ORDINAL = "ordinal"
    INTERVAL = "interval"
    RATIO = "ratio"
    DIRECTIONAL = "directional"


class ChannelKind(str, Enum):
    # geometric
    SIZE = "size"
    ORIENTATION = "orientation"
    SHAPE = "shape"
    CURVATURE = "curvature"
    SMOOTHNESS = "smoothness"
    # optical
    BRIGHTNESS = "brightness"
    COLOR = "color"
    OPACITY = "opacity"
    TEXTURE = "texture"
    SHADING = "shading"
    HALOS = "halos"
    SHADOW = "shadow"
    PHOTO_EFFECTS = "photo-effects"
    IMPLICIT_MOTION = "implicit-motion"
    EXPLICIT_MOTION = "explicit-motion"
    # relational
    CONNECTION_EDGE = "connection-edge"
    NODE = "node"
    INSIDE_OUTSIDE = "inside-outside"
    ENCLOSURE_BOUNDARY = "enclosure-boundary"
    DISTANCE = "distance"
    CLOSURE_OPENING = "closure-opening"
    CONNECTIVITY = "connectivity"
    PARTITION = "partition"
    INTERSECTION_OVERLAP = "intersection-overlap"
    DEPTH_ORDERING = "depth-ordering"
    HIERARCHY_LEVEL = "hierarchy-level"
    DENSITY_DISTRIBUTION = "density-distribution"
    CONVEXITY = "convexity"
    CONTINUITY = "continuity"
    GENERA = "genera"
    SIMILARITY = "similarity"
    DEFORMATION = "deformation"
    # semantic
    NUMBER = "number"
    TEXT = "text"
    SYMBOL = "symbol"
    SIGN = "sign"
    ISOTYPE = "isotype"
    # escape hatch: ratings must be supplied by the assessor
    CUSTOM = "custom"


class CriterionId(str, Enum):
    TYPEDNESS = "typedness"
    DISCERNABILITY = "discernability"
    INTUITIVENESS = "intuitiveness"
    INVARIANCE_GEOMETRY = "invariance_geometry"
    INVARIANCE_COLORIMETRY = "invariance_colorimetry"
    COMPOSITION_SEPARABILITY = "composition_separability"
    COMPOSITION_COMPARABILITY = "composition_comparability"
    ATTENTION_IMPORTANCE = "attention_importance"
    ATTENTION_BALANCE = "attention_balance"
    SEARCHABILITY = "searchability"
    LEARNABILITY = "learnability"
    MEMORABILITY = "memorability"


#: Canonical criterion order used by serialization and report rows.
CRITERION_ORDER: tuple[CriterionId, ...] = tuple(CriterionId)

#: Display labels for report rendering.
CRITERION_LABELS: dict[CriterionId, str] = {
    CriterionId.TYPEDNESS: "Typedness",
    CriterionId.DISCERNABILITY: "Discernability",
    CriterionId.INTUITIVENESS: "Intuitiveness",
    CriterionId.INVARIANCE_GEOMETRY: "Invariance: Geometry",
    CriterionId.INVARIANCE_COLORIMETRY: "Invariance: Colorimetry",
    CriterionId.COMPOSITION_SEPARABILITY: "Composition: Separability",
    CriterionId.COMPOSITION_COMPARABILITY: "Composition: Comparability",
    CriterionId.ATTENTION_IMPORTANCE: "Attention: Importance",
    CriterionId.ATTENTION_BALANCE: "Attention: Balance",
    CriterionId.SEARCHABILITY: "Searchability",
    CriterionId.LEARNABILITY: "Learnability",
    CriterionId.MEMORABILITY: "Memorability",
}

_HEAVY = {CriterionId.TYPEDNESS, CriterionId.DISCERNABILITY, CriterionId.INTUITIVENESS}


def default_weight(criterion: CriterionId) -> Fraction:
    """Recommended weights: 1 for the first three criteria, 1/2 for the rest."""
    return Fraction(1) if criterion in _HEAVY else Fraction(1, 2)


class AssessmentMode(str, Enum):
    A_AGGREGATED = "A"
    D_DIRECT = "D"
    NULL = "null"


SCHEMA_VERSION = "1"

SCORE_MIN = Fraction(1)
SCORE_MAX = Fraction(5)


class ModelError(ValueError):
    """Raised when a domain object is constructed with invalid contents."""


def check_score(value: Fraction, *, raw: bool = False, what: str = "score") -> Fraction:
    """Validate a level score: rational in [1, 5]; raw entries must be integers."""
    value = frac(value)
    if not (SCORE_MIN <= value <= SCORE_MAX):
        raise ModelError(f"{what} {value} outside [1, 5]")
    if raw and value.denominator != 1:
        raise ModelError(f"{what} {value} must be a whole level (1..5)")
    return value


def parse_timestamp(text: str) -> datetime:
    """Parse an ISO-8601 timestamp; 'Z' suffix accepted on Python 3.10."""
    if not isinstance(text, str) or not text:
        raise ModelError("timestamp must be a non-empty ISO-8601 string")
    normalized = text[:-1] + "+00:00" if text.endswith("Z") else text
    try:
        return datetime.fromisoformat(normalized)
    except ValueError as exc:
        raise ModelError(f"timestamp {text!r} is not ISO-8601: {exc}") from exc


@dataclass(frozen=True)
class DataVariable:
    id: str
    name: str = ""
    data_type: DataType = DataType.NOMINAL
    key_value_count: int = 1
    importance_rank: Optional[int] = None
    comparability_group: Optional[str] = None
    is_identity_variable: bool = False


@dataclass(frozen=True)
class VisualChannel:
    id: str
    name: str = ""
    channel_kind: ChannelKind = ChannelKind.CUSTOM


@dataclass(frozen=True)
class GlyphDesign:
    """A design under evaluation. Semantic checks live in validate_design."""

    id: str
    name: str = ""
    variables: tuple[DataVariable, ...] = ()
    channels: tuple[VisualChannel, ...] = ()
    encoding: Mapping[str, tuple[str, ...]] = field(default_factory=dict)
    image_ref: Optional[str] = None
    notes: str = ""

    def variable(self, variable_id: str) -> DataVariable:
        for var in self.variables:
            if var.id == variable_id:
                return var
        raise KeyError(variable_id)


@dataclass(frozen=True)
class Violation:
    field: str
    message: str

    def __str__(self) -> str:
        return f"{self.field}: {self.message}"


def validate_design(design: GlyphDesign) -> list[Violation]:
    """Check design invariants; returns an empty list when the design is sound."""
    out: list[Violation] = []
    if not design.id:
        out.append(Violation("id", "must be non-empty"))
    var_ids = [v.id for v in design.variables]
    chan_ids = [c.id for c in design.channels]
    if not design.variables:
        out.append(Violation("variables", "at least one data variable required"))
    if len(set(var_ids)) != len(var_ids):
        out.append(Violation("variables", "variable ids must be unique"))
    if len(set(chan_ids)) != len(chan_ids):
        out.append(Violation("channels", "channel ids must be unique"))
    identity_count = sum(1 for v in design.variables if v.is_identity_variable)
    if identity_count > 1:
        out.append(Violation("variables", "at most one identity variable allowed"))
    for i, var in enumerate(design.variables):
        where = f"variables[{i}]"
        if not var.id:
            out.append(Violation(f"{where}.id", "must be non-empty"))
        if var.key_value_count < 1:
            out.append(Violation(f"{where}.key_value_count", "must be >= 1"))
        if var.importance_rank is not None and var.importance_rank < 1:
            out.append(Violation(f"{where}.importance_rank", "must be >= 1 when set"))
    for i, chan in enumerate(design.channels):
        if not chan.id:
            out.append(Violation(f"channels[{i}].id", "must be non-empty"))
    chan_set = set(chan_ids)
    encoded = set()
    for var_id, targets in design.encoding.items():
        where = f"encoding[{var_id}]"
        if var_id not in set(var_ids):
            out.append(Violation(where, "references unknown variable"))
        if not targets:
            out.append(Violation(where, "must list at least one channel"))
        for target in targets:
            if target not in chan_set:
                out.append(Violation(where, f"references unknown channel {target!r}"))
        encoded.add(var_id)
    for var in design.variables:
        if var.id not in encoded:
            out.append(Violation(f"encoding[{var.id}]", "variable has no channel mapping"))
    return out


@dataclass(frozen=True)
class VariableEntry:
    """One per-variable score inside a mode-A assessment. Raw levels are whole."""

    variable_id: str
    score: Fraction
    rationale: str = ""

    def __post_init__(self) -> None:
        if not self.variable_id:
            raise ModelError("variable_id must be non-empty")
        object.__setattr__(self, "score", check_score(self.score, raw=True, what="entry score"))


@dataclass(frozen=True)
class CriterionAssessment:
    """One criterion's assessment on a sheet.

    mode A: per-variable entries, aggregated later; mode D: a direct whole-glyph
    score (fractional values arise from merged sheets); mode null: criterion not
    applicable, excluded from totals. `inputs` keeps the raw derivation inputs
    for audit and replay; it never influences aggregation.
    """

    criterion: CriterionId
    mode: AssessmentMode
    weight: Fraction
    variable_entries: tuple[VariableEntry, ...] = ()
    direct_score: Optional[Fraction] = None
    inputs: Optional[Mapping] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "criterion", CriterionId(self.criterion))
        object.__setattr__(self, "mode", AssessmentMode(self.mode))
        weight = frac(self.weight)
        if weight < 0:
            raise ModelError(f"{self.criterion.value}: weight must be >= 0")
        object.__setattr__(self, "weight", weight)
        object.__setattr__(self, "variable_entries", tuple(self.variable_entries))
        if self.mode is AssessmentMode.A_AGGREGATED:
            if not self.variable_entries:
                raise ModelError(f"{self.criterion.value}: mode A needs variable entries")
            if self.direct_score is not None:
                raise ModelError(f"{self.criterion.value}: mode A cannot carry a direct score")
            seen = [e.variable_id for e in self.variable_entries]
            if len(set(seen)) != len(seen):
                raise ModelError(f"{self.criterion.value}: duplicate variable entries")
        elif self.mode is AssessmentMode.D_DIRECT:
            if self.direct_score is None:
                raise ModelError(f"{self.criterion.value}: mode D needs a direct score")
            if self.variable_entries:
                raise ModelError(f"{self.criterion.value}: mode D cannot carry variable entries")
            object.__setattr__(
                self, "direct_score", check_score(self.direct_score, what="direct score")
            )
        else:
            if self.direct_score is not None or self.variable_entries:
                raise ModelError(f"{self.criterion.value}: null mode carries no scores")


@dataclass(frozen=True)
class ScoreSheet:
    """Exactly one assessment per criterion, stored in canonical order."""

    design_id: str
    assessor: str
    timestamp: str
    assessments: tuple[CriterionAssessment, ...]
    schema_version: str = SCHEMA_VERSION

    def __post_init__(self) -> None:
        if not self.design_id:
            raise ModelError("design_id must be non-empty")
        if not self.assessor:
            raise ModelError("assessor must be non-empty")
        parse_timestamp(self.timestamp)
        if self.schema_version != SCHEMA_VERSION:
            raise ModelError(f"unsupported schema_version {self.schema_version!r}")
        by_criterion = {}
        for assessment in self.assessments:
            if assessment.criterion in by_criterion:
                raise ModelError(f"duplicate assessment for {assessment.criterion.value}")
            by_criterion[assessment.criterion] = assessment
        missing = [c.value for c in CRITERION_ORDER if c not in by_criterion]
        if missing:
            raise ModelError(f"missing assessments: {', '.join(missing)}")
        ordered = tuple(by_criterion[c] for c in CRITERION_ORDER)
        object.__setattr__(self, "assessments", ordered)

    def assessment(self, criterion: CriterionId) -> CriterionAssessment:
        return self.assessments[CRITERION_ORDER.index(CriterionId(criterion))]


def sheet_from_scores(
    design_id: str,
    assessor: str,
    timestamp: str,
    scores: Mapping[CriterionId, object],
    weights: Optional[Mapping[CriterionId, Fraction]] = None,
) -> ScoreSheet:
    """Build a direct-score sheet; a None score marks the criterion null."""
    assessments = []
    for criterion in CRITERION_ORDER:
        weight = frac(weights[criterion]) if weights and criterion in weights else default_weight(criterion)
        value = scores.get(criterion)
        if value is None:
            assessments.append(
                CriterionAssessment(criterion, AssessmentMode.NULL, weight)
            )
        else:
            assessments.append(
                CriterionAssessment(
                    criterion, AssessmentMode.D_DIRECT, weight, direct_score=frac(value)
                )
            )
    return ScoreSheet(design_id, assessor, timestamp, tuple(assessments))


def weight_overrides(sheet: ScoreSheet) -> tuple[CriterionId, ...]:
    """Criteria whose configured weight departs from the recommended default."""
    return tuple(
        a.criterion for a in sheet.assessments if a.weight != default_weight(a.criterion)
    )
