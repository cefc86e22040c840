"""glyphscore: score and compare glyph designs on a 12-criterion scheme.

The package derives five-level scores from structured assessor observations,
aggregates them into weighted averages, merges multiple assessors, ranks
competing designs, and renders the geometry/colorimetry degradation sheets
assessors view when judging the two invariance criteria.
"""

from .aggregate import (
    AggregationError,
    AssessmentReport,
    Comparison,
    CriterionResult,
    CriterionSpread,
    DesignRank,
    MergePolicy,
    aggregate_sheets,
    aggregate_type_a,
    compare_designs,
    merge_sheets,
    resolve_type_d,
    weighted_average,
)
from .criteria import CorrelationUndefined, CriterionInputError
from .derive import derive
from .invariance import (
    ColorimetryParams,
    DegradationSheet,
    InvarianceError,
    ViewingGeometry,
    apply_colorimetry,
    colorimetry_sheet,
    colorimetry_transform,
    contrast_factor,
    geometry_sheet,
    open_image,
    scale_series,
    transform_lut,
    viewing_area,
)
from .kop import Kop, KopError, KopRating, KopTable, Suitability, akops_for, load_table
from .model import (
    CRITERION_LABELS,
    CRITERION_ORDER,
    SCHEMA_VERSION,
    AssessmentMode,
    ChannelKind,
    CriterionAssessment,
    CriterionId,
    DataType,
    DataVariable,
    GlyphDesign,
    ModelError,
    ScoreSheet,
    VariableEntry,
    Violation,
    VisualChannel,
    default_weight,
    sheet_from_scores,
    validate_design,
    weight_overrides,
)
from .rationals import format_display, format_minimal, frac, round_half_up
from .render import (
    comparison_document,
    render_comparison_text,
    render_report_text,
    report_document,
)
from .sheetio import (
    DocumentError,
    canonical_dumps,
    parse_design,
    parse_sheet,
    serialize_design,
    serialize_sheet,
)
from .workspace import (
    NotFoundError,
    RevisionConflict,
    Workspace,
    WorkspaceError,
    collect_sheets,
    revision_of,
)

__version__ = "0.1.0"

__all__ = [
    "AggregationError",
    "AssessmentMode",
    "AssessmentReport",
    "ChannelKind",
    "ColorimetryParams",
    "Comparison",
    "CorrelationUndefined",
    "CriterionAssessment",
    "CriterionId",
    "CriterionInputError",
    "CriterionResult",
    "CriterionSpread",
    "CRITERION_LABELS",
    "CRITERION_ORDER",
    "DataType",
    "DataVariable",
    "DegradationSheet",
    "DesignRank",
    "DocumentError",
    "GlyphDesign",
    "InvarianceError",
    "Kop",
    "KopError",
    "KopRating",
    "KopTable",
    "MergePolicy",
    "ModelError",
    "NotFoundError",
    "RevisionConflict",
    "SCHEMA_VERSION",
    "ScoreSheet",
    "Suitability",
    "VariableEntry",
    "ViewingGeometry",
    "Violation",
    "VisualChannel",
    "Workspace",
    "WorkspaceError",
    "aggregate_sheets",
    "aggregate_type_a",
    "akops_for",
    "apply_colorimetry",
    "canonical_dumps",
    "collect_sheets",
    "colorimetry_sheet",
    "colorimetry_transform",
    "compare_designs",
    "comparison_document",
    "contrast_factor",
    "default_weight",
    "derive",
    "format_display",
    "format_minimal",
    "frac",
    "geometry_sheet",
    "load_table",
    "merge_sheets",
    "open_image",
    "parse_design",
    "parse_sheet",
    "render_comparison_text",
    "render_report_text",
    "report_document",
    "resolve_type_d",
    "revision_of",
    "round_half_up",
    "scale_series",
    "serialize_design",
    "serialize_sheet",
    "sheet_from_scores",
    "transform_lut",
    "validate_design",
    "viewing_area",
    "weight_overrides",
    "weighted_average",
]
