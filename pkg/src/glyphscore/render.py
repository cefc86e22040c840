"""Report and comparison rendering: plain-text tables and structured documents.

The text layout mirrors the familiar score-sheet table: one row per criterion,
weight and score columns, then a total row. Null criteria render blank cells.
Structured documents are plain dicts in a fixed key order, ready for the
canonical serializer.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .aggregate import AssessmentReport, Comparison
from .model import CRITERION_LABELS, SCHEMA_VERSION, default_weight
from .rationals import format_display, format_minimal


def score_cell(value: Optional[Fraction]) -> str:
    """Exact short decimals print as-is (5, 4.5); longer ones round to 2 dp."""
    if value is None:
        return ""
    if (value * 100).denominator == 1:
        return format_minimal(value)
    return format_display(value)


def _table(rows: list[tuple[str, ...]]) -> list[str]:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = []
    for row in rows:
        cells = [cell.ljust(widths[i]) for i, cell in enumerate(row)]
        lines.append("  ".join(cells).rstrip())
    return lines


def weight_override_ids(report: AssessmentReport) -> list[str]:
    return [
        row.criterion.value
        for row in report.per_criterion
        if row.weight != default_weight(row.criterion)
    ]


def render_report_text(report: AssessmentReport) -> str:
    lines = [f"Design: {report.design_id}"]
    assessors = ", ".join(report.assessor_set)
    if report.merge_mode == "single":
        lines.append(f"Assessor: {assessors}")
    else:
        lines.append(f"Assessors: {assessors} (merged: {report.merge_mode})")
    lines.append("")
    rows: list[tuple[str, ...]] = [("Criterion", "Weight", "Score")]
    for row in report.per_criterion:
        if row.score is None:
            rows.append((CRITERION_LABELS[row.criterion], "", ""))
        else:
            rows.append(
                (CRITERION_LABELS[row.criterion], format_minimal(row.weight), score_cell(row.score))
            )
    rows.append(
        ("Total", format_minimal(report.total_weight), format_display(report.weighted_average))
    )
    lines.extend(_table(rows))
    overrides = weight_override_ids(report)
    if overrides:
        lines.append("")
        lines.append("Note: weights differ from the recommended defaults: " + ", ".join(overrides))
    return "\n".join(lines) + "\n"


def report_document(report: AssessmentReport) -> dict:
    criteria = []
    for row in report.per_criterion:
        criteria.append(
            {
                "criterion": row.criterion.value,
                "weight": format_minimal(row.weight),
                "score": None if row.score is None else format_minimal(row.score),
                "display": None if row.score is None else format_display(row.score),
            }
        )
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "assessment_report",
        "design": report.design_id,
        "assessors": list(report.assessor_set),
        "merge": report.merge_mode,
        "criteria": criteria,
        "total_weight": format_minimal(report.total_weight),
        "weighted_average": format_minimal(report.weighted_average),
        "weighted_average_display": format_display(report.weighted_average),
        "weight_overrides": weight_override_ids(report),
    }


def render_comparison_text(comparison: Comparison) -> str:
    lines = []
    for entry in comparison.ranking:
        lines.append(
            f"{entry.rank}. {entry.design_id}  "
            f"weighted average {format_display(entry.weighted_average)}  "
            f"(total weight {format_minimal(entry.total_weight)})"
        )
    lines.append("")
    order = comparison.order
    rows: list[tuple[str, ...]] = [("Criterion", *order, "Spread")]
    for spread in comparison.criteria:
        cells = [score_cell(spread.scores[design_id]) for design_id in order]
        rows.append(
            (CRITERION_LABELS[spread.criterion], *cells, score_cell(spread.spread))
        )
    lines.extend(_table(rows))
    return "\n".join(lines) + "\n"


def comparison_document(comparison: Comparison) -> dict:
    order = comparison.order
    ranking = [
        {
            "rank": entry.rank,
            "design": entry.design_id,
            "weighted_average": format_minimal(entry.weighted_average),
            "display": format_display(entry.weighted_average),
            "total_weight": format_minimal(entry.total_weight),
        }
        for entry in comparison.ranking
    ]
    criteria = []
    for spread in comparison.criteria:
        scores = {
            design_id: None if spread.scores[design_id] is None else format_minimal(spread.scores[design_id])
            for design_id in order
        }
        criteria.append(
            {
                "criterion": spread.criterion.value,
                "scores": scores,
                "spread": None if spread.spread is None else format_minimal(spread.spread),
            }
        )
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "comparison",
        "ranking": ranking,
        "criteria": criteria,
    }
