"""Score aggregation: per-variable means, weighted averages, assessor merging,
and cross-design ranking.

Everything here is exact fraction arithmetic; rendering to 2-dp strings happens
in the report layer so golden values never depend on float formatting.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .model import (
    CRITERION_ORDER,
    AssessmentMode,
    CriterionAssessment,
    CriterionId,
    ModelError,
    ScoreSheet,
    check_score,
    parse_timestamp,
)
from .rationals import format_minimal, frac


class AggregationError(ModelError):
    """Raised when sheets cannot be aggregated, merged, or compared as asked."""


def aggregate_type_a(entries: Sequence) -> Fraction:
    """Exact mean of per-variable level scores.

    Accepts raw score values or objects with a `score` attribute (sheet
    entries). The identity variable, when a design declares one, is just
    another entry here; callers include it.
    """
    values = [frac(getattr(e, "score", e)) for e in entries]
    if not values:
        raise AggregationError("cannot aggregate an empty entry list")
    return sum(values, Fraction(0)) / len(values)


def resolve_type_d(assessment: CriterionAssessment) -> Optional[Fraction]:
    """Collapse one assessment to its whole-glyph score; None when null."""
    if assessment.mode is AssessmentMode.NULL:
        return None
    if assessment.mode is AssessmentMode.D_DIRECT:
        return assessment.direct_score
    return aggregate_type_a(assessment.variable_entries)


@dataclass(frozen=True)
class CriterionResult:
    """One report row: the resolved score is None for null criteria."""

    criterion: CriterionId
    weight: Fraction
    score: Optional[Fraction]


@dataclass(frozen=True)
class AssessmentReport:
    design_id: str
    per_criterion: tuple[CriterionResult, ...]
    total_weight: Fraction
    weighted_average: Fraction
    assessor_set: tuple[str, ...]
    merge_mode: str  # single | mean | consensus

    def score_for(self, criterion: CriterionId) -> Optional[Fraction]:
        for row in self.per_criterion:
            if row.criterion is CriterionId(criterion):
                return row.score
        raise KeyError(criterion)


def weighted_average(
    sheet: ScoreSheet, *, merge_mode: str = "single",
    assessor_set: Optional[Sequence[str]] = None,
) -> AssessmentReport:
    """Weighted mean over the non-null criteria of one sheet.

    Null criteria contribute neither weight nor score, so a sheet with one
    null 0.5-weight criterion totals 7 instead of 7.5.
    """
    rows = []
    weighted_sum = Fraction(0)
    total_weight = Fraction(0)
    for assessment in sheet.assessments:
        score = resolve_type_d(assessment)
        rows.append(CriterionResult(assessment.criterion, assessment.weight, score))
        if score is not None:
            weighted_sum += assessment.weight * score
            total_weight += assessment.weight
    if total_weight == 0:
        raise AggregationError("no weight to average over: every criterion is null")
    return AssessmentReport(
        design_id=sheet.design_id,
        per_criterion=tuple(rows),
        total_weight=total_weight,
        weighted_average=weighted_sum / total_weight,
        assessor_set=tuple(assessor_set) if assessor_set is not None else (sheet.assessor,),
        merge_mode=merge_mode,
    )


@dataclass(frozen=True)
class MergePolicy:
    """How several assessors' sheets collapse into one.

    kind "mean" averages each criterion; kind "consensus" carries the scores
    the assessors agreed on in discussion, plus a note for the record.
    """

    kind: str
    agreed_scores: Optional[Mapping[CriterionId, Fraction]] = None
    note: str = ""

    def __post_init__(self) -> None:
        if self.kind not in ("mean", "consensus"):
            raise AggregationError(f"unknown merge policy {self.kind!r}")
        if self.kind == "consensus":
            if self.agreed_scores is None:
                raise AggregationError("consensus policy needs agreed scores")
            normalized = {
                CriterionId(c): check_score(frac(v), what=f"agreed score for {CriterionId(c).value}")
                for c, v in self.agreed_scores.items()
            }
            object.__setattr__(self, "agreed_scores", normalized)
        elif self.agreed_scores is not None:
            raise AggregationError("mean policy does not take agreed scores")

    @classmethod
    def mean(cls) -> "MergePolicy":
        return cls(kind="mean")

    @classmethod
    def consensus(cls, agreed_scores: Mapping, note: str = "") -> "MergePolicy":
        return cls(kind="consensus", agreed_scores=agreed_scores, note=note)


def _latest_timestamp(sheets: Sequence[ScoreSheet]) -> str:
    latest = sheets[0].timestamp
    for sheet in sheets[1:]:
        if parse_timestamp(sheet.timestamp) > parse_timestamp(latest):
            latest = sheet.timestamp
    return latest


def merge_sheets(
    sheets: Sequence[ScoreSheet], policy: MergePolicy, *, assessor: Optional[str] = None,
) -> ScoreSheet:
    """Collapse same-design sheets into one.

    Requires identical weights and an identical null pattern across sheets: a
    null criterion means "not applicable", which cannot average with a score.
    The merged sheet stores direct scores; each one keeps the source scores
    (and any consensus note) in its inputs record for audit.
    """
    if not sheets:
        raise AggregationError("need at least one sheet to merge")
    design_id = sheets[0].design_id
    for sheet in sheets[1:]:
        if sheet.design_id != design_id:
            raise AggregationError(
                f"sheets target different designs: {design_id!r} vs {sheet.design_id!r}"
            )
    assessors = [s.assessor for s in sheets]
    merged_assessor = assessor if assessor is not None else "+".join(assessors)
    merged: list[CriterionAssessment] = []
    for criterion in CRITERION_ORDER:
        per_sheet = [s.assessment(criterion) for s in sheets]
        weight = per_sheet[0].weight
        for a in per_sheet[1:]:
            if a.weight != weight:
                raise AggregationError(
                    f"{criterion.value}: weight differs across sheets "
                    f"({format_minimal(weight)} vs {format_minimal(a.weight)})"
                )
        scores = [resolve_type_d(a) for a in per_sheet]
        null_count = sum(1 for s in scores if s is None)
        if 0 < null_count < len(scores):
            raise AggregationError(
                f"{criterion.value}: null for some assessors but scored by others"
            )
        if null_count == len(scores):
            if policy.kind == "consensus" and criterion in policy.agreed_scores:
                raise AggregationError(
                    f"{criterion.value}: agreed score supplied for a null criterion"
                )
            merged.append(CriterionAssessment(criterion, AssessmentMode.NULL, weight))
            continue
        sources = {a: format_minimal(s) for a, s in zip(assessors, scores)}
        if policy.kind == "mean":
            value = sum(scores, Fraction(0)) / len(scores)
            inputs = {"merge": "mean", "sources": sources}
        else:
            if criterion not in policy.agreed_scores:
                raise AggregationError(
                    f"consensus policy missing an agreed score for {criterion.value}"
                )
            value = policy.agreed_scores[criterion]
            inputs = {"merge": "consensus", "sources": sources}
            if policy.note:
                inputs["note"] = policy.note
        merged.append(
            CriterionAssessment(
                criterion, AssessmentMode.D_DIRECT, weight,
                direct_score=value, inputs=inputs,
            )
        )
    return ScoreSheet(
        design_id=design_id,
        assessor=merged_assessor,
        timestamp=_latest_timestamp(sheets),
        assessments=tuple(merged),
    )


def aggregate_sheets(
    sheets: Sequence[ScoreSheet], policy: Optional[MergePolicy] = None,
) -> AssessmentReport:
    """Report for one or more sheets of a design; merges first when several."""
    if not sheets:
        raise AggregationError("need at least one sheet to aggregate")
    if len(sheets) == 1 and policy is None:
        return weighted_average(sheets[0])
    policy = policy if policy is not None else MergePolicy.mean()
    merged = merge_sheets(sheets, policy)
    return weighted_average(
        merged, merge_mode=policy.kind, assessor_set=[s.assessor for s in sheets],
    )


@dataclass(frozen=True)
class DesignRank:
    rank: int  # competition ranking: ties share a rank
    design_id: str
    weighted_average: Fraction
    total_weight: Fraction


@dataclass(frozen=True)
class CriterionSpread:
    """One criterion's scores across the compared designs, plus max - min."""

    criterion: CriterionId
    scores: Mapping[str, Optional[Fraction]]
    spread: Optional[Fraction]


@dataclass(frozen=True)
class Comparison:
    ranking: tuple[DesignRank, ...]
    criteria: tuple[CriterionSpread, ...]

    @property
    def order(self) -> tuple[str, ...]:
        return tuple(r.design_id for r in self.ranking)


def compare_designs(reports: Sequence[AssessmentReport]) -> Comparison:
    """Rank reports by weighted average, descending; ties break by design id.

    Per-criterion rows carry every design's score so strengths and weaknesses
    stay visible next to the overall order.
    """
    if len(reports) < 2:
        raise AggregationError("need at least two reports to compare")
    ids = [r.design_id for r in reports]
    if len(set(ids)) != len(ids):
        raise AggregationError("duplicate design ids in comparison")
    ordered = sorted(reports, key=lambda r: (-r.weighted_average, r.design_id))
    ranking = []
    for report in ordered:
        ahead = sum(1 for o in ordered if o.weighted_average > report.weighted_average)
        ranking.append(
            DesignRank(ahead + 1, report.design_id, report.weighted_average, report.total_weight)
        )
    spreads = []
    for criterion in CRITERION_ORDER:
        scores = {r.design_id: r.score_for(criterion) for r in ordered}
        present = [s for s in scores.values() if s is not None]
        spread = max(present) - min(present) if present else None
        spreads.append(CriterionSpread(criterion, scores, spread))
    return Comparison(ranking=tuple(ranking), criteria=tuple(spreads))
