"""Derive a criterion level from a structured observation record.

This is the bridge between raw inputs (JSON documents from the CLI `score`
subcommand or the /derive endpoint) and the level functions. Each handler
validates its input record strictly, computes the level, and returns a
document carrying the level plus the intermediate quantities an auditor
would want (correlation, interference maxima, pair counts, clamp notes).
"""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Optional

from . import criteria
from .criteria import CriterionInputError
from .kop import (
    KOP_ORDER,
    SUITABILITY_RANK,
    Kop,
    KopError,
    KopTable,
    Suitability,
    akops_for,
    load_default_table,
    suitability,
)
from .model import CriterionId, DataType
from .rationals import format_minimal, frac


def _check_fields(inputs: Mapping, required: set, optional: set, criterion: str) -> None:
    if not isinstance(inputs, Mapping):
        raise CriterionInputError(f"{criterion}: inputs must be an object")
    unknown = sorted(set(inputs) - required - optional)
    if unknown:
        raise CriterionInputError(f"{criterion}: unknown input fields: {', '.join(unknown)}")
    missing = sorted(required - set(inputs))
    if missing:
        raise CriterionInputError(f"{criterion}: missing input fields: {', '.join(missing)}")


def _int_field(inputs: Mapping, key: str, criterion: str) -> int:
    value = inputs[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise CriterionInputError(f"{criterion}: {key} must be an integer")
    return value


def _frac_field(inputs: Mapping, key: str, criterion: str) -> Fraction:
    try:
        return frac(inputs[key])
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise CriterionInputError(f"{criterion}: {key} is not a number: {inputs[key]!r}") from exc


def _result(criterion: CriterionId, level: Optional[int], extras: Optional[dict] = None,
            notes: Optional[list[str]] = None) -> dict:
    doc: dict = {"criterion": criterion.value, "level": level}
    if extras:
        doc.update(extras)
    if notes:
        doc["notes"] = notes
    return doc


# --- per-criterion handlers ---------------------------------------------------

def _typedness(inputs: Mapping, table: KopTable) -> dict:
    name = CriterionId.TYPEDNESS.value
    _check_fields(inputs, {"channels"}, {"data_type", "akops"}, name)
    try:
        if "akops" in inputs:
            raw = inputs["akops"]
            if not isinstance(raw, list) or not raw:
                raise CriterionInputError(f"{name}: akops must be a non-empty array")
            akops = [Kop(a) for a in raw]
        elif "data_type" in inputs:
            akops = sorted(akops_for(DataType(inputs["data_type"])), key=KOP_ORDER.index)
        else:
            raise CriterionInputError(f"{name}: provide data_type or an explicit akops list")
    except (KopError, ValueError) as exc:
        if isinstance(exc, CriterionInputError):
            raise
        raise CriterionInputError(f"{name}: {exc}") from exc
    raw_channels = inputs["channels"]
    if not isinstance(raw_channels, list) or not raw_channels:
        raise CriterionInputError(f"{name}: channels must be a non-empty array")
    per_channel = []
    for i, item in enumerate(raw_channels):
        where = f"{name}: channels[{i}]"
        if not isinstance(item, Mapping):
            raise CriterionInputError(f"{where} must be an object")
        unknown = sorted(set(item) - {"kind", "ratings", "overrides"})
        if unknown:
            raise CriterionInputError(f"{where}: unknown fields: {', '.join(unknown)}")
        overrides = item.get("overrides", {})
        if not isinstance(overrides, Mapping):
            raise CriterionInputError(f"{where}: overrides must be an object")
        try:
            if "ratings" in item:
                raw_ratings = item["ratings"]
                if not isinstance(raw_ratings, Mapping):
                    raise CriterionInputError(f"{where}: ratings must be an object")
                ratings = {Kop(k): r for k, r in raw_ratings.items()}
            elif "kind" in item:
                ratings = table.row(item["kind"])
            else:
                raise CriterionInputError(f"{where}: provide a channel kind or explicit ratings")
            verdicts = {}
            for akop in akops:
                if akop not in ratings:
                    raise CriterionInputError(f"{where}: no rating for {akop.value}")
                override = overrides.get(akop.value)
                verdicts[akop] = suitability(
                    ratings[akop], Suitability(override) if override is not None else None
                )
        except (KopError, ValueError) as exc:
            if isinstance(exc, CriterionInputError):
                raise
            raise CriterionInputError(f"{where}: {exc}") from exc
        per_channel.append(verdicts)
    level = criteria.typedness_variable_score(per_channel, akops)
    best = {
        akop.value: max(
            (chan[akop] for chan in per_channel), key=SUITABILITY_RANK.__getitem__
        ).value
        for akop in akops
    }
    return _result(
        CriterionId.TYPEDNESS, level,
        {"akops": [a.value for a in akops], "suitability": best},
    )


def _discernability(inputs: Mapping) -> dict:
    name = CriterionId.DISCERNABILITY.value
    _check_fields(inputs, {"pairs_easy", "pairs_differentiable", "pairs_not"}, set(), name)
    easy = _int_field(inputs, "pairs_easy", name)
    diff = _int_field(inputs, "pairs_differentiable", name)
    not_ = _int_field(inputs, "pairs_not", name)
    level = criteria.discernability_score(easy, diff, not_)
    notes = []
    if criteria.discernability_clamped(easy, diff, not_):
        notes.append("no published level covers zero hard pairs with under half easy; clamped to 2")
    return _result(CriterionId.DISCERNABILITY, level, {"pairs": easy + diff + not_}, notes)


def _intuitiveness(inputs: Mapping) -> dict:
    name = CriterionId.INTUITIVENESS.value
    _check_fields(inputs, {"domain_convention", "metaphor"}, set(), name)
    try:
        dc = criteria.DomainConvention(inputs["domain_convention"])
        am = criteria.MetaphorQuality(inputs["metaphor"])
    except ValueError as exc:
        raise CriterionInputError(f"{name}: {exc}") from exc
    return _result(CriterionId.INTUITIVENESS, criteria.intuitiveness_score(dc, am))


def _geometry(inputs: Mapping) -> dict:
    name = CriterionId.INVARIANCE_GEOMETRY.value
    _check_fields(inputs, {"invariant_at"}, set(), name)
    if not isinstance(inputs["invariant_at"], Mapping):
        raise CriterionInputError(f"{name}: invariant_at must be an object")
    return _result(
        CriterionId.INVARIANCE_GEOMETRY, criteria.geometry_score(inputs["invariant_at"])
    )


def _colorimetry(inputs: Mapping) -> dict:
    name = CriterionId.INVARIANCE_COLORIMETRY.value
    _check_fields(inputs, {"invariant_at"}, set(), name)
    if not isinstance(inputs["invariant_at"], Mapping):
        raise CriterionInputError(f"{name}: invariant_at must be an object")
    return _result(
        CriterionId.INVARIANCE_COLORIMETRY, criteria.colorimetry_score(inputs["invariant_at"])
    )


def _separability(inputs: Mapping) -> dict:
    name = CriterionId.COMPOSITION_SEPARABILITY.value
    _check_fields(inputs, set(), {"channels", "channel_scores", "method"}, name)
    if ("channels" in inputs) == ("channel_scores" in inputs):
        raise CriterionInputError(f"{name}: provide channels or channel_scores (not both)")
    if "channels" in inputs:
        raw = inputs["channels"]
        if not isinstance(raw, list) or not all(isinstance(c, list) for c in raw):
            raise CriterionInputError(f"{name}: channels must be an array of severity arrays")
        scores = [criteria.separability_channel_score(c) for c in raw]
    else:
        raw = inputs["channel_scores"]
        if not isinstance(raw, list):
            raise CriterionInputError(f"{name}: channel_scores must be an array")
        scores = [criteria.severity_value(s) for s in raw]
    method = inputs.get("method", "exact")
    if method == "exact":
        max_int, avg_int = criteria.separability_exact(scores)
    elif method == "estimate":
        if not scores:
            raise CriterionInputError(f"{name}: at least one channel score required")
        max_int = max(scores)
        avg_int = criteria.separability_estimate(scores)
    else:
        raise CriterionInputError(f"{name}: method must be exact or estimate")
    level = criteria.separability_score(max_int, avg_int)
    return _result(
        CriterionId.COMPOSITION_SEPARABILITY, level,
        {
            "method": method,
            "max_int": format_minimal(max_int),
            "avg_int": format_minimal(avg_int),
        },
    )


def _comparability(inputs: Mapping) -> dict:
    name = CriterionId.COMPOSITION_COMPARABILITY.value
    _check_fields(inputs, {"major", "medium", "minor"}, {"pair_count", "group_sizes"}, name)
    if ("pair_count" in inputs) == ("group_sizes" in inputs):
        raise CriterionInputError(f"{name}: provide pair_count or group_sizes (not both)")
    if "pair_count" in inputs:
        pairs = _int_field(inputs, "pair_count", name)
    else:
        raw = inputs["group_sizes"]
        if not isinstance(raw, list):
            raise CriterionInputError(f"{name}: group_sizes must be an array")
        pairs = criteria.comparability_pair_count(raw)
    major = _int_field(inputs, "major", name)
    medium = _int_field(inputs, "medium", name)
    minor = _int_field(inputs, "minor", name)
    level = criteria.comparability_score(major, medium, minor, pairs)
    notes = []
    if level is None:
        notes.append("no comparable pairs; criterion not applicable (weight drops from the total)")
    elif criteria.comparability_clamped(major, medium, minor, pairs):
        notes.append("more than a few minor obstacles with no mediums; clamped to 3")
    return _result(CriterionId.COMPOSITION_COMPARABILITY, level, {"pair_count": pairs}, notes)


def _importance(inputs: Mapping) -> dict:
    name = CriterionId.ATTENTION_IMPORTANCE.value
    _check_fields(inputs, set(), {"boxes", "iota", "alpha", "c", "no_ranking"}, name)
    if inputs.get("no_ranking"):
        if set(inputs) - {"no_ranking"}:
            raise CriterionInputError(f"{name}: no_ranking excludes other fields")
        return _result(
            CriterionId.ATTENTION_IMPORTANCE, None,
            notes=["no importance ranking exists; criterion not applicable"],
        )
    if "c" in inputs:
        if set(inputs) - {"c"}:
            raise CriterionInputError(f"{name}: c excludes other fields")
        c = _frac_field(inputs, "c", name)
    elif "boxes" in inputs:
        if set(inputs) - {"boxes"}:
            raise CriterionInputError(f"{name}: boxes excludes other fields")
        raw = inputs["boxes"]
        if isinstance(raw, Mapping):
            # 2x2 shorthand: n11/n12/n21/n22, missing boxes are zero
            unknown = sorted(set(raw) - {"n11", "n12", "n21", "n22"})
            if unknown:
                raise CriterionInputError(f"{name}: unknown box fields: {', '.join(unknown)}")
            grid = [
                [raw.get("n11", 0), raw.get("n12", 0)],
                [raw.get("n21", 0), raw.get("n22", 0)],
            ]
        elif isinstance(raw, list):
            grid = raw
        else:
            raise CriterionInputError(f"{name}: boxes must be an object or a square array")
        c = criteria.importance_pearson_boxes(grid)
    elif "iota" in inputs and "alpha" in inputs:
        if set(inputs) - {"iota", "alpha"}:
            raise CriterionInputError(f"{name}: iota/alpha exclude other fields")
        c = criteria.importance_pearson(inputs["iota"], inputs["alpha"])
    else:
        raise CriterionInputError(f"{name}: provide boxes, iota+alpha, c, or no_ranking")
    level = criteria.importance_score(c)
    rendered = format_minimal(c) if isinstance(c, Fraction) else repr(float(c))
    return _result(CriterionId.ATTENTION_IMPORTANCE, level, {"C": rendered})


def _balance(inputs: Mapping) -> dict:
    name = CriterionId.ATTENTION_BALANCE.value
    _check_fields(inputs, {"weak_count"}, set(), name)
    weak = _int_field(inputs, "weak_count", name)
    return _result(CriterionId.ATTENTION_BALANCE, criteria.balance_score(weak))


def _searchability(inputs: Mapping) -> dict:
    name = CriterionId.SEARCHABILITY.value
    _check_fields(inputs, {"high", "medium", "low"}, set(), name)
    high = _int_field(inputs, "high", name)
    medium = _int_field(inputs, "medium", name)
    low = _int_field(inputs, "low", name)
    level = criteria.searchability_score(high, medium, low)
    notes = []
    if criteria.searchability_clamped(high, medium, low):
        notes.append("half or more medium-effort variables is below every published row; clamped to 2")
    return _result(CriterionId.SEARCHABILITY, level, None, notes)


def _learnability(inputs: Mapping) -> dict:
    name = CriterionId.LEARNABILITY.value
    _check_fields(
        inputs, {"learning_time_hours", "learning_mode", "repeated_effort"}, set(), name
    )
    hours = _frac_field(inputs, "learning_time_hours", name)
    try:
        mode = criteria.LearningMode(inputs["learning_mode"])
        effort = criteria.RepeatedEffort(inputs["repeated_effort"])
    except ValueError as exc:
        raise CriterionInputError(f"{name}: {exc}") from exc
    return _result(
        CriterionId.LEARNABILITY, criteria.learnability_score(hours, mode, effort)
    )


def _memorability(inputs: Mapping) -> dict:
    name = CriterionId.MEMORABILITY.value
    _check_fields(inputs, {"pct_1h", "pct_24h"}, set(), name)
    pct_1h = _frac_field(inputs, "pct_1h", name)
    pct_24h = _frac_field(inputs, "pct_24h", name)
    return _result(CriterionId.MEMORABILITY, criteria.memorability_score(pct_1h, pct_24h))


def derive(criterion, inputs: Mapping, *, kop_table: Optional[KopTable] = None) -> dict:
    """Derive one criterion's level; returns {criterion, level, ...extras}.

    A None level means the criterion is not applicable for these inputs
    (comparability with nothing to compare, importance with no ranking).
    """
    criterion = CriterionId(criterion)
    if not isinstance(inputs, Mapping):
        raise CriterionInputError("inputs must be an object")
    if criterion is CriterionId.TYPEDNESS:
        return _typedness(inputs, kop_table if kop_table is not None else load_default_table())
    handler = {
        CriterionId.DISCERNABILITY: _discernability,
        CriterionId.INTUITIVENESS: _intuitiveness,
        CriterionId.INVARIANCE_GEOMETRY: _geometry,
        CriterionId.INVARIANCE_COLORIMETRY: _colorimetry,
        CriterionId.COMPOSITION_SEPARABILITY: _separability,
        CriterionId.COMPOSITION_COMPARABILITY: _comparability,
        CriterionId.ATTENTION_IMPORTANCE: _importance,
        CriterionId.ATTENTION_BALANCE: _balance,
        CriterionId.SEARCHABILITY: _searchability,
        CriterionId.LEARNABILITY: _learnability,
        CriterionId.MEMORABILITY: _memorability,
    }[criterion]
    return handler(inputs)
