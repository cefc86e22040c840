"""Canonical text documents for designs and score sheets.

Documents are JSON with a fixed key order, two-space indentation, UTF-8, and a
trailing newline, so semantically equal values serialize to identical bytes.
Scores travel as exact decimal strings ("4.5") or "p/q" fractions, never as
binary floats. Parsing is strict: unknown fields are rejected with a path.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Mapping, Optional

from .model import (
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
    VisualChannel,
    default_weight,
    validate_design,
)
from .rationals import format_minimal, frac


class DocumentError(ModelError):
    """A document failed schema validation; the message carries the path."""

    def __init__(self, message: str, path: str = "") -> None:
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


def canonical_dumps(doc) -> str:
    """Stable text form of a structured document: LF-terminated, UTF-8."""
    return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"


def _load_object(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise DocumentError("document root must be an object")
    return doc


def _check_keys(obj: Mapping, required: set, optional: set, path: str) -> None:
    unknown = sorted(set(obj) - required - optional)
    if unknown:
        raise DocumentError(f"unknown fields: {', '.join(unknown)}", path)
    missing = sorted(required - set(obj))
    if missing:
        raise DocumentError(f"missing fields: {', '.join(missing)}", path)


def _field_path(path: str, key: str) -> str:
    return f"{path}.{key}" if path else key


def _str_field(obj: Mapping, key: str, path: str, *, allow_empty: bool = False) -> str:
    value = obj[key]
    if not isinstance(value, str) or (not allow_empty and not value):
        raise DocumentError("must be a non-empty string", _field_path(path, key))
    return value


def _check_version(obj: Mapping, path: str) -> None:
    version = obj["schema_version"]
    if version != SCHEMA_VERSION:
        raise DocumentError(
            f"unsupported schema_version {version!r} (expected {SCHEMA_VERSION!r})",
            _field_path(path, "schema_version"),
        )


def _parse_number(value, path: str) -> Fraction:
    # exact by construction: decimal/fraction strings and integers only
    if isinstance(value, bool) or isinstance(value, float):
        raise DocumentError("must be a decimal string or integer, not a binary float", path)
    if not isinstance(value, (str, int)):
        raise DocumentError("must be a decimal string or integer", path)
    try:
        return frac(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise DocumentError(f"not a number: {value!r}", path) from exc


def _canonical_value(value, path: str):
    """Normalize an inputs record: dict keys sorted, JSON scalars only."""
    if isinstance(value, dict):
        out = {}
        for key in sorted(value):
            if not isinstance(key, str):
                raise DocumentError("inputs keys must be strings", path)
            out[key] = _canonical_value(value[key], f"{path}.{key}")
        return out
    if isinstance(value, (list, tuple)):
        return [_canonical_value(v, f"{path}[{i}]") for i, v in enumerate(value)]
    if value is None or isinstance(value, (str, bool, int, float)):
        return value
    if isinstance(value, Fraction):
        return format_minimal(value)
    raise DocumentError(f"inputs hold a non-document value {value!r}", path)


# --- score sheets -----------------------------------------------------------

def _parse_entry(item, path: str) -> VariableEntry:
    if not isinstance(item, dict):
        raise DocumentError("entry must be an object", path)
    _check_keys(item, {"variable", "score"}, {"rationale"}, path)
    variable = _str_field(item, "variable", path)
    score = _parse_number(item["score"], _field_path(path, "score"))
    rationale = item.get("rationale", "")
    if not isinstance(rationale, str):
        raise DocumentError("must be a string", _field_path(path, "rationale"))
    try:
        return VariableEntry(variable, score, rationale)
    except ModelError as exc:
        raise DocumentError(str(exc), path) from exc


def _parse_assessment(item, path: str) -> CriterionAssessment:
    if not isinstance(item, dict):
        raise DocumentError("assessment must be an object", path)
    _check_keys(
        item, {"criterion", "mode"},
        {"weight", "direct_score", "variable_entries", "inputs"}, path,
    )
    raw_criterion = _str_field(item, "criterion", path)
    try:
        criterion = CriterionId(raw_criterion)
    except ValueError:
        raise DocumentError(f"unknown criterion {raw_criterion!r}", _field_path(path, "criterion"))
    raw_mode = item["mode"]
    try:
        mode = AssessmentMode(raw_mode)
    except ValueError:
        raise DocumentError(f"unknown mode {raw_mode!r}", _field_path(path, "mode"))
    if "weight" in item:
        weight = _parse_number(item["weight"], _field_path(path, "weight"))
    else:
        weight = default_weight(criterion)
    direct_score = None
    if "direct_score" in item:
        direct_score = _parse_number(item["direct_score"], _field_path(path, "direct_score"))
    entries = ()
    if "variable_entries" in item:
        raw_entries = item["variable_entries"]
        if not isinstance(raw_entries, list):
            raise DocumentError("must be an array", _field_path(path, "variable_entries"))
        entries = tuple(
            _parse_entry(e, f"{path}.variable_entries[{i}]") for i, e in enumerate(raw_entries)
        )
    inputs = None
    if "inputs" in item:
        if not isinstance(item["inputs"], dict):
            raise DocumentError("must be an object", _field_path(path, "inputs"))
        inputs = _canonical_value(item["inputs"], _field_path(path, "inputs"))
    try:
        return CriterionAssessment(
            criterion, mode, weight,
            variable_entries=entries, direct_score=direct_score, inputs=inputs,
        )
    except ModelError as exc:
        raise DocumentError(str(exc), path) from exc


def parse_sheet(text: str) -> ScoreSheet:
    doc = _load_object(text)
    _check_keys(doc, {"schema_version", "design", "assessor", "timestamp", "assessments"}, set(), "")
    _check_version(doc, "")
    design = _str_field(doc, "design", "")
    assessor = _str_field(doc, "assessor", "")
    timestamp = _str_field(doc, "timestamp", "")
    raw = doc["assessments"]
    if not isinstance(raw, list):
        raise DocumentError("must be an array", "assessments")
    assessments = tuple(
        _parse_assessment(item, f"assessments[{i}]") for i, item in enumerate(raw)
    )
    try:
        return ScoreSheet(design, assessor, timestamp, assessments)
    except ModelError as exc:
        raise DocumentError(str(exc)) from exc


def sheet_document(sheet: ScoreSheet) -> dict:
    assessments = []
    for a in sheet.assessments:
        item: dict = {
            "criterion": a.criterion.value,
            "mode": a.mode.value,
            "weight": format_minimal(a.weight),
        }
        if a.mode is AssessmentMode.A_AGGREGATED:
            entries = []
            for entry in a.variable_entries:
                cell: dict = {"variable": entry.variable_id, "score": format_minimal(entry.score)}
                if entry.rationale:
                    cell["rationale"] = entry.rationale
                entries.append(cell)
            item["variable_entries"] = entries
        elif a.mode is AssessmentMode.D_DIRECT:
            item["direct_score"] = format_minimal(a.direct_score)
        if a.inputs is not None:
            item["inputs"] = _canonical_value(a.inputs, f"assessments.{a.criterion.value}.inputs")
        assessments.append(item)
    return {
        "schema_version": sheet.schema_version,
        "design": sheet.design_id,
        "assessor": sheet.assessor,
        "timestamp": sheet.timestamp,
        "assessments": assessments,
    }


def serialize_sheet(sheet: ScoreSheet) -> str:
    return canonical_dumps(sheet_document(sheet))


# --- designs ----------------------------------------------------------------

def _parse_variable(item, path: str) -> DataVariable:
    if not isinstance(item, dict):
        raise DocumentError("variable must be an object", path)
    _check_keys(
        item, {"id", "data_type", "key_value_count"},
        {"name", "importance_rank", "comparability_group", "is_identity_variable"}, path,
    )
    raw_type = item["data_type"]
    try:
        data_type = DataType(raw_type)
    except ValueError:
        raise DocumentError(f"unknown data_type {raw_type!r}", _field_path(path, "data_type"))
    k = item["key_value_count"]
    if isinstance(k, bool) or not isinstance(k, int):
        raise DocumentError("must be an integer", _field_path(path, "key_value_count"))
    rank = item.get("importance_rank")
    if rank is not None and (isinstance(rank, bool) or not isinstance(rank, int)):
        raise DocumentError("must be an integer", _field_path(path, "importance_rank"))
    group = item.get("comparability_group")
    if group is not None and not isinstance(group, str):
        raise DocumentError("must be a string", _field_path(path, "comparability_group"))
    identity = item.get("is_identity_variable", False)
    if not isinstance(identity, bool):
        raise DocumentError("must be a boolean", _field_path(path, "is_identity_variable"))
    name = item.get("name", "")
    if not isinstance(name, str):
        raise DocumentError("must be a string", _field_path(path, "name"))
    return DataVariable(
        id=_str_field(item, "id", path),
        name=name,
        data_type=data_type,
        key_value_count=k,
        importance_rank=rank,
        comparability_group=group,
        is_identity_variable=identity,
    )


def _parse_channel(item, path: str) -> VisualChannel:
    if not isinstance(item, dict):
        raise DocumentError("channel must be an object", path)
    _check_keys(item, {"id", "kind"}, {"name"}, path)
    raw_kind = item["kind"]
    try:
        kind = ChannelKind(raw_kind)
    except ValueError:
        raise DocumentError(f"unknown channel kind {raw_kind!r}", _field_path(path, "kind"))
    name = item.get("name", "")
    if not isinstance(name, str):
        raise DocumentError("must be a string", _field_path(path, "name"))
    return VisualChannel(id=_str_field(item, "id", path), name=name, channel_kind=kind)


def parse_design(text: str) -> GlyphDesign:
    doc = _load_object(text)
    _check_keys(
        doc, {"schema_version", "id", "variables", "channels", "encoding"},
        {"name", "image_ref", "notes"}, "",
    )
    _check_version(doc, "")
    raw_vars = doc["variables"]
    if not isinstance(raw_vars, list):
        raise DocumentError("must be an array", "variables")
    variables = tuple(_parse_variable(v, f"variables[{i}]") for i, v in enumerate(raw_vars))
    raw_chans = doc["channels"]
    if not isinstance(raw_chans, list):
        raise DocumentError("must be an array", "channels")
    channels = tuple(_parse_channel(c, f"channels[{i}]") for i, c in enumerate(raw_chans))
    raw_encoding = doc["encoding"]
    if not isinstance(raw_encoding, dict):
        raise DocumentError("must be an object", "encoding")
    encoding = {}
    for var_id, targets in raw_encoding.items():
        path = f"encoding[{var_id}]"
        if not isinstance(targets, list) or not all(isinstance(t, str) for t in targets):
            raise DocumentError("must be an array of channel ids", path)
        encoding[var_id] = tuple(targets)
    name = doc.get("name", "")
    if not isinstance(name, str):
        raise DocumentError("must be a string", "name")
    image_ref = doc.get("image_ref")
    if image_ref is not None and not isinstance(image_ref, str):
        raise DocumentError("must be a string", "image_ref")
    notes = doc.get("notes", "")
    if not isinstance(notes, str):
        raise DocumentError("must be a string", "notes")
    design = GlyphDesign(
        id=_str_field(doc, "id", ""),
        name=name,
        variables=variables,
        channels=channels,
        encoding=encoding,
        image_ref=image_ref,
        notes=notes,
    )
    violations = validate_design(design)
    if violations:
        raise DocumentError("; ".join(str(v) for v in violations))
    return design


def design_document(design: GlyphDesign) -> dict:
    variables = []
    for var in design.variables:
        item: dict = {
            "id": var.id,
            "name": var.name,
            "data_type": var.data_type.value,
            "key_value_count": var.key_value_count,
        }
        if var.importance_rank is not None:
            item["importance_rank"] = var.importance_rank
        if var.comparability_group is not None:
            item["comparability_group"] = var.comparability_group
        if var.is_identity_variable:
            item["is_identity_variable"] = True
        variables.append(item)
    channels = [
        {"id": chan.id, "name": chan.name, "kind": chan.channel_kind.value}
        for chan in design.channels
    ]
    doc: dict = {
        "schema_version": SCHEMA_VERSION,
        "id": design.id,
        "name": design.name,
        "variables": variables,
        "channels": channels,
        "encoding": {var.id: list(design.encoding[var.id]) for var in design.variables},
    }
    if design.image_ref is not None:
        doc["image_ref"] = design.image_ref
    if design.notes:
        doc["notes"] = design.notes
    return doc


def serialize_design(design: GlyphDesign) -> str:
    violations = validate_design(design)
    if violations:
        raise DocumentError("; ".join(str(v) for v in violations))
    return canonical_dumps(design_document(design))
