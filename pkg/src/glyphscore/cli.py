"""Batch command line: validate, score, aggregate, merge, compare, degradation
sheets, and reports, all against a plain-file workspace.

Diagnostics go to stderr as one JSON object per error; data goes to stdout.
Identical inputs produce byte-identical outputs.
"""
from __future__ import annotations

import functools
import json
import sys
from pathlib import Path
from typing import Optional

import click

from .aggregate import MergePolicy, aggregate_sheets, compare_designs, merge_sheets
from .criteria import CriterionInputError
from .derive import derive
from .invariance import (
    InvarianceError,
    ViewingGeometry,
    colorimetry_sheet,
    geometry_sheet,
    open_image,
)
from .kop import KopError, load_table
from .model import ModelError
from .rationals import frac
from .render import (
    comparison_document,
    render_comparison_text,
    render_report_text,
    report_document,
)
from .sheetio import canonical_dumps, parse_design, serialize_sheet
from .workspace import Workspace, WorkspaceError, collect_sheets


def _fail(message: str, code: int = 1) -> None:
    click.echo(json.dumps({"error": message}), err=True)
    sys.exit(code)


def _guarded(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (ModelError, WorkspaceError, CriterionInputError, InvarianceError, KopError) as exc:
            _fail(str(exc))

    return wrapper


_workspace_option = click.option(
    "--workspace", "-w", default=".", show_default=True,
    help="Workspace root holding designs/, sheets/, reports/.",
)

_format_option = click.option(
    "--format", "fmt", type=click.Choice(["text", "structured"]), default="text",
    show_default=True, help="Report rendering.",
)


def _load_consensus(path: Optional[str]) -> Optional[MergePolicy]:
    if path is None:
        return None
    try:
        doc = json.loads(Path(path).read_text("utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        _fail(f"cannot read consensus file {path}: {exc}")
    if not isinstance(doc, dict) or not isinstance(doc.get("scores"), dict):
        _fail(f"consensus file {path} must be an object with a 'scores' map")
    note = doc.get("note", "")
    if set(doc) - {"scores", "note"} or not isinstance(note, str):
        _fail(f"consensus file {path} holds unexpected fields")
    return MergePolicy.consensus(doc["scores"], note)


def _build_report(ws, design_id, assessor, merge_mode, consensus_file):
    sheets = collect_sheets(ws, design_id, assessor)
    policy = _load_consensus(consensus_file)
    if policy is None and merge_mode == "consensus":
        _fail("consensus merging needs --consensus <file>")
    if policy is None and (merge_mode == "mean" or len(sheets) > 1):
        policy = MergePolicy.mean()
    return aggregate_sheets(sheets, policy)


def _render_report(report, fmt: str) -> str:
    if fmt == "text":
        return render_report_text(report)
    return canonical_dumps(report_document(report))


@click.group()
def main() -> None:
    """Score and compare glyph designs on the 12-criterion scheme."""


@main.command()
@click.argument("target")
@_workspace_option
@_guarded
def validate(target: str, workspace: str) -> None:
    """Check a design document (a file path or a stored design id)."""
    if target.endswith(".json") or Path(target).exists():
        try:
            text = Path(target).read_text("utf-8")
        except OSError as exc:
            _fail(f"cannot read {target}: {exc}")
        design = parse_design(text)
    else:
        design = Workspace(workspace).load_design(target)
    click.echo(json.dumps({"design": design.id, "violations": []}))


@main.command()
@click.argument("criterion")
@click.option("--inputs", "-i", type=click.File("r"), default="-",
              help="JSON observation record (default: stdin).")
@click.option("--kop-table", type=click.Path(exists=True), default=None,
              help="Ratings override file for typedness lookups.")
@_guarded
def score(criterion: str, inputs, kop_table: Optional[str]) -> None:
    """Derive one criterion level from raw observation inputs."""
    try:
        doc = json.load(inputs)
    except json.JSONDecodeError as exc:
        _fail(f"inputs are not valid JSON: {exc}")
    try:
        result = derive(criterion, doc, kop_table=load_table(kop_table))
    except ValueError as exc:
        _fail(str(exc))
    click.echo(canonical_dumps(result), nl=False)


@main.command()
@click.argument("design_id")
@click.option("--assessor", default=None, help="Use one assessor's sheet only.")
@click.option("--merge", "merge_mode", type=click.Choice(["mean", "consensus"]), default=None,
              help="How to combine several assessors' sheets.")
@click.option("--consensus", "consensus_file", type=click.Path(exists=True), default=None,
              help="Agreed-score file for consensus merges.")
@_format_option
@_workspace_option
@_guarded
def aggregate(design_id, assessor, merge_mode, consensus_file, fmt, workspace) -> None:
    """Aggregate sheets into a report; writes it under reports/ and prints it."""
    ws = Workspace(workspace)
    report = _build_report(ws, design_id, assessor, merge_mode, consensus_file)
    rendered = _render_report(report, fmt)
    label = assessor if assessor is not None else report.merge_mode
    ext = "txt" if fmt == "text" else "json"
    ws.save_report(f"{design_id}__{label}.{ext}", rendered)
    click.echo(rendered, nl=False)


@main.command()
@click.argument("design_id")
@click.option("--assessor", default=None, help="Use one assessor's sheet only.")
@click.option("--merge", "merge_mode", type=click.Choice(["mean", "consensus"]), default=None)
@click.option("--consensus", "consensus_file", type=click.Path(exists=True), default=None)
@_format_option
@_workspace_option
@_guarded
def report(design_id, assessor, merge_mode, consensus_file, fmt, workspace) -> None:
    """Render the score table for a design without writing anything."""
    ws = Workspace(workspace)
    result = _build_report(ws, design_id, assessor, merge_mode, consensus_file)
    click.echo(_render_report(result, fmt), nl=False)


@main.command()
@click.argument("design_id")
@click.option("--assessor", "assessors", multiple=True,
              help="Sheets to merge (default: every sheet of the design).")
@click.option("--policy", type=click.Choice(["mean", "consensus"]), default="mean",
              show_default=True)
@click.option("--consensus", "consensus_file", type=click.Path(exists=True), default=None)
@click.option("--as", "save_as", default=None,
              help="Assessor name for the merged sheet (default: joined names).")
@_workspace_option
@_guarded
def merge(design_id, assessors, policy, consensus_file, save_as, workspace) -> None:
    """Merge assessors' sheets into one stored sheet."""
    ws = Workspace(workspace)
    if assessors:
        sheets = [ws.load_sheet(design_id, a) for a in assessors]
    else:
        sheets = collect_sheets(ws, design_id)
    merge_policy = _load_consensus(consensus_file)
    if policy == "consensus" and merge_policy is None:
        _fail("consensus merging needs --consensus <file>")
    if merge_policy is None:
        merge_policy = MergePolicy.mean()
    merged = merge_sheets(sheets, merge_policy, assessor=save_as)
    ws.save_sheet(merged)
    click.echo(serialize_sheet(merged), nl=False)


@main.command()
@click.argument("design_ids", nargs=-1, required=True)
@click.option("--assessor", default=None, help="Use this assessor's sheet for every design.")
@_format_option
@_workspace_option
@_guarded
def compare(design_ids, assessor, fmt, workspace) -> None:
    """Rank designs by weighted average with per-criterion spreads."""
    ws = Workspace(workspace)
    reports = [
        _build_report(ws, design_id, assessor, None, None) for design_id in design_ids
    ]
    comparison = compare_designs(reports)
    if fmt == "text":
        click.echo(render_comparison_text(comparison), nl=False)
    else:
        click.echo(canonical_dumps(comparison_document(comparison)), nl=False)


def _sheet_out(image_path: str, out: Optional[str], kind: str) -> Path:
    if out is not None:
        return Path(out)
    source = Path(image_path)
    return source.with_name(f"{source.stem}-{kind}.png")


@main.command("geometry-sheet")
@click.argument("image", type=click.Path(exists=True))
@click.option("--vf", default="5", show_default=True, help="Visual field, degrees.")
@click.option("--vd", default="50", show_default=True, help="Viewing distance, cm.")
@click.option("--ppcm", default="37.8", show_default=True, help="Pixels per cm.")
@click.option("--shape", type=click.Choice(["circular", "rectangular"]), default="circular",
              show_default=True)
@click.option("--out", "-o", default=None, help="Composite path (default: <image>-geometry.png).")
@_guarded
def geometry_sheet_cmd(image, vf, vd, ppcm, shape, out) -> None:
    """Write the five-scale geometric degradation sheet for a glyph image."""
    geom = ViewingGeometry(frac(vf), frac(vd), shape)
    sheet = geometry_sheet(open_image(image), geom, frac(ppcm))
    sheet.save(_sheet_out(image, out, "geometry"))
    click.echo(sheet.manifest_text(), nl=False)


@main.command("colorimetry-sheet")
@click.argument("image", type=click.Path(exists=True))
@click.option("--out", "-o", default=None, help="Composite path (default: <image>-colorimetry.png).")
@_guarded
def colorimetry_sheet_cmd(image, out) -> None:
    """Write the 4x5 brightness/contrast degradation sheet for a glyph image."""
    sheet = colorimetry_sheet(open_image(image))
    sheet.save(_sheet_out(image, out, "colorimetry"))
    click.echo(sheet.manifest_text(), nl=False)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
@_workspace_option
def serve(host: str, port: int, workspace: str) -> None:
    """Run the HTTP service over a workspace."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(Workspace(workspace).ensure()), host=host, port=port)


if __name__ == "__main__":
    main()
