"""HTTP adapter over the scoring engine.

Every endpoint is a thin wrapper around a library call and returns the same
canonical bytes the CLI would print, so automation and the workbench UI see
one truth. Optimistic concurrency: GET responses carry an X-Revision content
hash; a PUT may send the revision it read and gets 409 when the stored
document has moved on. Mutating requests identify the assessor via X-Assessor.
"""
from __future__ import annotations

import base64
import json
from typing import Optional

from fastapi import FastAPI, Query, Request, Response
from fastapi.responses import JSONResponse

from .aggregate import MergePolicy, aggregate_sheets, compare_designs
from .criteria import CriterionInputError
from .derive import derive
from .invariance import (
    InvarianceError,
    ViewingGeometry,
    colorimetry_sheet,
    geometry_sheet,
    open_image,
)
from .kop import KOP_ORDER, KopError, load_default_table
from .model import ChannelKind, CriterionId, ModelError
from .rationals import frac
from .render import comparison_document, report_document
from .sheetio import DocumentError, canonical_dumps, parse_design, parse_sheet
from .workspace import (
    NotFoundError,
    RevisionConflict,
    Workspace,
    WorkspaceError,
    collect_sheets,
)


def _canonical_response(doc: dict, revision: Optional[str] = None) -> Response:
    headers = {"X-Revision": revision} if revision is not None else None
    return Response(
        content=canonical_dumps(doc), media_type="application/json", headers=headers
    )


def _stored_response(data: bytes, revision: str) -> Response:
    return Response(
        content=data, media_type="application/json", headers={"X-Revision": revision}
    )


def _require_assessor(request: Request) -> str:
    identity = request.headers.get("x-assessor", "").strip()
    if not identity:
        raise WorkspaceError("X-Assessor header required on mutating requests")
    return identity


async def _json_body(request: Request, *, allow_empty: bool = False) -> dict:
    raw = await request.body()
    if not raw and allow_empty:
        return {}
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"body is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise DocumentError("body must be a JSON object")
    return doc


def _merge_policy(doc: dict) -> tuple[Optional[str], Optional[MergePolicy]]:
    unknown = sorted(set(doc) - {"assessor", "merge", "scores", "note"})
    if unknown:
        raise DocumentError(f"unknown fields: {', '.join(unknown)}")
    assessor = doc.get("assessor")
    if assessor is not None and not isinstance(assessor, str):
        raise DocumentError("assessor must be a string")
    merge = doc.get("merge")
    if merge is None:
        if "scores" in doc or "note" in doc:
            raise DocumentError("scores/note only apply to consensus merges")
        return assessor, None
    if merge == "mean":
        if "scores" in doc or "note" in doc:
            raise DocumentError("scores/note only apply to consensus merges")
        return assessor, MergePolicy.mean()
    if merge == "consensus":
        scores = doc.get("scores")
        if not isinstance(scores, dict):
            raise DocumentError("consensus merge needs a 'scores' map")
        note = doc.get("note", "")
        if not isinstance(note, str):
            raise DocumentError("note must be a string")
        return assessor, MergePolicy.consensus(scores, note)
    raise DocumentError(f"unknown merge policy {merge!r}")


def create_app(workspace: Workspace) -> FastAPI:
    ws = workspace.ensure()
    kop_table = load_default_table()
    app = FastAPI(title="glyphscore service")

    def _error_handler(status: int):
        async def handle(request: Request, exc: Exception) -> JSONResponse:
            return JSONResponse({"error": str(exc)}, status_code=status)

        return handle

    # most specific classes win via the exception MRO walk
    app.add_exception_handler(RevisionConflict, _error_handler(409))
    app.add_exception_handler(NotFoundError, _error_handler(404))
    app.add_exception_handler(CriterionInputError, _error_handler(422))
    app.add_exception_handler(WorkspaceError, _error_handler(400))
    app.add_exception_handler(ModelError, _error_handler(400))
    app.add_exception_handler(InvarianceError, _error_handler(400))

    # --- designs -------------------------------------------------------------

    @app.get("/designs")
    async def list_designs() -> Response:
        return _canonical_response({"designs": ws.list_designs()})

    @app.get("/designs/{design_id}")
    async def get_design(design_id: str) -> Response:
        data = ws.design_bytes(design_id)
        return _stored_response(data, ws.design_revision(design_id))

    @app.put("/designs/{design_id}")
    async def put_design(design_id: str, request: Request) -> Response:
        _require_assessor(request)
        design = parse_design((await request.body()).decode("utf-8"))
        if design.id != design_id:
            raise DocumentError(
                f"path design id {design_id!r} differs from document id {design.id!r}"
            )
        revision = ws.save_design(design, expected_revision=request.headers.get("x-revision"))
        return _stored_response(ws.design_bytes(design_id), revision)

    # --- sheets ---------------------------------------------------------------

    @app.get("/sheets/{design_id}")
    async def list_sheets(design_id: str) -> Response:
        return _canonical_response({"design": design_id, "assessors": ws.list_sheets(design_id)})

    @app.get("/sheets/{design_id}/{assessor}")
    async def get_sheet(design_id: str, assessor: str) -> Response:
        data = ws.sheet_bytes(design_id, assessor)
        return _stored_response(data, ws.sheet_revision(design_id, assessor))

    @app.put("/sheets/{design_id}/{assessor}")
    async def put_sheet(design_id: str, assessor: str, request: Request) -> Response:
        _require_assessor(request)
        sheet = parse_sheet((await request.body()).decode("utf-8"))
        if sheet.design_id != design_id or sheet.assessor != assessor:
            raise DocumentError(
                f"path {design_id}/{assessor} differs from document "
                f"{sheet.design_id}/{sheet.assessor}"
            )
        revision = ws.save_sheet(sheet, expected_revision=request.headers.get("x-revision"))
        return _stored_response(ws.sheet_bytes(design_id, assessor), revision)

    # --- scoring ---------------------------------------------------------------

    @app.post("/aggregate/{design_id}")
    async def aggregate(design_id: str, request: Request) -> Response:
        body = await _json_body(request, allow_empty=True)
        assessor, policy = _merge_policy(body)
        sheets = collect_sheets(ws, design_id, assessor)
        report = aggregate_sheets(sheets, policy)
        return _canonical_response(report_document(report))

    @app.get("/compare")
    async def compare(
        ids: list[str] = Query(default=[]), assessor: Optional[str] = None
    ) -> Response:
        design_ids = [token for chunk in ids for token in chunk.split(",") if token]
        reports = [
            aggregate_sheets(collect_sheets(ws, design_id, assessor), None)
            for design_id in design_ids
        ]
        return _canonical_response(comparison_document(compare_designs(reports)))

    @app.post("/derive/{criterion}")
    async def derive_level(criterion: str, request: Request) -> Response:
        try:
            criterion_id = CriterionId(criterion)
        except ValueError:
            raise NotFoundError(f"unknown criterion {criterion!r}") from None
        inputs = await _json_body(request)
        return _canonical_response(derive(criterion_id, inputs, kop_table=kop_table))

    # --- invariance sheets -------------------------------------------------------

    @app.post("/invariance/geometry")
    async def invariance_geometry(
        request: Request,
        vf: str = "5",
        vd: str = "50",
        ppcm: str = "37.8",
        shape: str = "circular",
    ) -> Response:
        try:
            geom = ViewingGeometry(frac(vf), frac(vd), shape)
            ppcm_value = frac(ppcm)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvarianceError(str(exc)) from exc
        sheet = geometry_sheet(open_image(await request.body()), geom, ppcm_value)
        return _canonical_response(
            {
                "manifest": sheet.manifest,
                "png_base64": base64.b64encode(sheet.png_bytes()).decode("ascii"),
            }
        )

    @app.post("/invariance/colorimetry")
    async def invariance_colorimetry(request: Request) -> Response:
        sheet = colorimetry_sheet(open_image(await request.body()))
        return _canonical_response(
            {
                "manifest": sheet.manifest,
                "png_base64": base64.b64encode(sheet.png_bytes()).decode("ascii"),
            }
        )

    # --- knowledge base -----------------------------------------------------------

    @app.get("/kop/{channel_kind}")
    async def kop_row(channel_kind: str) -> Response:
        try:
            kind = ChannelKind(channel_kind)
            row = kop_table.row(kind)
        except (ValueError, KopError) as exc:
            raise NotFoundError(str(exc)) from None
        return _canonical_response(
            {
                "channel_kind": kind.value,
                "table_version": kop_table.version,
                "ratings": {kop.value: row[kop].value for kop in KOP_ORDER},
            }
        )

    return app
