"""Workspace: directory layout and atomic persistence.

Layout under one root:
  designs/<id>.json
  sheets/<design>__<assessor>.json
  reports/<name>

Writes go through a temp file plus os.replace, so readers never observe a
half-written document and concurrent writers get last-write-wins per key.
Revisions are content hashes of the stored bytes; callers may pass the
revision they read to detect conflicting writes.
"""
from __future__ import annotations

import hashlib
import os
import re
from pathlib import Path
from typing import Optional

from .model import GlyphDesign, ScoreSheet
from .sheetio import parse_design, parse_sheet, serialize_design, serialize_sheet


class WorkspaceError(Exception):
    """Raised for storage-level problems (bad ids, layout trouble)."""


class NotFoundError(WorkspaceError):
    """The requested design or sheet is not in the workspace."""


class RevisionConflict(WorkspaceError):
    """The stored document changed since the caller read it."""


# "+" joins assessor names on merged sheets, so it must be storable
_SAFE_ID = re.compile(r"[A-Za-z0-9][A-Za-z0-9.+_-]*$")


def check_storage_id(value: str, what: str) -> str:
    # "__" is the design/assessor separator in sheet filenames
    if not isinstance(value, str) or not _SAFE_ID.match(value) or "__" in value:
        raise WorkspaceError(
            f"{what} {value!r} is not filename-safe "
            "(letters, digits, '.', '+', '_', '-'; must not contain '__')"
        )
    return value


def revision_of(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


class Workspace:
    def __init__(self, root) -> None:
        self.root = Path(root)

    @property
    def designs_dir(self) -> Path:
        return self.root / "designs"

    @property
    def sheets_dir(self) -> Path:
        return self.root / "sheets"

    @property
    def reports_dir(self) -> Path:
        return self.root / "reports"

    def ensure(self) -> "Workspace":
        for path in (self.designs_dir, self.sheets_dir, self.reports_dir):
            path.mkdir(parents=True, exist_ok=True)
        return self

    # --- raw bytes ---------------------------------------------------------

    def _write_atomic(self, path: Path, data: bytes) -> None:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_name(path.name + ".tmp")
        tmp.write_bytes(data)
        os.replace(tmp, path)

    def _read(self, path: Path, missing: str) -> bytes:
        try:
            return path.read_bytes()
        except FileNotFoundError:
            raise NotFoundError(missing) from None

    def _check_revision(self, path: Path, expected: Optional[str], what: str) -> None:
        if expected is None:
            return
        if not path.exists():
            raise RevisionConflict(f"{what} does not exist; revision {expected} is stale")
        current = revision_of(path.read_bytes())
        if current != expected:
            raise RevisionConflict(
                f"{what} changed since it was read (stored {current}, expected {expected})"
            )

    # --- designs -------------------------------------------------------------

    def design_path(self, design_id: str) -> Path:
        check_storage_id(design_id, "design id")
        return self.designs_dir / f"{design_id}.json"

    def design_bytes(self, design_id: str) -> bytes:
        return self._read(self.design_path(design_id), f"no design {design_id!r}")

    def load_design(self, design_id: str) -> GlyphDesign:
        return parse_design(self.design_bytes(design_id).decode("utf-8"))

    def design_revision(self, design_id: str) -> str:
        return revision_of(self.design_bytes(design_id))

    def save_design(self, design: GlyphDesign, *, expected_revision: Optional[str] = None) -> str:
        path = self.design_path(design.id)
        self._check_revision(path, expected_revision, f"design {design.id!r}")
        data = serialize_design(design).encode("utf-8")
        self._write_atomic(path, data)
        return revision_of(data)

    def list_designs(self) -> list[str]:
        if not self.designs_dir.is_dir():
            return []
        return sorted(p.stem for p in self.designs_dir.glob("*.json"))

    # --- sheets ----------------------------------------------------------------

    def sheet_path(self, design_id: str, assessor: str) -> Path:
        check_storage_id(design_id, "design id")
        check_storage_id(assessor, "assessor")
        return self.sheets_dir / f"{design_id}__{assessor}.json"

    def sheet_bytes(self, design_id: str, assessor: str) -> bytes:
        return self._read(
            self.sheet_path(design_id, assessor),
            f"no sheet for design {design_id!r} by assessor {assessor!r}",
        )

    def load_sheet(self, design_id: str, assessor: str) -> ScoreSheet:
        return parse_sheet(self.sheet_bytes(design_id, assessor).decode("utf-8"))

    def sheet_revision(self, design_id: str, assessor: str) -> str:
        return revision_of(self.sheet_bytes(design_id, assessor))

    def save_sheet(self, sheet: ScoreSheet, *, expected_revision: Optional[str] = None) -> str:
        # a sheet must reference a stored design
        if not self.design_path(sheet.design_id).exists():
            raise NotFoundError(f"no design {sheet.design_id!r}")
        path = self.sheet_path(sheet.design_id, sheet.assessor)
        self._check_revision(
            path, expected_revision, f"sheet {sheet.design_id!r}/{sheet.assessor!r}"
        )
        data = serialize_sheet(sheet).encode("utf-8")
        self._write_atomic(path, data)
        return revision_of(data)

    def list_sheets(self, design_id: str) -> list[str]:
        check_storage_id(design_id, "design id")
        if not self.sheets_dir.is_dir():
            return []
        prefix = f"{design_id}__"
        return sorted(
            p.stem[len(prefix):]
            for p in self.sheets_dir.glob(f"{design_id}__*.json")
            if p.stem.startswith(prefix)
        )

    # --- reports -------------------------------------------------------------

    def save_report(self, name: str, text: str) -> Path:
        # reports reuse the "__" separator in their names and are never parsed
        # back, so only the character set is checked
        if not isinstance(name, str) or not _SAFE_ID.match(name):
            raise WorkspaceError(f"report name {name!r} is not filename-safe")
        path = self.reports_dir / name
        self._write_atomic(path, text.encode("utf-8"))
        return path


def collect_sheets(
    ws: Workspace, design_id: str, assessor: Optional[str] = None
) -> list[ScoreSheet]:
    """One assessor's sheet, or every stored sheet of a design (sorted)."""
    if assessor is not None:
        return [ws.load_sheet(design_id, assessor)]
    assessors = ws.list_sheets(design_id)
    if not assessors:
        raise NotFoundError(f"no sheets for design {design_id!r}")
    return [ws.load_sheet(design_id, a) for a in assessors]
