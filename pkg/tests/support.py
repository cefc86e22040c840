"""Shared fixture loading and golden value tables for the test suite."""
from __future__ import annotations

import pathlib
import shutil
from fractions import Fraction

from glyphscore.sheetio import parse_design, parse_sheet
from glyphscore.workspace import Workspace

FIXTURES = pathlib.Path(__file__).resolve().parent / "fixtures"
DESIGN_DIR = FIXTURES / "designs"
SHEET_DIR = FIXTURES / "sheets"

SET1 = ("A", "B", "C", "D", "E")
SET2 = ("J1", "J2", "J3", "J4", "J5")

#: Stated totals for golden set 1. Design C's stated total does not follow
#: from its own per-criterion rows (they yield 4.88); the library pins the
#: arithmetic truth and the acceptance test records the conflict honestly.
SET1_STATED = {"A": "4.66", "B": "3.21", "C": "4.80", "D": "4.16", "E": "4.44"}
SET1_COMPUTED = {"A": "4.66", "B": "3.21", "C": "4.88", "D": "4.16", "E": "4.44"}
SET1_EXACT = {
    "A": Fraction(457, 98),
    "B": Fraction(45, 14),
    "C": Fraction(39, 8),
    "D": Fraction(233, 56),
    "E": Fraction(311, 70),
}
SET1_ORDER = ("C", "A", "E", "D", "B")

#: Stated per-criterion cells for set 1 in canonical criterion order, as the
#: report renders them; None marks the null comparability row.
SET1_CELLS = {
    "A": ["5", "5", "4.14", "5", "3", "5", None, "5", "5", "5", "5", "4"],
    "B": ["4.71", "5", "3.29", "4", "3", "1", None, "5", "2", "1", "2", "1"],
    "C": ["5", "5", "4.13", "5", "5", "5", None, "5", "5", "5", "5", "5"],
    "D": ["5", "5", "3.63", "5", "5", "3", None, "4", "5", "5", "3", "1"],
    "E": ["5", "5", "4.1", "3", "4", "5", None, "5", "5", "5", "4", "3"],
}

SET2_STATED = {"J1": "4.48", "J2": "4.00", "J3": "4.45", "J4": "4.44", "J5": "3.85"}
SET2_EXACT = {
    "J1": Fraction(1681, 375),
    "J2": Fraction(3001, 750),
    "J3": Fraction(556, 125),
    "J4": Fraction(1109, 250),
    "J5": Fraction(2887, 750),
}
SET2_ORDER = ("J1", "J3", "J4", "J2", "J5")


def design_bytes(design_id: str) -> bytes:
    return (DESIGN_DIR / f"{design_id}.json").read_bytes()


def load_design(design_id: str):
    return parse_design(design_bytes(design_id).decode("utf-8"))


def sheet_bytes(design_id: str, assessor: str) -> bytes:
    return (SHEET_DIR / f"{design_id}__{assessor}.json").read_bytes()


def load_sheet(design_id: str, assessor: str):
    return parse_sheet(sheet_bytes(design_id, assessor).decode("utf-8"))


def all_sheet_paths() -> list[pathlib.Path]:
    return sorted(SHEET_DIR.glob("*.json"))


def all_design_paths() -> list[pathlib.Path]:
    return sorted(DESIGN_DIR.glob("*.json"))


def seed_workspace(root) -> Workspace:
    """Copy every fixture design and sheet into a workspace layout at root."""
    ws = Workspace(root).ensure()
    for src in all_design_paths():
        shutil.copy(src, ws.designs_dir / src.name)
    for src in all_sheet_paths():
        shutil.copy(src, ws.sheets_dir / src.name)
    return ws
