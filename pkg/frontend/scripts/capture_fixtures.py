#!/usr/bin/env python3
"""Capture service responses as workbench test fixtures.

Starts a real `glyphscore serve` over a throwaway workspace seeded with the
backend's fixture designs and sheets, replays the exact request sequence the
workbench tests make, and stores every response byte-for-byte together with
an index the test harness replays. Also writes the lab's own degradation
sheet manifests (via the CLI) so viewer tests can assert byte equality.

Run from the frontend directory:

    python3 scripts/capture_fixtures.py
"""
from __future__ import annotations

import argparse
import copy
import io
import json
import shutil
import subprocess
import sys
import tempfile
import time
import urllib.error
import urllib.parse
import urllib.request
from pathlib import Path

FRONTEND = Path(__file__).resolve().parent.parent
BACKEND_FIXTURES = FRONTEND.parent / "tests" / "fixtures"

WB_TIMESTAMP = "2026-08-14T10:00:00Z"

# Comparability entry used while the criterion is still scored (weight 7.5).
COMPARABILITY_SCORED = {
    "criterion": "composition_comparability",
    "mode": "D",
    "weight": "0.5",
    "direct_score": "4",
    "inputs": {"major": 0, "medium": 0, "minor": 2, "pair_count": 21},
}

DERIVE_INPUTS = {
    "typedness": {"data_type": "ratio", "channels": [{"kind": "size"}]},
    "discernability": {"pairs_easy": 20, "pairs_differentiable": 0, "pairs_not": 0},
    "intuitiveness": {"domain_convention": "cnDC", "metaphor": "apAM"},
    "invariance_geometry": {
        "invariant_at": {"1/5": True, "2/5": True, "3/5": True, "4/5": True}
    },
    "invariance_colorimetry": {
        "invariant_at": {"25.5": True, "51": True, "76.5": False, "102": False}
    },
    "composition_separability": {"channel_scores": ["1", "0.1", "0.1"], "method": "estimate"},
    "composition_comparability": {"major": 0, "medium": 0, "minor": 2, "pair_count": 21},
    "attention_importance": {"boxes": {"n11": 2, "n22": 2}},
    "attention_balance": {"weak_count": 0},
    "searchability": {"high": 0, "medium": 0, "low": 7},
    "learnability": {
        "learning_time_hours": "0.4",
        "learning_mode": "self_learning",
        "repeated_effort": "effortless",
    },
    "memorability": {"pct_1h": 95, "pct_24h": 80},
}


def make_glyph(path: Path) -> None:
    """Deterministic 100x100 test glyph: a gradient disc on white."""
    from PIL import Image

    img = Image.new("RGBA", (100, 100), (255, 255, 255, 255))
    for x in range(100):
        for y in range(100):
            if (x - 50) ** 2 + (y - 50) ** 2 < 1600:
                img.putpixel((x, y), (30 + x, 200 - y, 120, 255))
    buf = io.BytesIO()
    img.save(buf, format="PNG")
    path.write_bytes(buf.getvalue())


class Capture:
    def __init__(self, base: str, out: Path) -> None:
        self.base = base
        self.out = out
        self.index: list[dict] = []

    def request(self, method: str, path: str, body: bytes | None = None,
                headers: dict | None = None):
        req = urllib.request.Request(self.base + path, data=body, method=method)
        for key, value in (headers or {}).items():
            req.add_header(key, value)
        try:
            with urllib.request.urlopen(req) as resp:
                return resp.status, resp.headers, resp.read()
        except urllib.error.HTTPError as err:
            return err.code, err.headers, err.read()

    def record(self, name: str, method: str, path: str, *,
               request_doc=None, request_file: str | None = None,
               request_revision: str | None = None,
               assessor: str | None = None, binary_request: str | None = None):
        headers = {}
        body = None
        if request_doc is not None:
            body = json.dumps(request_doc).encode("utf-8")
            headers["Content-Type"] = "application/json"
            request_file = f"{name}.request.json"
            (self.out / request_file).write_bytes(body)
        elif binary_request is not None:
            body = (self.out / binary_request).read_bytes()
            headers["Content-Type"] = "image/png"
            request_file = binary_request
        if request_revision:
            headers["X-Revision"] = request_revision
        if assessor:
            headers["X-Assessor"] = assessor
        status, resp_headers, resp_body = self.request(method, path, body, headers)
        body_file = f"{name}.json"
        (self.out / body_file).write_bytes(resp_body)
        entry = {
            "name": name,
            "method": method,
            "path": path,
            "status": status,
            "body_file": body_file,
            "revision": resp_headers.get("X-Revision"),
            "request_file": request_file,
            "request_revision": request_revision,
            "assessor": assessor,
            "binary": binary_request is not None,
        }
        self.index.append(entry)
        print(f"  {status} {method} {path} -> {body_file}")
        return status, resp_headers, resp_body

    def write_index(self) -> None:
        text = json.dumps(self.index, indent=2) + "\n"
        (self.out / "index.json").write_text(text, encoding="utf-8")


def wait_ready(base: str, deadline_s: float = 30.0) -> None:
    start = time.monotonic()
    while time.monotonic() - start < deadline_s:
        try:
            with urllib.request.urlopen(base + "/designs") as resp:
                if resp.status == 200:
                    return
        except (urllib.error.URLError, ConnectionError):
            time.sleep(0.2)
    raise RuntimeError("service did not come up in time")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--port", type=int, default=8214)
    parser.add_argument("--out", default=str(FRONTEND / "tests" / "fixtures"))
    args = parser.parse_args()

    out = Path(args.out)
    if out.exists():
        shutil.rmtree(out)
    out.mkdir(parents=True)

    base = f"http://127.0.0.1:{args.port}"
    sheet_a = json.loads((BACKEND_FIXTURES / "sheets" / "A__a1.json").read_text())
    design_a = json.loads((BACKEND_FIXTURES / "designs" / "A.json").read_text())

    with tempfile.TemporaryDirectory() as tmp:
        ws = Path(tmp) / "ws"
        (ws / "designs").mkdir(parents=True)
        (ws / "sheets").mkdir(parents=True)
        for src in sorted((BACKEND_FIXTURES / "designs").glob("*.json")):
            shutil.copy(src, ws / "designs" / src.name)
        for src in sorted((BACKEND_FIXTURES / "sheets").glob("*.json")):
            shutil.copy(src, ws / "sheets" / src.name)

        server = subprocess.Popen(
            ["glyphscore", "serve", "--port", str(args.port), "--workspace", str(ws)],
            stdout=subprocess.DEVNULL, stderr=subprocess.DEVNULL,
        )
        try:
            wait_ready(base)
            cap = Capture(base, out)

            # plain reads
            cap.record("designs_list", "GET", "/designs")
            cap.record("design_A", "GET", "/designs/A")
            cap.record("design_missing", "GET", "/designs/ghost")
            cap.record("sheets_A", "GET", "/sheets/A")
            cap.record("sheet_A_a1", "GET", "/sheets/A/a1")

            # aggregates and comparisons over the stored golden sheets
            cap.record("aggregate_A", "POST", "/aggregate/A", request_doc={})
            cap.record("aggregate_J1", "POST", "/aggregate/J1", request_doc={})
            ids_j = urllib.parse.urlencode({"ids": "J1,J2,J3,J4,J5"})
            cap.record("compare_J", "GET", f"/compare?{ids_j}")
            ids_ab = urllib.parse.urlencode({"ids": "A,B"})
            cap.record("compare_AB", "GET", f"/compare?{ids_ab}")
            ids_single = urllib.parse.urlencode({"ids": "A"})
            cap.record("compare_single_error", "GET", f"/compare?{ids_single}")

            # a twin of A so a comparison can show a shared rank
            design_x = copy.deepcopy(design_a)
            design_x["id"] = "X"
            cap.record("design_X_put", "PUT", "/designs/X",
                       request_doc=design_x, assessor="wb")
            sheet_x = copy.deepcopy(sheet_a)
            sheet_x["design"] = "X"
            cap.record("sheet_X_put", "PUT", "/sheets/X/a1",
                       request_doc=sheet_x, assessor="wb")
            ids_ax = urllib.parse.urlencode({"ids": "A,X"})
            cap.record("compare_tie", "GET", f"/compare?{ids_ax}")

            # workbench save flow: comparability scored, then not applicable
            wb_full = copy.deepcopy(sheet_a)
            wb_full["assessor"] = "wb"
            wb_full["timestamp"] = WB_TIMESTAMP
            wb_full["assessments"] = [
                COMPARABILITY_SCORED if a["criterion"] == "composition_comparability" else a
                for a in wb_full["assessments"]
            ]
            _, headers_full, _ = cap.record(
                "sheet_A_wb_full_put", "PUT", "/sheets/A/wb",
                request_doc=wb_full, assessor="wb",
            )
            rev_full = headers_full.get("X-Revision")
            cap.record("aggregate_A_wb_full", "POST", "/aggregate/A",
                       request_doc={"assessor": "wb"})

            wb_na = copy.deepcopy(sheet_a)
            wb_na["assessor"] = "wb"
            wb_na["timestamp"] = WB_TIMESTAMP
            cap.record("sheet_A_wb_na_put", "PUT", "/sheets/A/wb",
                       request_doc=wb_na, assessor="wb", request_revision=rev_full)
            cap.record("aggregate_A_wb_na", "POST", "/aggregate/A",
                       request_doc={"assessor": "wb"})

            # the same full-sheet PUT under the now-stale revision: a conflict
            cap.record("sheet_A_wb_conflict", "PUT", "/sheets/A/wb",
                       request_doc=wb_full, assessor="wb", request_revision=rev_full)
            cap.record("sheet_A_wb", "GET", "/sheets/A/wb")

            # one derivation per criterion, plus edge cases the forms surface
            for criterion, inputs in DERIVE_INPUTS.items():
                cap.record(f"derive_{criterion}", "POST", f"/derive/{criterion}",
                           request_doc=inputs)
            cap.record("derive_composition_comparability_na", "POST",
                       "/derive/composition_comparability",
                       request_doc={"major": 0, "medium": 0, "minor": 0, "pair_count": 0})
            cap.record("derive_searchability_error", "POST", "/derive/searchability",
                       request_doc={"high": 2})

            # knowledge-base rows the typedness form prefills with
            cap.record("kop_size", "GET", "/kop/size")
            cap.record("kop_shape", "GET", "/kop/shape")

            # degradation sheets for a fixed test glyph
            make_glyph(out / "glyph.png")
            cap.record("invariance_geometry", "POST", "/invariance/geometry",
                       binary_request="glyph.png")
            params = urllib.parse.urlencode(
                {"vf": "10", "vd": "40", "ppcm": "20", "shape": "rectangular"}
            )
            cap.record("invariance_geometry_rect", "POST", f"/invariance/geometry?{params}",
                       binary_request="glyph.png")
            cap.record("invariance_colorimetry", "POST", "/invariance/colorimetry",
                       binary_request="glyph.png")

            cap.write_index()
        finally:
            server.terminate()
            server.wait(timeout=10)

    # The lab's own manifests for the same glyph, straight from the CLI.
    for kind in ("geometry", "colorimetry"):
        subprocess.run(
            ["glyphscore", f"{kind}-sheet", str(out / "glyph.png"),
             "--out", str(out / f"{kind}_lab.png")],
            check=True, stdout=subprocess.DEVNULL,
        )
    print(f"fixtures written to {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
