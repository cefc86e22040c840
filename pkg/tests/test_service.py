"""HTTP endpoints: stored bytes, optimistic concurrency, parity with the CLI."""
import base64
import hashlib
import io
import json

import pytest
from click.testing import CliRunner
from fastapi.testclient import TestClient
from PIL import Image

import support
from glyphscore.cli import main
from glyphscore.derive import derive
from glyphscore.invariance import ViewingGeometry, colorimetry_sheet, geometry_sheet, open_image
from glyphscore.model import CRITERION_ORDER, CriterionId
from glyphscore.rationals import frac
from glyphscore.service import create_app
from glyphscore.sheetio import canonical_dumps


@pytest.fixture
def client(seeded_workspace):
    return TestClient(create_app(seeded_workspace))


@pytest.fixture(scope="module")
def glyph_bytes():
    img = Image.new("RGBA", (80, 80), (30, 90, 200, 255))
    buf = io.BytesIO()
    img.save(buf, format="PNG")
    return buf.getvalue()


def second_sheet_doc(design_id: str, source_assessor: str, assessor: str) -> bytes:
    doc = json.loads(support.sheet_bytes(design_id, source_assessor))
    doc["assessor"] = assessor
    return json.dumps(doc).encode("utf-8")


class TestDesigns:
    def test_listing(self, client):
        response = client.get("/designs")
        assert response.status_code == 200
        assert response.headers["content-type"] == "application/json"
        assert response.json() == {
            "designs": ["A", "B", "C", "D", "E", "J1", "J2", "J3", "J4", "J5"]
        }
        assert response.content.endswith(b"\n")

    def test_get_returns_stored_bytes_with_revision(self, client):
        response = client.get("/designs/J3")
        assert response.status_code == 200
        assert response.content == support.design_bytes("J3")
        assert response.headers["x-revision"] == hashlib.sha256(response.content).hexdigest()

    def test_get_missing(self, client):
        response = client.get("/designs/ghost")
        assert response.status_code == 404
        assert "ghost" in response.json()["error"]

    def test_put_requires_assessor_header(self, client):
        response = client.put("/designs/A", content=support.design_bytes("A"))
        assert response.status_code == 400
        assert "X-Assessor" in response.json()["error"]

    def test_put_roundtrip(self, client):
        response = client.put(
            "/designs/A", content=support.design_bytes("A"), headers={"X-Assessor": "a1"}
        )
        assert response.status_code == 200
        assert response.content == support.design_bytes("A")
        assert response.headers["x-revision"] == hashlib.sha256(response.content).hexdigest()

    def test_put_path_id_mismatch(self, client):
        response = client.put(
            "/designs/B", content=support.design_bytes("A"), headers={"X-Assessor": "a1"}
        )
        assert response.status_code == 400
        assert "differs" in response.json()["error"]

    def test_put_with_current_revision(self, client):
        current = client.get("/designs/A").headers["x-revision"]
        response = client.put(
            "/designs/A",
            content=support.design_bytes("A"),
            headers={"X-Assessor": "a1", "X-Revision": current},
        )
        assert response.status_code == 200

    def test_put_stale_revision_conflicts(self, client):
        response = client.put(
            "/designs/A",
            content=support.design_bytes("A"),
            headers={"X-Assessor": "a1", "X-Revision": "0" * 64},
        )
        assert response.status_code == 409
        assert "changed since" in response.json()["error"]


class TestSheets:
    def test_listing(self, client):
        response = client.get("/sheets/A")
        assert response.json() == {"design": "A", "assessors": ["a1"]}

    def test_listing_without_sheets_is_empty(self, client):
        response = client.get("/sheets/ghost")
        assert response.status_code == 200
        assert response.json() == {"design": "ghost", "assessors": []}

    def test_get_returns_stored_bytes_with_revision(self, client):
        response = client.get("/sheets/J2/panel")
        assert response.status_code == 200
        assert response.content == support.sheet_bytes("J2", "panel")
        assert response.headers["x-revision"] == hashlib.sha256(response.content).hexdigest()

    def test_get_missing_assessor(self, client):
        response = client.get("/sheets/A/nobody")
        assert response.status_code == 404

    def test_put_roundtrip(self, client):
        response = client.put(
            "/sheets/A/a2",
            content=second_sheet_doc("A", "a1", "a2"),
            headers={"X-Assessor": "a2"},
        )
        assert response.status_code == 200
        assert client.get("/sheets/A").json()["assessors"] == ["a1", "a2"]

    def test_put_requires_assessor_header(self, client):
        response = client.put("/sheets/A/a1", content=support.sheet_bytes("A", "a1"))
        assert response.status_code == 400

    def test_put_path_mismatch(self, client):
        response = client.put(
            "/sheets/A/a9", content=support.sheet_bytes("A", "a1"), headers={"X-Assessor": "a9"}
        )
        assert response.status_code == 400
        assert "differs" in response.json()["error"]

    def test_put_for_unknown_design(self, client):
        doc = json.loads(support.sheet_bytes("A", "a1"))
        doc["design"] = "ghost"
        response = client.put(
            "/sheets/ghost/a1", content=json.dumps(doc), headers={"X-Assessor": "a1"}
        )
        assert response.status_code == 404

    def test_put_stale_revision_conflicts(self, client):
        response = client.put(
            "/sheets/A/a1",
            content=support.sheet_bytes("A", "a1"),
            headers={"X-Assessor": "a1", "X-Revision": "0" * 64},
        )
        assert response.status_code == 409


class TestAggregate:
    def test_matches_cli_structured_report_bytes(self, client, seeded_workspace):
        cli = CliRunner().invoke(
            main,
            ["aggregate", "A", "--format", "structured", "--workspace", str(seeded_workspace.root)],
        )
        assert cli.exit_code == 0
        response = client.post("/aggregate/A")
        assert response.status_code == 200
        assert response.content == cli.stdout_bytes

    def test_empty_body_aggregates_all_sheets(self, client):
        doc = client.post("/aggregate/J1").json()
        assert doc["weighted_average_display"] == "4.48"
        assert doc["total_weight"] == "7.5"
        assert doc["assessors"] == ["panel"]
        assert doc["merge"] == "single"

    def test_assessor_filter(self, client):
        doc = client.post("/aggregate/B", json={"assessor": "a1"}).json()
        assert doc["weighted_average_display"] == "3.21"

    def test_mean_merge(self, client):
        client.put(
            "/sheets/A/a2",
            content=second_sheet_doc("A", "a1", "a2"),
            headers={"X-Assessor": "a2"},
        )
        doc = client.post("/aggregate/A", json={"merge": "mean"}).json()
        assert doc["merge"] == "mean"
        assert doc["assessors"] == ["a1", "a2"]
        assert doc["weighted_average_display"] == "4.66"

    def test_consensus_merge(self, client):
        client.put(
            "/sheets/A/a2",
            content=second_sheet_doc("A", "a1", "a2"),
            headers={"X-Assessor": "a2"},
        )
        agreed = {
            c.value: "4" for c in CRITERION_ORDER if c is not CriterionId.COMPOSITION_COMPARABILITY
        }
        doc = client.post(
            "/aggregate/A",
            json={"merge": "consensus", "scores": agreed, "note": "joint session"},
        ).json()
        assert doc["merge"] == "consensus"
        assert doc["weighted_average_display"] == "4.00"

    def test_consensus_without_scores(self, client):
        response = client.post("/aggregate/A", json={"merge": "consensus"})
        assert response.status_code == 400
        assert "scores" in response.json()["error"]

    def test_scores_only_apply_to_consensus(self, client):
        response = client.post("/aggregate/A", json={"merge": "mean", "scores": {}})
        assert response.status_code == 400

    def test_unknown_field_rejected(self, client):
        response = client.post("/aggregate/A", json={"weights": {}})
        assert response.status_code == 400
        assert "weights" in response.json()["error"]

    def test_unknown_merge_policy(self, client):
        response = client.post("/aggregate/A", json={"merge": "median"})
        assert response.status_code == 400

    def test_missing_design(self, client):
        response = client.post("/aggregate/ghost")
        assert response.status_code == 404

    def test_non_object_body(self, client):
        response = client.post("/aggregate/A", content=b"[]")
        assert response.status_code == 400


class TestCompare:
    def test_matches_cli_structured_bytes(self, client, seeded_workspace):
        cli = CliRunner().invoke(
            main,
            ["compare", *support.SET1_STATED, "--format", "structured",
             "--workspace", str(seeded_workspace.root)],
        )
        assert cli.exit_code == 0
        response = client.get("/compare", params={"ids": "A,B,C,D,E"})
        assert response.status_code == 200
        assert response.content == cli.stdout_bytes

    def test_comma_and_repeated_forms_agree(self, client):
        combined = client.get("/compare", params={"ids": "J1,J2,J3"})
        repeated = client.get("/compare", params=[("ids", "J1"), ("ids", "J2"), ("ids", "J3")])
        assert combined.content == repeated.content

    def test_golden_ranking(self, client):
        doc = client.get("/compare", params={"ids": "J1,J2,J3,J4,J5"}).json()
        assert [entry["design"] for entry in doc["ranking"]] == list(support.SET2_ORDER)

    def test_missing_design(self, client):
        response = client.get("/compare", params={"ids": "A,ghost"})
        assert response.status_code == 404

    def test_needs_at_least_two(self, client):
        response = client.get("/compare", params={"ids": "A"})
        assert response.status_code == 400


class TestDerive:
    def test_level_payload(self, client):
        response = client.post("/derive/attention_balance", json={"weak_count": 1})
        assert response.status_code == 200
        assert response.json() == {"criterion": "attention_balance", "level": 4}

    def test_bytes_match_library_output(self, client):
        inputs = {"pct_1h": 95, "pct_24h": 80}
        response = client.post("/derive/memorability", json=inputs)
        expected = canonical_dumps(derive(CriterionId.MEMORABILITY, inputs))
        assert response.content == expected.encode("utf-8")

    def test_bad_inputs(self, client):
        response = client.post("/derive/attention_balance", json={"weak_count": -2})
        assert response.status_code == 422
        assert "weak_count" in response.json()["error"]

    def test_unknown_criterion(self, client):
        response = client.post("/derive/zing", json={})
        assert response.status_code == 404

    def test_invalid_json_body(self, client):
        response = client.post("/derive/attention_balance", content=b"{nope")
        assert response.status_code == 400


class TestInvariance:
    def test_geometry_defaults_match_library(self, client, glyph_bytes):
        response = client.post("/invariance/geometry", content=glyph_bytes)
        assert response.status_code == 200
        doc = response.json()
        sheet = geometry_sheet(open_image(glyph_bytes))
        assert doc["manifest"] == sheet.manifest
        assert base64.b64decode(doc["png_base64"]) == sheet.png_bytes()

    def test_geometry_query_parameters(self, client, glyph_bytes):
        response = client.post(
            "/invariance/geometry",
            params={"vf": "10", "vd": "40", "ppcm": "20", "shape": "rectangular"},
            content=glyph_bytes,
        )
        sheet = geometry_sheet(
            open_image(glyph_bytes), ViewingGeometry(frac("10"), frac("40"), "rectangular"),
            frac("20"),
        )
        assert response.json()["manifest"] == sheet.manifest

    def test_geometry_bad_shape(self, client, glyph_bytes):
        response = client.post(
            "/invariance/geometry", params={"shape": "triangle"}, content=glyph_bytes
        )
        assert response.status_code == 400

    def test_geometry_bad_number(self, client, glyph_bytes):
        response = client.post("/invariance/geometry", params={"vf": "wide"}, content=glyph_bytes)
        assert response.status_code == 400

    def test_colorimetry_matches_library(self, client, glyph_bytes):
        response = client.post("/invariance/colorimetry", content=glyph_bytes)
        assert response.status_code == 200
        doc = response.json()
        sheet = colorimetry_sheet(open_image(glyph_bytes))
        assert doc["manifest"] == sheet.manifest
        assert len(doc["manifest"]["cells"]) == 20
        assert base64.b64decode(doc["png_base64"]) == sheet.png_bytes()

    def test_bad_image_body(self, client):
        response = client.post("/invariance/colorimetry", content=b"not an image")
        assert response.status_code == 400


class TestKop:
    def test_named_row(self, client):
        response = client.get("/kop/size")
        assert response.status_code == 200
        assert response.json() == {
            "channel_kind": "size",
            "table_version": "1",
            "ratings": {
                "associative": "no",
                "selective": "limited",
                "ordered": "yes",
                "quantitative": "yes",
            },
        }

    def test_custom_has_no_row(self, client):
        assert client.get("/kop/custom").status_code == 404

    def test_unknown_kind(self, client):
        assert client.get("/kop/sparkle").status_code == 404
