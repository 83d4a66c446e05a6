from __future__ import annotations

import json

import pytest
from fastapi.testclient import TestClient

from ivmf.dataio import (
    bundled_weights_path,
    canonical_dumps,
    score_table_document,
)
from ivmf.scoring import ivmf_scores
from ivmf.service import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def default_weights_doc() -> dict:
    return json.loads(bundled_weights_path("default").read_text("utf-8"))


class TestHealth:
    def test_ok(self, client):
        response = client.get("/api/health")
        assert response.status_code == 200
        assert response.text == "ok"


class TestDataset:
    def test_seventeen_protocols(self, client):
        doc = client.get("/api/dataset").json()
        assert len(doc["protocols"]) == 17

    def test_byte_identical_responses(self, client):
        first = client.get("/api/dataset")
        second = client.get("/api/dataset")
        assert first.content == second.content

    def test_content_type(self, client):
        response = client.get("/api/dataset")
        assert response.headers["content-type"] == "application/json; charset=utf-8"

    def test_includes_justifications(self, client):
        doc = client.get("/api/dataset").json()
        chvote = next(p for p in doc["protocols"] if p["name"] == "CHVote")
        assert "decryption key" in chvote["properties"]["SEC"]["justification"]


class TestScore:
    def test_default_scheme(self, client):
        response = client.post("/api/score", json={"weights": default_weights_doc()})
        assert response.status_code == 200
        rows = response.json()["rows"]
        assert rows[0]["name"] == "CHVote"
        assert rows[0]["rank"] == 1
        assert rows[0]["ivmf_norm"] == 1.0

    def test_pu_zero_scheme_promotes_trust_leaders(self, client):
        # Dropping the usage weight turns the ranking into a purely
        # theoretical comparison: the trust-model leaders (Stellot and
        # Snapshot X share the top raw TM of 5.5) and the low-complexity
        # designs take over from the deployed-systems top of the default
        # ranking.
        doc = default_weights_doc()
        doc["name"] = "pu0"
        doc["ivmf"]["pu"] = 0
        rows = client.post("/api/score", json={"weights": doc}).json()["rows"]
        assert [r["name"] for r in rows[:3]] == ["Stellot", "Cicada", "Snapshot X"]
        assert rows[0]["name"] != "CHVote"
        by_name = {r["name"]: r for r in rows}
        assert by_name["Stellot"]["tm_raw"] == by_name["Snapshot X"]["tm_raw"] == 5.5
        assert by_name["Stellot"]["tm_rank"] == by_name["Snapshot X"]["tm_rank"] == 1

    def test_missing_tm_weight_is_400(self, client):
        doc = default_weights_doc()
        del doc["ivmf"]["tm"]
        response = client.post("/api/score", json={"weights": doc})
        assert response.status_code == 400
        errors = response.json()["errors"]
        assert any("tm" in e["field"] or "tm" in e["message"] for e in errors)

    def test_non_numeric_weight_is_400(self, client):
        doc = default_weights_doc()
        doc["tm"]["cres"] = "high"
        response = client.post("/api/score", json={"weights": doc})
        assert response.status_code == 400

    def test_missing_weights_is_400(self, client):
        assert client.post("/api/score", json={}).status_code == 400

    def test_unknown_dataset_selector_is_400(self, client):
        response = client.post(
            "/api/score",
            json={"weights": default_weights_doc(), "dataset": "other"},
        )
        assert response.status_code == 400

    def test_bundled_selector_accepted(self, client):
        response = client.post(
            "/api/score",
            json={"weights": default_weights_doc(), "dataset": "ivmf-2024"},
        )
        assert response.status_code == 200

    def test_identical_bodies_identical_responses(self, client):
        body = {"weights": default_weights_doc()}
        first = client.post("/api/score", json=body)
        second = client.post("/api/score", json=body)
        assert first.content == second.content

    def test_matches_cli_json_report(self, client, dataset, default_scheme):
        # One scoring engine, two frontends: the service body equals the
        # library's own JSON document byte for byte.
        table = ivmf_scores(dataset, default_scheme)
        expected = canonical_dumps(score_table_document(table)).encode("utf-8")
        response = client.post("/api/score", json={"weights": default_weights_doc()})
        assert response.content == expected


class TestSensitivity:
    def test_baseline_vs_itself(self, client):
        body = {
            "baseline": default_weights_doc(),
            "variants": [default_weights_doc()],
            "level": "IVMF",
        }
        rows = client.post("/api/sensitivity", json=body).json()["rows"]
        assert rows[0]["r"] == 1.0
        assert rows[0]["n"] == 17
        assert "identical ranking" in rows[0]["flags"]

    def test_empty_variants_is_400(self, client):
        body = {"baseline": default_weights_doc(), "variants": []}
        assert client.post("/api/sensitivity", json=body).status_code == 400

    def test_invalid_variant_reports_indexed_field(self, client):
        bad = default_weights_doc()
        del bad["tm"]["sec"]
        body = {"baseline": default_weights_doc(), "variants": [bad]}
        response = client.post("/api/sensitivity", json=body)
        assert response.status_code == 400
        assert any(e["field"].startswith("variants[0]") for e in response.json()["errors"])

    def test_bad_level_is_400(self, client):
        body = {
            "baseline": default_weights_doc(),
            "variants": [default_weights_doc()],
            "level": "bogus",
        }
        assert client.post("/api/sensitivity", json=body).status_code == 400


class TestMalformedBodies:
    def test_non_json_body_is_400(self, client):
        response = client.post(
            "/api/score", content=b"not json",
            headers={"content-type": "application/json"},
        )
        assert response.status_code == 400


class TestCors:
    def test_configured_origin_is_allowed(self):
        app = create_app(cors_origins=["http://localhost:5173"])
        with TestClient(app) as cors_client:
            response = cors_client.get(
                "/api/dataset", headers={"origin": "http://localhost:5173"}
            )
            assert response.headers["access-control-allow-origin"] == (
                "http://localhost:5173"
            )

    def test_no_cors_by_default(self, client):
        response = client.get(
            "/api/dataset", headers={"origin": "http://localhost:5173"}
        )
        assert "access-control-allow-origin" not in response.headers
