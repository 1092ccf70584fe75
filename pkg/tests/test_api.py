from __future__ import annotations

import pytest
from fastapi.testclient import TestClient

from gatherline.api import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def test_health(client):
    body = client.get("/health").json()
    assert body["status"] == "ok"
    assert body["trace_format"] == "gatherline-trace/1"
    assert body["session_protocol"] == "gatherline-session/1"


class TestRunEndpoint:
    def test_gathering_run(self, client):
        response = client.post(
            "/run",
            json={"init": "0:3,1:1,5/2:1,3:3", "demon": "fsync", "max_rounds": 100},
        )
        assert response.status_code == 200
        body = response.json()
        assert body["status"] == "gathered"
        assert body["gathered_at"] == "3/2"
        assert body["trace"].startswith('{"demon":"fsync"')

    def test_bivalent_rejected(self, client):
        response = client.post("/run", json={"init": "0:2,1:2"})
        assert response.status_code == 409
        assert response.json()["detail"]["code"] == "rejected-config"

    def test_bivalent_explorable(self, client):
        response = client.post(
            "/run", json={"init": "0:2,1:2", "allow_forbidden": True, "max_rounds": 5}
        )
        assert response.status_code == 200
        assert response.json()["status"] == "max-rounds"

    def test_parse_error(self, client):
        response = client.post("/run", json={"init": "zebra"})
        assert response.status_code == 422
        assert response.json()["detail"]["code"] == "usage"

    def test_scripted_run(self, client):
        response = client.post(
            "/run",
            json={
                "init": "0:3,1:1,5/2:1,3:3",
                "demon": "scripted",
                "actions": [
                    {"activated": [3, 4]},
                    {"activated": [0, 5, 6]},
                    {"activated": [1, 2, 7]},
                ],
            },
        )
        assert response.status_code == 200
        body = response.json()
        assert body["status"] == "gathered"
        assert body["measures"] == [[3, 2], [2, 6], [1, 3], [0, 0], [0, 0]]


class TestCheckEndpoint:
    def test_pass(self, client):
        response = client.post("/check", json={"suite": "same-destination", "cases": 100, "seed": 1})
        assert response.status_code == 200
        body = response.json()
        assert body["verdict"] == "pass"
        assert body["reports"][0]["cases_run"] == 100

    def test_unknown_suite(self, client):
        response = client.post("/check", json={"suite": "nope", "cases": 10})
        assert response.status_code == 422

    def test_mutant_fails_with_replayable_counterexample(self, client):
        from gatherline.traces import parse_trace_lines, replay

        response = client.post(
            "/check",
            json={"suite": "never-forbidden", "cases": 3000, "seed": 5, "robogram": "mutant-go-to-min"},
        )
        body = response.json()
        assert body["verdict"] == "fail"
        counterexample = body["reports"][0]["counterexample"]
        assert counterexample is not None
        result = replay(parse_trace_lines(counterexample["trace"].splitlines()))
        assert result.ok


class TestEnumerateEndpoint:
    def test_small_grid(self, client):
        response = client.post("/enumerate", json={"n": 2, "grid": "0..2"})
        assert response.status_code == 200
        body = response.json()
        assert body["verdict"] == "pass"
        assert body["configs"] == 9

    def test_budget_exceeded(self, client):
        response = client.post("/enumerate", json={"n": 10, "grid": "0..9"})
        assert response.status_code == 422
        assert "budget exceeded" in response.json()["detail"]["message"]
