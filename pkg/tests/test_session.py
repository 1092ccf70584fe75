from __future__ import annotations

import json
import random

import pytest
from fastapi.testclient import TestClient

from gatherline.api import create_app
from gatherline.checks import ConfigDistribution
from gatherline.execution import apply_round
from gatherline.robogram import GATHERING
from gatherline.session import SESSION_VERSION, Session
from gatherline.traces import parse_config_text, spectrum_pairs


@pytest.fixture
def session():
    return Session()


def init(session, config="0:2,3:2,1:1"):
    return session.handle({"type": "init", "config": config})


class TestSessionEngine:
    def test_hello_carries_version(self, session):
        assert session.hello()["version"] == SESSION_VERSION

    def test_init_state(self, session):
        state = init(session)
        assert state["type"] == "state"
        assert state["measure"] == [2, 4]
        assert state["phase"] == "three-towers"
        assert state["forbidden"] is False
        assert state["positions"] == ["0", "0", "1", "3", "3"]
        assert state["config"] == [["0", 2], ["1", 1], ["3", 2]]

    def test_step_middle_robot_stays(self, session):
        init(session)
        state = session.handle(
            {"type": "step", "activated": [2], "frames": [{"id": 2, "zoom": "1", "reflect": False}]}
        )
        assert state["type"] == "state"
        assert state["moving"] == []
        assert state["config"] == [["0", 2], ["1", 1], ["3", 2]]
        assert state["round"] == 1

    def test_zero_zoom_rejected(self, session):
        init(session)
        response = session.handle(
            {"type": "step", "activated": [0], "frames": [{"id": 0, "zoom": "0/1"}]}
        )
        assert response == {
            "type": "error",
            "code": "bad-frame",
            "detail": "zoom must be strictly positive, got 0",
        }

    def test_frame_for_non_activated_rejected(self, session):
        init(session)
        response = session.handle(
            {"type": "step", "activated": [0], "frames": [{"id": 1, "zoom": "2"}]}
        )
        assert response["code"] == "bad-frame"

    def test_unknown_robot(self, session):
        init(session)
        response = session.handle({"type": "step", "activated": [99]})
        assert response["code"] == "bad-robot"

    def test_step_before_init(self, session):
        response = session.handle({"type": "step", "activated": []})
        assert response["code"] == "not-initialized"

    def test_bad_config(self, session):
        assert init(session, "x")["code"] == "bad-config"
        assert init(session, "")["code"] == "bad-config"

    def test_unknown_type(self, session):
        assert session.handle({"type": "warp"})["code"] == "bad-message"
        assert session.handle("not an object")["code"] == "bad-message"

    def test_reset_returns_to_initial(self, session):
        first = init(session)
        session.handle({"type": "step", "activated": [0, 1, 2, 3, 4]})
        state = session.handle({"type": "reset"})
        assert state["config"] == first["config"]
        assert state["round"] == 0

    def test_query_is_read_only(self, session):
        init(session)
        before = session.handle({"type": "query"})
        after = session.handle({"type": "query"})
        assert before == after

    def test_errors_do_not_kill_the_session(self, session):
        init(session)
        session.handle({"type": "step", "activated": [99]})
        state = session.handle({"type": "query"})
        assert state["type"] == "state"

    def test_forbidden_configs_are_explorable(self, session):
        state = init(session, "0:2,1:2")
        assert state["forbidden"] is True
        assert state["phase"] == "stay"
        stepped = session.handle({"type": "step", "activated": [0, 1, 2, 3]})
        assert stepped["config"] == state["config"]

    def test_session_matches_library_round(self, session):
        """Server/round equivalence on a random schedule."""
        rng = random.Random(4242)
        dist = ConfigDistribution(n_range=(4, 9))
        config = dist.sample_config(rng)
        init(session, ",".join(f"{loc}:{mult}" for loc, mult in config.spectrum().pairs()))
        config = parse_config_text(
            ",".join(f"{loc}:{mult}" for loc, mult in config.spectrum().pairs())
        )
        for _ in range(12):
            action = dist.sample_action(rng, config.n)
            payload = {
                "type": "step",
                "activated": sorted(action.frames),
                "frames": [
                    {"id": rid, "zoom": str(fc.zoom), "reflect": fc.reflect}
                    for rid, fc in sorted(action.frames.items())
                ],
            }
            state = session.handle(payload)
            config = apply_round(GATHERING, action, config)
            assert state["config"] == spectrum_pairs(config.spectrum())
            assert state["positions"] == [str(p) for p in config.positions]


class TestHttpBinding:
    @pytest.fixture
    def client(self):
        return TestClient(create_app())

    def open_session(self, client):
        hello = client.post("/sessions").json()
        assert hello["version"] == SESSION_VERSION
        return hello["session"]

    def test_full_exchange(self, client):
        sid = self.open_session(client)
        state = client.post(f"/sessions/{sid}", json={"type": "init", "config": "0:2,3:2,1:1"}).json()
        assert state["measure"] == [2, 4]
        state = client.post(f"/sessions/{sid}", json={"type": "step", "activated": [0]}).json()
        assert state["round"] == 1
        client.delete(f"/sessions/{sid}")
        assert client.post(f"/sessions/{sid}", json={"type": "query"}).status_code == 404

    def test_unknown_session_404(self, client):
        assert client.post("/sessions/zzz", json={"type": "query"}).status_code == 404


class TestWebSocketBinding:
    def test_full_exchange(self):
        client = TestClient(create_app())
        with client.websocket_connect("/session") as socket:
            hello = json.loads(socket.receive_text())
            assert hello["type"] == "hello"
            assert hello["version"] == SESSION_VERSION
            socket.send_text(json.dumps({"type": "init", "config": "0:3,1:1,5/2:1,3:3"}))
            state = json.loads(socket.receive_text())
            assert state["measure"] == [3, 2]
            socket.send_text(json.dumps({"type": "step", "activated": [3, 4]}))
            state = json.loads(socket.receive_text())
            assert state["config"] == [["0", 3], ["3/2", 2], ["3", 3]]
            assert state["moving"] == [3, 4]
            socket.send_text("not json")
            error = json.loads(socket.receive_text())
            assert error["code"] == "bad-message"
            socket.send_text(json.dumps({"type": "query"}))
            assert json.loads(socket.receive_text())["type"] == "state"
