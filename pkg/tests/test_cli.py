from __future__ import annotations

import json

import pytest

from gatherline.cli import main

from conftest import FIG_A


def run_cli(*argv: str) -> int:
    return main(list(argv))


class TestRunCommand:
    def test_gathers_exit_zero(self, tmp_path, capsys):
        trace = tmp_path / "run.jsonl"
        code = run_cli(
            "run", "--init", FIG_A, "--demon", "fsync", "--max-rounds", "100",
            "--trace", str(trace),
        )
        assert code == 0
        assert "gathered at 3/2" in capsys.readouterr().out
        assert trace.exists()

    def test_bivalent_exit_three(self, capsys):
        assert run_cli("run", "--init", "0:2,1:2") == 3
        assert "bivalent" in capsys.readouterr().err

    def test_bivalent_allowed_runs_but_never_gathers(self):
        assert run_cli("run", "--init", "0:2,1:2", "--allow-forbidden", "--max-rounds", "5") == 1

    def test_parse_error_exit_two(self, capsys):
        assert run_cli("run", "--init", "banana") == 2

    def test_gathered_start_single_round(self, capsys):
        code = run_cli("run", "--init", "5:4", "--demon", "random-fair", "--k", "2", "--seed", "1")
        assert code == 0
        assert "after 1 rounds" in capsys.readouterr().out

    def test_scripted_run(self, tmp_path, capsys):
        actions = [
            {"activated": [3, 4]},
            {"activated": [0, 5, 6]},
            {"activated": [1, 2, 7]},
        ]
        actions_file = tmp_path / "schedule.json"
        actions_file.write_text(json.dumps(actions))
        code = run_cli(
            "run", "--init", FIG_A, "--demon", "scripted", "--actions", str(actions_file)
        )
        out = capsys.readouterr().out
        assert code == 0
        assert "(3,2) -> (2,6) -> (1,3) -> (0,0) -> (0,0)" in out

    def test_scripted_without_actions(self, capsys):
        assert run_cli("run", "--init", FIG_A, "--demon", "scripted") == 2

    def test_determinism_byte_identical_traces(self, tmp_path):
        paths = [tmp_path / "a.jsonl", tmp_path / "b.jsonl"]
        for path in paths:
            assert run_cli(
                "run", "--init", FIG_A, "--demon", "random-fair", "--k", "2",
                "--seed", "123", "--trace", str(path),
            ) == 0
        assert paths[0].read_bytes() == paths[1].read_bytes()


class TestCheckCommand:
    def test_all_suites_pass(self, capsys, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        assert run_cli("check", "--suite", "all", "--cases", "150", "--seed", "7") == 0
        out = capsys.readouterr().out
        assert "same-destination: pass" in out
        assert "frame-invariance: pass" in out

    def test_unknown_suite_exit_two(self, capsys):
        assert run_cli("check", "--suite", "never-never", "--cases", "10") == 2

    def test_empty_budget_exit_two(self, capsys):
        assert run_cli("check", "--suite", "never-forbidden", "--cases", "0") == 2

    def test_mutant_self_test_writes_counterexample(self, tmp_path, capsys):
        counter = tmp_path / "cx.jsonl"
        code = run_cli(
            "check", "--suite", "all", "--cases", "3000", "--seed", "5",
            "--robogram", "mutant-go-to-max", "--counterexample", str(counter),
        )
        assert code == 1
        assert counter.exists()
        assert run_cli("replay", str(counter)) == 0


class TestEnumerateCommand:
    def test_pass(self, capsys):
        assert run_cli("enumerate", "--n", "3", "--grid", "0..3") == 0
        assert "4096 (config,action) cases, 0 violations" in capsys.readouterr().out

    def test_budget_exceeded_exit_two(self, capsys):
        assert run_cli("enumerate", "--n", "10", "--grid", "0..9") == 2

    def test_tiny(self, capsys):
        assert run_cli("enumerate", "--n", "1", "--grid", "0..1") == 0


class TestReplayCommand:
    def test_replay_run_trace(self, tmp_path, capsys):
        trace = tmp_path / "run.jsonl"
        run_cli("run", "--init", FIG_A, "--demon", "round-robin", "--k", "4",
                "--trace", str(trace))
        assert run_cli("replay", str(trace)) == 0
        assert "ok" in capsys.readouterr().out

    def test_replay_tampered_trace(self, tmp_path, capsys):
        trace = tmp_path / "run.jsonl"
        run_cli("run", "--init", FIG_A, "--trace", str(trace))
        lines = trace.read_text().splitlines()
        record = json.loads(lines[1])
        record["moving"] = []
        lines[1] = json.dumps(record, sort_keys=True, separators=(",", ":"))
        trace.write_text("\n".join(lines) + "\n")
        assert run_cli("replay", str(trace)) == 1

    def test_missing_file_exit_two(self):
        assert run_cli("replay", "/nonexistent/trace.jsonl") == 2


class TestServerMode:
    """The CLI as a remote thin client against the in-process ASGI app."""

    @pytest.fixture
    def server(self, monkeypatch):
        import httpx
        from fastapi.testclient import TestClient

        from gatherline.api import create_app

        client = TestClient(create_app())

        def fake_post(url, **kwargs):
            assert url.startswith("http://testserver")
            return client.post(url.removeprefix("http://testserver"), **kwargs)

        monkeypatch.setattr(httpx, "post", fake_post)
        return "http://testserver"

    def test_run_through_server(self, server, tmp_path, capsys):
        trace = tmp_path / "remote.jsonl"
        code = run_cli(
            "run", "--init", FIG_A, "--server", server, "--trace", str(trace),
            "--max-rounds", "50",
        )
        assert code == 0
        assert "gathered at 3/2" in capsys.readouterr().out
        assert trace.read_text().startswith('{"demon":"fsync"')

    def test_rejected_config_maps_to_exit_three(self, server, capsys):
        assert run_cli("run", "--init", "0:2,1:2", "--server", server) == 3

    def test_check_through_server(self, server, capsys):
        code = run_cli("check", "--suite", "round-decrease", "--cases", "100",
                       "--server", server)
        assert code == 0
