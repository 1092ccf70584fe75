"""Command-line interface.

The CLI is a thin client of the service layer: it builds the same request
models the HTTP endpoints take, runs them in-process by default or against
a remote server with --server, and renders the shared response models.

Exit codes: 0 success/pass, 1 property violation or not gathered,
2 usage error, 3 rejected initial configuration.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from .models import (
    ActionModel,
    CheckRequest,
    CheckResponse,
    EnumerateRequest,
    EnumerateResponse,
    RunRequest,
    RunResponse,
)
from .ops import CHECK_SUITE_CHOICES, RejectedConfigError, UsageError

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_REJECTED = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gatherline",
        description="Simulate, verify and play against the line-gathering robots.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="execute one gathering run and write a trace")
    run.add_argument("--init", required=True, help='initial configuration, e.g. "0:3,1:1,5/2:1,3:3"')
    run.add_argument("--demon", default="fsync",
                     choices=["fsync", "round-robin", "random-fair", "scripted"])
    run.add_argument("--k", type=int, default=None, help="fairness bound / block count")
    run.add_argument("--seed", type=int, default=None)
    run.add_argument("--max-rounds", type=int, default=None)
    run.add_argument("--trace", default=None, help="trace file path (default: no file)")
    run.add_argument("--allow-forbidden", action="store_true",
                     help="explore a bivalent start instead of rejecting it")
    run.add_argument("--randomize-frames", action="store_true",
                     help="random zooms/reflections for the fsync demon")
    run.add_argument("--actions", default=None,
                     help="JSON file with the scripted demon's action list")
    run.add_argument("--server", default=None, help="run against a gatherline server URL")

    check = sub.add_parser("check", help="run the randomized theorem checkers")
    check.add_argument("--suite", default="all", help=f"one of {', '.join(CHECK_SUITE_CHOICES)}")
    check.add_argument("--cases", type=int, default=1000)
    check.add_argument("--seed", type=int, default=0)
    check.add_argument("--workers", type=int, default=1)
    check.add_argument("--robogram", default="gathering",
                       help="robogram under test (a mutant-* name is self-test mode)")
    check.add_argument("--counterexample", default="counterexample.trace.jsonl",
                       help="where to write a violating round, if found")
    check.add_argument("--server", default=None)

    enum = sub.add_parser("enumerate", help="exhaustive small-instance oracle")
    enum.add_argument("--n", type=int, required=True)
    enum.add_argument("--grid", required=True, help='"0..3" or "0,1/2,1"')
    enum.add_argument("--budget", type=int, default=10**7)
    enum.add_argument("--server", default=None)

    replay = sub.add_parser("replay", help="re-run a trace file and verify every record")
    replay.add_argument("trace", help="path to a gatherline-trace/1 file")

    serve = sub.add_parser("serve", help="start the HTTP/WebSocket service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8023)
    serve.add_argument("--ui", default=None, help="playground UI directory (default: auto-detect)")

    sub.add_parser("session", help="speak gatherline-session/1 on stdin/stdout")

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "check":
            return _cmd_check(args)
        if args.command == "enumerate":
            return _cmd_enumerate(args)
        if args.command == "replay":
            return _cmd_replay(args)
        if args.command == "serve":
            return _cmd_serve(args)
        if args.command == "session":
            return _cmd_session()
    except UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except RejectedConfigError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_REJECTED
    return EXIT_USAGE


# ---------------------------------------------------------------------------
# Remote transport
# ---------------------------------------------------------------------------


def _post(server: str, path: str, payload: dict, response_model):
    import httpx

    response = httpx.post(server.rstrip("/") + path, json=payload, timeout=600.0)
    if response.status_code >= 400:
        detail = {}
        try:
            detail = response.json().get("detail", {})
        except ValueError:
            pass
        code = detail.get("code") if isinstance(detail, dict) else None
        message = detail.get("message") if isinstance(detail, dict) else response.text
        if code == "rejected-config":
            raise RejectedConfigError(message)
        raise UsageError(message or f"server returned {response.status_code}")
    return response_model.model_validate(response.json())


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def _cmd_run(args: argparse.Namespace) -> int:
    actions = None
    if args.actions is not None:
        try:
            raw = json.loads(Path(args.actions).read_text(encoding="utf-8"))
        except (OSError, ValueError) as err:
            raise UsageError(f"cannot read action file {args.actions}: {err}") from None
        if not isinstance(raw, list):
            raise UsageError("action file must hold a JSON array of actions")
        actions = [ActionModel.model_validate(entry) for entry in raw]
    request = RunRequest(
        init=args.init,
        demon=args.demon,
        k=args.k,
        seed=args.seed,
        max_rounds=args.max_rounds,
        allow_forbidden=args.allow_forbidden,
        randomize_frames=args.randomize_frames,
        actions=actions,
    )
    if args.server:
        response = _post(args.server, "/run", request.model_dump(), RunResponse)
    else:
        from .ops import run_simulation

        response = run_simulation(request)
    if args.trace:
        Path(args.trace).write_text(response.trace, encoding="utf-8")
    chain = " -> ".join(f"({p},{c})" for p, c in response.measures)
    if response.status == "gathered":
        print(f"gathered at {response.gathered_at} after {response.rounds} rounds")
    else:
        print(f"not gathered ({response.status}) after {response.rounds} rounds")
    print(f"measure: {chain}")
    if args.trace:
        print(f"trace: {args.trace}")
    return EXIT_OK if response.status == "gathered" else EXIT_VIOLATION


def _cmd_check(args: argparse.Namespace) -> int:
    request = CheckRequest(
        suite=args.suite,
        cases=args.cases,
        seed=args.seed,
        workers=args.workers,
        robogram=args.robogram,
    )
    if args.server:
        response = _post(args.server, "/check", request.model_dump(), CheckResponse)
    else:
        from .ops import run_checks

        response = run_checks(request)
    failed = False
    for report in response.reports:
        line = (
            f"{report.suite}: {report.verdict} "
            f"({report.cases_run} cases, {report.cases_skipped} skipped, seed {report.seed})"
        )
        print(line)
        if report.counterexample is not None:
            failed = True
            print(f"  counterexample: {report.counterexample.detail}")
            print(f"  config: {report.counterexample.config}")
            Path(args.counterexample).write_text(
                report.counterexample.trace, encoding="utf-8"
            )
            print(f"  replayable trace written to {args.counterexample}")
    return EXIT_VIOLATION if failed else EXIT_OK


def _cmd_enumerate(args: argparse.Namespace) -> int:
    request = EnumerateRequest(n=args.n, grid=args.grid, budget=args.budget)
    if args.server:
        response = _post(args.server, "/enumerate", request.model_dump(), EnumerateResponse)
    else:
        from .ops import run_enumeration

        response = run_enumeration(request)
    print(response.detail)
    print(
        f"n={response.n} grid={{{','.join(response.grid)}}} "
        f"configs={response.configs} forbidden starts={response.forbidden_starts}"
    )
    if response.counterexample is not None:
        print(f"counterexample: {response.counterexample.detail}")
        print(f"config: {response.counterexample.config}")
    return EXIT_OK if response.verdict == "pass" else EXIT_VIOLATION


def _cmd_replay(args: argparse.Namespace) -> int:
    from .traces import read_trace, replay

    try:
        parsed = read_trace(args.trace)
    except (OSError, ValueError) as err:
        raise UsageError(f"cannot read trace {args.trace}: {err}") from None
    result = replay(parsed)
    print(f"{'ok' if result.ok else 'FAILED'}: {result.detail} ({result.rounds} rounds)")
    return EXIT_OK if result.ok else EXIT_VIOLATION


def _default_ui_dir() -> Optional[Path]:
    candidate = Path(__file__).resolve().parents[2] / "frontend"
    if (candidate / "index.html").exists():
        return candidate
    return None


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .api import create_app

    ui_dir = Path(args.ui) if args.ui else _default_ui_dir()
    app = create_app(ui_dir=ui_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def _cmd_session() -> int:
    """Line-delimited gatherline-session/1 on stdio; EOF closes the session."""
    from .session import Session
    from .traces import encode_line

    session = Session()
    print(encode_line(session.hello()), flush=True)
    for line in sys.stdin:
        line = line.strip()
        if not line:
            continue
        try:
            message = json.loads(line)
        except json.JSONDecodeError as err:
            response = {"type": "error", "code": "bad-message", "detail": f"not JSON: {err}"}
        else:
            response = session.handle(message)
        print(encode_line(response), flush=True)
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
