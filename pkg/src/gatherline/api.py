"""FastAPI service wrapping the simulator, checkers and session protocol.

One-shot operations are plain POST endpoints; the interactive session
protocol is served over a WebSocket (one connection = one session) and over
a plain HTTP binding (one server-side session object per session id) for
clients without WebSocket support. The playground UI, when built, is served
statically from the configured directory.
"""

from __future__ import annotations

import json
import uuid
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, HTTPException, WebSocket, WebSocketDisconnect
from fastapi.responses import FileResponse, Response
from fastapi.staticfiles import StaticFiles

from . import __version__
from .models import (
    CheckRequest,
    CheckResponse,
    EnumerateRequest,
    EnumerateResponse,
    RunRequest,
    RunResponse,
)
from .ops import RejectedConfigError, UsageError, run_checks, run_enumeration, run_simulation
from .session import SESSION_VERSION, Session
from .traces import TRACE_VERSION, encode_line


def create_app(ui_dir: Optional[Path] = None) -> FastAPI:
    app = FastAPI(title="gatherline", version=__version__)
    sessions: dict[str, Session] = {}

    @app.get("/health")
    def health() -> dict:
        return {
            "status": "ok",
            "version": __version__,
            "trace_format": TRACE_VERSION,
            "session_protocol": SESSION_VERSION,
        }

    @app.post("/run", response_model=RunResponse)
    def run(request: RunRequest) -> RunResponse:
        try:
            return run_simulation(request)
        except UsageError as err:
            raise HTTPException(422, detail={"code": "usage", "message": str(err)}) from None
        except RejectedConfigError as err:
            raise HTTPException(
                409, detail={"code": "rejected-config", "message": str(err)}
            ) from None

    @app.post("/check", response_model=CheckResponse)
    def check(request: CheckRequest) -> CheckResponse:
        try:
            return run_checks(request)
        except UsageError as err:
            raise HTTPException(422, detail={"code": "usage", "message": str(err)}) from None

    @app.post("/enumerate", response_model=EnumerateResponse)
    def enumerate_(request: EnumerateRequest) -> EnumerateResponse:
        try:
            return run_enumeration(request)
        except UsageError as err:
            raise HTTPException(422, detail={"code": "usage", "message": str(err)}) from None

    # -- session protocol, HTTP binding --------------------------------------

    def _session_response(message: dict) -> Response:
        # Canonical bytes, identical framing to the WebSocket binding.
        return Response(content=encode_line(message), media_type="application/json")

    @app.post("/sessions")
    def create_session() -> Response:
        sid = uuid.uuid4().hex
        session = Session()
        sessions[sid] = session
        hello = dict(session.hello())
        hello["session"] = sid
        return _session_response(hello)

    @app.post("/sessions/{sid}")
    async def session_message(sid: str, request_body: dict) -> Response:
        session = sessions.get(sid)
        if session is None:
            raise HTTPException(404, detail={"code": "no-session", "message": f"unknown session {sid}"})
        return _session_response(session.handle(request_body))

    @app.delete("/sessions/{sid}")
    def close_session(sid: str) -> dict:
        sessions.pop(sid, None)
        return {"closed": sid}

    # -- session protocol, WebSocket binding ---------------------------------

    @app.websocket("/session")
    async def session_socket(socket: WebSocket) -> None:
        await socket.accept()
        session = Session()
        await socket.send_text(encode_line(session.hello()))
        try:
            while True:
                line = await socket.receive_text()
                try:
                    message = json.loads(line)
                except json.JSONDecodeError as err:
                    response = {"type": "error", "code": "bad-message", "detail": f"not JSON: {err}"}
                else:
                    response = session.handle(message)
                await socket.send_text(encode_line(response))
        except WebSocketDisconnect:
            pass

    # -- playground UI --------------------------------------------------------

    if ui_dir is not None and (ui_dir / "index.html").exists():
        dist = ui_dir / "dist"
        if dist.is_dir():
            app.mount("/dist", StaticFiles(directory=dist), name="ui-dist")

        @app.get("/", include_in_schema=False)
        def index() -> FileResponse:
            return FileResponse(ui_dir / "index.html")

    return app
