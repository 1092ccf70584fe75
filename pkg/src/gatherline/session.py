"""The gatherline-session/1 protocol: an external agent plays the demon.

One session owns one configuration state machine. The client (a browser
playground, a script, anything that can pass line-delimited JSON over a
bidirectional channel) sends init/step/reset/query requests and always gets
back either a state message or an error message; protocol violations never
kill the session. The transport is pluggable: the same engine backs the
WebSocket endpoint, the HTTP binding and the stdio binding.
"""

from __future__ import annotations

from typing import Optional

from .analysis import forbidden, gather_target, gathered_at, measure, phase_label
from .execution import DemonicAction, FrameChoice, apply_round, moving
from .geometry import Configuration, format_location, parse_location
from .robogram import GATHERING, Robogram
from .traces import parse_config_text, spectrum_pairs

SESSION_VERSION = "gatherline-session/1"

REQUEST_TYPES = ("init", "step", "reset", "query")


class ProtocolError(Exception):
    """A rejected request; carries the wire error code."""

    def __init__(self, code: str, detail: str):
        super().__init__(detail)
        self.code = code
        self.detail = detail


class Session:
    """One configuration state machine, driven by protocol messages."""

    def __init__(self, robogram: Robogram = GATHERING):
        self.robogram = robogram
        self._initial: Optional[Configuration] = None
        self._config: Optional[Configuration] = None
        self._round = 0

    def hello(self) -> dict:
        return {"type": "hello", "version": SESSION_VERSION, "robogram": self.robogram.name}

    def handle(self, message: object) -> dict:
        """Dispatch one request; always returns a response message."""
        try:
            return self._dispatch(message)
        except ProtocolError as err:
            return {"type": "error", "code": err.code, "detail": err.detail}

    def _dispatch(self, message: object) -> dict:
        if not isinstance(message, dict):
            raise ProtocolError("bad-message", "request must be a JSON object")
        kind = message.get("type")
        if kind == "init":
            return self._init(message)
        if kind == "step":
            return self._step(message)
        if kind == "reset":
            return self._reset()
        if kind == "query":
            return self._query()
        raise ProtocolError(
            "bad-message", f"unknown request type {kind!r} (expected one of {', '.join(REQUEST_TYPES)})"
        )

    def _init(self, message: dict) -> dict:
        text = message.get("config")
        if not isinstance(text, str):
            raise ProtocolError("bad-config", "init needs a 'config' string")
        try:
            config = parse_config_text(text)
        except ValueError as err:
            raise ProtocolError("bad-config", str(err)) from None
        # The playground may explore bivalent (and any other) configurations;
        # only emptiness is rejected, since measures need at least one robot.
        if config.n == 0:
            raise ProtocolError("bad-config", "configuration has no robots")
        self._initial = config
        self._config = config
        self._round = 0
        return self._state(moved=frozenset())

    def _step(self, message: dict) -> dict:
        config = self._require_config()
        activated = message.get("activated", [])
        if not isinstance(activated, list) or not all(
            isinstance(rid, int) and not isinstance(rid, bool) for rid in activated
        ):
            raise ProtocolError("bad-message", "'activated' must be a list of robot ids")
        if len(set(activated)) != len(activated):
            raise ProtocolError("bad-message", "'activated' contains duplicate robot ids")
        for rid in activated:
            if not 0 <= rid < config.n:
                raise ProtocolError("bad-robot", f"no robot with id {rid} (n={config.n})")
        frames = self._parse_frames(message.get("frames", []), set(activated))
        action = DemonicAction.of(activated, frames)
        moved = moving(self.robogram, action, config)
        self._config = apply_round(self.robogram, action, config)
        self._round += 1
        return self._state(moved=moved)

    def _parse_frames(self, entries: object, activated: set[int]) -> dict[int, FrameChoice]:
        if not isinstance(entries, list):
            raise ProtocolError("bad-frame", "'frames' must be a list")
        frames: dict[int, FrameChoice] = {}
        for entry in entries:
            if not isinstance(entry, dict) or "id" not in entry:
                raise ProtocolError("bad-frame", "each frame needs an 'id'")
            rid = entry["id"]
            if rid not in activated:
                raise ProtocolError("bad-frame", f"frame given for non-activated robot {rid}")
            if rid in frames:
                raise ProtocolError("bad-frame", f"duplicate frame for robot {rid}")
            try:
                zoom = parse_location(str(entry.get("zoom", "1")))
            except ValueError as err:
                raise ProtocolError("bad-frame", str(err)) from None
            if zoom <= 0:
                raise ProtocolError("bad-frame", f"zoom must be strictly positive, got {zoom}")
            frames[rid] = FrameChoice(zoom, bool(entry.get("reflect", False)))
        # Activated robots without an explicit frame get the identity frame.
        return frames

    def _reset(self) -> dict:
        if self._initial is None:
            raise ProtocolError("not-initialized", "reset before init")
        self._config = self._initial
        self._round = 0
        return self._state(moved=frozenset())

    def _query(self) -> dict:
        self._require_config()
        return self._state(moved=frozenset())

    def _require_config(self) -> Configuration:
        if self._config is None:
            raise ProtocolError("not-initialized", "no configuration; send init first")
        return self._config

    def _state(self, moved: frozenset[int]) -> dict:
        config = self._require_config()
        gathered = gathered_at(config)
        target = gather_target(config)
        m = measure(config)
        return {
            "type": "state",
            "round": self._round,
            "positions": [format_location(p) for p in config.positions],
            "config": spectrum_pairs(config.spectrum()),
            "measure": [m.phase, m.count],
            "phase": phase_label(config),
            "forbidden": forbidden(config),
            "gathered": None if gathered is None else format_location(gathered),
            "target": None if target is None else format_location(target),
            "moving": sorted(moved),
        }
