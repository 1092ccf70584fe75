"""Textual formats: configuration text, grids, and gatherline-trace/1 files.

All rationals cross process boundaries as exact "num/den" strings; floats
never appear in any external format. A trace file is line-delimited JSON:
one header, one record per round, one footer, each line independently
parseable, and the whole file is a deterministic function of the header
plus the recorded actions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .analysis import forbidden, measure, phase_label
from .execution import DemonicAction, FrameChoice, Trace, TraceStep, apply_round, moving
from .geometry import Configuration, Location, Spectrum, format_location, parse_location
from .robogram import get_robogram

TRACE_VERSION = "gatherline-trace/1"


def encode_line(obj: dict) -> str:
    """Canonical one-line JSON: sorted keys, no whitespace."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------------------
# Configuration text: "loc:mult,loc:mult,..."
# ---------------------------------------------------------------------------


def parse_config_text(text: str) -> Configuration:
    """Parse "0:3,1:1,5/2:1" into a configuration.

    Robots are anonymous, so external formats speak multisets; identifiers
    0..n-1 are fabricated over the location-sorted expansion, which makes
    the text form canonical and replays deterministic.
    """
    pairs: list[tuple[Location, int]] = []
    body = text.strip()
    if not body:
        raise ValueError("empty configuration text")
    for chunk in body.split(","):
        piece = chunk.strip()
        if not piece:
            raise ValueError(f"empty entry in configuration text {text!r}")
        loc_part, sep, mult_part = piece.rpartition(":")
        if not sep:
            loc_part, mult_part = piece, "1"
        loc = parse_location(loc_part)
        try:
            mult = int(mult_part)
        except ValueError:
            raise ValueError(f"bad multiplicity {mult_part!r} in {piece!r}") from None
        if mult < 1:
            raise ValueError(f"multiplicity must be >= 1 in {piece!r}")
        pairs.append((loc, mult))
    positions: list[Location] = []
    for loc, mult in sorted(pairs):
        positions.extend([loc] * mult)
    return Configuration(tuple(positions))


def format_config_text(config: Configuration) -> str:
    """Canonical multiset text for a configuration (sorted, lowest terms)."""
    return ",".join(f"{format_location(loc)}:{mult}" for loc, mult in config.spectrum().pairs())


def spectrum_pairs(spectrum: Spectrum) -> list[list]:
    """JSON-ready [[location string, multiplicity], ...], sorted."""
    return [[format_location(loc), mult] for loc, mult in spectrum.pairs()]


def parse_grid(text: str) -> tuple[Location, ...]:
    """Parse a grid spec: integer range "0..3" or explicit list "0,1/2,1"."""
    body = text.strip()
    if ".." in body:
        lo_text, hi_text = body.split("..", 1)
        try:
            lo, hi = int(lo_text), int(hi_text)
        except ValueError:
            raise ValueError(f"bad grid range {text!r}") from None
        if hi < lo:
            raise ValueError(f"bad grid range {text!r} (upper bound below lower)")
        return tuple(Location(v) for v in range(lo, hi + 1))
    points = sorted({parse_location(piece) for piece in body.split(",") if piece.strip()})
    if not points:
        raise ValueError(f"empty grid {text!r}")
    return tuple(points)


# ---------------------------------------------------------------------------
# Actions
# ---------------------------------------------------------------------------


def action_to_json(action: DemonicAction) -> dict:
    ids = sorted(action.frames)
    return {
        "activated": ids,
        "frames": [
            {
                "id": rid,
                "zoom": format_location(action.frames[rid].zoom),
                "reflect": action.frames[rid].reflect,
            }
            for rid in ids
        ],
    }


def action_from_json(obj: dict) -> DemonicAction:
    activated = obj.get("activated", [])
    if not isinstance(activated, list) or not all(isinstance(i, int) for i in activated):
        raise ValueError("action 'activated' must be a list of robot ids")
    frames: dict[int, FrameChoice] = {}
    for entry in obj.get("frames", []):
        rid = entry["id"]
        zoom = parse_location(str(entry.get("zoom", "1")))
        frames[rid] = FrameChoice(zoom, bool(entry.get("reflect", False)))
    extra = set(frames) - set(activated)
    if extra:
        raise ValueError(f"frames given for non-activated robots: {sorted(extra)}")
    return DemonicAction.of(activated, frames)


# ---------------------------------------------------------------------------
# Trace files
# ---------------------------------------------------------------------------


def step_to_json(step: TraceStep) -> dict:
    return {
        "type": "step",
        "round": step.index,
        "action": action_to_json(step.action),
        "config": spectrum_pairs(step.result.spectrum()),
        "moving": sorted(step.moving),
        "measure": [step.measure.phase, step.measure.count],
        "phase": step.phase,
        "forbidden": step.forbidden,
    }


def trace_to_lines(trace: Trace) -> list[str]:
    header = {
        "type": "header",
        "version": TRACE_VERSION,
        "robogram": trace.robogram,
        "n": trace.initial.n,
        "demon": trace.demon,
        "k": trace.k,
        "seed": trace.seed,
        "initial": format_config_text(trace.initial),
    }
    footer = {
        "type": "footer",
        "status": trace.status,
        "rounds": len(trace.steps),
        "gathered_at": None
        if trace.gathered_point is None
        else format_location(trace.gathered_point),
    }
    lines = [encode_line(header)]
    lines.extend(encode_line(step_to_json(step)) for step in trace.steps)
    lines.append(encode_line(footer))
    return lines


def trace_to_text(trace: Trace) -> str:
    return "\n".join(trace_to_lines(trace)) + "\n"


def write_trace(trace: Trace, path: str | Path) -> None:
    Path(path).write_text(trace_to_text(trace), encoding="utf-8")


@dataclass(frozen=True)
class ParsedTrace:
    header: dict
    steps: list[dict]
    footer: dict


def parse_trace_lines(lines: Iterable[str]) -> ParsedTrace:
    header: dict | None = None
    footer: dict | None = None
    steps: list[dict] = []
    for raw in lines:
        raw = raw.strip()
        if not raw:
            continue
        obj = json.loads(raw)
        kind = obj.get("type")
        if kind == "header":
            header = obj
        elif kind == "step":
            steps.append(obj)
        elif kind == "footer":
            footer = obj
        else:
            raise ValueError(f"unknown trace record type {kind!r}")
    if header is None:
        raise ValueError("trace has no header record")
    if footer is None:
        raise ValueError("trace has no footer record")
    if header.get("version") != TRACE_VERSION:
        raise ValueError(f"unsupported trace version {header.get('version')!r}")
    return ParsedTrace(header=header, steps=steps, footer=footer)


def read_trace(path: str | Path) -> ParsedTrace:
    return parse_trace_lines(Path(path).read_text(encoding="utf-8").splitlines())


@dataclass(frozen=True)
class ReplayResult:
    ok: bool
    rounds: int
    detail: str


def replay(parsed: ParsedTrace) -> ReplayResult:
    """Re-run a trace's actions from its initial configuration.

    Every step record must be reproduced byte-for-byte (same resulting
    multiset, moving set, measure, phase and forbidden flag); the footer is
    checked for semantic consistency with the final configuration.
    """
    robogram = get_robogram(parsed.header["robogram"])
    config = parse_config_text(parsed.header["initial"])
    if config.n != parsed.header["n"]:
        return ReplayResult(False, 0, "header n does not match the initial configuration")
    for i, record in enumerate(parsed.steps):
        action = action_from_json(record["action"])
        moved = moving(robogram, action, config)
        config = apply_round(robogram, action, config)
        expected = encode_line(record)
        actual = encode_line(
            step_to_json(
                TraceStep(
                    index=i + 1,
                    action=action,
                    result=config,
                    moving=moved,
                    measure=measure(config),
                    phase=phase_label(config),
                    forbidden=forbidden(config),
                )
            )
        )
        if actual != expected:
            return ReplayResult(False, i, f"round {record['round']} diverged on replay")
    status = parsed.footer.get("status")
    gathered = parsed.footer.get("gathered_at")
    if status == "gathered":
        pairs = config.spectrum().pairs()
        if gathered is None or len(pairs) != 1 or format_location(pairs[0][0]) != gathered:
            return ReplayResult(False, len(parsed.steps), "footer gathered_at does not match final configuration")
    return ReplayResult(True, len(parsed.steps), "replay reproduced every record")
