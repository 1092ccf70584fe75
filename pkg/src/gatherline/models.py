"""Pydantic request/response models for the service API and the CLI client.

These are the wire shapes; rationals travel as exact "num/den" strings.
"""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, Field


class FrameModel(BaseModel):
    id: int
    zoom: str = "1"
    reflect: bool = False


class ActionModel(BaseModel):
    activated: list[int] = Field(default_factory=list)
    frames: list[FrameModel] = Field(default_factory=list)


class RunRequest(BaseModel):
    init: str
    demon: str = "fsync"
    k: Optional[int] = None
    seed: Optional[int] = None
    max_rounds: Optional[int] = None
    allow_forbidden: bool = False
    randomize_frames: bool = False
    actions: Optional[list[ActionModel]] = None  # scripted demon only


class RunResponse(BaseModel):
    status: str  # gathered | max-rounds | aborted
    gathered_at: Optional[str]
    rounds: int
    measures: list[tuple[int, int]]  # initial measure, then one per round
    trace: str  # full gatherline-trace/1 text


class CounterexampleModel(BaseModel):
    config: str
    action: ActionModel
    detail: str
    trace: str  # single-round replayable trace


class CheckReportModel(BaseModel):
    suite: str
    robogram: str
    verdict: str
    cases_run: int
    cases_skipped: int
    seed: int
    counterexample: Optional[CounterexampleModel] = None


class CheckRequest(BaseModel):
    suite: str = "all"
    cases: int = 1000
    seed: int = 0
    workers: int = 1
    robogram: str = "gathering"


class CheckResponse(BaseModel):
    verdict: str
    reports: list[CheckReportModel]


class EnumerateRequest(BaseModel):
    n: int
    grid: str
    budget: int = 10**7


class EnumerateResponse(BaseModel):
    verdict: str
    n: int
    grid: list[str]
    configs: int
    cases: int
    forbidden_starts: int
    violations: int
    detail: str
    counterexample: Optional[CounterexampleModel] = None


class ErrorBody(BaseModel):
    """Structured HTTP error detail, mirrored into CLI exit codes."""

    code: str  # "usage" | "rejected-config"
    message: str
