"""Service-layer operations shared by the HTTP endpoints and the CLI.

Every operation takes a request model and returns a response model; errors
are typed so the HTTP layer can map them to status codes and the CLI to
exit codes (usage -> 2, rejected initial configuration -> 3).
"""

from __future__ import annotations

from . import checks
from .analysis import forbidden, measure, phase_label
from .execution import (
    Trace,
    TraceStep,
    apply_round,
    execute,
    make_demon,
    moving,
    termination_budget,
)
from .models import (
    ActionModel,
    CheckReportModel,
    CheckRequest,
    CheckResponse,
    CounterexampleModel,
    EnumerateRequest,
    EnumerateResponse,
    RunRequest,
    RunResponse,
)
from .robogram import get_robogram
from .traces import (
    action_from_json,
    action_to_json,
    format_config_text,
    parse_config_text,
    parse_grid,
    trace_to_text,
)


class UsageError(ValueError):
    """Bad flags, unparsable inputs, unknown suites: CLI exit 2."""


class RejectedConfigError(ValueError):
    """Initial configuration refused (bivalent without override): CLI exit 3."""


CHECK_SUITE_CHOICES = checks.SUITES + ("all",)


def run_simulation(request: RunRequest) -> RunResponse:
    try:
        config = parse_config_text(request.init)
    except ValueError as err:
        raise UsageError(f"bad initial configuration: {err}") from None
    if config.n == 0:
        raise UsageError("initial configuration has no robots")
    if forbidden(config) and not request.allow_forbidden:
        raise RejectedConfigError(
            "initial configuration is bivalent (two towers of equal multiplicity); "
            "gathering is impossible from such a configuration. "
            "Use allow_forbidden to explore it anyway."
        )
    if request.k is not None and request.k < 1:
        raise UsageError("k must be >= 1")

    actions = None
    if request.demon == "scripted":
        if not request.actions:
            raise UsageError("scripted demon needs an action list")
        try:
            actions = [action_from_json(a.model_dump()) for a in request.actions]
        except ValueError as err:
            raise UsageError(f"bad scripted action: {err}") from None
    elif request.actions:
        raise UsageError("an action list is only valid with the scripted demon")

    try:
        demon = make_demon(
            request.demon,
            k=request.k,
            seed=request.seed,
            actions=actions,
            randomize_frames=request.randomize_frames,
        )
    except ValueError as err:
        raise UsageError(str(err)) from None

    max_rounds = request.max_rounds
    if max_rounds is None:
        if actions is not None:
            max_rounds = len(actions) + 1  # room for the confirming round
        else:
            k = demon.fairness_bound or 1
            max_rounds = termination_budget(config.n, k) + 1
    if max_rounds < 0:
        raise UsageError("max_rounds must be >= 0")

    robogram = get_robogram("gathering")
    trace = execute(robogram, demon, config, max_rounds)
    measures = [tuple(measure(config))] + [tuple(step.measure) for step in trace.steps]
    return RunResponse(
        status=trace.status,
        gathered_at=None
        if trace.gathered_point is None
        else str(trace.gathered_point),
        rounds=len(trace.steps),
        measures=measures,
        trace=trace_to_text(trace),
    )


def _counterexample_model(
    robogram_name: str, counterexample: checks.Counterexample
) -> CounterexampleModel:
    """Package a violation as a replayable single-round trace."""
    robogram = get_robogram(robogram_name)
    config, action = checks.canonicalize(counterexample.config, counterexample.action)
    moved = moving(robogram, action, config)
    result = apply_round(robogram, action, config)
    trace = Trace(
        robogram=robogram_name,
        demon="scripted",
        k=None,
        seed=None,
        initial=config,
        steps=[
            TraceStep(
                index=1,
                action=action,
                result=result,
                moving=moved,
                measure=measure(result),
                phase=phase_label(result),
                forbidden=forbidden(result),
            )
        ],
        status="aborted",
    )
    return CounterexampleModel(
        config=format_config_text(config),
        action=ActionModel.model_validate(action_to_json(action)),
        detail=counterexample.detail,
        trace=trace_to_text(trace),
    )


def run_checks(request: CheckRequest) -> CheckResponse:
    if request.suite not in CHECK_SUITE_CHOICES:
        raise UsageError(
            f"unknown suite {request.suite!r} (known: {', '.join(CHECK_SUITE_CHOICES)})"
        )
    if request.cases < 1:
        raise UsageError("empty case budget")
    if request.workers < 1:
        raise UsageError("workers must be >= 1")
    try:
        get_robogram(request.robogram)
    except ValueError as err:
        raise UsageError(str(err)) from None
    suites = list(checks.SUITES) if request.suite == "all" else [request.suite]
    reports = []
    for suite in suites:
        report = checks.run_suite(
            suite, request.robogram, request.cases, request.seed, request.workers
        )
        reports.append(
            CheckReportModel(
                suite=report.suite,
                robogram=report.robogram,
                verdict=report.verdict,
                cases_run=report.cases_run,
                cases_skipped=report.cases_skipped,
                seed=report.seed,
                counterexample=None
                if report.counterexample is None
                else _counterexample_model(report.robogram, report.counterexample),
            )
        )
    verdict = "pass" if all(r.verdict == "pass" for r in reports) else "fail"
    return CheckResponse(verdict=verdict, reports=reports)


def run_enumeration(request: EnumerateRequest) -> EnumerateResponse:
    if request.n < 0:
        raise UsageError("n must be >= 0")
    try:
        grid = parse_grid(request.grid)
    except ValueError as err:
        raise UsageError(str(err)) from None
    try:
        report = checks.enumerate_small(request.n, grid, budget=request.budget)
    except ValueError as err:
        raise UsageError(str(err)) from None
    return EnumerateResponse(
        verdict=report.verdict,
        n=report.n,
        grid=[str(g) for g in report.grid],
        configs=report.configs,
        cases=report.cases,
        forbidden_starts=report.forbidden_starts,
        violations=report.violations,
        detail=report.detail or "",
        counterexample=None
        if report.counterexample is None
        else _counterexample_model("gathering", report.counterexample),
    )
