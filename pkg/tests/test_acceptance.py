"""Acceptance suite: one test per release criterion, all exact (tolerance zero).

Run with ``pytest tests/test_acceptance.py -s`` to see one verdict line per
criterion. Budgets are the contractual ones; every check is exact rational
equality, there are no epsilons anywhere.
"""

from __future__ import annotations

import random
import subprocess
import sys
import time

from gatherline.analysis import gathered_at, measure
from gatherline.checks import enumerate_small, run_suite
from gatherline.execution import (
    DemonicAction,
    apply_round,
    execute,
    make_demon,
    termination_budget,
)
from gatherline.mutants import MUTANTS
from gatherline.robogram import GATHERING
from gatherline.traces import parse_config_text, parse_grid

from conftest import FIG_A, frac

SEED = 20260810


def report(criterion: int, label: str, ok: bool, elapsed: float, limit: float | None):
    budget = f" [{elapsed:.1f}s" + (f" < {limit:.0f}s]" if limit else "]")
    print(f"criterion {criterion} ({label}): {'PASS' if ok else 'FAIL'}{budget}")
    assert ok, f"criterion {criterion} failed"
    if limit is not None:
        assert elapsed < limit, f"criterion {criterion} exceeded {limit}s ({elapsed:.1f}s)"


def test_criterion_1_worked_trajectory():
    started = time.perf_counter()
    config = parse_config_text(FIG_A)
    schedule = [
        DemonicAction.of([3, 4]),        # the robots at 1 and 5/2
        DemonicAction.of([0, 5, 6]),     # one robot at 0, two at 3
        DemonicAction.of([1, 2, 7]),     # every remaining robot not at 3/2
    ]
    expected_specs = [
        parse_config_text("0:3,3/2:2,3:3").spectrum(),
        parse_config_text("0:2,3/2:5,3:1").spectrum(),
        parse_config_text("3/2:8").spectrum(),
    ]
    expected_measures = [(3, 2), (2, 6), (1, 3), (0, 0)]
    ok = measure(config) == expected_measures[0]
    for action, spec, m in zip(schedule, expected_specs, expected_measures[1:]):
        config = apply_round(GATHERING, action, config)
        ok = ok and config.spectrum() == spec and tuple(measure(config)) == m
    ok = ok and gathered_at(config) == frac("3/2")
    report(1, "worked trajectory", ok, time.perf_counter() - started, 1)


def _random_suite(criterion: int, suite: str, limit: float):
    started = time.perf_counter()
    result = run_suite(suite, GATHERING, cases=10_000, seed=SEED)
    ok = result.passed and result.cases_run == 10_000
    report(criterion, f"{suite} x10k", ok, time.perf_counter() - started, limit)


def test_criterion_2_same_destination():
    _random_suite(2, "same-destination", 30)


def test_criterion_3_never_forbidden():
    _random_suite(3, "never-forbidden", 30)


def test_criterion_4_round_decrease():
    _random_suite(4, "round-decrease", 30)


def test_criterion_5_exhaustive_oracle():
    started = time.perf_counter()
    first = enumerate_small(3, parse_grid("0..3"))
    second = enumerate_small(4, parse_grid("0..2"))
    ok = (
        first.passed
        and second.passed
        and first.cases == 4096
        and first.violations == 0
        and second.violations == 0
    )
    report(5, "exhaustive oracle n=3/n=4", ok, time.perf_counter() - started, 60)


def test_criterion_6_gathering_under_fair_demons():
    started = time.perf_counter()
    from gatherline.checks import ConfigDistribution

    dist = ConfigDistribution(n_range=(3, 20))
    rng = random.Random(SEED)
    ok = True
    for i in range(1000):
        config = dist.sample_config(rng)
        k = (1, 2, 5)[i % 3]
        bound = termination_budget(config.n, k)
        demon = make_demon("random-fair", seed=rng.randrange(2**63), k=k)
        trace = execute(GATHERING, demon, config, bound + 1)
        gathered_and_stayed = (
            trace.status == "gathered"
            and len(trace.steps) <= bound + 1
            and trace.steps[-1].result == trace.steps[-2 if len(trace.steps) > 1 else -1].result
        )
        if not gathered_and_stayed:
            ok = False
            break
    report(6, "fair demons gather within 4(n+1)k", ok, time.perf_counter() - started, 60)


def test_criterion_7_frame_invariance():
    started = time.perf_counter()
    result = run_suite("frame-invariance", GATHERING, cases=10_000, seed=SEED)
    ok = result.passed and result.cases_run == 10_000
    report(7, "frame invariance x10k", ok, time.perf_counter() - started, 30)


def test_criterion_8_trace_determinism(tmp_path):
    started = time.perf_counter()
    traces = []
    for name in ("first.jsonl", "second.jsonl"):
        path = tmp_path / name
        subprocess.run(
            [
                sys.executable, "-m", "gatherline", "run",
                "--init", FIG_A, "--demon", "random-fair", "--k", "2",
                "--seed", "123456", "--trace", str(path),
            ],
            check=True,
            capture_output=True,
        )
        traces.append(path.read_bytes())
    ok = traces[0] == traces[1] and len(traces[0]) > 0
    report(8, "byte-identical traces", ok, time.perf_counter() - started, None)


def test_criterion_9_mutants_caught():
    from gatherline.models import CheckRequest
    from gatherline.ops import run_checks
    from gatherline.traces import parse_trace_lines, replay

    started = time.perf_counter()
    suites = ("same-destination", "never-forbidden", "round-decrease")
    ok = True
    for mutant in MUTANTS:
        counterexample = None
        for suite in suites:
            response = run_checks(
                CheckRequest(suite=suite, cases=10_000, seed=SEED, robogram=mutant.name)
            )
            (suite_report,) = response.reports
            if suite_report.verdict == "fail":
                counterexample = suite_report.counterexample
                break
        if counterexample is None:
            ok = False
            break
        # replayable: the packaged single-round trace reproduces bit-exactly
        replayed = replay(parse_trace_lines(counterexample.trace.splitlines()))
        ok = ok and replayed.ok
    report(9, "all mutants caught with counterexamples", ok, time.perf_counter() - started, None)
