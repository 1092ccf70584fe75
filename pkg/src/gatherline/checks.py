"""Executable theorem checkers and the exhaustive small-instance oracle.

Three randomized suites mirror the algorithm's correctness theorems (all
movers share a destination, bivalent configurations are unreachable, every
moving round strictly decreases the measure) plus a frame-invariance suite;
``enumerate_small`` brute-forces every configuration, activation subset and
frame assignment over a small grid as an independent oracle. A failure is
always reported with a counterexample that can be re-checked in isolation.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .analysis import forbidden, gathered_at, lt_conf, measure
from .execution import (
    DEFAULT_ZOOM_POOL,
    DemonicAction,
    FrameChoice,
    _destinations,
    apply_round,
    moving,
)
from .geometry import Configuration, Location
from .robogram import Robogram, get_robogram

SUITES = ("same-destination", "never-forbidden", "round-decrease", "frame-invariance")


@dataclass(frozen=True)
class Counterexample:
    """A failing (configuration, action) pair, re-checkable in isolation."""

    config: Configuration
    action: DemonicAction
    detail: str


def canonicalize(config: Configuration, action: DemonicAction) -> tuple[Configuration, DemonicAction]:
    """Relabel robots so positions are sorted, carrying frames along.

    External formats speak multisets and fabricate ids over the sorted
    expansion; a counterexample only replays verbatim if its ids follow the
    same convention. Robots at equal positions are interchangeable, so the
    relabeling preserves the violation.
    """
    order = sorted(range(config.n), key=lambda rid: (config[rid], rid))
    relabel = {old: new for new, old in enumerate(order)}
    sorted_config = Configuration(tuple(config[rid] for rid in order))
    relabeled = DemonicAction({relabel[rid]: fc for rid, fc in action.frames.items()})
    return sorted_config, relabeled


@dataclass(frozen=True)
class CheckReport:
    suite: str
    robogram: str
    verdict: str  # "pass" | "fail"
    cases_run: int
    cases_skipped: int
    seed: int
    counterexample: Optional[Counterexample] = None

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"


@dataclass(frozen=True)
class ConfigDistribution:
    """Random-configuration parameters.

    Locations are drawn from a rational grid (numerator range x denominator
    pool) so that towers actually happen; bivalent draws are rejected and
    resampled.
    """

    n_range: tuple[int, int] = (3, 20)
    numerators: tuple[int, int] = (-6, 6)
    denominators: tuple[int, ...] = (1, 2, 3)

    def sample_config(self, rng: random.Random, forbid_bivalent: bool = True) -> Configuration:
        n = rng.randint(*self.n_range)
        while True:
            # Sorted positions: ids follow the canonical text-form assignment,
            # so sampled cases serialize and replay verbatim. Robograms are
            # id-blind, so this costs no generality.
            positions = tuple(
                sorted(
                    Fraction(rng.randint(*self.numerators), rng.choice(self.denominators))
                    for _ in range(n)
                )
            )
            config = Configuration(positions)
            if forbid_bivalent and forbidden(config):
                continue
            return config

    def sample_action(self, rng: random.Random, n: int, nonempty: bool = True) -> DemonicAction:
        ids = [rid for rid in range(n) if rng.random() < 0.5]
        if nonempty and not ids and n:
            ids = [rng.randrange(n)]
        frames = {rid: _random_frame(rng) for rid in ids}
        return DemonicAction(frames)


def _random_frame(rng: random.Random) -> FrameChoice:
    return FrameChoice(rng.choice(DEFAULT_ZOOM_POOL), rng.random() < 0.5)


# ---------------------------------------------------------------------------
# Single-case evaluations (pure; unit-testable with hand-built inputs)
# ---------------------------------------------------------------------------


def same_destination_case(
    robogram: Robogram, config: Configuration, action: DemonicAction
) -> Optional[Counterexample]:
    dests = _destinations(robogram, action, config)
    mover_dests = {dests[rid] for rid in dests if dests[rid] != config[rid]}
    if len(mover_dests) > 1:
        listed = ", ".join(str(d) for d in sorted(mover_dests))
        return Counterexample(config, action, f"movers disagree on destination: {listed}")
    return None


def never_forbidden_case(
    robogram: Robogram, config: Configuration, action: DemonicAction
) -> Optional[Counterexample]:
    result = apply_round(robogram, action, config)
    if forbidden(result):
        pairs = ", ".join(f"{loc}:{mult}" for loc, mult in result.spectrum().pairs())
        return Counterexample(config, action, f"round produced a bivalent configuration {{{pairs}}}")
    return None


def round_decrease_case(
    robogram: Robogram, config: Configuration, action: DemonicAction
) -> Optional[Counterexample]:
    result = apply_round(robogram, action, config)
    if not lt_conf(result, config):
        return Counterexample(
            config,
            action,
            f"measure did not decrease: {tuple(measure(config))} -> {tuple(measure(result))}",
        )
    return None


def frame_invariance_case(
    robogram: Robogram,
    config: Configuration,
    action_a: DemonicAction,
    action_b: DemonicAction,
) -> Optional[Counterexample]:
    first = apply_round(robogram, action_a, config)
    second = apply_round(robogram, action_b, config)
    if first != second:
        return Counterexample(
            config, action_a, "two frame assignments for the same activation set disagree"
        )
    return None


# ---------------------------------------------------------------------------
# Randomized suites
# ---------------------------------------------------------------------------


def _run_chunk(
    suite: str,
    robogram_name: str,
    seed: int,
    start: int,
    count: int,
    dist: ConfigDistribution,
) -> tuple[int, Optional[tuple[int, Counterexample]]]:
    """Run ``count`` cases starting at global index ``start``.

    Returns (skipped, first violation by case index). Each case has its own
    rng stream derived from (seed, case index) so results do not depend on
    chunking or scheduling.
    """
    robogram = get_robogram(robogram_name)
    skipped = 0
    for case in range(start, start + count):
        rng = random.Random((seed << 32) + case)
        config = dist.sample_config(rng, forbid_bivalent=False)
        if forbidden(config):
            skipped += 1  # theorem preconditions assume a legal start
            continue
        if suite == "same-destination":
            action = dist.sample_action(rng, config.n)
            violation = same_destination_case(robogram, config, action)
        elif suite == "never-forbidden":
            action = dist.sample_action(rng, config.n)
            violation = never_forbidden_case(robogram, config, action)
        elif suite == "round-decrease":
            action = dist.sample_action(rng, config.n)
            if not moving(robogram, action, config):
                skipped += 1  # the theorem only speaks about moving rounds
                continue
            violation = round_decrease_case(robogram, config, action)
        elif suite == "frame-invariance":
            action_a = dist.sample_action(rng, config.n)
            action_b = DemonicAction({rid: _random_frame(rng) for rid in action_a.frames})
            violation = frame_invariance_case(robogram, config, action_a, action_b)
        else:
            raise ValueError(f"unknown suite {suite!r}")
        if violation is not None:
            return skipped, (case, violation)
    return skipped, None


def run_suite(
    suite: str,
    robogram: Robogram | str = "gathering",
    cases: int = 1000,
    seed: int = 0,
    workers: int = 1,
    dist: ConfigDistribution = ConfigDistribution(),
) -> CheckReport:
    """Run one named randomized suite and report pass or first violation."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r} (known: {', '.join(SUITES)})")
    if cases < 1:
        raise ValueError("empty case budget")
    name = robogram if isinstance(robogram, str) else robogram.name
    get_robogram(name)  # fail fast on unknown names
    chunks = _split(cases, max(1, workers))
    results: list[tuple[int, Optional[tuple[int, Counterexample]]]] = []
    if workers > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_run_chunk, suite, name, seed, start, count, dist)
                for start, count in chunks
            ]
            results = [f.result() for f in futures]
    else:
        results = [_run_chunk(suite, name, seed, start, count, dist) for start, count in chunks]
    skipped = sum(s for s, _ in results)
    hits = [hit for _, hit in results if hit is not None]
    first = min(hits, key=lambda item: item[0]) if hits else None
    return CheckReport(
        suite=suite,
        robogram=name,
        verdict="fail" if first else "pass",
        # On failure, the count of cases up to and including the violating
        # one in the deterministic case order.
        cases_run=cases if first is None else first[0] + 1,
        cases_skipped=skipped,
        seed=seed,
        counterexample=first[1] if first else None,
    )


def _split(total: int, parts: int) -> list[tuple[int, int]]:
    base, extra = divmod(total, parts)
    chunks = []
    start = 0
    for i in range(parts):
        count = base + (1 if i < extra else 0)
        if count:
            chunks.append((start, count))
        start += count
    return chunks


def check_same_destination(robogram="gathering", cases=1000, seed=0, workers=1) -> CheckReport:
    return run_suite("same-destination", robogram, cases, seed, workers)


def check_never_forbidden(robogram="gathering", cases=1000, seed=0, workers=1) -> CheckReport:
    return run_suite("never-forbidden", robogram, cases, seed, workers)


def check_round_decrease(robogram="gathering", cases=1000, seed=0, workers=1) -> CheckReport:
    return run_suite("round-decrease", robogram, cases, seed, workers)


def check_frame_invariance(robogram="gathering", cases=1000, seed=0, workers=1) -> CheckReport:
    return run_suite("frame-invariance", robogram, cases, seed, workers)


# ---------------------------------------------------------------------------
# Exhaustive small-instance oracle
# ---------------------------------------------------------------------------

# Two deliberately different frames; invariance makes more of them redundant,
# and the randomized suites cover the rest of the pool anyway.
ENUM_FRAME_POOL: tuple[FrameChoice, ...] = (
    FrameChoice(Fraction(1), False),
    FrameChoice(Fraction(2), True),
)

ENUM_BUDGET = 10**7


@dataclass(frozen=True)
class EnumerationReport:
    n: int
    grid: tuple[Location, ...]
    configs: int
    cases: int
    forbidden_starts: int
    violations: int
    verdict: str
    counterexample: Optional[Counterexample] = None
    detail: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"


def enumerate_small(
    n: int,
    grid: Sequence[Location],
    mode: str = "all-theorems",
    budget: int = ENUM_BUDGET,
    robogram: Robogram | str = "gathering",
) -> EnumerationReport:
    """Brute-force oracle over every configuration on a finite grid.

    For every configuration (|grid|^n of them), every activation subset and
    every per-robot frame assignment from a fixed two-frame pool, checks:
    movers share a destination; legal starts never produce a bivalent
    configuration; moving rounds strictly decrease the measure; non-gathered
    legal configurations have movers under full activation (progress); and
    bivalent configurations are fixed points of every round.
    """
    if mode != "all-theorems":
        raise ValueError(f"unknown enumeration mode {mode!r}")
    if n < 0:
        raise ValueError("n must be >= 0")
    total_configs = len(grid) ** n
    if total_configs > budget:
        raise ValueError(
            f"budget exceeded: {len(grid)}^{n} = {total_configs} configurations > {budget}"
        )
    rb = get_robogram(robogram) if isinstance(robogram, str) else robogram
    grid = tuple(Fraction(g) for g in grid)

    configs = 0
    cases = 0
    forbidden_starts = 0
    violations = 0
    first: Optional[Counterexample] = None

    def note(violation: Counterexample) -> None:
        nonlocal violations, first
        violations += 1
        if first is None:
            first = violation

    ids = tuple(range(n))
    subsets = [
        tuple(rid for rid in ids if mask & (1 << rid)) for mask in range(2**n)
    ]
    assignments = list(itertools.product(ENUM_FRAME_POOL, repeat=n))

    for positions in itertools.product(grid, repeat=n):
        config = Configuration(positions)
        configs += 1
        is_forbidden = forbidden(config)
        if is_forbidden:
            forbidden_starts += 1
        for subset in subsets:
            for assignment in assignments:
                action = DemonicAction({rid: assignment[rid] for rid in subset})
                cases += 1
                if is_forbidden:
                    # Bivalent fixed point: no action may change anything.
                    if apply_round(rb, action, config) != config:
                        note(Counterexample(config, action, "bivalent configuration moved"))
                    continue
                violation = same_destination_case(rb, config, action)
                if violation:
                    note(violation)
                violation = never_forbidden_case(rb, config, action)
                if violation:
                    note(violation)
                if moving(rb, action, config):
                    violation = round_decrease_case(rb, config, action)
                    if violation:
                        note(violation)
        if not is_forbidden and n > 0 and gathered_at(config) is None:
            if not moving(rb, DemonicAction.fsync(n), config):
                note(Counterexample(config, DemonicAction.fsync(n), "no progress under full activation"))

    return EnumerationReport(
        n=n,
        grid=grid,
        configs=configs,
        cases=cases,
        forbidden_starts=forbidden_starts,
        violations=violations,
        verdict="pass" if violations == 0 else "fail",
        counterexample=first,
        detail=f"{cases} (config,action) cases, {violations} violations",
    )
