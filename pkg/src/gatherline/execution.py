"""SSYNC round semantics, demons, and execution traces.

A round is atomic: the demon picks a set of robots and a private frame for
each; every activated robot looks (gets the global spectrum mapped into its
frame), computes its robogram, and moves rigidly to the result. Frames are
chosen per robot per round, the most adversarial reading, and zooms and
reflections are both demon-controlled.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, NamedTuple, Optional, Sequence

from .analysis import Measure, forbidden, gathered_at, measure, phase_label
from .geometry import Configuration, Frame, Location, ONE
from .robogram import Robogram


class FrameChoice(NamedTuple):
    """The demon's frame pick for one activated robot."""

    zoom: Fraction
    reflect: bool


IDENTITY_FRAME = FrameChoice(ONE, False)

# Zooms the randomized demons draw from; exercised continuously so frame
# invariance is never an untested assumption.
DEFAULT_ZOOM_POOL: tuple[Fraction, ...] = (
    Fraction(1, 3),
    Fraction(1, 2),
    Fraction(1),
    Fraction(2),
    Fraction(3),
)


@dataclass(frozen=True)
class DemonicAction:
    """One round's demonic choice: frames for exactly the activated robots."""

    frames: Mapping[int, FrameChoice]

    def __post_init__(self) -> None:
        normalized: dict[int, FrameChoice] = {}
        for rid, choice in self.frames.items():
            if not isinstance(rid, int) or rid < 0:
                raise ValueError(f"robot id must be a natural number, got {rid!r}")
            choice = FrameChoice(Fraction(choice[0]), bool(choice[1]))
            if choice.zoom <= 0:
                raise ValueError(f"zoom must be strictly positive, got {choice.zoom}")
            normalized[rid] = choice
        object.__setattr__(self, "frames", normalized)

    @property
    def activated(self) -> frozenset[int]:
        return frozenset(self.frames)

    @classmethod
    def of(cls, ids: Iterable[int], frames: Mapping[int, FrameChoice] | None = None) -> "DemonicAction":
        """Action activating ``ids``; robots without an explicit frame get
        the identity frame."""
        frames = frames or {}
        return cls({rid: frames.get(rid, IDENTITY_FRAME) for rid in ids})

    @classmethod
    def fsync(cls, n: int) -> "DemonicAction":
        return cls.of(range(n))


def _validate_action(action: DemonicAction, config: Configuration) -> None:
    for rid in action.frames:
        if rid >= config.n:
            raise ValueError(f"unknown robot id {rid} (configuration has {config.n} robots)")


def destination(
    robogram: Robogram,
    config: Configuration,
    rid: int,
    zoom: Fraction = ONE,
    reflect: bool = False,
) -> Location:
    """Global-frame destination of one robot's Look-Compute cycle.

    The robot perceives the configuration recentered on itself, scaled by
    ``zoom`` and optionally reflected; the robogram's local answer is mapped
    back through the inverse frame. Moves are rigid: this *is* where the
    robot ends up if activated.
    """
    if not 0 <= rid < config.n:
        raise ValueError(f"unknown robot id {rid} (configuration has {config.n} robots)")
    frame = Frame(center=config[rid], zoom=zoom, reflect=reflect)
    return frame.unapply(robogram(config.spectrum().map(frame)))


def _destinations(
    robogram: Robogram, action: DemonicAction, config: Configuration
) -> dict[int, Location]:
    spectrum = config.spectrum()
    result: dict[int, Location] = {}
    for rid, choice in action.frames.items():
        frame = Frame(center=config[rid], zoom=choice.zoom, reflect=choice.reflect)
        result[rid] = frame.unapply(robogram(spectrum.map(frame)))
    return result


def apply_round(robogram: Robogram, action: DemonicAction, config: Configuration) -> Configuration:
    """One atomic SSYNC round: activated robots jump to their destinations."""
    _validate_action(action, config)
    return config.move(_destinations(robogram, action, config))


def moving(robogram: Robogram, action: DemonicAction, config: Configuration) -> frozenset[int]:
    """Activated robots whose destination differs from their position."""
    _validate_action(action, config)
    dests = _destinations(robogram, action, config)
    return frozenset(rid for rid, dest in dests.items() if dest != config[rid])


class DemonExhausted(Exception):
    """A scripted or external demon has no further action to offer."""


class Demon:
    """Adversarial scheduler: yields one demonic action per round.

    ``fairness_bound`` k, when set, promises that every robot is activated
    in any k consecutive actions (which implies the fair-demon assumption on
    the finite prefixes we materialize).
    """

    kind: str = "abstract"
    fairness_bound: Optional[int] = None
    seed: Optional[int] = None

    def next_action(self, round_index: int, config: Configuration) -> DemonicAction:
        raise NotImplementedError


class FsyncDemon(Demon):
    """Activates every robot every round."""

    kind = "fsync"
    fairness_bound = 1

    def __init__(self, randomize_frames: bool = False, seed: Optional[int] = None,
                 zoom_pool: Sequence[Fraction] = DEFAULT_ZOOM_POOL):
        self.seed = seed if randomize_frames else None
        self._rng = random.Random(seed) if randomize_frames else None
        self._zoom_pool = tuple(zoom_pool)

    def next_action(self, round_index: int, config: Configuration) -> DemonicAction:
        if self._rng is None:
            return DemonicAction.fsync(config.n)
        frames = {rid: _random_frame(self._rng, self._zoom_pool) for rid in range(config.n)}
        return DemonicAction(frames)


class RoundRobinDemon(Demon):
    """Cycles through k blocks of ceil(n/k) robots, identity frames."""

    kind = "round-robin"

    def __init__(self, k: int):
        if k < 1:
            raise ValueError("round-robin block count must be >= 1")
        self.fairness_bound = k
        self._k = k
        self._turn = 0

    def next_action(self, round_index: int, config: Configuration) -> DemonicAction:
        size = math.ceil(config.n / self._k) if config.n else 0
        block = self._turn % self._k
        self._turn += 1
        ids = range(block * size, min((block + 1) * size, config.n))
        return DemonicAction.of(ids)


class RandomFairDemon(Demon):
    """Random subsets and random frames, forced to stay k-fair.

    Any robot that has sat out k-1 consecutive actions is force-included,
    so every window of k consecutive actions covers every robot.
    """

    kind = "random-fair"

    def __init__(self, seed: Optional[int], k: int,
                 zoom_pool: Sequence[Fraction] = DEFAULT_ZOOM_POOL):
        if k < 1:
            raise ValueError("fairness bound must be >= 1")
        self.fairness_bound = k
        self.seed = seed
        self._k = k
        self._rng = random.Random(seed)
        self._zoom_pool = tuple(zoom_pool)
        self._idle: list[int] = []

    def next_action(self, round_index: int, config: Configuration) -> DemonicAction:
        if len(self._idle) != config.n:
            self._idle = [0] * config.n
        chosen = {
            rid
            for rid in range(config.n)
            if self._idle[rid] >= self._k - 1 or self._rng.random() < 0.5
        }
        frames = {rid: _random_frame(self._rng, self._zoom_pool) for rid in sorted(chosen)}
        for rid in range(config.n):
            self._idle[rid] = 0 if rid in chosen else self._idle[rid] + 1
        return DemonicAction(frames)


class ScriptedDemon(Demon):
    """Replays a fixed list of actions, then reports exhaustion."""

    kind = "scripted"

    def __init__(self, actions: Sequence[DemonicAction]):
        self._actions = list(actions)
        self._cursor = 0

    def next_action(self, round_index: int, config: Configuration) -> DemonicAction:
        if self._cursor >= len(self._actions):
            raise DemonExhausted(f"script ended after {len(self._actions)} actions")
        action = self._actions[self._cursor]
        self._cursor += 1
        return action


class CallbackDemon(Demon):
    """Pulls actions from an external provider (a driving session or test)."""

    kind = "external"

    def __init__(self, provider: Callable[[int, Configuration], DemonicAction]):
        self._provider = provider

    def next_action(self, round_index: int, config: Configuration) -> DemonicAction:
        return self._provider(round_index, config)


def _random_frame(rng: random.Random, zoom_pool: Sequence[Fraction]) -> FrameChoice:
    return FrameChoice(rng.choice(zoom_pool), rng.random() < 0.5)


DEMON_KINDS = ("fsync", "round-robin", "random-fair", "scripted", "external")


def make_demon(
    kind: str,
    *,
    k: Optional[int] = None,
    seed: Optional[int] = None,
    actions: Optional[Sequence[DemonicAction]] = None,
    provider: Optional[Callable[[int, Configuration], DemonicAction]] = None,
    randomize_frames: bool = False,
    zoom_pool: Sequence[Fraction] = DEFAULT_ZOOM_POOL,
) -> Demon:
    """Demon factory for the named scheduling strategies."""
    if kind == "fsync":
        return FsyncDemon(randomize_frames=randomize_frames, seed=seed, zoom_pool=zoom_pool)
    if kind == "round-robin":
        return RoundRobinDemon(k if k is not None else 1)
    if kind == "random-fair":
        return RandomFairDemon(seed, k if k is not None else 1, zoom_pool=zoom_pool)
    if kind == "scripted":
        if actions is None:
            raise ValueError("scripted demon needs an action list")
        return ScriptedDemon(actions)
    if kind == "external":
        if provider is None:
            raise ValueError("external demon needs a provider")
        return CallbackDemon(provider)
    raise ValueError(f"unknown demon kind {kind!r} (known: {', '.join(DEMON_KINDS)})")


@dataclass(frozen=True)
class TraceStep:
    """One executed round plus annotations recomputable from the result."""

    index: int
    action: DemonicAction
    result: Configuration
    moving: frozenset[int]
    measure: Measure
    phase: str
    forbidden: bool


@dataclass
class Trace:
    """A materialized execution prefix."""

    robogram: str
    demon: str
    k: Optional[int]
    seed: Optional[int]
    initial: Configuration
    steps: list[TraceStep] = field(default_factory=list)
    status: str = "max-rounds"  # gathered | max-rounds | aborted
    gathered_point: Optional[Location] = None

    @property
    def final(self) -> Configuration:
        return self.steps[-1].result if self.steps else self.initial

    def actions(self) -> list[DemonicAction]:
        return [step.action for step in self.steps]


def _record(steps: list[TraceStep], action: DemonicAction, before: Configuration,
            robogram: Robogram) -> Configuration:
    moved = moving(robogram, action, before)
    after = apply_round(robogram, action, before)
    steps.append(
        TraceStep(
            index=len(steps) + 1,
            action=action,
            result=after,
            moving=moved,
            measure=measure(after),
            phase=phase_label(after),
            forbidden=forbidden(after),
        )
    )
    return after


def execute(
    robogram: Robogram,
    demon: Demon,
    config: Configuration,
    max_rounds: int,
) -> Trace:
    """Run at most ``max_rounds`` rounds, stopping once gathering is stable.

    When the configuration is gathered, one extra fully-synchronous round is
    played to confirm it is a fixed point (gathering means gather *and*
    stay); the confirming round counts against the budget. Running out of
    rounds is reported in the trace status, never raised.
    """
    if config.n == 0:
        raise ValueError("cannot execute an empty configuration")
    if max_rounds < 0:
        raise ValueError("max_rounds must be >= 0")
    trace = Trace(
        robogram=robogram.name,
        demon=demon.kind,
        k=demon.fairness_bound,
        seed=demon.seed,
        initial=config,
    )
    current = config
    while len(trace.steps) < max_rounds:
        point = gathered_at(current)
        if point is not None:
            confirm = DemonicAction.fsync(current.n)
            after = _record(trace.steps, confirm, current, robogram)
            if after == current:
                trace.status = "gathered"
                trace.gathered_point = point
                return trace
            current = after  # not a fixed point (possible for broken robograms)
            continue
        try:
            action = demon.next_action(len(trace.steps) + 1, current)
        except DemonExhausted:
            trace.status = "aborted"
            return trace
        current = _record(trace.steps, action, current, robogram)
    trace.status = "max-rounds"
    return trace


def termination_budget(n: int, k: int) -> int:
    """Upper bound on rounds to gather under a k-fair demon.

    Each window of k rounds forces at least one strict measure decrease
    while not gathered, and the measure ranges over a 4 x (n+1) grid.
    """
    return 4 * (n + 1) * k


def check_fairness(actions: Sequence[DemonicAction], n: int, k: int) -> bool:
    """True iff every window of k consecutive actions activates every robot."""
    if k < 1:
        raise ValueError("fairness window must be >= 1")
    everyone = set(range(n))
    activated = [action.activated for action in actions]
    for start in range(len(activated) - k + 1):
        window: set[int] = set()
        for acts in activated[start : start + k]:
            window |= acts
        if not everyone <= window:
            return False
    return True
