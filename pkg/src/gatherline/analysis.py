"""Correctness predicates and the termination measure.

The measure maps a configuration to a pair (phase, count) of naturals,
ordered lexicographically; every round in which some robot moves strictly
decreases it, which is what makes gathering terminate. Phase 0 is reserved
for gathered configurations and bivalent configurations come out as (3, 0);
both are fixed points, so the measure never needs to decrease from them.
"""

from __future__ import annotations

from typing import NamedTuple, Optional

from .geometry import Configuration, Location
from .robogram import PhaseTag, extreme_center, middle_of_three, smax_support


class Measure(NamedTuple):
    """Termination witness; tuple comparison is the lexicographic order."""

    phase: int
    count: int


def forbidden(config: Configuration) -> bool:
    """Bivalent: exactly two towers of equal multiplicity (gathering is
    impossible from such a configuration, and it is never reached otherwise).
    """
    pairs = config.spectrum().pairs()
    return len(pairs) == 2 and pairs[0][1] == pairs[1][1]


def gathered_at(config: Configuration) -> Optional[Location]:
    """The single inhabited point if all robots share one, else None.

    An empty configuration returns None by convention.
    """
    if config.n == 0:
        return None
    first = config.positions[0]
    if all(pos == first for pos in config.positions):
        return first
    return None


def phase_of(config: Configuration) -> int:
    """Phase number in 0..3 (0 = gathered); requires at least one robot."""
    if config.n == 0:
        raise ValueError("empty configuration has no phase")
    if gathered_at(config) is not None:
        return 0
    spectrum = config.spectrum()
    if len(smax_support(spectrum)) == 1:
        return 1
    if len(spectrum.support) == 3:
        return 2
    return 3


def measure(config: Configuration) -> Measure:
    """(phase, misplaced-robot count) for a nonempty configuration.

    Counts, per phase: robots not at the unique highest tower (1), robots
    not at the middle of the three towers (2), robots neither at a most
    external location nor at their center (3). Gathered is (0, 0).
    """
    phase = phase_of(config)
    if phase == 0:
        return Measure(0, 0)
    spectrum = config.spectrum()
    if phase == 1:
        target = smax_support(spectrum)[0]
        return Measure(1, config.n - spectrum.multiplicity(target))
    if phase == 2:
        return Measure(2, config.n - spectrum.multiplicity(middle_of_three(spectrum)))
    support = spectrum.support
    settled = {support[0], support[-1], extreme_center(spectrum)}
    stragglers = sum(mult for loc, mult in spectrum.pairs() if loc not in settled)
    return Measure(3, stragglers)


def lt_conf(left: Configuration, right: Configuration) -> bool:
    """Strict lexicographic comparison of configuration measures."""
    return measure(left) < measure(right)


def phase_label(config: Configuration) -> str:
    """Human-facing tag for traces and session states.

    Reports the branch the *moving* robots take ("gathered" when there is
    nothing left to do, "stay" when phase 3 has no movers, e.g. bivalent).
    """
    if config.n == 0:
        return PhaseTag.NO_ROBOT.value
    phase = phase_of(config)
    if phase == 0:
        return "gathered"
    if phase == 1:
        return PhaseTag.UNIQUE_MAX.value
    if phase == 2:
        return PhaseTag.THREE_TOWERS.value
    if measure(config).count > 0:
        return PhaseTag.CENTER_MOVE.value
    return PhaseTag.STAY.value


def gather_target(config: Configuration) -> Optional[Location]:
    """Where this round's movers are headed, or None if nobody can move.

    Phase 1: the unique highest tower; phase 2: the middle tower; phase 3:
    the center of the extremes (reported even when all robots are already
    settled there, as for bivalent configurations, where it is the fixed
    point the UI annotates).
    """
    if config.n == 0:
        return None
    phase = phase_of(config)
    if phase == 0:
        return None
    spectrum = config.spectrum()
    if phase == 1:
        return smax_support(spectrum)[0]
    if phase == 2:
        return middle_of_three(spectrum)
    return extreme_center(spectrum)
