"""The generic robogram interface and the concrete line-gathering algorithm.

A robogram is the deterministic program embedded in every robot: a pure
function from a perceived spectrum (expressed in the robot's own frame,
robot at the origin) to a destination (same frame). It never sees robot
identities, and equal spectra must yield equal destinations.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable

from .geometry import ONE, ZERO, Frame, Location, Spectrum


class PhaseTag(str, Enum):
    """Which branch of the gathering algorithm fires for a given view."""

    UNIQUE_MAX = "unique-max"
    THREE_TOWERS = "three-towers"
    CENTER_MOVE = "center"
    STAY = "stay"
    NO_ROBOT = "no-robot"


@dataclass(frozen=True)
class Robogram:
    """A named spectrum -> destination program.

    Because the input type is a :class:`Spectrum` (a value, compared as a
    multiset), output depends on the perceived multiset only; the
    compatibility requirement is structural here and property-tested.
    """

    name: str
    pgm: Callable[[Spectrum], Location]

    def __call__(self, spectrum: Spectrum) -> Location:
        return self.pgm(spectrum)


def smax_support(spectrum: Spectrum) -> tuple[Location, ...]:
    """Locations of maximal multiplicity, sorted; empty iff spectrum empty."""
    top = spectrum.max_multiplicity
    return tuple(loc for loc, mult in spectrum.pairs() if mult == top)


def extreme_center(spectrum: Spectrum) -> Location:
    """Midpoint of the leftmost and rightmost inhabited locations."""
    if spectrum.is_empty:
        raise ValueError("empty spectrum")
    support = spectrum.support
    return (support[0] + support[-1]) / 2


def is_extremal(loc: Location, spectrum: Spectrum) -> bool:
    """True iff loc is the minimum or maximum inhabited location."""
    if spectrum.is_empty:
        raise ValueError("empty spectrum")
    support = spectrum.support
    return loc == support[0] or loc == support[-1]


def middle_of_three(spectrum: Spectrum) -> Location:
    """The middle inhabited location; requires exactly three towers."""
    support = spectrum.support
    if len(support) != 3:
        raise ValueError(f"not three towers (support size {len(support)})")
    return support[1]


def gathering_pgm(spectrum: Spectrum) -> Location:
    """Destination for a robot perceiving ``spectrum`` from its own origin.

    Decision order:
      1. no robot observed -> stay at the origin;
      2. a unique tower of highest multiplicity -> go there;
      3. exactly three inhabited locations -> go to the one in between;
      4. already at one of the most external locations -> stay;
      5. otherwise -> go to the center of the most external locations.

    Total on all spectra; output lies in the convex hull of the support.
    """
    peaks = smax_support(spectrum)
    if not peaks:
        return ZERO
    if len(peaks) == 1:
        return peaks[0]
    if len(spectrum.support) == 3:
        return middle_of_three(spectrum)
    if is_extremal(ZERO, spectrum):
        return ZERO
    return extreme_center(spectrum)


GATHERING = Robogram("gathering", gathering_pgm)


def classify_phase(spectrum: Spectrum, origin: Location) -> PhaseTag:
    """Branch taken by an observer at ``origin`` of a global ``spectrum``."""
    local = spectrum.map(Frame(center=origin, zoom=ONE))
    peaks = smax_support(local)
    if not peaks:
        return PhaseTag.NO_ROBOT
    if len(peaks) == 1:
        return PhaseTag.UNIQUE_MAX
    if len(local.support) == 3:
        return PhaseTag.THREE_TOWERS
    if is_extremal(ZERO, local):
        return PhaseTag.STAY
    return PhaseTag.CENTER_MOVE


_REGISTRY: dict[str, Robogram] = {}


def register(robogram: Robogram) -> Robogram:
    if robogram.name in _REGISTRY:
        raise ValueError(f"robogram {robogram.name!r} already registered")
    _REGISTRY[robogram.name] = robogram
    return robogram


def get_robogram(name: str) -> Robogram:
    try:
        return _REGISTRY[name]
    except KeyError:
        known = ", ".join(sorted(_REGISTRY))
        raise ValueError(f"unknown robogram {name!r} (known: {known})") from None


def robogram_names() -> tuple[str, ...]:
    return tuple(sorted(_REGISTRY))


register(GATHERING)
