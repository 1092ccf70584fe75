"""Exact geometry on the rational line: locations, configurations, spectra, frames.

Everything here is immutable and pure. Locations are exact rationals
(``fractions.Fraction``), never floats: tower detection relies on exact
equality, and every destination the gathering algorithm computes (midpoints
of rationals) stays rational.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

Location = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

# "num" or "num/den", optional leading minus, nothing else (no decimals).
_RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$")

# Unicode minus signs occasionally pasted from rendered math.
_MINUS_VARIANTS = ("−", "–")


def parse_location(text: str) -> Location:
    """Parse an exact rational from its wire form ``num`` or ``num/den``."""
    cleaned = text.strip()
    for variant in _MINUS_VARIANTS:
        cleaned = cleaned.replace(variant, "-")
    if not _RATIONAL_RE.match(cleaned):
        raise ValueError(f"bad rational literal: {text!r}")
    try:
        return Fraction(cleaned)
    except ZeroDivisionError:
        raise ValueError(f"bad rational literal (zero denominator): {text!r}") from None


def format_location(loc: Location) -> str:
    """Canonical wire form: lowest terms, ``num/den`` or plain ``num``."""
    return str(loc)


@dataclass(frozen=True)
class Frame:
    """A robot's private similarity of the line, x -> k*(x - center).

    ``center`` is the observing robot's own position (it sits at its local
    origin), ``zoom`` the demon-chosen unit, ``reflect`` the demon-chosen
    orientation flip; the combined factor k = +-zoom is never zero.
    """

    center: Location
    zoom: Fraction = ONE
    reflect: bool = False

    def __post_init__(self) -> None:
        if self.zoom <= 0:
            raise ValueError(f"zoom must be strictly positive, got {self.zoom}")

    @property
    def factor(self) -> Fraction:
        return -self.zoom if self.reflect else self.zoom

    def apply(self, loc: Location) -> Location:
        """Map a global location into this frame; apply(center) == 0."""
        return self.factor * (loc - self.center)

    def unapply(self, loc: Location) -> Location:
        """Inverse of :meth:`apply`; unapply(apply(x)) == x exactly."""
        return self.center + loc / self.factor


class Spectrum:
    """A multiset of inhabited locations (strong global multiplicity).

    This is what a robot perceives: positions with exact head-counts, no
    identities. Equality is multiset equality, independent of construction
    order. Instances are immutable.
    """

    __slots__ = ("_counts", "_support")

    def __init__(self, pairs: Mapping[Location, int] | Iterable[tuple[Location, int]] = ()):
        counts: dict[Location, int] = {}
        items = pairs.items() if isinstance(pairs, Mapping) else pairs
        for loc, mult in items:
            if not isinstance(mult, int) or mult < 1:
                raise ValueError(f"multiplicity must be a positive integer, got {mult!r}")
            key = Fraction(loc)
            counts[key] = counts.get(key, 0) + mult
        object.__setattr__(self, "_counts", counts)
        object.__setattr__(self, "_support", tuple(sorted(counts)))

    @classmethod
    def from_locations(cls, locations: Iterable[Location]) -> "Spectrum":
        return cls((loc, 1) for loc in locations)

    @property
    def support(self) -> tuple[Location, ...]:
        """All inhabited locations, strictly increasing."""
        return self._support

    @property
    def total(self) -> int:
        """Total multiplicity (the number of robots observed)."""
        return sum(self._counts.values())

    @property
    def is_empty(self) -> bool:
        return not self._counts

    @property
    def max_multiplicity(self) -> int:
        return max(self._counts.values(), default=0)

    def multiplicity(self, loc: Location) -> int:
        return self._counts.get(Fraction(loc), 0)

    def pairs(self) -> tuple[tuple[Location, int], ...]:
        """(location, multiplicity) pairs in increasing location order."""
        return tuple((loc, self._counts[loc]) for loc in self._support)

    def map(self, frame: Frame) -> "Spectrum":
        """Pointwise image under a frame; multiplicities are preserved."""
        return Spectrum((frame.apply(loc), mult) for loc, mult in self._counts.items())

    def __contains__(self, loc: object) -> bool:
        return isinstance(loc, (Fraction, int)) and self.multiplicity(Fraction(loc)) > 0

    def __iter__(self) -> Iterator[tuple[Location, int]]:
        return iter(self.pairs())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Spectrum):
            return NotImplemented
        return self._counts == other._counts

    def __hash__(self) -> int:
        return hash(frozenset(self._counts.items()))

    def __repr__(self) -> str:
        inner = ", ".join(f"{loc}:{mult}" for loc, mult in self.pairs())
        return f"Spectrum({{{inner}}})"

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Spectrum is immutable")


@dataclass(frozen=True)
class Configuration:
    """Positions of robots 0..n-1.

    Identifiers exist so the demon can activate subsets and so proofs-style
    checks can track individuals; no robogram ever sees them (robograms
    receive spectra only). Equality is per-identifier, not multiset equality.
    """

    positions: tuple[Location, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "positions", tuple(Fraction(p) for p in self.positions))

    @property
    def n(self) -> int:
        return len(self.positions)

    def __getitem__(self, rid: int) -> Location:
        return self.positions[rid]

    def spectrum(self) -> Spectrum:
        """The demon-side (global frame) spectrum of this configuration."""
        return Spectrum.from_locations(self.positions)

    def move(self, targets: Mapping[int, Location]) -> "Configuration":
        """New configuration with the given robots at their targets."""
        updated = list(self.positions)
        for rid, loc in targets.items():
            updated[rid] = loc
        return Configuration(tuple(updated))
