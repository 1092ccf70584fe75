"""Deliberately broken robograms.

These exist to prove the checkers can fail: each violates at least one of
the correctness properties the harness verifies, and `check --robogram`
(self-test mode) must catch all of them with a replayable counterexample.
They are never used by the simulator's gathering runs.
"""

from __future__ import annotations

from .geometry import ONE, ZERO, Location, Spectrum
from .robogram import Robogram, register


def _go_to_min(spectrum: Spectrum) -> Location:
    # Can merge two towers into a bivalent pair: breaks never-forbidden.
    if spectrum.is_empty:
        return ZERO
    return spectrum.support[0]


def _go_to_max(spectrum: Spectrum) -> Location:
    if spectrum.is_empty:
        return ZERO
    return spectrum.support[-1]


def _own_plus_one(spectrum: Spectrum) -> Location:
    # One local unit to the right of the observer: destination depends on
    # the frame, so movers disagree and rounds are not frame-invariant.
    return ONE


MUTANT_GO_TO_MIN = register(Robogram("mutant-go-to-min", _go_to_min))
MUTANT_GO_TO_MAX = register(Robogram("mutant-go-to-max", _go_to_max))
MUTANT_PLUS_ONE = register(Robogram("mutant-plus-one", _own_plus_one))

MUTANTS: tuple[Robogram, ...] = (MUTANT_GO_TO_MIN, MUTANT_GO_TO_MAX, MUTANT_PLUS_ONE)
