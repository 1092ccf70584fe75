from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from gatherline.geometry import Spectrum
from gatherline.traces import parse_config_text

settings.register_profile(
    "gatherline",
    deadline=None,
    max_examples=100,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("gatherline")


def frac(text: str | int) -> Fraction:
    return Fraction(text)


def spectrum_of_text(text: str) -> Spectrum:
    """Build a spectrum from "loc:mult,..." text (test shorthand)."""
    return parse_config_text(text).spectrum()


# The worked example execution: four towers collapse to 3/2.
FIG_A = "0:3,1:1,5/2:1,3:3"
FIG_B = "0:3,3/2:2,3:3"
FIG_C = "0:2,3/2:5,3:1"
FIG_D = "3/2:8"


@pytest.fixture
def fig_a():
    return parse_config_text(FIG_A)


@pytest.fixture
def fig_b():
    return parse_config_text(FIG_B)


@pytest.fixture
def fig_c():
    return parse_config_text(FIG_C)


@pytest.fixture
def fig_d():
    return parse_config_text(FIG_D)
