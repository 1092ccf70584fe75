"""gatherline: gathering oblivious robots on the rational line, verified at runtime.

A simulator, property-checking harness and interactive adversary playground
for the four-phase line-gathering algorithm under the semi-synchronous
scheduler model, built on exact rational arithmetic end to end.
"""

__version__ = "0.1.0"

from .analysis import (
    Measure,
    forbidden,
    gather_target,
    gathered_at,
    lt_conf,
    measure,
    phase_label,
    phase_of,
)
from .checks import (
    CheckReport,
    ConfigDistribution,
    Counterexample,
    EnumerationReport,
    check_frame_invariance,
    check_never_forbidden,
    check_round_decrease,
    check_same_destination,
    enumerate_small,
    run_suite,
)
from .execution import (
    DEFAULT_ZOOM_POOL,
    Demon,
    DemonExhausted,
    DemonicAction,
    FrameChoice,
    Trace,
    TraceStep,
    apply_round,
    check_fairness,
    destination,
    execute,
    make_demon,
    moving,
    termination_budget,
)
from .geometry import Configuration, Frame, Location, Spectrum, format_location, parse_location
from .robogram import (
    GATHERING,
    PhaseTag,
    Robogram,
    classify_phase,
    extreme_center,
    gathering_pgm,
    get_robogram,
    is_extremal,
    middle_of_three,
    smax_support,
)
from . import mutants  # registers the self-test robograms

__all__ = [name for name in dir() if not name.startswith("_")]
