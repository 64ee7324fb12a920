"""Seedable simulator for detectable Byzantine agreement over an entangled resource."""

from .adversary import CommanderStrategyKind, LieutenantStrategyKind, traitor_claim
from .entanglement import (
    CommanderSymbol,
    JointPMF,
    NoisePreset,
    NoiseSpec,
    OutcomePattern,
    exact_pmf,
    games_count,
    games_max,
    joint_ones_probability,
    lieutenant_marginal,
    sample_outcome,
    traitor_detection_rate,
)
from .errors import DegenerateRunError, IndexPoolExhaustedError, InvalidParameterError
from .harness import SweepKind, SweepRow, SweepSpec, estimate_p_dba, run_sweep, state_histogram
from .protocol import (
    Order,
    ProtocolConfig,
    RunResult,
    ThresholdMode,
    Verdict,
    run_protocol,
)

__version__ = "0.1.0"

__all__ = [
    "CommanderStrategyKind",
    "CommanderSymbol",
    "DegenerateRunError",
    "IndexPoolExhaustedError",
    "InvalidParameterError",
    "JointPMF",
    "LieutenantStrategyKind",
    "NoisePreset",
    "NoiseSpec",
    "Order",
    "OutcomePattern",
    "ProtocolConfig",
    "RunResult",
    "SweepKind",
    "SweepRow",
    "SweepSpec",
    "ThresholdMode",
    "Verdict",
    "estimate_p_dba",
    "exact_pmf",
    "games_count",
    "games_max",
    "joint_ones_probability",
    "lieutenant_marginal",
    "run_protocol",
    "run_sweep",
    "sample_outcome",
    "state_histogram",
    "traitor_claim",
    "traitor_detection_rate",
    "__version__",
]
