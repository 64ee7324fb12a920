"""Pydantic request/response models for the simulation service.

These models are the wire format shared by the HTTP endpoints and the CLI
thin client; conversions to the core dataclasses live here so both surfaces
validate identically.
"""

from __future__ import annotations

from pydantic import BaseModel, Field

from ..adversary import CommanderStrategyKind, LieutenantStrategyKind
from ..entanglement import NoisePreset, NoiseSpec, PRESET_FLIP_PROBABILITY
from ..errors import InvalidParameterError
from ..harness import SweepKind, SweepRow, SweepSpec
from ..protocol import Order, ProtocolConfig, RunResult, ThresholdMode


class NoiseParams(BaseModel):
    """Either a named preset or an explicit flip probability."""

    preset: str = "noiseless"
    p: float | None = None

    def to_spec(self) -> NoiseSpec:
        preset = NoisePreset(self.preset)
        if self.p is not None:
            if preset is not NoisePreset.CUSTOM and self.p != PRESET_FLIP_PROBABILITY[preset]:
                raise InvalidParameterError(
                    f"preset {preset.value!r} conflicts with explicit p={self.p}"
                )
            return NoiseSpec.custom(self.p) if preset is NoisePreset.CUSTOM else NoiseSpec.from_preset(preset)
        if preset is NoisePreset.CUSTOM:
            raise InvalidParameterError("custom noise requires an explicit p")
        return NoiseSpec.from_preset(preset)


class RunRequest(BaseModel):
    n: int
    traitors: int = 0
    traitor_ids: list[int] | None = None
    commander_traitor: bool | None = None
    noise: NoiseParams = Field(default_factory=NoiseParams)
    shots: int = 1000
    game_len: int | None = None
    verify_frac: float = 0.2
    commander_strategy: str | None = None
    lieutenant_strategy: str = "opposite-claim"
    commander_order: str | None = None
    threshold: str = ThresholdMode.KNOWN_NOISE.value
    seed: int | None = None

    def to_config(self) -> ProtocolConfig:
        return ProtocolConfig(
            n=self.n,
            k=self.shots,
            noise=self.noise.to_spec(),
            traitor_count=self.traitors,
            traitor_ids=tuple(self.traitor_ids) if self.traitor_ids is not None else None,
            commander_traitor=self.commander_traitor,
            traitor_commander_strategy=(
                CommanderStrategyKind(self.commander_strategy)
                if self.commander_strategy is not None
                else None
            ),
            lieutenant_strategy=LieutenantStrategyKind(self.lieutenant_strategy),
            commander_order=Order(self.commander_order) if self.commander_order else None,
            verify_fraction=self.verify_frac,
            game_length=self.game_len,
            threshold_mode=ThresholdMode(self.threshold),
            seed=self.seed,
        )


class RunResponse(BaseModel):
    """The line-oriented run record."""

    seed: int | None
    n: int
    m: int
    commander_traitor: bool
    p: float
    k: int
    l: int
    g_actual: int
    dba_success: bool
    degenerate: bool
    actions: dict[str, str]

    @classmethod
    def from_result(cls, result: RunResult) -> "RunResponse":
        return cls(**result.record())


class SweepRequest(BaseModel):
    kind: str
    axis: list[float]
    iterations: int = 1000
    seed: int = 0
    workers: int = 1
    base: RunRequest

    def to_spec(self) -> SweepSpec:
        return SweepSpec(
            kind=SweepKind(self.kind),
            base=self.base.to_config(),
            axis_values=tuple(self.axis),
            iterations=self.iterations,
            master_seed=self.seed,
            workers=self.workers,
        )


class SweepRowModel(BaseModel):
    sweep_kind: str
    axis_name: str
    axis_value: float
    n: int
    m: int
    commander_traitor: str
    preset: str
    p: float
    k: int
    l: int
    iterations: int
    successes: int
    degenerates: int
    p_dba: float
    ci_low: float
    ci_high: float
    master_seed: int

    @classmethod
    def from_row(cls, row: SweepRow) -> "SweepRowModel":
        return cls(**row.__dict__)


class SweepResponse(BaseModel):
    rows: list[SweepRowModel]
    csv: str


class HistogramRequest(BaseModel):
    n: int
    noise: NoiseParams = Field(default_factory=NoiseParams)
    iterations: int = 100
    samples: int = 8192
    seed: int = 0


class HistogramResponse(BaseModel):
    n: int
    preset: str
    p: float
    iterations: int
    samples: int
    seed: int
    frequencies: dict[str, float]
    csv: str


class RationalValue(BaseModel):
    numerator: int
    denominator: int
    value: float


class PMFEntry(BaseModel):
    commander_symbol: str
    lieutenant_bits: str
    numerator: int
    denominator: int
    probability: float


class GamesEntry(BaseModel):
    m: int
    games: int


class OracleResponse(BaseModel):
    """Closed-form quantities for a given player count, exact and as doubles."""

    n: int
    lieutenant_marginal: RationalValue
    joint_ones_probability: RationalValue
    traitor_detection_rate: RationalValue
    games: list[GamesEntry]
    games_max: int
    pmf: list[PMFEntry]
    pmf_csv: str


class HealthResponse(BaseModel):
    status: str
    version: str
