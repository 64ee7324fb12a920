"""Monte Carlo sweeps over protocol parameters, with reproducible seeding.

Every iteration draws its generator from a seed sequence built over
``(master seed, sweep kind tag, axis index, iteration index)``, so results
are independent of scheduling: rows computed in parallel equal rows computed
sequentially, and identical sweep specs produce byte-identical CSV output.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from enum import Enum
from typing import Sequence

import numpy as np

from .entanglement import NoiseSpec, flip_bits, sample_measurements
from .errors import InvalidParameterError
from .protocol import ProtocolConfig, run_protocol

__all__ = [
    "SweepKind",
    "SweepSpec",
    "SweepRow",
    "SWEEP_CSV_HEADER",
    "iteration_rng",
    "wilson_interval",
    "estimate_p_dba",
    "run_sweep",
    "sweep_csv",
    "write_sweep_csv",
    "state_histogram",
    "histogram_csv",
    "write_histogram_csv",
]


class SweepKind(str, Enum):
    STATE_HISTOGRAM = "histogram"
    NOISE = "noise"
    TRAITORS = "traitors"
    SIZE = "size"
    SHOTS = "shots"


_KIND_TAGS = {
    SweepKind.NOISE: 1,
    SweepKind.TRAITORS: 2,
    SweepKind.SIZE: 3,
    SweepKind.SHOTS: 4,
    SweepKind.STATE_HISTOGRAM: 5,
}
_SINGLE_ESTIMATE_TAG = 0

SWEEP_CSV_HEADER = (
    "sweep_kind,axis_name,axis_value,n,m,commander_traitor,preset,p,k,l,"
    "iterations,successes,degenerates,p_dba,ci_low,ci_high,master_seed"
)

_WILSON_Z = 1.959963984540054  # two-sided 95%


def iteration_rng(
    master_seed: int, kind_tag: int, axis_index: int, iteration: int
) -> np.random.Generator:
    """Deterministic per-iteration stream, independent of execution order."""
    seq = np.random.SeedSequence([master_seed, kind_tag, axis_index, iteration])
    return np.random.Generator(np.random.PCG64(seq))


def wilson_interval(successes: int, trials: int) -> tuple[float, float]:
    """95% Wilson score interval for a binomial proportion."""
    if trials <= 0:
        raise InvalidParameterError("the interval needs at least one trial")
    z2 = _WILSON_Z * _WILSON_Z
    phat = successes / trials
    denom = 1.0 + z2 / trials
    center = (phat + z2 / (2.0 * trials)) / denom
    half = (
        _WILSON_Z
        * math.sqrt(phat * (1.0 - phat) / trials + z2 / (4.0 * trials * trials))
        / denom
    )
    # At the boundaries center and half agree analytically; rounding noise
    # must not push the bound past 0 or 1.
    low = 0.0 if successes == 0 else max(0.0, center - half)
    high = 1.0 if successes == trials else min(1.0, center + half)
    return low, high


@dataclass(frozen=True)
class SweepRow:
    """One sweep point: estimate, interval, and full parameterization."""

    sweep_kind: str
    axis_name: str
    axis_value: float
    n: int
    m: int
    commander_traitor: str  # "true" | "false" | "random"
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


@dataclass(frozen=True)
class SweepSpec:
    """A swept axis over a base configuration."""

    kind: SweepKind
    base: ProtocolConfig
    axis_values: tuple[float, ...]
    iterations: int
    master_seed: int
    workers: int = 1

    def __post_init__(self) -> None:
        if not self.axis_values:
            raise InvalidParameterError("a sweep needs at least one axis value")
        if self.iterations < 1:
            raise InvalidParameterError("a sweep needs at least one iteration")
        if self.workers < 1:
            raise InvalidParameterError("worker count must be >= 1")


def _count_runs(
    config: ProtocolConfig,
    master_seed: int,
    kind_tag: int,
    axis_index: int,
    start: int,
    stop: int,
) -> tuple[int, int]:
    """Successes and degenerates over iterations [start, stop)."""
    successes = 0
    degenerates = 0
    for iteration in range(start, stop):
        rng = iteration_rng(master_seed, kind_tag, axis_index, iteration)
        outcome = run_protocol(config, rng)
        successes += outcome.dba_success
        degenerates += outcome.degenerate
    return successes, degenerates


def _row(
    *,
    kind: SweepKind | None,
    axis_name: str,
    axis_value: float,
    config: ProtocolConfig,
    iterations: int,
    successes: int,
    degenerates: int,
    master_seed: int,
) -> SweepRow:
    ci_low, ci_high = wilson_interval(successes, iterations)
    if config.commander_traitor is None:
        commander_traitor = "random"
    else:
        commander_traitor = "true" if config.commander_traitor else "false"
    return SweepRow(
        sweep_kind=kind.value if kind is not None else "single",
        axis_name=axis_name,
        axis_value=float(axis_value),
        n=config.n,
        m=config.effective_traitor_count,
        commander_traitor=commander_traitor,
        preset=config.noise.preset.value,
        p=config.noise.flip_probability,
        k=config.k,
        l=config.effective_game_length,
        iterations=iterations,
        successes=successes,
        degenerates=degenerates,
        p_dba=successes / iterations,
        ci_low=ci_low,
        ci_high=ci_high,
        master_seed=master_seed,
    )


def estimate_p_dba(
    config: ProtocolConfig,
    iterations: int,
    master_seed: int,
    *,
    kind: SweepKind | None = None,
    axis_index: int = 0,
    axis_name: str = "single",
    axis_value: float = 0.0,
    workers: int = 1,
) -> SweepRow:
    """Monte Carlo estimate of P(DBA) for one configuration.

    Degenerate runs land in the ``degenerates`` column and count against the
    denominator, never the numerator.
    """
    if iterations < 1:
        raise InvalidParameterError("at least one iteration is required")
    config.validate()
    tag = _KIND_TAGS[kind] if kind is not None else _SINGLE_ESTIMATE_TAG
    if workers <= 1 or iterations < 2 * workers:
        successes, degenerates = _count_runs(config, master_seed, tag, axis_index, 0, iterations)
    else:
        chunk = math.ceil(iterations / workers)
        bounds = [(i, min(i + chunk, iterations)) for i in range(0, iterations, chunk)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(
                pool.map(
                    _count_runs,
                    [config] * len(bounds),
                    [master_seed] * len(bounds),
                    [tag] * len(bounds),
                    [axis_index] * len(bounds),
                    [b[0] for b in bounds],
                    [b[1] for b in bounds],
                )
            )
        successes = sum(p[0] for p in parts)
        degenerates = sum(p[1] for p in parts)
    return _row(
        kind=kind,
        axis_name=axis_name,
        axis_value=axis_value,
        config=config,
        iterations=iterations,
        successes=successes,
        degenerates=degenerates,
        master_seed=master_seed,
    )


def _apply_axis(base: ProtocolConfig, kind: SweepKind, value: float) -> ProtocolConfig:
    if kind is SweepKind.NOISE:
        return replace(base, noise=NoiseSpec.custom(float(value)))
    if kind is SweepKind.TRAITORS:
        return replace(base, traitor_count=int(value), traitor_ids=None)
    if kind is SweepKind.SIZE:
        return replace(base, n=int(value))
    if kind is SweepKind.SHOTS:
        return replace(base, k=int(value))
    raise InvalidParameterError(
        "state histograms have their own schema; use state_histogram()"
    )


def run_sweep(spec: SweepSpec) -> list[SweepRow]:
    """One row per axis value; fully deterministic from the master seed."""
    axis_name = spec.kind.value
    rows = []
    for axis_index, value in enumerate(spec.axis_values):
        config = _apply_axis(spec.base, spec.kind, value)
        rows.append(
            estimate_p_dba(
                config,
                spec.iterations,
                spec.master_seed,
                kind=spec.kind,
                axis_index=axis_index,
                axis_name=axis_name,
                axis_value=float(value),
                workers=spec.workers,
            )
        )
    return rows


def _fmt(value: float) -> str:
    return f"{value:.10g}"


def sweep_csv(rows: Sequence[SweepRow]) -> str:
    lines = [SWEEP_CSV_HEADER]
    for r in rows:
        lines.append(
            ",".join(
                [
                    r.sweep_kind,
                    r.axis_name,
                    _fmt(r.axis_value),
                    str(r.n),
                    str(r.m),
                    r.commander_traitor,
                    r.preset,
                    _fmt(r.p),
                    str(r.k),
                    str(r.l),
                    str(r.iterations),
                    str(r.successes),
                    str(r.degenerates),
                    _fmt(r.p_dba),
                    _fmt(r.ci_low),
                    _fmt(r.ci_high),
                    str(r.master_seed),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def write_sweep_csv(rows: Sequence[SweepRow], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(sweep_csv(rows))


def state_histogram(
    n: int,
    noise: NoiseSpec,
    iterations: int,
    samples_per_iteration: int,
    master_seed: int,
) -> dict[str, float]:
    """Average per-pattern frequencies of measuring noisy copies.

    Patterns are full bit strings, commander bits first. Noise populates
    patterns outside the noiseless support; all observed patterns are
    emitted.
    """
    if iterations < 1 or samples_per_iteration < 1:
        raise InvalidParameterError("iterations and samples must be >= 1")
    width = n - 1
    counts = np.zeros(1 << (width + 2), dtype=np.int64)
    weights = 1 << np.arange(width - 1, -1, -1, dtype=np.int64)
    for iteration in range(iterations):
        rng = iteration_rng(master_seed, _KIND_TAGS[SweepKind.STATE_HISTOGRAM], 0, iteration)
        symbols, bits = sample_measurements(n, samples_per_iteration, rng)
        if noise.flip_probability > 0.0:
            symbols, bits = flip_bits(symbols, bits, noise.flip_probability, rng)
        codes = (symbols.astype(np.int64) << width) + bits.astype(np.int64) @ weights
        counts += np.bincount(codes, minlength=counts.size)
    total = iterations * samples_per_iteration
    freqs: dict[str, float] = {}
    for code in np.flatnonzero(counts):
        pattern = format(int(code), f"0{width + 2}b")
        freqs[pattern] = counts[code] / total
    return freqs


def histogram_csv(frequencies: dict[str, float]) -> str:
    lines = ["pattern,frequency"]
    for pattern in sorted(frequencies):
        lines.append(f"{pattern},{_fmt(frequencies[pattern])}")
    return "\n".join(lines) + "\n"


def write_histogram_csv(frequencies: dict[str, float], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(histogram_csv(frequencies))
