"""Exact outcome distribution, sampling, and bit-flip noise for the shared resource state.

One copy of the resource is an (n+1)-qubit entangled state split among n
generals: the commander holds two qubits, each of the n-1 lieutenants holds
one. Measured in the computational basis it collapses to one of exactly
2 + 2(n-1) patterns:

* commander ``00``: every lieutenant reads 1            (probability 1/3)
* commander ``11``: every lieutenant reads 0            (probability 1/3)
* commander ``01``: one random lieutenant reads 1, the rest 0
  (probability 1/(6(n-1)) per position)
* commander ``10``: one random lieutenant reads 0, the rest 1
  (probability 1/(6(n-1)) per position)

Every later protocol phase consumes only these classical outcomes, so the
simulator samples patterns directly; the sampled distribution is exact.
Channel noise is an independent flip of each measured bit (both commander
bits included) with a common probability.

All functions are pure given an explicit ``numpy.random.Generator``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum, IntEnum
from fractions import Fraction
from typing import Mapping

import numpy as np

from .errors import InvalidParameterError

__all__ = [
    "CommanderSymbol",
    "NoisePreset",
    "NoiseSpec",
    "OutcomePattern",
    "JointPMF",
    "PRESET_FLIP_PROBABILITY",
    "exact_pmf",
    "sample_measurements",
    "sample_outcome",
    "flip_bits",
    "apply_noise",
    "flip_disagreement",
    "lieutenant_marginal",
    "lieutenant_marginal_exact",
    "joint_ones_probability",
    "joint_ones_probability_exact",
    "traitor_detection_rate",
    "traitor_detection_rate_exact",
    "games_count",
    "games_max",
    "pmf_csv",
]


def _require_player_count(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or n < 3:
        raise InvalidParameterError(f"player count must be an integer >= 3, got {n!r}")


class CommanderSymbol(IntEnum):
    """Two-bit commander outcome, encoded as ``(first_bit << 1) | second_bit``."""

    C00 = 0
    C01 = 1
    C10 = 2
    C11 = 3

    @property
    def bits(self) -> tuple[int, int]:
        return (self.value >> 1) & 1, self.value & 1

    @property
    def text(self) -> str:
        return f"{(self.value >> 1) & 1}{self.value & 1}"

    @classmethod
    def from_bits(cls, first: int, second: int) -> "CommanderSymbol":
        return cls(((int(first) & 1) << 1) | (int(second) & 1))


class NoisePreset(str, Enum):
    """Effective per-bit flip levels for the supported channel presets."""

    NOISELESS = "noiseless"
    UNMITIGATED = "unmitigated"
    DD_ONLY = "dd"
    EM_DD = "emdd"
    CUSTOM = "custom"


PRESET_FLIP_PROBABILITY: Mapping[NoisePreset, float] = {
    NoisePreset.NOISELESS: 0.0,
    NoisePreset.UNMITIGATED: 0.338,
    NoisePreset.DD_ONLY: 0.207,
    NoisePreset.EM_DD: 0.175,
}


@dataclass(frozen=True)
class NoiseSpec:
    """Independent symmetric flip applied to every measured bit of every copy."""

    preset: NoisePreset = NoisePreset.NOISELESS
    flip_probability: float = 0.0

    def __post_init__(self) -> None:
        p = self.flip_probability
        if not 0.0 <= p <= 1.0 or math.isnan(p):
            raise InvalidParameterError(f"flip probability must lie in [0, 1], got {p!r}")
        if self.preset is not NoisePreset.CUSTOM:
            expected = PRESET_FLIP_PROBABILITY[self.preset]
            if p != expected:
                raise InvalidParameterError(
                    f"preset {self.preset.value!r} fixes the flip probability to {expected}, got {p}"
                )

    @classmethod
    def noiseless(cls) -> "NoiseSpec":
        return cls()

    @classmethod
    def custom(cls, flip_probability: float) -> "NoiseSpec":
        return cls(NoisePreset.CUSTOM, float(flip_probability))

    @classmethod
    def from_preset(cls, preset: "NoisePreset | str") -> "NoiseSpec":
        preset = NoisePreset(preset)
        if preset is NoisePreset.CUSTOM:
            raise InvalidParameterError("custom noise requires an explicit flip probability")
        return cls(preset, PRESET_FLIP_PROBABILITY[preset])


@dataclass(frozen=True)
class OutcomePattern:
    """One joint measurement record: commander symbol plus one bit per lieutenant."""

    commander_symbol: CommanderSymbol
    lieutenant_bits: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.lieutenant_bits) < 2:
            raise InvalidParameterError("a pattern needs at least two lieutenants (n >= 3)")
        if any(b not in (0, 1) for b in self.lieutenant_bits):
            raise InvalidParameterError("lieutenant bits must be 0 or 1")

    @property
    def n(self) -> int:
        return len(self.lieutenant_bits) + 1

    def bit_string(self) -> str:
        """All measured bits, commander bits first."""
        return self.commander_symbol.text + "".join(str(b) for b in self.lieutenant_bits)


@dataclass(frozen=True)
class JointPMF:
    """Exact probability mass function over outcome patterns for a given n.

    Probabilities are exact rationals; use :meth:`float_entries` for doubles.
    """

    n: int
    entries: Mapping[OutcomePattern, Fraction]

    def probability(self, pattern: OutcomePattern) -> Fraction:
        return self.entries.get(pattern, Fraction(0))

    def support(self) -> frozenset[OutcomePattern]:
        return frozenset(self.entries)

    def total(self) -> Fraction:
        return sum(self.entries.values(), Fraction(0))

    def float_entries(self) -> dict[OutcomePattern, float]:
        return {pattern: float(prob) for pattern, prob in self.entries.items()}


def exact_pmf(n: int) -> JointPMF:
    """Exact pmf of one noiseless copy for ``n`` generals.

    Mass 1/3 on each of the two all-agree patterns and 1/(6(n-1)) on each
    one-hot and one-cold pattern.
    """
    _require_player_count(n)
    bulk = Fraction(1, 3)
    side = Fraction(1, 6 * (n - 1))
    entries: dict[OutcomePattern, Fraction] = {
        OutcomePattern(CommanderSymbol.C00, (1,) * (n - 1)): bulk,
        OutcomePattern(CommanderSymbol.C11, (0,) * (n - 1)): bulk,
    }
    for pos in range(n - 1):
        one_hot = tuple(1 if i == pos else 0 for i in range(n - 1))
        one_cold = tuple(0 if i == pos else 1 for i in range(n - 1))
        entries[OutcomePattern(CommanderSymbol.C01, one_hot)] = side
        entries[OutcomePattern(CommanderSymbol.C10, one_cold)] = side
    return JointPMF(n, entries)


# Sampling draws a pattern class first, then a position for the one-hot /
# one-cold classes. Class order: all-ones, all-zeros, one-hot, one-cold.
_CLASS_CDF = np.array([1.0 / 3.0, 2.0 / 3.0, 5.0 / 6.0, 1.0])
_CLASS_TO_SYMBOL = np.array(
    [CommanderSymbol.C00, CommanderSymbol.C11, CommanderSymbol.C01, CommanderSymbol.C10],
    dtype=np.uint8,
)


def sample_measurements(
    n: int, size: int, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    """Draw ``size`` independent noiseless copies.

    Returns ``(symbols, bits)`` where ``symbols`` has shape ``(size,)`` with
    :class:`CommanderSymbol` values and ``bits`` has shape ``(size, n - 1)``.
    """
    _require_player_count(n)
    cls = np.searchsorted(_CLASS_CDF, rng.random(size), side="right")
    pos = rng.integers(0, n - 1, size=size)
    bits = np.zeros((size, n - 1), dtype=np.uint8)
    bits[cls == 0] = 1
    hot = cls == 2
    bits[hot, pos[hot]] = 1
    cold = cls == 3
    bits[cold] = 1
    bits[cold, pos[cold]] = 0
    return _CLASS_TO_SYMBOL[cls], bits


def sample_outcome(n: int, rng: np.random.Generator) -> OutcomePattern:
    """Draw one noiseless pattern distributed per :func:`exact_pmf`."""
    symbols, bits = sample_measurements(n, 1, rng)
    return OutcomePattern(CommanderSymbol(int(symbols[0])), tuple(int(b) for b in bits[0]))


def flip_bits(
    symbols: np.ndarray,
    bits: np.ndarray,
    flip_probability: float,
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray]:
    """Flip every measured bit independently with the given probability.

    Both commander bits flip too; the returned symbols are re-derived from the
    flipped bits.
    """
    if not 0.0 <= flip_probability <= 1.0:
        raise InvalidParameterError(f"flip probability must lie in [0, 1], got {flip_probability!r}")
    k, width = bits.shape
    flips = rng.random((k, width + 2)) < flip_probability
    first = ((symbols >> 1) & 1) ^ flips[:, 0]
    second = (symbols & 1) ^ flips[:, 1]
    new_symbols = ((first << 1) | second).astype(np.uint8)
    new_bits = bits ^ flips[:, 2:]
    return new_symbols, new_bits.astype(np.uint8)


def apply_noise(
    pattern: OutcomePattern, spec: NoiseSpec, rng: np.random.Generator
) -> OutcomePattern:
    """Pass a single pattern through the flip channel."""
    symbols = np.array([int(pattern.commander_symbol)], dtype=np.uint8)
    bits = np.array([pattern.lieutenant_bits], dtype=np.uint8)
    symbols, bits = flip_bits(symbols, bits, spec.flip_probability, rng)
    return OutcomePattern(CommanderSymbol(int(symbols[0])), tuple(int(b) for b in bits[0]))


def flip_disagreement(flip_probability: float) -> float:
    """Probability that two bits equal before the channel disagree after it."""
    return 2.0 * flip_probability * (1.0 - flip_probability)


def lieutenant_marginal(n: int) -> float:
    """P(one fixed lieutenant reads 1) on a noiseless copy; 1/2 for every n."""
    return float(lieutenant_marginal_exact(n))


def lieutenant_marginal_exact(n: int) -> Fraction:
    _require_player_count(n)
    return Fraction(1, 2)


def joint_ones_probability(n: int) -> float:
    """P(two fixed distinct lieutenants both read 1) on a noiseless copy."""
    return float(joint_ones_probability_exact(n))


def joint_ones_probability_exact(n: int) -> Fraction:
    _require_player_count(n)
    return Fraction(1, 2) - Fraction(1, 3 * (n - 1))


def traitor_detection_rate(n: int) -> float:
    """Failure rate a fabricating sender induces in a loyal receiver, no noise.

    Equals ``1 - joint_ones_probability(n) / lieutenant_marginal(n)``.
    """
    return float(traitor_detection_rate_exact(n))


def traitor_detection_rate_exact(n: int) -> Fraction:
    _require_player_count(n)
    return Fraction(2, 3 * (n - 1))


def games_count(n: int, m: int) -> int:
    """Pairwise games under a loyal commander with ``m`` traitor lieutenants.

    ``m(n-1-m)``, clamped below at zero (with m >= n-1 no disagreeing pair
    exists).
    """
    _require_player_count(n)
    if not 0 <= m <= n:
        raise InvalidParameterError(f"traitor count must lie in [0, {n}], got {m}")
    return max(0, m * (n - 1 - m))


def games_max(n: int) -> int:
    """Largest achievable game count over all order splits: floor((n-1)^2 / 4).

    The real-valued bound (n-1)^2/4 is attained only for odd n; games are
    integer-counted.
    """
    _require_player_count(n)
    return ((n - 1) ** 2) // 4


def pmf_csv(pmf: JointPMF) -> str:
    """CSV export: commander_symbol, lieutenant_bits, probability (17 significant digits)."""
    lines = ["commander_symbol,lieutenant_bits,probability"]
    for pattern in sorted(pmf.entries, key=lambda q: q.bit_string()):
        bits = "".join(str(b) for b in pattern.lieutenant_bits)
        prob = float(pmf.entries[pattern])
        lines.append(f"{pattern.commander_symbol.text},{bits},{prob:.17g}")
    return "\n".join(lines) + "\n"
