"""Four-phase agreement state machine: distribute, verify, issue orders, play games.

A run distributes ``k`` indexed copies of the resource state, estimates the
channel quality QKD-style on a random index subset, lets the commander send
each lieutenant an order plus supporting indices, and resolves disagreeing
order claims through pairwise index-exchange games. Each game side counts how
often its own bit contradicts the opponent's claimed order and compares the
failure rate against a noise-dependent threshold to decide whether the
opponent or the commander is the traitor. Detectable broadcast succeeds when
every loyal lieutenant ends on the commander's order (loyal commander) or all
loyal lieutenants end on one common action (traitorous commander).

Runs are sequential state machines; every operation is deterministic given an
explicit random generator, so concurrent runs are safe when each owns its own
generator.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING, Iterable, Mapping, Sequence

import numpy as np

from .entanglement import (
    CommanderSymbol,
    NoiseSpec,
    flip_bits,
    flip_disagreement,
    sample_measurements,
    traitor_detection_rate,
)
from .errors import DegenerateRunError, InvalidParameterError

if TYPE_CHECKING:  # circular at runtime: adversary imports these types
    from .adversary import CommanderStrategyKind, LieutenantStrategyKind

__all__ = [
    "Order",
    "Role",
    "Loyalty",
    "Verdict",
    "ThresholdMode",
    "GeneralId",
    "Roster",
    "OutcomeTable",
    "VerificationStats",
    "GameTranscript",
    "GameRecord",
    "ProtocolConfig",
    "RunResult",
    "distribute",
    "verify",
    "estimate_flip_disagreement",
    "issue_orders",
    "find_disagreements",
    "play_game",
    "classification_threshold",
    "classify",
    "finalize_actions",
    "evaluate_dba",
    "run_protocol",
]


class Order(str, Enum):
    """Commander order; retreat is carried by symbol 00, attack by symbol 11."""

    RETREAT = "retreat"
    ATTACK = "attack"

    @property
    def symbol(self) -> CommanderSymbol:
        return CommanderSymbol.C00 if self is Order.RETREAT else CommanderSymbol.C11

    @property
    def lieutenant_bit(self) -> int:
        """Bit a lieutenant reads on a genuine copy carrying this order."""
        return 1 if self is Order.RETREAT else 0

    @property
    def opposite(self) -> "Order":
        return Order.ATTACK if self is Order.RETREAT else Order.RETREAT


class Role(str, Enum):
    COMMANDER = "commander"
    LIEUTENANT = "lieutenant"


class Loyalty(str, Enum):
    LOYAL = "loyal"
    TRAITOR = "traitor"


class Verdict(str, Enum):
    OPPONENT_TRAITOR = "opponent-traitor"
    COMMANDER_TRAITOR = "commander-traitor"


class ThresholdMode(str, Enum):
    """Where the classification threshold's noise rate comes from.

    ``known-noise`` derives it from the configured channel (the threshold is
    predetermined); ``estimated`` uses the pooled verification-phase estimate.
    """

    KNOWN_NOISE = "known-noise"
    ESTIMATED = "estimated"


@dataclass(frozen=True)
class GeneralId:
    index: int
    role: Role
    loyalty: Loyalty


@dataclass(frozen=True)
class Roster:
    """Player list for one run. General 0 is the commander."""

    n: int
    traitors: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(set(self.traitors)) != len(self.traitors):
            raise InvalidParameterError("traitor ids must be unique")
        if any(not 0 <= t < self.n for t in self.traitors):
            raise InvalidParameterError("traitor ids must lie in [0, n)")

    def is_traitor(self, index: int) -> bool:
        return index in self.traitors

    @property
    def commander_loyal(self) -> bool:
        return 0 not in self.traitors

    @property
    def lieutenants(self) -> range:
        return range(1, self.n)

    def loyal_lieutenants(self) -> tuple[int, ...]:
        return tuple(i for i in self.lieutenants if not self.is_traitor(i))

    def general(self, index: int) -> GeneralId:
        role = Role.COMMANDER if index == 0 else Role.LIEUTENANT
        loyalty = Loyalty.TRAITOR if self.is_traitor(index) else Loyalty.LOYAL
        return GeneralId(index, role, loyalty)

    def generals(self) -> tuple[GeneralId, ...]:
        return tuple(self.general(i) for i in range(self.n))


@dataclass
class OutcomeTable:
    """Per-copy measured bits for one run, split into per-general views.

    ``commander_symbols[i]`` is the commander's two-bit symbol for copy ``i``;
    ``lieutenant_bits[i, j]`` is lieutenant ``j + 1``'s bit. Honest components
    read only their own view through the accessors. The verification subset is
    spent globally; order lists never include it.
    """

    n: int
    k: int
    commander_symbols: np.ndarray
    lieutenant_bits: np.ndarray
    verification_mask: np.ndarray = field(default=None)  # type: ignore[assignment]
    verified: bool = False
    order_lists: dict[int, np.ndarray] = field(default_factory=dict)
    orders_received: dict[int, Order] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.verification_mask is None:
            self.verification_mask = np.zeros(self.k, dtype=bool)

    def commander_view(self) -> np.ndarray:
        return self.commander_symbols

    def lieutenant_view(self, index: int) -> np.ndarray:
        if not 1 <= index < self.n:
            raise InvalidParameterError(f"lieutenant index must lie in [1, {self.n}), got {index}")
        return self.lieutenant_bits[:, index - 1]

    def unspent_mask(self) -> np.ndarray:
        return ~self.verification_mask


def distribute(
    n: int, k: int, noise: NoiseSpec, rng: np.random.Generator
) -> OutcomeTable:
    """Sample ``k`` independent noisy copies and split them into per-general views."""
    if k < 10:
        raise InvalidParameterError(f"copy count must be >= 10, got {k}")
    symbols, bits = sample_measurements(n, k, rng)
    if noise.flip_probability > 0.0:
        symbols, bits = flip_bits(symbols, bits, noise.flip_probability, rng)
    return OutcomeTable(n=n, k=k, commander_symbols=symbols, lieutenant_bits=bits)


def estimate_flip_disagreement(raw_mismatch: float, n: int) -> float:
    """Recover the channel's pair-disagreement level from a raw mismatch fraction.

    Raw mismatches are counted between two lieutenants on copies whose observed
    commander symbol is 00 or 11. That screen lets one-hot/one-cold copies
    through (flipped commander bits), which inflates the fraction above the
    pure flip-disagreement level s = 2p(1-p). Solving the mixing relation

        raw = s * (2n - (n+3) s) / ((n-1) (2 - s))

    for s removes the inflation exactly; the estimate is clamped to [0, 1/2],
    the channel's reachable range.
    """
    if raw_mismatch <= 0.0:
        return 0.0
    b = 2.0 * n + (n - 1.0) * raw_mismatch
    disc = b * b - 8.0 * (n + 3.0) * (n - 1.0) * raw_mismatch
    if disc <= 0.0:
        return 0.5
    s = (b - math.sqrt(disc)) / (2.0 * (n + 3.0))
    return min(max(s, 0.0), 0.5)


@dataclass(frozen=True)
class VerificationStats:
    """Pairwise correlation quality estimated from the disclosed index subset."""

    verification_size: int
    sample_count: int  # copies that passed the commander-symbol screen
    pair_mismatch: Mapping[tuple[int, int], float]  # de-biased, per ordered pair
    pair_raw: Mapping[tuple[int, int], float]
    noise_estimate: float  # pooled de-biased estimate fed to classification

    def mismatch(self, a: int, b: int) -> float:
        return self.pair_mismatch[(a, b)]


def verify(
    table: OutcomeTable, verify_fraction: float, rng: np.random.Generator
) -> VerificationStats:
    """Disclose a random index subset pairwise and estimate channel mismatch.

    Selects ``floor(verify_fraction * k)`` indices uniformly, marks them spent,
    and for every lieutenant pair counts bit mismatches on the disclosed copies
    whose observed commander symbol is 00 or 11 (where bits agree absent
    noise). Rates are de-biased via :func:`estimate_flip_disagreement`; the
    pooled estimate averages all pairs.
    """
    if table.verified:
        raise InvalidParameterError("verification already ran for this table")
    if not 0.0 < verify_fraction < 1.0:
        raise InvalidParameterError(f"verification fraction must lie in (0, 1), got {verify_fraction}")
    v_size = math.floor(verify_fraction * table.k)
    if v_size < 1:
        raise InvalidParameterError(
            f"verification subset is empty: floor({verify_fraction} * {table.k}) < 1"
        )
    chosen = rng.choice(table.k, size=v_size, replace=False)
    table.verification_mask[chosen] = True
    table.verified = True

    symbols = table.commander_symbols[chosen]
    screened = chosen[(symbols == CommanderSymbol.C00) | (symbols == CommanderSymbol.C11)]
    sample_count = int(screened.size)
    bits = table.lieutenant_bits[screened]

    pair_raw: dict[tuple[int, int], float] = {}
    pair_mismatch: dict[tuple[int, int], float] = {}
    total_mismatches = 0
    pair_count = 0
    for a in range(1, table.n):
        for b in range(a + 1, table.n):
            if sample_count == 0:
                raw = 0.0
            else:
                mism = int((bits[:, a - 1] != bits[:, b - 1]).sum())
                total_mismatches += mism
                raw = mism / sample_count
            debiased = estimate_flip_disagreement(raw, table.n)
            pair_raw[(a, b)] = pair_raw[(b, a)] = raw
            pair_mismatch[(a, b)] = pair_mismatch[(b, a)] = debiased
            pair_count += 1

    if sample_count == 0:
        pooled = 0.0
    else:
        pooled = estimate_flip_disagreement(
            total_mismatches / (pair_count * sample_count), table.n
        )
    return VerificationStats(
        verification_size=v_size,
        sample_count=sample_count,
        pair_mismatch=pair_mismatch,
        pair_raw=pair_raw,
        noise_estimate=pooled,
    )


def issue_orders(
    table: OutcomeTable,
    strategy: "CommanderStrategyKind",
    rng: np.random.Generator,
    order: Order | None = None,
) -> dict[int, tuple[Order, np.ndarray]]:
    """Send each lieutenant an order plus the indices that support it.

    A loyal commander sends every lieutenant the same order and the full
    unspent index list whose observed symbol encodes it; traitor strategies
    delegate to the adversary module. Raises :class:`DegenerateRunError` when
    a required symbol class has no unspent index.
    """
    from .adversary import CommanderStrategyKind, traitor_commander_assign

    if not table.verified:
        raise InvalidParameterError("orders are issued only after verification")
    if strategy.is_traitor:
        assignments = traitor_commander_assign(strategy, table, rng)
    else:
        if strategy is CommanderStrategyKind.LOYAL_FIXED:
            if order is None:
                raise InvalidParameterError("a fixed loyal commander needs an explicit order")
            chosen = order
        else:
            chosen = Order.RETREAT if int(rng.integers(2)) == 0 else Order.ATTACK
        unspent = table.unspent_mask()
        indices = np.flatnonzero(unspent & (table.commander_symbols == chosen.symbol))
        if indices.size == 0:
            raise DegenerateRunError(
                f"no unspent copy carries symbol {chosen.symbol.text} for order {chosen.value}"
            )
        assignments = {lt: (chosen, indices) for lt in range(1, table.n)}

    for lt, (received, idx) in assignments.items():
        table.orders_received[lt] = received
        table.order_lists[lt] = idx
    return assignments


def find_disagreements(claims: Mapping[int, Order]) -> list[tuple[int, int]]:
    """All unordered lieutenant pairs whose claimed orders differ, sorted."""
    ids = sorted(claims)
    return [(a, b) for i, a in enumerate(ids) for b in ids[i + 1 :] if claims[a] != claims[b]]


@dataclass
class GameTranscript:
    """One side's view of a pairwise game: what it received and how it scored it."""

    owner: int
    opponent: int
    own_claim: Order
    opponent_claim: Order
    received_indices: np.ndarray
    failures: int
    length: int
    own_ones: int  # received indices where the owner's own bit is 1

    def __post_init__(self) -> None:
        if not 0 <= self.failures <= self.length:
            raise InvalidParameterError("failure count must lie in [0, length]")

    @property
    def failure_rate(self) -> float:
        return self.failures / self.length if self.length else 0.0

    def exchanged(self) -> list[tuple[int, Order]]:
        """The received (copy index, claimed order) sequence."""
        return [(int(i), self.opponent_claim) for i in self.received_indices]


def _sender_indices(
    sender: int,
    claim: Order,
    table: OutcomeTable,
    roster: Roster,
    game_length: int,
    rng: np.random.Generator,
) -> np.ndarray:
    """Indices one side sends in a single game, capped by availability.

    Loyal senders walk their received order list in order; traitors draw
    uniformly from their unspent indices whose own bit matches the claimed
    order. Indices are distinct within a game; the verification subset is
    never sent.
    """
    if sender != 0 and roster.is_traitor(sender):
        from .adversary import traitor_select_indices

        return traitor_select_indices(
            table.lieutenant_view(sender), claim, table.verification_mask, game_length, rng
        )
    received = table.order_lists.get(sender)
    if received is None:
        return np.empty(0, dtype=np.int64)
    return received[: min(game_length, received.size)]


def play_game(
    a: int,
    b: int,
    claims: Mapping[int, Order],
    table: OutcomeTable,
    roster: Roster,
    game_length: int,
    rng: np.random.Generator,
) -> tuple[GameTranscript, GameTranscript]:
    """Run one turn-based index-exchange game between two disagreeing lieutenants.

    Each side sends up to ``game_length`` fresh indices supporting its claim;
    the receiver counts a failure whenever its own bit at a received index
    contradicts the sender's claimed order. A side with nothing to send leaves
    the opponent a zero-length transcript.
    """
    if claims[a] == claims[b]:
        raise InvalidParameterError("a game requires disagreeing claims")
    if game_length < 1:
        raise InvalidParameterError(f"game length must be >= 1, got {game_length}")
    # The starting side is drawn per the protocol, but only message order
    # depends on it: both sides send fixed streams, so the failure counts are
    # interleaving-invariant.
    _starter = int(rng.integers(2))
    a_sends = _sender_indices(a, claims[a], table, roster, game_length, rng)
    b_sends = _sender_indices(b, claims[b], table, roster, game_length, rng)

    def side(owner: int, opponent: int, incoming: np.ndarray) -> GameTranscript:
        own_bits = table.lieutenant_view(owner)[incoming]
        failures = int((own_bits != claims[opponent].lieutenant_bit).sum())
        return GameTranscript(
            owner=owner,
            opponent=opponent,
            own_claim=claims[owner],
            opponent_claim=claims[opponent],
            received_indices=incoming,
            failures=failures,
            length=int(incoming.size),
            own_ones=int(own_bits.sum()),
        )

    return side(a, b, b_sends), side(b, a, a_sends)


def classification_threshold(noise_rate: float, n: int) -> float:
    """Failure-rate cutoff between a genuine sender and a fabricating one.

    Midpoint of the expected genuine rate (the channel's pair disagreement
    ``eps``) and the expected fabrication rate ``eps + R(1 - 2 eps)`` where R
    is the noiseless traitor detection rate.
    """
    eps = min(noise_rate, 1.0 - noise_rate)
    return eps + traitor_detection_rate(n) * (1.0 - 2.0 * eps) / 2.0


def classify(transcript: GameTranscript, noise_rate: float, n: int) -> Verdict:
    """Decide from one transcript whether the opponent or the commander lied.

    Zero-length transcripts mean the opponent could not produce supporting
    indices and count as opponent-traitor. Rates above 1/2 signal the
    anti-correlated regime, where received bits are read complemented. Ties at
    the threshold resolve to opponent-traitor so a fabricator cannot sit on
    the boundary.
    """
    if transcript.length == 0:
        return Verdict.OPPONENT_TRAITOR
    failures = transcript.failures
    if noise_rate > 0.5:
        failures = transcript.length - failures
    threshold = classification_threshold(noise_rate, n)
    if failures / transcript.length >= threshold:
        return Verdict.OPPONENT_TRAITOR
    return Verdict.COMMANDER_TRAITOR


def finalize_actions(
    verdicts: Mapping[int, Sequence[Verdict]],
    received: Mapping[int, Order],
    roster: Roster,
) -> dict[int, Order]:
    """Final action per loyal lieutenant.

    Everyone starts on their received order; an attack receiver switches to
    retreat if any of its games blamed the commander. Retreat receivers never
    switch.
    """
    actions: dict[int, Order] = {}
    for lt in roster.loyal_lieutenants():
        action = received[lt]
        if action is Order.ATTACK and any(
            v is Verdict.COMMANDER_TRAITOR for v in verdicts.get(lt, ())
        ):
            action = Order.RETREAT
        actions[lt] = action
    return actions


def evaluate_dba(
    actions: Mapping[int, Order],
    roster: Roster,
    commander_order: Order | None,
) -> bool:
    """Detectable-broadcast criterion over the loyal lieutenants' final actions.

    Vacuously true with no loyal lieutenant. Under a loyal commander all loyal
    lieutenants must match the issued order; under a traitorous one they must
    merely agree with each other.
    """
    if not actions:
        return True
    if roster.commander_loyal:
        if commander_order is None:
            raise InvalidParameterError("a loyal commander's issued order is required")
        return all(a == commander_order for a in actions.values())
    return len(set(actions.values())) == 1


@dataclass(frozen=True)
class ProtocolConfig:
    """Full parameterization of one protocol run."""

    n: int
    k: int = 1000
    noise: NoiseSpec = NoiseSpec()
    traitor_count: int = 0
    traitor_ids: tuple[int, ...] | None = None
    commander_traitor: bool | None = None
    traitor_commander_strategy: "CommanderStrategyKind | None" = None
    lieutenant_strategy: "LieutenantStrategyKind | None" = None
    commander_order: Order | None = None  # None: loyal commander draws uniformly
    verify_fraction: float = 0.2
    game_length: int | None = None  # None: the whole copy budget k
    threshold_mode: ThresholdMode = ThresholdMode.KNOWN_NOISE
    seed: int | None = None

    @property
    def effective_traitor_count(self) -> int:
        return len(self.traitor_ids) if self.traitor_ids is not None else self.traitor_count

    @property
    def effective_game_length(self) -> int:
        return self.k if self.game_length is None else self.game_length

    def validate(self) -> None:
        if not isinstance(self.n, int) or self.n < 3:
            raise InvalidParameterError(f"player count must be an integer >= 3, got {self.n!r}")
        if self.k < 10:
            raise InvalidParameterError(f"copy count must be >= 10, got {self.k}")
        m = self.effective_traitor_count
        if not 0 <= m <= self.n:
            raise InvalidParameterError(f"traitor count must lie in [0, {self.n}], got {m}")
        if self.traitor_ids is not None:
            if self.traitor_count not in (0, len(self.traitor_ids)):
                raise InvalidParameterError("traitor_count conflicts with explicit traitor_ids")
            if len(set(self.traitor_ids)) != len(self.traitor_ids):
                raise InvalidParameterError("traitor ids must be unique")
            if any(not 0 <= t < self.n for t in self.traitor_ids):
                raise InvalidParameterError("traitor ids must lie in [0, n)")
            if self.commander_traitor is True and 0 not in self.traitor_ids:
                raise InvalidParameterError("commander_traitor=True but 0 not in traitor_ids")
            if self.commander_traitor is False and 0 in self.traitor_ids:
                raise InvalidParameterError("commander_traitor=False but 0 in traitor_ids")
        else:
            if self.commander_traitor is True and m < 1:
                raise InvalidParameterError("commander_traitor=True needs at least one traitor")
            if self.commander_traitor is False and m > self.n - 1:
                raise InvalidParameterError(
                    "commander_traitor=False caps the traitor count at n - 1"
                )
        if not 0.0 < self.verify_fraction < 1.0:
            raise InvalidParameterError(
                f"verification fraction must lie in (0, 1), got {self.verify_fraction}"
            )
        if math.floor(self.verify_fraction * self.k) < 1:
            raise InvalidParameterError("verification subset would be empty")
        if self.game_length is not None and self.game_length < 1:
            raise InvalidParameterError(f"game length must be >= 1, got {self.game_length}")
        if (
            self.traitor_commander_strategy is not None
            and not self.traitor_commander_strategy.is_traitor
        ):
            raise InvalidParameterError(
                "traitor_commander_strategy must be a traitor strategy kind"
            )


@dataclass(frozen=True)
class GameRecord:
    """Per-game summary kept on the run result: both sides' counts and verdicts."""

    a: int
    b: int
    a_failures: int
    a_length: int
    a_verdict: Verdict
    b_failures: int
    b_length: int
    b_verdict: Verdict


@dataclass(frozen=True)
class RunResult:
    """Outcome of one protocol run."""

    seed: int | None
    n: int
    m: int
    commander_traitor: bool
    flip_probability: float
    k: int
    game_length: int
    g_actual: int
    dba_success: bool
    degenerate: bool
    traitors: tuple[int, ...]
    commander_order: Order | None
    actions: Mapping[int, Order]
    games: tuple[GameRecord, ...]

    def record(self) -> dict:
        """Line-oriented record fields, stable order."""
        return {
            "seed": self.seed,
            "n": self.n,
            "m": self.m,
            "commander_traitor": self.commander_traitor,
            "p": self.flip_probability,
            "k": self.k,
            "l": self.game_length,
            "g_actual": self.g_actual,
            "dba_success": self.dba_success,
            "degenerate": self.degenerate,
            "actions": {str(lt): order.value for lt, order in sorted(self.actions.items())},
        }

    def to_json_line(self) -> str:
        return json.dumps(self.record(), separators=(",", ":"))


def _select_roster(config: ProtocolConfig, rng: np.random.Generator) -> Roster:
    if config.traitor_ids is not None:
        return Roster(config.n, tuple(sorted(config.traitor_ids)))
    m = config.traitor_count
    if m == 0:
        return Roster(config.n, ())
    if config.commander_traitor is True:
        extra = rng.choice(np.arange(1, config.n), size=m - 1, replace=False)
        chosen: Iterable[int] = [0, *extra.tolist()]
    elif config.commander_traitor is False:
        chosen = rng.choice(np.arange(1, config.n), size=m, replace=False).tolist()
    else:
        chosen = rng.choice(config.n, size=m, replace=False).tolist()
    return Roster(config.n, tuple(sorted(int(c) for c in chosen)))


def run_protocol(config: ProtocolConfig, rng: np.random.Generator | None = None) -> RunResult:
    """Execute one full run: distribute, verify, issue orders, play, evaluate.

    Deterministic given the generator (or ``config.seed`` when none is
    passed). Degenerate runs (an order with no supporting copies) return a
    flagged, unsuccessful result instead of raising.
    """
    from .adversary import CommanderStrategyKind, LieutenantStrategyKind, traitor_claim

    config.validate()
    if rng is None:
        rng = np.random.default_rng(config.seed)

    roster = _select_roster(config, rng)
    table = distribute(config.n, config.k, config.noise, rng)
    stats = verify(table, config.verify_fraction, rng)
    game_length = config.effective_game_length
    if config.threshold_mode is ThresholdMode.KNOWN_NOISE:
        noise_rate = flip_disagreement(config.noise.flip_probability)
    else:
        noise_rate = stats.noise_estimate

    if roster.commander_loyal:
        strategy = (
            CommanderStrategyKind.LOYAL_FIXED
            if config.commander_order is not None
            else CommanderStrategyKind.LOYAL_RANDOM
        )
    else:
        strategy = config.traitor_commander_strategy or CommanderStrategyKind.HALF_SPLIT

    def result(
        *,
        degenerate: bool,
        g_actual: int = 0,
        dba_success: bool = False,
        commander_order: Order | None = None,
        actions: Mapping[int, Order] | None = None,
        games: tuple[GameRecord, ...] = (),
    ) -> RunResult:
        return RunResult(
            seed=config.seed,
            n=config.n,
            m=config.effective_traitor_count,
            commander_traitor=not roster.commander_loyal,
            flip_probability=config.noise.flip_probability,
            k=config.k,
            game_length=game_length,
            g_actual=g_actual,
            dba_success=dba_success,
            degenerate=degenerate,
            traitors=roster.traitors,
            commander_order=commander_order,
            actions=actions or {},
            games=games,
        )

    try:
        assignments = issue_orders(table, strategy, rng, order=config.commander_order)
    except DegenerateRunError:
        return result(degenerate=True)

    lieutenant_strategy = config.lieutenant_strategy or LieutenantStrategyKind.OPPOSITE_CLAIM
    claims: dict[int, Order] = {}
    for lt in roster.lieutenants:
        received_order = assignments[lt][0]
        if roster.is_traitor(lt) and lieutenant_strategy is LieutenantStrategyKind.OPPOSITE_CLAIM:
            claims[lt] = traitor_claim(received_order)
        else:
            claims[lt] = received_order

    pairs = find_disagreements(claims)
    verdicts: dict[int, list[Verdict]] = {lt: [] for lt in roster.lieutenants}
    games: list[GameRecord] = []
    for a, b in pairs:
        ta, tb = play_game(a, b, claims, table, roster, game_length, rng)
        va = classify(ta, noise_rate, config.n)
        vb = classify(tb, noise_rate, config.n)
        verdicts[a].append(va)
        verdicts[b].append(vb)
        games.append(
            GameRecord(
                a=a,
                b=b,
                a_failures=ta.failures,
                a_length=ta.length,
                a_verdict=va,
                b_failures=tb.failures,
                b_length=tb.length,
                b_verdict=vb,
            )
        )

    received_orders = {lt: assignments[lt][0] for lt in roster.lieutenants}
    actions = finalize_actions(verdicts, received_orders, roster)
    commander_order = assignments[1][0] if roster.commander_loyal else None
    success = evaluate_dba(actions, roster, commander_order)
    return result(
        degenerate=False,
        g_actual=len(pairs),
        dba_success=success,
        commander_order=commander_order,
        actions=actions,
        games=tuple(games),
    )
