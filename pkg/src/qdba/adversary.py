"""Pluggable traitor behaviors for the commander and the lieutenants.

A traitorous commander tries to minimize the chance of detectable broadcast
by splitting genuine orders across the lieutenants; a traitorous lieutenant
claims the opposite of what it received and backs the claim with its own
measured bits. Strategies are stateless: equal seeds reproduce equal
assignments.
"""

from __future__ import annotations

import math
from enum import Enum

import numpy as np

from .errors import DegenerateRunError, IndexPoolExhaustedError, InvalidParameterError
from .protocol import Order, OutcomeTable

__all__ = [
    "CommanderStrategyKind",
    "LieutenantStrategyKind",
    "traitor_claim",
    "traitor_commander_assign",
    "traitor_select_index",
    "traitor_select_indices",
]


class CommanderStrategyKind(str, Enum):
    """How the commander issues orders.

    The loyal kinds send one order to everyone with its genuine index list.
    ``HALF_SPLIT`` sends attack to a random ceil((n-1)/2)-sized half and
    retreat to the rest, each with genuinely matching indices; it maximizes
    the number of disagreeing pairs. ``RANDOM_ASSIGN`` flips a fair coin per
    lieutenant. ``ALL_SAME_FALSE_INDICES`` is a diagnostic: one common order,
    but the supporting indices come from the wrong symbol class.
    """

    LOYAL_FIXED = "loyal-fixed"
    LOYAL_RANDOM = "loyal-random"
    HALF_SPLIT = "half-split"
    RANDOM_ASSIGN = "random-assign"
    ALL_SAME_FALSE_INDICES = "all-same-false-indices"

    @property
    def is_traitor(self) -> bool:
        return self in (
            CommanderStrategyKind.HALF_SPLIT,
            CommanderStrategyKind.RANDOM_ASSIGN,
            CommanderStrategyKind.ALL_SAME_FALSE_INDICES,
        )


class LieutenantStrategyKind(str, Enum):
    HONEST = "honest"
    OPPOSITE_CLAIM = "opposite-claim"


def traitor_claim(genuine: Order) -> Order:
    """A traitorous lieutenant always claims the opposite of its received order."""
    return genuine.opposite


def _genuine_lists(table: OutcomeTable) -> dict[Order, np.ndarray]:
    unspent = table.unspent_mask()
    return {
        order: np.flatnonzero(unspent & (table.commander_symbols == order.symbol))
        for order in (Order.RETREAT, Order.ATTACK)
    }


def traitor_commander_assign(
    strategy: CommanderStrategyKind,
    table: OutcomeTable,
    rng: np.random.Generator,
) -> dict[int, tuple[Order, np.ndarray]]:
    """Per-lieutenant (order, supporting indices) under a traitorous commander."""
    if not strategy.is_traitor:
        raise InvalidParameterError(f"{strategy.value} is not a traitor strategy")
    lists = _genuine_lists(table)
    lieutenants = list(range(1, table.n))

    if strategy is CommanderStrategyKind.HALF_SPLIT:
        if any(lst.size == 0 for lst in lists.values()):
            raise DegenerateRunError("a symbol class has no unspent copies for the split")
        shuffled = rng.permutation(lieutenants)
        attack_half = set(shuffled[: math.ceil(len(lieutenants) / 2)].tolist())
        return {
            lt: (Order.ATTACK, lists[Order.ATTACK])
            if lt in attack_half
            else (Order.RETREAT, lists[Order.RETREAT])
            for lt in lieutenants
        }

    if strategy is CommanderStrategyKind.RANDOM_ASSIGN:
        coins = rng.integers(0, 2, size=len(lieutenants))
        assignment: dict[int, tuple[Order, np.ndarray]] = {}
        for lt, coin in zip(lieutenants, coins):
            order = Order.ATTACK if coin else Order.RETREAT
            if lists[order].size == 0:
                raise DegenerateRunError(
                    f"no unspent copy carries symbol {order.symbol.text} for order {order.value}"
                )
            assignment[lt] = (order, lists[order])
        return assignment

    # ALL_SAME_FALSE_INDICES: one common order backed by the wrong class.
    order = Order.ATTACK if int(rng.integers(2)) else Order.RETREAT
    wrong = lists[order.opposite]
    if wrong.size == 0:
        raise DegenerateRunError("the wrong symbol class has no unspent copies")
    return {lt: (order, wrong) for lt in lieutenants}


def traitor_select_indices(
    own_bits: np.ndarray,
    claimed: Order,
    spent_mask: np.ndarray,
    count: int,
    rng: np.random.Generator,
) -> np.ndarray:
    """Up to ``count`` unspent indices where the traitor's own bit backs its claim.

    The commander's symbol at an index is irrelevant; only the traitor's own
    bit must equal the claimed order's lieutenant encoding. Returns fewer
    indices (possibly none) when the pool is smaller than ``count``.
    """
    pool = np.flatnonzero(~spent_mask & (own_bits == claimed.lieutenant_bit))
    if pool.size <= count:
        return pool
    return rng.choice(pool, size=count, replace=False)


def traitor_select_index(
    own_bits: np.ndarray,
    claimed: Order,
    spent_mask: np.ndarray,
    rng: np.random.Generator,
) -> int:
    """One uniformly random unspent index matching the claimed order's bit."""
    pool = np.flatnonzero(~spent_mask & (own_bits == claimed.lieutenant_bit))
    if pool.size == 0:
        raise IndexPoolExhaustedError(
            f"no unspent index has own bit {claimed.lieutenant_bit} for claim {claimed.value}"
        )
    return int(rng.choice(pool))
