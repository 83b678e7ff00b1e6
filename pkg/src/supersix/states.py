"""Game states and the single-roll transition model for Super Six.

A situation is written (j/k/l): j sticks standing on the lid, k sticks in
the hand of the player about to roll (the mover), l in the opponent's hand.
Holes 1-5 of the lid are shallow and hold a stick upright; hole 6 goes all
the way through, so a stick rolled into it leaves the game. Each roll
therefore has exactly three outcomes:

    SIX      (prob 1/6)      the stick drops out of play
    FREE     (prob (5-j)/6)  the stick stands in an empty hole
    OCCUPIED (prob j/6)      the mover picks the blocking stick up and
                             the die passes to the opponent

After a successful placement (SIX or FREE) the mover may either keep
rolling or stop and hand the die over; that choice is the only freedom in
the game. States are always recorded from the mover's perspective.
"""

from __future__ import annotations

import dataclasses
import enum
import os
from fractions import Fraction
from typing import Iterator

MAX_LID = 5
DEFAULT_MAX_TOTAL = 15


def max_total_cap() -> int:
    """Configured ceiling on the number of sticks in play.

    Defaults to 15; override with the SUPERSIX_MAX_TOTAL environment
    variable. Totals beyond ~15 make the exact tables very expensive.
    """
    raw = os.environ.get("SUPERSIX_MAX_TOTAL")
    if raw is None:
        return DEFAULT_MAX_TOTAL
    try:
        cap = int(raw)
    except ValueError as exc:
        raise ValueError(f"SUPERSIX_MAX_TOTAL must be an integer, got {raw!r}") from exc
    if cap < 2:
        raise ValueError(f"SUPERSIX_MAX_TOTAL must be >= 2, got {cap}")
    return cap


@dataclasses.dataclass(frozen=True, order=True)
class GameState:
    """One game situation (lid / mover's hand / opponent's hand).

    Ordering is (lid, mover, opponent), which matches the canonical
    enumeration order used everywhere else in the package.
    """

    lid: int
    mover: int
    opponent: int

    def __post_init__(self) -> None:
        if not 0 <= self.lid <= MAX_LID:
            raise ValueError(f"lid must be in 0..{MAX_LID}, got {self.lid}")
        if self.mover < 1:
            raise ValueError(f"mover hand must be >= 1, got {self.mover}")
        if self.opponent < 1:
            raise ValueError(f"opponent hand must be >= 1, got {self.opponent}")

    def total(self) -> int:
        return self.lid + self.mover + self.opponent

    def mirror(self) -> "GameState":
        """The same situation seen by the other player."""
        return GameState(self.lid, self.opponent, self.mover)

    def notation(self) -> str:
        return f"({self.lid}/{self.mover}/{self.opponent})"

    def __str__(self) -> str:
        return self.notation()


class RollKind(enum.Enum):
    SIX = "six"
    FREE = "free"
    OCCUPIED = "occupied"


@dataclasses.dataclass(frozen=True)
class RollEvent:
    """One of the three possible roll outcomes, with its exact probability."""

    kind: RollKind
    probability: Fraction


class OutcomeKind(enum.Enum):
    WIN = "win"  # the mover just placed their last stick
    ARRIVAL = "arrival"  # mover placed a stick and now may choose to stop
    HANDOVER = "handover"  # mover picked a stick up; opponent rolls next


@dataclasses.dataclass(frozen=True)
class Outcome:
    """Where a roll leads.

    For ARRIVAL the state keeps the same mover (decision pending). For
    HANDOVER the state is already rewritten from the new mover's
    perspective. WIN carries no state.
    """

    kind: OutcomeKind
    state: GameState | None = None


@dataclasses.dataclass(frozen=True)
class DecisionPoint:
    """A state reached right after a successful placement where the mover
    genuinely has a continue/stop choice.

    Excluded: lid=0 (stopping with an empty lid is never considered, so
    play always continues) and the family (1/k/1). The latter can only be
    entered via a six from (1/k+1/1) or a placement from (0/k+1/1), and
    chasing predecessors of those never reaches a legal starting position,
    so the choice never actually arises.
    """

    state: GameState

    def __post_init__(self) -> None:
        s = self.state
        if s.lid < 1:
            raise ValueError(f"decision point requires lid >= 1, got {s}")
        if s.lid == 1 and s.opponent == 1:
            raise ValueError(f"{s} is not a reachable decision point")


def enumerate_states(total: int) -> list[GameState]:
    """All situations with `total` sticks in play, ordered (lid, mover).

    Includes situations that cannot occur in real play (such as (0/5/1));
    they are valued like any other so every level system stays square.
    """
    if total < 2:
        raise ValueError(f"total must be >= 2, got {total}")
    states = []
    for lid in range(0, min(MAX_LID, total - 2) + 1):
        for mover in range(1, total - lid):
            states.append(GameState(lid, mover, total - lid - mover))
    return states


def decision_points(total: int) -> list[DecisionPoint]:
    """All decision points at this total, in canonical order.

    Canonical order is lid ascending, then mover's hand ascending; it is
    the order strategy bits are written in.
    """
    if total < 4:
        raise ValueError(f"decision points exist only for total >= 4, got {total}")
    points = []
    for lid in range(1, min(MAX_LID, total - 2) + 1):
        for mover in range(1, total - lid):
            opponent = total - lid - mover
            if lid == 1 and opponent == 1:
                continue
            points.append(DecisionPoint(GameState(lid, mover, opponent)))
    return points


def is_decision_state(state: GameState) -> bool:
    """True when a mover arriving at `state` has a real continue/stop choice."""
    return state.lid >= 1 and not (state.lid == 1 and state.opponent == 1)


def transitions(state: GameState) -> list[tuple[RollEvent, Outcome]]:
    """The three roll events from `state` and where each one leads.

    FREE carries probability 0 when the lid is full (j=5) and OCCUPIED
    probability 0 when it is empty; both entries are still returned so the
    distribution is always the same shape.
    """
    j, k, l = state.lid, state.mover, state.opponent
    six = RollEvent(RollKind.SIX, Fraction(1, 6))
    free = RollEvent(RollKind.FREE, Fraction(5 - j, 6))
    occupied = RollEvent(RollKind.OCCUPIED, Fraction(j, 6))

    if k == 1:
        six_out = Outcome(OutcomeKind.WIN)
        free_out = Outcome(OutcomeKind.WIN)
    else:
        six_out = Outcome(OutcomeKind.ARRIVAL, GameState(j, k - 1, l))
        free_out = Outcome(
            OutcomeKind.ARRIVAL, GameState(j + 1, k - 1, l) if j < MAX_LID else None
        )
    if j == 0:
        occ_out = Outcome(OutcomeKind.HANDOVER, None)
    else:
        occ_out = Outcome(OutcomeKind.HANDOVER, GameState(j - 1, l, k + 1))

    return [(six, six_out), (free, free_out), (occupied, occ_out)]


class TrackerEvent(enum.Enum):
    """Events a live game tracker can record; mirrors the roll outcomes
    plus the voluntary stop."""

    ROLLED_SIX = "rolled-six"
    ROLLED_FREE = "rolled-free"
    ROLLED_OCCUPIED = "rolled-occupied"
    STOPPED = "stopped"


def apply_event(state: GameState, event: TrackerEvent) -> Outcome:
    """Advance a tracked game by one observed event.

    Raises ValueError for events impossible in `state` (an occupied hit
    with an empty lid, a free placement with a full one, or a stop where
    no choice exists). STOPPED yields a HANDOVER to the mirrored state.
    """
    if event is TrackerEvent.STOPPED:
        if not is_decision_state(state):
            raise ValueError(f"stopping is not available at {state}")
        return Outcome(OutcomeKind.HANDOVER, state.mirror())
    by_kind = {ev.kind: (ev, out) for ev, out in transitions(state)}
    kind = {
        TrackerEvent.ROLLED_SIX: RollKind.SIX,
        TrackerEvent.ROLLED_FREE: RollKind.FREE,
        TrackerEvent.ROLLED_OCCUPIED: RollKind.OCCUPIED,
    }[event]
    ev, out = by_kind[kind]
    if ev.probability == 0:
        raise ValueError(f"{event.value} is impossible at {state}")
    return out


def iter_levels(max_total: int) -> Iterator[int]:
    """Totals in the order levels must be solved (a six only ever lowers
    the total, so level t depends on nothing above it)."""
    yield from range(2, max_total + 1)
