"""Continue/stop strategies and their string form.

A per-level strategy assigns one bit to every decision point at that
total: 1 = continue rolling, 0 = stop and hand the die over. The string
form groups bits by lid count, lid 1 leftmost, slash-separated, and within
a group the mover's hand count ascends left to right. So at total 7 the
string 0101/1010/110/10/1 stops at (1/1/5), continues at (1/2/4), ... and
its lid-4 group "10" continues at (4/1/2) but stops at (4/2/1).

States where no choice exists (empty lid, or the unreachable (1/k/1)
family) carry no bit; play always continues there.
"""

from __future__ import annotations

import dataclasses
from typing import Mapping

from .states import MAX_LID, DecisionPoint, GameState, is_decision_state

CONTINUE = 1
STOP = 0


class StrategyParseError(ValueError):
    """Raised when a strategy string does not fit the grammar; carries the
    character position of the offending group when known."""

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position


def group_sizes(total: int) -> list[int]:
    """Number of decision points per lid group (lid 1 first)."""
    if total < 4:
        raise ValueError(f"no decision points below total 4, got {total}")
    sizes = []
    for lid in range(1, min(MAX_LID, total - 2) + 1):
        size = total - lid - 1
        if lid == 1:
            size -= 1  # (1/k/1) needs no bit
        sizes.append(size)
    return sizes


def bit_count(total: int) -> int:
    return sum(group_sizes(total))


@dataclasses.dataclass(frozen=True)
class Strategy:
    """Ordered continue/stop bits for one total, canonical point order."""

    total: int
    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        expected = bit_count(self.total)
        if len(self.bits) != expected:
            raise ValueError(
                f"total {self.total} needs {expected} bits, got {len(self.bits)}"
            )
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("bits must be 0 or 1")

    def bit_for(self, point: DecisionPoint) -> int:
        return self.bits[point_index(self.total, point)]

    def with_bit(self, index: int, value: int) -> "Strategy":
        bits = list(self.bits)
        bits[index] = value
        return Strategy(self.total, tuple(bits))

    def __str__(self) -> str:
        return format_strategy(self)


def all_continue(total: int) -> Strategy:
    return Strategy(total, (CONTINUE,) * bit_count(total))


def all_stop(total: int) -> Strategy:
    return Strategy(total, (STOP,) * bit_count(total))


def point_index(total: int, point: DecisionPoint) -> int:
    """Position of a decision point's bit in the canonical order.

    Within a lid group this is mover-1; the excluded lid-1 state (1/k/1)
    has the largest mover of its group, so it never shifts the others.
    """
    index = 0
    for lid in range(1, point.state.lid):
        index += total - lid - 1 - (1 if lid == 1 else 0)
    return index + point.state.mover - 1


def format_strategy(s: Strategy) -> str:
    sizes = group_sizes(s.total)
    parts = []
    pos = 0
    for size in sizes:
        parts.append("".join(str(b) for b in s.bits[pos : pos + size]))
        pos += size
    return "/".join(parts)


def parse_strategy(text: str, total: int) -> Strategy:
    """Parse a slash-grouped bit string for the given total.

    Rejects wrong group counts, wrong group lengths and characters outside
    {0, 1, /}, reporting the character position of the problem.
    """
    sizes = group_sizes(total)
    groups = text.split("/")
    if len(groups) != len(sizes):
        raise StrategyParseError(
            f"expected {len(sizes)} lid groups for total {total}, got {len(groups)}"
        )
    bits: list[int] = []
    pos = 0
    for lid_index, (group, size) in enumerate(zip(groups, sizes)):
        for offset, ch in enumerate(group):
            if ch not in "01":
                raise StrategyParseError(
                    f"invalid character {ch!r} at position {pos + offset}",
                    position=pos + offset,
                )
        if len(group) != size:
            raise StrategyParseError(
                f"lid-{lid_index + 1} group must have {size} bits, got "
                f"{len(group)} at position {pos}",
                position=pos,
            )
        bits.extend(int(ch) for ch in group)
        pos += len(group) + 1  # the slash
    return Strategy(total, tuple(bits))


@dataclasses.dataclass(frozen=True)
class FullStrategy:
    """One per-level strategy for every total from 4 up to max_total.

    Levels are independent: play at total t consults only levels[t].
    Totals 2 and 3 have no decision points and carry no entry.
    """

    max_total: int
    levels: Mapping[int, Strategy]

    def __post_init__(self) -> None:
        object.__setattr__(self, "levels", dict(self.levels))
        for t in range(4, self.max_total + 1):
            if t not in self.levels:
                raise ValueError(f"missing strategy for total {t}")
            if self.levels[t].total != t:
                raise ValueError(f"level {t} holds a strategy for total "
                                 f"{self.levels[t].total}")

    def level(self, total: int) -> Strategy:
        return self.levels[total]

    def continues_at(self, state: GameState) -> bool:
        """Resolve the action on arriving at `state`: strategy bit where a
        choice exists, otherwise the forced continue."""
        if not is_decision_state(state):
            return True
        total = state.total()
        if total < 4:
            return True
        return self.levels[total].bit_for(DecisionPoint(state)) == CONTINUE

    def lines(self) -> list[str]:
        """Per-level strings, ascending total — the canonical text form."""
        return [
            f"{t}: {format_strategy(self.levels[t])}"
            for t in range(4, self.max_total + 1)
        ]


def uniform_full(max_total: int, bit: int) -> FullStrategy:
    """All-continue (bit=1) or all-stop (bit=0) play at every level."""
    make = all_continue if bit == CONTINUE else all_stop
    return FullStrategy(max_total, {t: make(t) for t in range(4, max_total + 1)})


def full_from_levels(levels: Mapping[int, Strategy]) -> FullStrategy:
    if not levels:
        return FullStrategy(3, {})  # degenerate: nothing above total 3
    return FullStrategy(max(levels), dict(levels))
