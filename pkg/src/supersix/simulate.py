"""Monte Carlo playout engine.

A statistical oracle for the exact tables, and the only place asymmetric
strategy pairs are exercised. Games run vectorized in lockstep: every
active game draws one die category per step (six with probability 1/6,
occupied j/6, free (5-j)/6 -- which specific holes are occupied never
matters, only how many). Results are deterministic for a given seed;
batches use seeds derived with numpy's SeedSequence and combine by
summing win counts.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np

from .states import GameState, max_total_cap
from .strategy import FullStrategy

DEFAULT_BATCH = 1 << 16


@dataclasses.dataclass(frozen=True)
class MatchConfig:
    """A match of `games` independent games from the even starting split,
    player A rolling first."""

    start_total: int
    strategy_a: FullStrategy
    strategy_b: FullStrategy
    games: int
    seed: int

    def __post_init__(self) -> None:
        cap = max_total_cap()
        if self.start_total % 2 or not 2 <= self.start_total <= cap:
            raise ValueError(
                f"start_total must be even and within 2..{cap}, "
                f"got {self.start_total}"
            )
        if self.games < 1:
            raise ValueError(f"games must be >= 1, got {self.games}")

    def start_state(self) -> GameState:
        half = self.start_total // 2
        return GameState(0, half, half)


@dataclasses.dataclass(frozen=True)
class MatchResult:
    wins_a: int
    games: int

    @property
    def estimate(self) -> float:
        return self.wins_a / self.games

    @property
    def stderr(self) -> float:
        p = self.estimate
        return math.sqrt(p * (1 - p) / self.games)


def _continue_table(full: FullStrategy, max_total: int) -> np.ndarray:
    """uint8[total, lid, mover]: 1 when the strategy keeps rolling after a
    placement. Forced-continue states (empty lid, the (1/k/1) family, and
    totals below 4) are 1."""
    table = np.ones((max_total + 1, 6, max_total + 1), dtype=np.uint8)
    for total in range(4, max_total + 1):
        for lid in range(1, min(5, total - 2) + 1):
            for mover in range(1, total - lid):
                state = GameState(lid, mover, total - lid - mover)
                if not full.continues_at(state):
                    table[total, lid, mover] = 0
    return table


def play_game(
    state: GameState,
    strategy_mover: FullStrategy,
    strategy_waiter: FullStrategy,
    rng: np.random.Generator,
    tally: np.ndarray | None = None,
) -> bool:
    """One game from `state` with the mover rolling now; True when the
    player who moved first wins. `tally`, if given, is a (6, 3) array
    accumulating (lid, event) counts with events ordered six/free/occupied.
    """
    j, k, l = state.lid, state.mover, state.opponent
    first_is_mover = True
    strategies = {True: strategy_mover, False: strategy_waiter}
    while True:
        r = int(rng.integers(0, 6))
        if r == 0:  # six: stick drops out of play
            if tally is not None:
                tally[j, 0] += 1
            if k == 1:
                return first_is_mover
            k -= 1
        elif r <= j:  # occupied: pick up, die passes
            if tally is not None:
                tally[j, 2] += 1
            j, k, l = j - 1, l, k + 1
            first_is_mover = not first_is_mover
            continue
        else:  # free hole: stick stands
            if tally is not None:
                tally[j, 1] += 1
            if k == 1:
                return first_is_mover
            j, k = j + 1, k - 1
        cont = strategies[first_is_mover].continues_at(GameState(j, k, l))
        if not cont:
            k, l = l, k
            first_is_mover = not first_is_mover


def play_games(
    start: GameState,
    strategy_first: FullStrategy,
    strategy_second: FullStrategy,
    games: int,
    seed: int,
    batch: int = DEFAULT_BATCH,
    tally: np.ndarray | None = None,
) -> int:
    """First player's wins over `games` independent games from `start`
    (the first player rolls first). Mid-game starts are allowed here."""
    max_total = start.total()
    table_first = _continue_table(strategy_first, max_total)
    table_second = _continue_table(strategy_second, max_total)
    seeds = np.random.SeedSequence(seed).spawn(-(-games // batch))
    wins = 0
    left = games
    for seq in seeds:
        size = min(batch, left)
        rng = np.random.Generator(np.random.PCG64(seq))
        wins += _batch_wins(
            size, start, table_first, table_second, rng, tally=tally
        )
        left -= size
    return wins


def _batch_wins(
    n: int,
    start: GameState,
    table_first: np.ndarray,
    table_second: np.ndarray,
    rng: np.random.Generator,
    tally: np.ndarray | None = None,
) -> int:
    j = np.full(n, start.lid, dtype=np.int16)
    k = np.full(n, start.mover, dtype=np.int16)
    l = np.full(n, start.opponent, dtype=np.int16)
    first_moves = np.ones(n, dtype=bool)
    wins = 0

    while len(j):
        r = rng.integers(0, 6, size=len(j), dtype=np.int16)
        six = r == 0
        occupied = (~six) & (r <= j)
        free = ~(six | occupied)
        if tally is not None:
            np.add.at(tally, (j[six], 0), 1)
            np.add.at(tally, (j[free], 1), 1)
            np.add.at(tally, (j[occupied], 2), 1)

        placed = six | free
        won = placed & (k == 1)
        wins += int((won & first_moves).sum())

        j = np.where(free, j + 1, j)
        k = np.where(placed, k - 1, k)

        picked_l = k + 1  # mover's hand after pickup, seen by the new mover
        new_j = np.where(occupied, j - 1, j)
        new_k = np.where(occupied, l, k)
        new_l = np.where(occupied, picked_l, l)
        j, k, l = new_j, new_k, new_l
        first_moves = np.where(occupied, ~first_moves, first_moves)

        deciding = placed & ~won
        total = j + k + l
        cont = np.where(
            first_moves, table_first[total, j, k], table_second[total, j, k]
        ).astype(bool)
        stop = deciding & ~cont
        new_k = np.where(stop, l, k)
        new_l = np.where(stop, k, l)
        k, l = new_k, new_l
        first_moves = np.where(stop, ~first_moves, first_moves)

        alive = ~won
        if not alive.all():
            j, k, l = j[alive], k[alive], l[alive]
            first_moves = first_moves[alive]
    return wins


def simulate(config: MatchConfig) -> MatchResult:
    """Run the match. Identical configs give identical results."""
    wins = play_games(
        config.start_state(),
        config.strategy_a,
        config.strategy_b,
        config.games,
        config.seed,
    )
    return MatchResult(wins_a=wins, games=config.games)
