"""Exact winning probabilities under a fixed strategy.

Values are organized by level (the total number of sticks in play). A six
removes a stick and is the only way the total drops, so level t depends
only on levels below it and the levels can be solved bottom-up. Within one
level the game can cycle forever, which is why each level is a coupled
linear system rather than a recursion.

The unknown V(j/k/l) is the mover's winning probability when they roll
from that situation. Arrivals after a successful placement resolve through
the strategy: continuing keeps the unknown V(arrival), stopping turns it
into 1 - V(mirror). Each equation is scaled by 6 so the matrix is integer:

    6*V(j/k/l) = [six outcome] + (5-j)*[free arrival] + j*(1 - V(handover))

with the six outcome an exact constant from the level below (or 1 when the
mover places their last stick). All arithmetic is exact; floats are a
rendering concern only.
"""

from __future__ import annotations

import dataclasses
import math
from fractions import Fraction
from typing import Iterator, Mapping

from .errors import SingularSystem  # re-exported: raised by solve_level
from .kernel import bareiss_solve
from .states import (
    DecisionPoint,
    GameState,
    enumerate_states,
    is_decision_state,
    iter_levels,
)
from .strategy import FullStrategy, Strategy

__all__ = [
    "LinearExpr",
    "LevelSystem",
    "ValueTable",
    "arrival_value_expr",
    "build_level_system",
    "solve_level",
    "solve_level_values",
    "evaluate",
    "to_decimal",
    "signed_decimal",
    "SingularSystem",
]


@dataclasses.dataclass(frozen=True)
class LinearExpr:
    """constant + sum(coefficient * V(state)) over same-level unknowns."""

    constant: Fraction
    terms: tuple[tuple[GameState, int], ...]


def _resolve_continue(arrival: GameState, level_strategy: Strategy | None) -> bool:
    if not is_decision_state(arrival):
        return True
    if level_strategy is None:
        raise ValueError(f"a strategy is required to resolve {arrival}")
    return level_strategy.bit_for(DecisionPoint(arrival)) == 1


def arrival_value_expr(
    arrival: GameState, level_strategy: Strategy | None
) -> LinearExpr:
    """Value of arriving at `arrival` with the stop/continue choice pending.

    Continue resolves to the unknown V(arrival); stop resolves to
    1 - V(mirror(arrival)). The choice is forced to continue when the lid
    is empty or the arrival is in the no-choice (1/k/1) family.
    """
    if _resolve_continue(arrival, level_strategy):
        return LinearExpr(Fraction(0), ((arrival, 1),))
    return LinearExpr(Fraction(1), ((arrival.mirror(), -1),))


@dataclasses.dataclass
class LevelSystem:
    """The square linear system for one level: matrix · V = rhs.

    Matrix entries are the 6-scaled integer coefficients (exact rationals
    with denominator 1); the right-hand side carries the exact constants
    from the level below.
    """

    total: int
    unknowns: list[GameState]
    matrix: list[list[int]]
    rhs: list[Fraction]

    def index(self, state: GameState) -> int:
        return self._index[state]

    def __post_init__(self) -> None:
        self._index = {s: i for i, s in enumerate(self.unknowns)}

    def residual(self, solution: list[Fraction]) -> list[Fraction]:
        """matrix · solution − rhs, exact; all zero for a true solution."""
        out = []
        for row, b in zip(self.matrix, self.rhs):
            acc = -b
            for coef, x in zip(row, solution):
                if coef:
                    acc += coef * x
            out.append(acc)
        return out


class ValueTable:
    """Exact mover winning probabilities for every state up to a level.

    Immutable once built; values are keyed by state (the state fixes its
    total). The table remembers the strategy it was solved under so the
    value of an arrival with a pending decision can be resolved too.
    """

    def __init__(
        self,
        strategy: FullStrategy,
        values: Mapping[GameState, Fraction],
        max_total: int,
    ):
        self.strategy = strategy
        self.max_total = max_total
        self._values = dict(values)

    def value(self, state: GameState) -> Fraction:
        """Winning probability of the mover when they roll from `state`."""
        try:
            return self._values[state]
        except KeyError:
            raise KeyError(f"no value for {state}; table covers totals "
                           f"2..{self.max_total}") from None

    def decision_value(self, state: GameState) -> Fraction:
        """Winning probability of a mover who just placed a stick and now
        consults the strategy at `state`."""
        if self.strategy.continues_at(state):
            return self.value(state)
        return 1 - self.value(state.mirror())

    def __contains__(self, state: GameState) -> bool:
        return state in self._values

    def states(self, total: int) -> list[GameState]:
        return enumerate_states(total)

    def rows(self) -> Iterator[tuple[GameState, Fraction]]:
        """All (state, value) pairs ordered by (total, lid, mover)."""
        for total in iter_levels(self.max_total):
            for state in enumerate_states(total):
                yield state, self._values[state]

    def __len__(self) -> int:
        return len(self._values)


def build_level_system(
    total: int, level_strategy: Strategy | None, lower: ValueTable | None
) -> LevelSystem:
    """One equation per state at `total`, referencing lower levels only
    through exact constants.

    `lower` must cover every total below (it may be None for total 2,
    which needs no lower values). Raises ValueError when lower values are
    missing and SingularSystem never originates here.
    """
    if total > 2:
        if lower is None:
            raise ValueError(f"level {total} needs lower-level values")
        if lower.max_total < total - 1:
            raise ValueError(
                f"lower table covers totals 2..{lower.max_total}, "
                f"need {total - 1}"
            )
    if level_strategy is not None and level_strategy.total != total:
        raise ValueError(
            f"strategy is for total {level_strategy.total}, not {total}"
        )

    unknowns = enumerate_states(total)
    index = {s: i for i, s in enumerate(unknowns)}
    n = len(unknowns)
    matrix = [[0] * n for _ in range(n)]
    rhs = [Fraction(0)] * n

    for i, s in enumerate(unknowns):
        j, k, l = s.lid, s.mover, s.opponent
        row = matrix[i]
        row[i] += 6
        # six: the stick leaves the game
        if k == 1:
            rhs[i] += 1
        else:
            rhs[i] += lower.decision_value(GameState(j, k - 1, l))
        # free hole: stick stands, same level
        free = 5 - j
        if free:
            if k == 1:
                rhs[i] += free
            else:
                expr = arrival_value_expr(GameState(j + 1, k - 1, l), level_strategy)
                rhs[i] += free * expr.constant
                for state_u, coef in expr.terms:
                    row[index[state_u]] -= free * coef
        # occupied hole: pick up, die passes
        if j:
            hand = GameState(j - 1, l, k + 1)
            row[index[hand]] += j
            rhs[i] += j
    return LevelSystem(total, unknowns, matrix, rhs)


def solve_level(system: LevelSystem) -> list[Fraction]:
    """Exact solution of a level system.

    Raises SingularSystem when elimination cannot find a nonzero pivot
    (impossible for systems built from valid inputs, which are strictly
    diagonally dominant).
    """
    scale = math.lcm(*(b.denominator for b in system.rhs))
    rhs_int = [int(b * scale) for b in system.rhs]
    ys, det = bareiss_solve(system.matrix, rhs_int)
    return [Fraction(y, det * scale) for y in ys]


def solve_level_values(
    total: int, level_strategy: Strategy | None, lower: ValueTable | None
) -> dict[GameState, Fraction]:
    """Build and solve one level, returning state -> value."""
    system = build_level_system(total, level_strategy, lower)
    solution = solve_level(system)
    return dict(zip(system.unknowns, solution))


def evaluate(full: FullStrategy, max_total: int) -> ValueTable:
    """Exact values for every state at totals 2..max_total when both
    players follow `full`. Levels are solved in ascending order."""
    if full.max_total < max_total and max_total >= 4:
        raise ValueError(
            f"strategy covers totals up to {full.max_total}, need {max_total}"
        )
    values: dict[GameState, Fraction] = {}
    table = ValueTable(full, values, 1)
    for total in iter_levels(max_total):
        strategy = full.level(total) if total >= 4 else None
        values.update(solve_level_values(total, strategy, table))
        table = ValueTable(full, values, total)
    return table


def _round_half_even(v: Fraction, places: int) -> str:
    scale = 10**places
    q, r = divmod(v.numerator * scale, v.denominator)
    double = 2 * r
    if double > v.denominator or (double == v.denominator and q % 2):
        q += 1
    return f"{q // scale}.{q % scale:0{places}d}"


def to_decimal(v: Fraction, places: int) -> str:
    """Round-half-even decimal rendering of a probability in [0, 1]."""
    if places < 1:
        raise ValueError(f"places must be >= 1, got {places}")
    if not 0 <= v <= 1:
        raise ValueError(f"value must be in [0, 1], got {v}")
    return _round_half_even(v, places)


def signed_decimal(v: Fraction, places: int) -> str:
    """Like to_decimal but for signed quantities (strategy gaps)."""
    if v < 0:
        return "-" + _round_half_even(-v, places)
    return _round_half_even(v, places)
