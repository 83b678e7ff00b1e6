"""Finding optimal strategies.

Three methods, used as cross-checks on each other:

  exhaustive   every strategy at a level is solved and each decision bit
               must beat its flip across all completions of the other bits
               (an all-completions dominance check). Feasible through
               total 8 (2^19 systems).

  staged       dominance of the easy groups first (always continue at lids
               1-2, always stop at lids 4-5; verified, not assumed), then
               the lid-3 bits resolved one by one against all completions
               of the still-undecided lid-3 bits.

  policy       plain policy iteration: evaluate the level, flip every bit
               to its strictly better action, repeat to a fixed point.

Strategy sweeps enumerate completions in Gray-code order through the
kernel, which maintains the exact integer adjugate of the level system
under single-row updates. The comparison values read out of a sweep are
floats derived from exact integers (one correctly-rounded division each),
so their error is below 1e-15; any comparison within 1e-12 of a tie is
re-solved exactly before a verdict is issued.
"""

from __future__ import annotations

import dataclasses
import enum
import math
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .errors import (
    ExhaustiveCapExceeded,
    NonConvergence,
    StageAssumptionViolated,
    TotalCapExceeded,
)
from .kernel import gray_sweep
from .solver import ValueTable, build_level_system, solve_level_values
from .states import (
    DecisionPoint,
    GameState,
    decision_points,
    enumerate_states,
    max_total_cap,
)
from .strategy import (
    CONTINUE,
    STOP,
    FullStrategy,
    Strategy,
    all_continue,
    all_stop,
)

DEFAULT_FREE_POINT_CAP = 20
DEFAULT_EXHAUSTIVE_CAP = 8
DEFAULT_POLICY_CAP = 64
DETAIL_PAIR_CAP = 10  # exact per-completion pairs kept up to 2^10 completions
TIE_MARGIN = 1e-12  # float gaps inside this margin get an exact recheck


class Verdict(enum.Enum):
    CONTINUE_DOMINATES = "continue-dominates"
    STOP_DOMINATES = "stop-dominates"
    MIXED = "mixed"


@dataclasses.dataclass(frozen=True)
class DominanceReport:
    """Outcome of comparing one decision bit against every completion of
    the free points.

    `pairs` holds the exact (value_continue, value_stop) per completion
    when the sweep is small enough (2^10 completions); larger sweeps keep
    the exact pair only for the extreme completions, in `tightest`.
    """

    point: DecisionPoint
    verdict: Verdict
    completions: int
    pairs: tuple[tuple[Fraction, Fraction], ...] | None
    tightest: tuple[Fraction, Fraction]
    ties: int = 0


@dataclasses.dataclass(frozen=True)
class GapRecord:
    """Continue-minus-stop value at a lid-3 decision point, all other bits
    at their optimal setting. Positive means continue is better."""

    state: GameState
    gap: Fraction


class LevelContext:
    """Shared machinery for optimizing one level: the lower-level table,
    canonical decision points, and a cache of completed sweeps."""

    def __init__(self, total: int, lower: ValueTable):
        if total < 4:
            raise ValueError(f"nothing to optimize at total {total}")
        self.total = total
        self.lower = lower
        self.points = decision_points(total)
        self.states = enumerate_states(total)
        self.state_col = {s: i for i, s in enumerate(self.states)}
        self._sweeps: dict[tuple, np.ndarray] = {}
        self._exact: dict[tuple[int, ...], dict[GameState, Fraction]] = {}

    # -- exact evaluation ---------------------------------------------------

    def exact_values(self, bits: tuple[int, ...]) -> dict[GameState, Fraction]:
        got = self._exact.get(bits)
        if got is None:
            got = solve_level_values(self.total, Strategy(self.total, bits), self.lower)
            self._exact[bits] = got
        return got

    def exact_pair(
        self, point_i: int, bits: tuple[int, ...]
    ) -> tuple[Fraction, Fraction]:
        """Exact (continue, stop) values of point_i's decision under the
        given completion; bits[point_i] is overridden per branch."""
        state = self.points[point_i].state
        on = list(bits)
        on[point_i] = CONTINUE
        off = list(bits)
        off[point_i] = STOP
        v_cont = self.exact_values(tuple(on))[state]
        v_stop = 1 - self.exact_values(tuple(off))[state.mirror()]
        return v_cont, v_stop

    # -- sweeps ---------------------------------------------------------------

    def sweep(
        self, sweep_points: Sequence[int], fixed_bits: tuple[int, ...]
    ) -> np.ndarray:
        """Float values (2^m, n_states) for every setting of sweep_points;
        all other bits read from fixed_bits. Cached."""
        key = (tuple(sweep_points), tuple(
            b for i, b in enumerate(fixed_bits) if i not in set(sweep_points)
        ))
        got = self._sweeps.get(key)
        if got is not None:
            return got

        base_bits = list(fixed_bits)
        for i in sweep_points:
            base_bits[i] = STOP
        base = build_level_system(
            self.total, Strategy(self.total, tuple(base_bits)), self.lower
        )
        scale = math.lcm(*(b.denominator for b in base.rhs))
        rhs_int = [int(b * scale) for b in base.rhs]

        flips = []
        for i in sweep_points:
            a = self.points[i].state
            pred = GameState(a.lid - 1, a.mover + 1, a.opponent)
            f = 6 - a.lid
            mirror = a.mirror()
            if mirror == a:
                cols = [(self.state_col[a], -2 * f)]
            else:
                cols = [(self.state_col[a], -f), (self.state_col[mirror], -f)]
            flips.append((self.state_col[pred], cols, -f * scale))

        vals = gray_sweep(base.matrix, rhs_int, flips, scale)
        self._sweeps[key] = vals
        return vals

    def full_sweep(self) -> np.ndarray:
        return self.sweep(range(len(self.points)), all_stop(self.total).bits)

    def release(self) -> None:
        """Drop cached sweeps (the full-level ones can run to ~100 MB)."""
        self._sweeps.clear()
        self._exact.clear()

    # -- dominance ------------------------------------------------------------

    def point_gaps(
        self, vals: np.ndarray, sweep_points: Sequence[int], point_i: int
    ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Per-completion float (continue, stop) values for point_i, which
        must be among sweep_points. Returns (cont, stop, completion_masks)
        where masks index `vals` with point_i's own bit cleared."""
        pos = list(sweep_points).index(point_i)
        m = len(sweep_points)
        state = self.points[point_i].state
        col_a = self.state_col[state]
        col_m = self.state_col[state.mirror()]

        idx = np.arange(1 << m, dtype=np.int64)
        off = idx[(idx >> pos) & 1 == 0]
        on = off | (1 << pos)
        cont = vals[on, col_a]
        stop = 1.0 - vals[off, col_m]
        return cont, stop, off

    def _mask_to_bits(
        self,
        mask: int,
        sweep_points: Sequence[int],
        fixed_bits: tuple[int, ...],
    ) -> tuple[int, ...]:
        bits = list(fixed_bits)
        for pos, i in enumerate(sweep_points):
            bits[i] = (mask >> pos) & 1
        return tuple(bits)

    def verdict_for(
        self,
        point_i: int,
        sweep_points: Sequence[int],
        fixed_bits: tuple[int, ...],
        vals: np.ndarray | None = None,
        detail: bool = False,
    ) -> DominanceReport:
        """Dominance verdict for one point over all completions of the
        other sweep points, with exact rechecks near ties.

        `detail` materializes the exact per-completion pairs (two solves
        each); the optimizers leave it off and only the public
        dominance_at turns it on.
        """
        if vals is None:
            vals = self.sweep(sweep_points, fixed_bits)
        cont, stop, off_masks = self.point_gaps(vals, sweep_points, point_i)
        gaps = cont - stop
        ncomp = len(gaps)

        ties = 0
        suspect = np.nonzero(np.abs(gaps) < TIE_MARGIN)[0]
        for s in suspect:
            bits = self._mask_to_bits(int(off_masks[s]), sweep_points, fixed_bits)
            c_exact, s_exact = self.exact_pair(point_i, bits)
            diff = c_exact - s_exact
            if diff == 0:
                ties += 1
                gaps[s] = 0.0
            else:
                gaps[s] = 1e-9 if diff > 0 else -1e-9

        if ties == 0 and np.all(gaps > 0):
            verdict = Verdict.CONTINUE_DOMINATES
        elif ties == 0 and np.all(gaps < 0):
            verdict = Verdict.STOP_DOMINATES
        else:
            verdict = Verdict.MIXED

        tight_i = int(np.argmin(np.abs(gaps)))
        tight_bits = self._mask_to_bits(
            int(off_masks[tight_i]), sweep_points, fixed_bits
        )
        tightest = self.exact_pair(point_i, tight_bits)

        pairs = None
        if detail and ncomp <= (1 << DETAIL_PAIR_CAP):
            pairs = tuple(
                self.exact_pair(
                    point_i,
                    self._mask_to_bits(int(mk), sweep_points, fixed_bits),
                )
                for mk in off_masks
            )
        return DominanceReport(
            point=self.points[point_i],
            verdict=verdict,
            completions=ncomp,
            pairs=pairs,
            tightest=tightest,
            ties=ties,
        )


def dominance_at(
    point: DecisionPoint,
    total: int,
    lower: ValueTable,
    free_points: Sequence[DecisionPoint],
    fixed: Mapping[DecisionPoint, int] | None = None,
    *,
    free_cap: int = DEFAULT_FREE_POINT_CAP,
    context: LevelContext | None = None,
) -> DominanceReport:
    """Compare both settings of `point` against every assignment of
    `free_points`; bits outside {point} | free_points come from `fixed`.

    Per completion, the continue value is the point state's exact solution
    with the bit on, and the stop value is 1 minus the mirrored state's
    solution with the bit off. Rejects free sets larger than `free_cap`
    (cost doubles per point).
    """
    if len(free_points) > free_cap:
        raise ExhaustiveCapExceeded(
            f"{len(free_points)} free points exceed the cap of {free_cap}"
        )
    if point in free_points:
        raise ValueError(f"{point.state} cannot be among its own free points")
    ctx = context or LevelContext(total, lower)
    order = {p: i for i, p in enumerate(ctx.points)}
    point_i = order[point]
    free_idx = [order[p] for p in free_points]

    bits = [CONTINUE] * len(ctx.points)
    named = {point_i} | set(free_idx)
    fixed = fixed or {}
    for p, b in fixed.items():
        i = order[p]
        if i in named:
            raise ValueError(f"{p.state} is both fixed and swept")
        bits[i] = b
    missing = [
        ctx.points[i].state
        for i in range(len(ctx.points))
        if i not in named and ctx.points[i] not in fixed
    ]
    if missing:
        raise ValueError(f"bits not fixed for {missing}; pass them in `fixed`")

    sweep_points = free_idx + [point_i]
    return ctx.verdict_for(point_i, sweep_points, tuple(bits), detail=True)


def _bit_from_verdict(report: DominanceReport) -> int | None:
    if report.verdict is Verdict.CONTINUE_DOMINATES:
        return CONTINUE
    if report.verdict is Verdict.STOP_DOMINATES:
        return STOP
    return None


def exhaustive_optimal_level(
    total: int,
    lower: ValueTable,
    *,
    cap: int = DEFAULT_EXHAUSTIVE_CAP,
    context: LevelContext | None = None,
) -> Strategy:
    """Optimal per-level strategy by full enumeration: every bit must
    dominate its flip across all completions of the remaining points.

    Falls over to the staged procedure when any verdict is mixed, which
    first happens at total 7 (a lid-3 stop can beat continue when the
    surrounding bits are deliberately bad)."""
    if total > cap:
        raise ExhaustiveCapExceeded(
            f"exhaustive enumeration capped at total {cap}, asked for {total}"
        )
    ctx = context or LevelContext(total, lower)
    sweep_points = list(range(len(ctx.points)))
    vals = ctx.full_sweep()
    fixed = all_stop(total).bits

    bits = []
    for i in range(len(ctx.points)):
        report = ctx.verdict_for(i, sweep_points, fixed, vals=vals)
        bit = _bit_from_verdict(report)
        if bit is None:
            if total >= 7:
                return staged_optimal_level(total, lower, context=ctx)
            raise StageAssumptionViolated(
                f"mixed dominance at {report.point.state} below total 7",
                point=report.point,
            )
        bits.append(bit)
    return Strategy(total, tuple(bits))


def _stage1_pattern(ctx: LevelContext) -> tuple[int, ...]:
    """Stage-1 working bits: continue at lids 1-3, stop at lids 4-5."""
    return tuple(
        CONTINUE if p.state.lid <= 3 else STOP for p in ctx.points
    )


def staged_optimal_level(
    total: int,
    lower: ValueTable,
    *,
    free_cap: int = DEFAULT_FREE_POINT_CAP,
    context: LevelContext | None = None,
) -> Strategy:
    """The staged procedure for totals 7 and up.

    Stage 1 verifies that every lid-1/2 bit dominates as continue and
    every lid-4/5 bit as stop. Through total 8 the check runs against all
    completions of all other points; beyond that (where 2^(5t-22) sweeps
    are out of reach and above `free_cap` anyway) it runs against all
    completions of the point's own lid group, with outside bits pinned to
    the expected pattern. Stage 2 fixes those groups and resolves the
    lid-3 bits in mover order, each against every completion of the
    still-undecided lid-3 bits. Any unexpected verdict raises
    StageAssumptionViolated naming the offending point.
    """
    if total < 7:
        raise ValueError(f"staged optimization starts at total 7, got {total}")
    ctx = context or LevelContext(total, lower)
    n_points = len(ctx.points)
    pattern = _stage1_pattern(ctx)
    by_lid: dict[int, list[int]] = {}
    for i, p in enumerate(ctx.points):
        by_lid.setdefault(p.state.lid, []).append(i)

    # stage 1: lids 1, 2 continue; lids 4, 5 stop. One sweep serves a whole
    # group of points (the full level through total 8, the lid group above).
    full_free = n_points - 1 <= free_cap
    if full_free:
        sweep_points = list(range(n_points))
        fixed = all_stop(total).bits
        vals = ctx.full_sweep()
    for lid in (1, 2, 4, 5):
        expected = CONTINUE if lid <= 2 else STOP
        if not full_free:
            sweep_points = by_lid.get(lid, [])
            fixed = pattern
            vals = ctx.sweep(sweep_points, fixed) if sweep_points else None
        for i in by_lid.get(lid, []):
            report = ctx.verdict_for(i, sweep_points, fixed, vals=vals)
            if _bit_from_verdict(report) != expected:
                action = "continue" if expected == CONTINUE else "stop"
                raise StageAssumptionViolated(
                    f"{report.point.state} does not dominate as {action} "
                    f"({report.verdict.value} over {report.completions} "
                    f"completions)",
                    point=report.point,
                )

    # stage 2: lid-3 bits, decided in mover order
    bits = list(pattern)
    lid3 = by_lid.get(3, [])
    for pos, i in enumerate(lid3):
        undecided = lid3[pos + 1 :]
        report = ctx.verdict_for(i, undecided + [i], tuple(bits))
        bit = _bit_from_verdict(report)
        if bit is None:
            raise StageAssumptionViolated(
                f"no uniform winner at {report.point.state} over "
                f"{report.completions} completions of the undecided lid-3 "
                f"points",
                point=report.point,
            )
        bits[i] = bit
    return Strategy(total, tuple(bits))


def policy_iteration_level(
    total: int,
    lower: ValueTable,
    initial: Strategy,
    *,
    max_iterations: int = DEFAULT_POLICY_CAP,
    context: LevelContext | None = None,
) -> Strategy:
    """Independent optimizer: evaluate the level under the current bits,
    flip every bit whose other action is strictly better (exact
    comparison), repeat until nothing changes. Ties keep the current bit.
    """
    ctx = context or LevelContext(total, lower)
    current = initial.bits
    seen: list[tuple[int, ...]] = [current]
    for _ in range(max_iterations):
        values = ctx.exact_values(current)
        flipped = list(current)
        for i, p in enumerate(ctx.points):
            q_continue = values[p.state]
            q_stop = 1 - values[p.state.mirror()]
            if q_continue > q_stop:
                flipped[i] = CONTINUE
            elif q_stop > q_continue:
                flipped[i] = STOP
        new = tuple(flipped)
        if new == current:
            return Strategy(total, new)
        current = new
        seen.append(current)
    raise NonConvergence(
        f"policy iteration did not settle within {max_iterations} sweeps "
        f"at total {total}",
        cycle=[Strategy(total, b) for b in seen],
    )


def optimal_level(
    total: int,
    lower: ValueTable,
    method: str,
    *,
    exhaustive_cap: int = DEFAULT_EXHAUSTIVE_CAP,
    context: LevelContext | None = None,
) -> Strategy:
    """Dispatch one level to the requested method. The staged procedure
    only exists from total 7, so smaller levels enumerate exhaustively."""
    if method == "exhaustive":
        return exhaustive_optimal_level(
            total, lower, cap=exhaustive_cap, context=context
        )
    if method == "staged":
        if total < 7:
            return exhaustive_optimal_level(
                total, lower, cap=exhaustive_cap, context=context
            )
        return staged_optimal_level(total, lower, context=context)
    if method == "policy":
        return policy_iteration_level(total, lower, all_continue(total), context=context)
    raise ValueError(f"unknown method {method!r}")


def optimal_full_with_table(
    max_total: int,
    method: str = "staged",
    *,
    cap: int | None = None,
    exhaustive_cap: int = DEFAULT_EXHAUSTIVE_CAP,
) -> tuple[FullStrategy, ValueTable]:
    """Optimal play for every level up to max_total, plus its value table.

    Levels are optimized bottom-up; each level's search uses the already
    optimal lower levels, which is exact because the total never rises
    during play.
    """
    cap = max_total_cap() if cap is None else cap
    if not 4 <= max_total <= cap:
        raise TotalCapExceeded(
            f"max_total must be within 4..{cap}, got {max_total}"
        )
    if method == "exhaustive" and max_total > exhaustive_cap:
        raise ExhaustiveCapExceeded(
            f"exhaustive enumeration capped at total {exhaustive_cap}, "
            f"asked for {max_total}"
        )
    values: dict[GameState, Fraction] = {}
    levels: dict[int, Strategy] = {}
    table = ValueTable(FullStrategy(3, {}), {}, 1)
    for total in range(2, max_total + 1):
        if total < 4:
            values.update(solve_level_values(total, None, table))
        else:
            ctx = LevelContext(total, table)
            levels[total] = optimal_level(
                total, table, method, exhaustive_cap=exhaustive_cap, context=ctx
            )
            values.update(ctx.exact_values(levels[total].bits))
            ctx.release()
        partial = FullStrategy(max(total, 3), dict(levels)) if levels else FullStrategy(3, {})
        table = ValueTable(partial, values, total)
    return table.strategy, table


def optimal_full(max_total: int, method: str = "staged", **kwargs) -> FullStrategy:
    full, _ = optimal_full_with_table(max_total, method, **kwargs)
    return full


def gap_table(
    min_total: int,
    max_total: int,
    *,
    optimal: tuple[FullStrategy, ValueTable] | None = None,
) -> list[GapRecord]:
    """Continue-minus-stop gaps at every lid-3 decision point in the total
    range, each bit setting evaluated with all other bits optimal.

    Positive gap means continue wins, negative means stop; the sign always
    matches the optimal strategy's bit at that point.
    """
    cap = max_total_cap()
    if not 4 <= min_total <= max_total <= cap:
        raise TotalCapExceeded(
            f"range {min_total}..{max_total} must sit within 4..{cap}"
        )
    if optimal is None:
        # policy iteration builds the same strategies (the acceptance suite
        # proves the methods identical) several orders of magnitude faster
        optimal = optimal_full_with_table(max_total, method="policy")
    full, table = optimal

    records = []
    for total in range(min_total, max_total + 1):
        level_bits = full.level(total).bits
        points = decision_points(total)
        lower = _restricted_table(table, full, total - 1)
        ctx = LevelContext(total, lower)
        for i, p in enumerate(points):
            if p.state.lid != 3:
                continue
            v_cont, v_stop = ctx.exact_pair(i, level_bits)
            records.append(GapRecord(p.state, v_cont - v_stop))
    return records


def _restricted_table(
    table: ValueTable, full: FullStrategy, max_total: int
) -> ValueTable:
    """View of `table` truncated to totals <= max_total."""
    values = {
        s: v for s, v in table.rows() if s.total() <= max_total
    }
    levels = {t: full.level(t) for t in range(4, max_total + 1) if t <= full.max_total}
    strat = FullStrategy(max_total, levels) if levels else FullStrategy(3, {})
    return ValueTable(strat, values, max_total)
