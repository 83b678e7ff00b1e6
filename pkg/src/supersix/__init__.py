"""Exact solver, optimal strategies and live advisor for Super Six."""

from .errors import (
    ExhaustiveCapExceeded,
    NonConvergence,
    SingularSystem,
    StageAssumptionViolated,
    SuperSixError,
    TotalCapExceeded,
)
from .kernel import BACKEND
from .optimize import (
    DominanceReport,
    GapRecord,
    LevelContext,
    Verdict,
    dominance_at,
    exhaustive_optimal_level,
    gap_table,
    optimal_full,
    optimal_full_with_table,
    policy_iteration_level,
    staged_optimal_level,
)
from .simulate import MatchConfig, MatchResult, play_game, play_games, simulate
from .solver import (
    LevelSystem,
    ValueTable,
    arrival_value_expr,
    build_level_system,
    evaluate,
    signed_decimal,
    solve_level,
    solve_level_values,
    to_decimal,
)
from .states import (
    DecisionPoint,
    GameState,
    Outcome,
    OutcomeKind,
    RollEvent,
    RollKind,
    TrackerEvent,
    apply_event,
    decision_points,
    enumerate_states,
    is_decision_state,
    max_total_cap,
    transitions,
)
from .strategy import (
    CONTINUE,
    STOP,
    FullStrategy,
    Strategy,
    StrategyParseError,
    all_continue,
    all_stop,
    bit_count,
    format_strategy,
    group_sizes,
    parse_strategy,
    point_index,
    uniform_full,
)

__version__ = "0.1.0"
