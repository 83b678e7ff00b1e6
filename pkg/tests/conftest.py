"""Shared fixtures.

The expensive artifacts (optimal strategies and tables, per-level sweep
contexts) are session-scoped so the suite pays for each sweep once. The
policy-iteration builder is the fast path (milliseconds to total 15) and
the staged/exhaustive runs validate it independently.
"""

from __future__ import annotations

import pytest

from supersix.optimize import LevelContext, _restricted_table, optimal_full_with_table


@pytest.fixture(scope="session")
def policy_run():
    """(FullStrategy, ValueTable) for totals up to 15, by policy iteration."""
    return optimal_full_with_table(15, method="policy")


@pytest.fixture(scope="session")
def optimal_table(policy_run):
    return policy_run[1]


@pytest.fixture(scope="session")
def optimal_strategy(policy_run):
    return policy_run[0]


@pytest.fixture(scope="session")
def lower_table(policy_run):
    """Factory: the optimal table restricted to totals below `total`."""
    full, table = policy_run

    def _lower(total: int):
        return _restricted_table(table, full, total - 1)

    return _lower


@pytest.fixture(scope="session")
def level_context(lower_table):
    """Factory for per-level optimizer contexts, cached so every test at
    one level shares its sweeps (the level-8 full sweep is the big one)."""
    cache: dict[int, LevelContext] = {}

    def _ctx(total: int) -> LevelContext:
        if total not in cache:
            cache[total] = LevelContext(total, lower_table(total))
        return cache[total]

    return _ctx
