#!/usr/bin/env python3
"""Compare the compiled and pure-Python exact kernels.

Times the two hot primitives on real level systems: single Bareiss solves
at several matrix sizes and full Gray-code sweeps over every strategy of a
level. Run from the repository root:

    python benchmarks/bench_kernel.py
"""

import math
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from supersix import _kernel_py
from supersix.optimize import optimal_full_with_table, _restricted_table
from supersix.solver import build_level_system
from supersix.states import GameState, decision_points
from supersix.strategy import all_stop

try:
    from supersix import _kernel as _compiled
except ImportError:
    _compiled = None


def level_inputs(total, lower):
    base = build_level_system(total, all_stop(total) if total >= 4 else None, lower)
    index = {s: i for i, s in enumerate(base.unknowns)}
    scale = math.lcm(*(b.denominator for b in base.rhs))
    rhs = [int(b * scale) for b in base.rhs]
    flips = []
    for p in decision_points(total):
        a = p.state
        pred = GameState(a.lid - 1, a.mover + 1, a.opponent)
        f = 6 - a.lid
        mirror = a.mirror()
        cols = (
            [(index[a], -2 * f)]
            if mirror == a
            else [(index[a], -f), (index[mirror], -f)]
        )
        flips.append((index[pred], cols, -f * scale))
    return base.matrix, rhs, flips, scale


def time_call(fn, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    full, table = optimal_full_with_table(15, method="policy")
    backends = [("python", _kernel_py)]
    if _compiled is not None:
        backends.append(("compiled", _compiled))
    else:
        print("compiled kernel not built; showing the pure backend only\n")

    print(f"{'benchmark':<34}" + "".join(f"{name:>12}" for name, _ in backends))

    for total in (7, 8, 13, 15):
        lower = _restricted_table(table, full, total - 1)
        matrix, rhs, flips, scale = level_inputs(total, lower)
        n = len(matrix)
        times = [
            time_call(lambda impl=impl: impl.bareiss_solve(matrix, rhs))
            for _, impl in backends
        ]
        row = f"bareiss solve, total {total} (n={n})"
        print(f"{row:<34}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times))

    for total, label in ((6, "2^9"), (7, "2^14")):
        lower = _restricted_table(table, full, total - 1)
        matrix, rhs, flips, scale = level_inputs(total, lower)
        times = [
            time_call(
                lambda impl=impl: impl.gray_sweep(matrix, rhs, flips, scale),
                repeat=1,
            )
            for _, impl in backends
        ]
        row = f"gray sweep, total {total} ({label} strategies)"
        print(f"{row:<34}" + "".join(f"{t:>11.2f}s" for t in times))

    if len(backends) == 2:
        print("\nspeedup = python time / compiled time per row")


if __name__ == "__main__":
    main()
