"""Exact kernel: Bareiss solves, the Gray-code sweep, and backend parity.

The reference oracle here is a plain Fraction Gaussian elimination with
partial pivoting, reduced at every step -- deliberately independent of the
integer-only kernel path.
"""

import math
from fractions import Fraction

import numpy as np
import pytest

from supersix import _kernel_py
from supersix.errors import SingularSystem
from supersix.kernel import BACKEND, bareiss_solve
from supersix.solver import build_level_system, solve_level_values
from supersix.states import GameState, decision_points
from supersix.strategy import Strategy, all_stop, bit_count, uniform_full
from supersix.solver import evaluate

try:
    from supersix import _kernel as _compiled
except ImportError:
    _compiled = None

BACKENDS = [_kernel_py] + ([_compiled] if _compiled else [])


def gauss_fraction_solve(rows, rhs):
    """Textbook Gaussian elimination over Fractions (the cross-oracle)."""
    n = len(rows)
    m = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise SingularSystem(f"no pivot in column {col}")
        m[col], m[piv] = m[piv], m[col]
        for r in range(col + 1, n):
            factor = m[r][col] / m[col][col]
            for c in range(col, n + 1):
                m[r][c] -= factor * m[col][c]
    xs = [Fraction(0)] * n
    for r in range(n - 1, -1, -1):
        acc = m[r][n] - sum(m[r][c] * xs[c] for c in range(r + 1, n))
        xs[r] = acc / m[r][r]
    return xs


def random_system(rng, n):
    rows = [[int(rng.integers(-9, 10)) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        rows[i][i] += 40  # keep it nonsingular
    rhs = [int(rng.integers(-30, 31)) for _ in range(n)]
    return rows, rhs


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda m: m.BACKEND)
class TestBareiss:
    def test_identity(self, impl):
        rows = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
        ys, det = impl.bareiss_solve(rows, [3, -4, 5])
        assert [Fraction(y, det) for y in ys] == [3, -4, 5]

    def test_matches_fraction_gauss_on_random_systems(self, impl):
        rng = np.random.default_rng(2024)
        for _ in range(25):
            n = int(rng.integers(1, 11))
            rows, rhs = random_system(rng, n)
            ys, det = impl.bareiss_solve([r[:] for r in rows], rhs[:])
            got = [Fraction(y, det) for y in ys]
            assert got == gauss_fraction_solve(rows, rhs)

    def test_needs_pivoting(self, impl):
        rows = [[0, 2], [3, 0]]
        ys, det = impl.bareiss_solve(rows, [4, 9])
        assert [Fraction(y, det) for y in ys] == [3, 2]

    def test_singular_raises(self, impl):
        with pytest.raises(SingularSystem):
            impl.bareiss_solve([[1, 2], [2, 4]], [1, 2])

    def test_zero_residual(self, impl):
        rng = np.random.default_rng(7)
        rows, rhs = random_system(rng, 8)
        ys, det = impl.bareiss_solve([r[:] for r in rows], rhs[:])
        xs = [Fraction(y, det) for y in ys]
        for row, b in zip(rows, rhs):
            assert sum(c * x for c, x in zip(row, xs)) - b == 0


def _level_sweep(impl, total, lower):
    points = decision_points(total)
    base = build_level_system(total, all_stop(total), lower)
    index = {s: i for i, s in enumerate(base.unknowns)}
    scale = math.lcm(*(b.denominator for b in base.rhs))
    rhs_int = [int(b * scale) for b in base.rhs]
    flips = []
    for p in points:
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
    return base, index, impl.gray_sweep(base.matrix, rhs_int, flips, scale)


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda m: m.BACKEND)
class TestGraySweep:
    def test_every_mask_matches_a_direct_exact_solve(self, impl):
        total = 5
        lower = evaluate(uniform_full(4, 1), 4)
        base, index, vals = _level_sweep(impl, total, lower)
        m = bit_count(total)
        assert vals.shape == (1 << m, len(base.unknowns))
        for mask in range(1 << m):
            bits = tuple((mask >> i) & 1 for i in range(m))
            exact = solve_level_values(total, Strategy(total, bits), lower)
            for s, i in index.items():
                assert vals[mask, i] == pytest.approx(float(exact[s]), abs=1e-14)

    def test_spot_masks_at_total_six(self, impl):
        total = 6
        lower = evaluate(uniform_full(5, 1), 5)
        base, index, vals = _level_sweep(impl, total, lower)
        rng = np.random.default_rng(5)
        m = bit_count(total)
        for mask in [0, (1 << m) - 1, *rng.integers(0, 1 << m, size=6)]:
            bits = tuple((int(mask) >> i) & 1 for i in range(m))
            exact = solve_level_values(total, Strategy(total, bits), lower)
            for s, i in index.items():
                assert vals[int(mask), i] == pytest.approx(float(exact[s]), abs=1e-14)


def test_backends_agree_exactly():
    if _compiled is None:
        pytest.skip("compiled kernel not built")
    total, lower = 5, evaluate(uniform_full(4, 1), 4)
    _, _, a = _level_sweep(_kernel_py, total, lower)
    _, _, b = _level_sweep(_compiled, total, lower)
    assert np.array_equal(a, b)


def test_selected_backend_exposed():
    assert BACKEND in ("python", "compiled")
    ys, det = bareiss_solve([[2, 0], [0, 4]], [6, 8])
    assert [Fraction(y, det) for y in ys] == [3, 2]
