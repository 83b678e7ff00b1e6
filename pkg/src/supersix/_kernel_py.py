"""Pure-Python exact linear-algebra kernel.

Same interface as the compiled module (_kernel); selected automatically
when the extension is missing or SUPERSIX_PURE=1. Everything here works on
arbitrary-precision integers so results are exact; floats appear only as a
derived read-out (each one a single correctly-rounded big-int division).

Two primitives:

  bareiss_solve / bareiss_solve_many
      Fraction-free elimination (Bareiss). The integer updates keep every
      intermediate entry an exact minor determinant, so the final division
      steps are exact and the solution comes back as (numerators, D) with
      x_i = y_i / D.

  gray_sweep
      Visits all 2^m settings of m strategy bits in Gray-code order. Each
      bit flip changes one matrix row and one right-hand-side entry, so the
      scaled inverse N (A·N = D·I) is maintained by an exact integer
      rank-1 update instead of re-solving: new D' = D + (delta·N) at the
      changed row, N' = (D'·N - N[:,r]·(delta·N)) / D, all divisions
      exact. Per step that is O(n^2) big-int operations, against O(n^3)
      for a fresh solve.
"""

from __future__ import annotations

import numpy as np

from .errors import SingularSystem

BACKEND = "python"


def bareiss_solve(rows: list[list[int]], rhs: list[int]) -> tuple[list[int], int]:
    """Solve A x = b exactly; returns (y, D) with x_i = y_i / D, D != 0."""
    ys, det = bareiss_solve_many(rows, [rhs])
    return ys[0], det


def bareiss_solve_many(
    rows: list[list[int]], rhss: list[list[int]]
) -> tuple[list[list[int]], int]:
    """Solve A x = b for several right-hand sides with one elimination.

    All solutions share the returned denominator D (the elimination's
    final pivot), which equals the determinant up to the sign of the row
    swaps performed.
    """
    n = len(rows)
    width = n + len(rhss)
    m = [list(rows[i]) + [r[i] for r in rhss] for i in range(n)]

    prev = 1
    for k in range(n - 1):
        piv = k
        while piv < n and m[piv][k] == 0:
            piv += 1
        if piv == n:
            raise SingularSystem(f"no pivot in column {k}")
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
        mk = m[k]
        pivot = mk[k]
        for i in range(k + 1, n):
            mi = m[i]
            factor = mi[k]
            for j in range(k + 1, width):
                mi[j] = (mi[j] * pivot - factor * mk[j]) // prev
            mi[k] = 0
        prev = pivot
    det = m[n - 1][n - 1]
    if det == 0:
        raise SingularSystem(f"no pivot in column {n - 1}")

    solutions = []
    for col in range(n, width):
        y = [0] * n
        for i in range(n - 1, -1, -1):
            acc = det * m[i][col]
            for j in range(i + 1, n):
                acc -= m[i][j] * y[j]
            q, r = divmod(acc, m[i][i])
            if r:  # pragma: no cover - would mean broken elimination
                raise SingularSystem("inexact back-substitution")
            y[i] = q
        solutions.append(y)
    return solutions, det


def _scaled_inverse(rows: list[list[int]], rhs: list[int]):
    """Return (N, y, D) with A·N = D·I and A·(y/D) = rhs, one elimination."""
    n = len(rows)
    eye = [[int(i == j) for i in range(n)] for j in range(n)]
    solutions, det = bareiss_solve_many(rows, eye + [rhs])
    ncols = solutions[:n]
    # solutions hold columns of N: N[i][j] = (solution for e_j)[i]
    big = np.empty((n, n), dtype=object)
    for j in range(n):
        col = ncols[j]
        for i in range(n):
            big[i, j] = col[i]
    y = np.array(solutions[n], dtype=object)
    return big, y, det


FlipSpec = tuple[int, list[tuple[int, int]], int]


def gray_sweep(
    rows: list[list[int]],
    rhs: list[int],
    flips: list[FlipSpec],
    scale: int,
) -> np.ndarray:
    """Exact values for every setting of the sweep bits.

    `rows`/`rhs` describe the system with every sweep bit at 0; flips[i]
    gives (row, [(col, coeff_delta), ...], rhs_delta) to apply when bit i
    turns on. Returns a float array of shape (2^m, n) indexed by bitmask;
    entry [mask, s] is the solution component for state s divided by
    `scale`, correctly rounded from the exact integers.
    """
    nbits = len(flips)
    n = len(rows)
    out = np.empty((1 << nbits, n), dtype=np.float64)

    big_n, y, det = _scaled_inverse(rows, rhs)
    b = np.array(list(rhs), dtype=object)

    denom = det * scale
    out[0, :] = [y_i / denom for y_i in y]

    mask = 0
    for step in range(1, 1 << nbits):
        bit = (step & -step).bit_length() - 1
        mask ^= 1 << bit
        sign = 1 if mask & (1 << bit) else -1
        row_i, cols, drhs_base = flips[bit]
        drhs = sign * drhs_base

        w = None
        for col, delta in cols:
            term = big_n[col, :] * (sign * delta)
            w = term if w is None else w + term
        det_new = det + int(w[row_i])
        if det_new == 0:  # pragma: no cover - dominance keeps systems regular
            raise SingularSystem("sweep produced a singular system")
        u = big_n[:, row_i].copy()

        wb = int(np.dot(w, b))
        big_n = (big_n * det_new - np.outer(u, w)) // det
        y = (y * det_new - u * wb) // det + u * drhs
        b[row_i] += drhs
        det = det_new

        denom = det * scale
        out[mask, :] = [y_i / denom for y_i in y]
    return out
