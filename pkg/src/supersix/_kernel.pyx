# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled exact kernel: fraction-free elimination and the Gray-code
strategy sweep. Mirrors _kernel_py exactly; see that module for the
algorithm derivations. All arithmetic stays on Python big ints -- Cython
removes the interpreter overhead around them, which is where most of the
time goes at these matrix sizes (n <= ~70)."""

import numpy as np

from .errors import SingularSystem

BACKEND = "compiled"


def bareiss_solve(rows, rhs):
    """Solve A x = b exactly; returns (y, D) with x_i = y_i / D, D != 0."""
    ys, det = bareiss_solve_many(rows, [rhs])
    return ys[0], det


def bareiss_solve_many(rows, rhss):
    """Solve A x = b for several right-hand sides with one elimination."""
    cdef Py_ssize_t n = len(rows)
    cdef Py_ssize_t nr = len(rhss)
    cdef Py_ssize_t width = n + nr
    cdef Py_ssize_t i, j, k, piv, col
    cdef list m = [], mi, mk, y
    cdef object prev, pivot, factor, det, acc, q, r

    for i in range(n):
        mi = list(rows[i])
        for j in range(nr):
            mi.append(rhss[j][i])
        m.append(mi)

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
            mi = m[i]
            acc = det * mi[col]
            for j in range(i + 1, n):
                acc = acc - mi[j] * y[j]
            q, r = divmod(acc, mi[i])
            if r:
                raise SingularSystem("inexact back-substitution")
            y[i] = q
        solutions.append(y)
    return solutions, det


def gray_sweep(rows, rhs, flips, scale):
    """Exact values for every setting of the sweep bits; see _kernel_py."""
    cdef Py_ssize_t nbits = len(flips)
    cdef Py_ssize_t n = len(rows)
    cdef Py_ssize_t size = 1 << nbits
    cdef Py_ssize_t step, i, j, bit, row_i, mask = 0
    cdef bint bit_on
    cdef object det, det_new, wb, drhs, ui, sign_delta, acc, denom
    cdef list big = [], w, u, y, b, ni, cols

    out_arr = np.empty((size, n), dtype=np.float64)
    cdef double[:, ::1] out = out_arr

    eye = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    solutions, det = bareiss_solve_many(rows, eye + [list(rhs)])
    # solutions[j] is N's column j; store N by rows for the update loops
    for i in range(n):
        ni = [solutions[j][i] for j in range(n)]
        big.append(ni)
    y = list(solutions[n])
    b = list(rhs)

    denom = det * scale
    for j in range(n):
        out[0, j] = y[j] / denom

    w = [0] * n
    u = [0] * n
    for step in range(1, size):
        bit = 0
        while not (step >> bit) & 1:
            bit += 1
        mask ^= (<Py_ssize_t> 1) << bit
        bit_on = (mask >> bit) & 1
        row_i, cols, drhs = flips[bit]
        if not bit_on:
            drhs = -drhs

        for j in range(n):
            w[j] = 0
        for col_delta in cols:
            i = col_delta[0]
            sign_delta = col_delta[1]
            if not bit_on:
                sign_delta = -sign_delta
            ni = big[i]
            for j in range(n):
                w[j] = w[j] + sign_delta * ni[j]

        det_new = det + w[row_i]
        if det_new == 0:
            raise SingularSystem("sweep produced a singular system")

        wb = 0
        for j in range(n):
            wb = wb + w[j] * b[j]
        for i in range(n):
            u[i] = big[i][row_i]

        for i in range(n):
            ni = big[i]
            ui = u[i]
            for j in range(n):
                ni[j] = (ni[j] * det_new - ui * w[j]) // det
        for i in range(n):
            ui = u[i]
            y[i] = (y[i] * det_new - ui * wb) // det + ui * drhs
        b[row_i] = b[row_i] + drhs
        det = det_new

        denom = det * scale
        for j in range(n):
            out[mask, j] = y[j] / denom
    return out_arr
