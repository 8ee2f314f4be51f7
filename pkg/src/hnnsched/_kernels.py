"""Compiled inner loops for the Hopfield solver and the schedule repair."""
import numpy as np
from numba import njit


@njit(cache=True)
def step(activation, current):
    if activation > 0.0:
        return 1
    if activation < 0.0:
        return 0
    return current


@njit(cache=True)
def descend_dense(y, w_hat, b_hat, max_sweeps):
    """Asynchronous cyclic updates in place. Returns (sweeps, converged)."""
    dim = y.shape[0]
    sweeps = 0
    while sweeps < max_sweeps:
        sweeps += 1
        changed = False
        for p in range(dim):
            u = -b_hat[p]
            for q in range(dim):
                if y[q]:
                    u += w_hat[p, q]
            new = step(u, y[p])
            if new != y[p]:
                y[p] = new
                changed = True
        if not changed:
            return sweeps, True
    return sweeps, False


@njit(cache=True)
def descend_structured(y, n, length, m, row_c, col_c, b_hat, max_sweeps):
    """Same dynamics as :func:`descend_dense` using running row/column sums."""
    rows = np.zeros(n, np.int64)
    cols = np.zeros(m, np.int64)
    for i in range(n):
        for j in range(length):
            if y[i * length + j]:
                rows[i] += 1
                if j < m:
                    cols[j] += 1
    sweeps = 0
    while sweeps < max_sweeps:
        sweeps += 1
        changed = False
        for i in range(n):
            base = i * length
            for j in range(length):
                p = base + j
                cur = y[p]
                u = row_c * (rows[i] - cur) - b_hat[p]
                if j < m:
                    u += col_c * (cols[j] - cur)
                new = step(u, cur)
                if new != cur:
                    y[p] = new
                    delta = 1 if new else -1
                    rows[i] += delta
                    if j < m:
                        cols[j] += delta
                    changed = True
        if not changed:
            return sweeps, True
    return sweeps, False


@njit(cache=True)
def error_count(mat, sizes, capacity):
    n, length = mat.shape
    total = 0
    for i in range(n):
        s = 0
        for j in range(length):
            s += mat[i, j]
        total += abs(s - sizes[i])
    for j in range(length):
        s = 0
        for i in range(n):
            s += mat[i, j]
        if s > capacity:
            total += s - capacity
    return total


@njit(cache=True)
def correct(mat, sizes, weights, capacity):
    """Repair a schedule so row sums equal sizes and column sums stay <= capacity.

    Columns are appended when no existing column has room for a missing unit.
    """
    n, length = mat.shape
    total = 0
    for i in range(n):
        total += sizes[i]
    width = length + total
    out = np.zeros((n, width), np.uint8)
    out[:, :length] = mat
    cols = np.zeros(width, np.int64)
    for j in range(length):
        for i in range(n):
            cols[j] += out[i, j]

    for k in range(length):
        while cols[k] > capacity:
            best = -1
            for i in range(n):
                if out[i, k] and (best < 0 or weights[i] < weights[best]):
                    best = i
            out[best, k] = 0
            cols[k] -= 1

    used = length
    for k in range(n):
        r = 0
        for j in range(width):
            r += out[k, j]
        j = width - 1
        while r > sizes[k]:
            if out[k, j]:
                out[k, j] = 0
                cols[j] -= 1
                r -= 1
            j -= 1
        j = 0
        while r < sizes[k]:
            if out[k, j] == 0 and cols[j] < capacity:
                out[k, j] = 1
                cols[j] += 1
                r += 1
                if j + 1 > used:
                    used = j + 1
            j += 1
    return out[:, :used].copy()


@njit(cache=True)
def twt(mat, deadlines, weights):
    n, length = mat.shape
    total = 0.0
    for i in range(n):
        f = 0
        for j in range(length - 1, -1, -1):
            if mat[i, j]:
                f = j + 1
                break
        if f > deadlines[i]:
            total += weights[i] * (f - deadlines[i])
    return total


@njit(cache=True)
def run_restart(
    y0,
    n,
    length,
    m,
    row_c,
    col_c,
    b_hat_base,
    late,
    alpha0,
    alpha_step,
    tolerance,
    max_alpha_iters,
    max_sweeps,
    sizes,
    deadlines,
    weights,
    capacity,
):
    """One restart of the alpha sweep from start vector ``y0``.

    Each iteration continues the descent from the previous fixed point with the
    threshold of the raised alpha.  Every candidate is repaired and scored; the
    lowest-TWT repaired schedule (earliest on ties) is returned as
    ``(schedule, twt, alpha_best, alpha_final, iterations, sweeps)``.
    """
    y = y0.copy()
    prev = np.empty_like(y)
    b_hat = np.empty(b_hat_base.shape[0])
    best = np.zeros((n, length), np.uint8)
    best_twt = np.inf
    best_alpha = alpha0
    alpha = alpha0
    sweeps = 0
    iters = 0
    while True:
        alpha = alpha0 + iters * alpha_step
        iters += 1
        for p in range(b_hat.shape[0]):
            b_hat[p] = b_hat_base[p] + alpha * late[p]
        s, _ = descend_structured(y, n, length, m, row_c, col_c, b_hat, max_sweeps)
        sweeps += s
        cand = y.reshape(n, length)
        if iters == 1 or not np.array_equal(y, prev):
            fixed = correct(cand, sizes, weights, capacity)
            t = twt(fixed, deadlines, weights)
            if t < best_twt:
                best_twt = t
                best = fixed
                best_alpha = alpha
            prev[:] = y
        errs = error_count(cand, sizes, capacity)
        if errs <= tolerance or iters >= max_alpha_iters:
            break
    return best, best_twt, best_alpha, alpha, iters, sweeps
