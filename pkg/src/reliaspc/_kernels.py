"""Hot numeric kernels: the GO score equation, its bracketed root finder and
counting-process tabulation.

Each kernel exists twice. The ``*_jit`` variants are scalar loops compiled
by numba (see :mod:`reliaspc._accel`); the ``*_numpy`` variants are
vectorised numpy code that needs no compiler. Both follow the same
arithmetic step by step so that they agree to the last few ulps. The
unsuffixed names are bound to whichever backend is active.

The score only depends on the sufficient statistics ``(sum(s_k), n, s_n)``,
so all kernels take those instead of the raw log.
"""
import math

import numpy as np

from ._accel import HAVE_NUMBA, njit

# solver status codes
OK = 0
NO_ROOT = 1
MAX_ITER = 2

B_LO0 = 1e-8
B_HI0 = 1e-1
# above this b*s_n the e^{-b s_n} terms underflow against the others
_X_BIG = 700.0


@njit
def score_scalar(b, s_sum, n, s_n):
    """g(b) = sum(s) - n/b + n s_n / (e^{b s_n} - 1)."""
    x = b * s_n
    tail = 0.0
    if x < _X_BIG:
        tail = n * s_n / math.expm1(x)
    return s_sum - n / b + tail


@njit
def score_deriv_scalar(b, s_sum, n, s_n):
    x = b * s_n
    tail = 0.0
    if x < _X_BIG:
        tail = n * s_n * s_n / (math.expm1(x) * -math.expm1(-x))
    return n / (b * b) - tail


@njit
def _solve_one(s_sum, n, s_n, rel_width, max_iter):
    if s_sum / n >= 0.5 * s_n:
        return math.nan, 0, NO_ROOT, math.nan, math.nan
    lo = B_LO0
    hi = B_HI0
    it = 0
    while score_scalar(lo, s_sum, n, s_n) >= 0.0:
        hi = lo
        lo = lo * 0.1
        it += 1
        if it >= max_iter:
            return 0.5 * (lo + hi), it, MAX_ITER, lo, hi
    while score_scalar(hi, s_sum, n, s_n) <= 0.0:
        lo = hi
        hi = hi * 10.0
        it += 1
        if it >= max_iter:
            return 0.5 * (lo + hi), it, MAX_ITER, lo, hi
    while hi - lo > rel_width * 0.5 * (lo + hi):
        if it >= max_iter:
            return 0.5 * (lo + hi), it, MAX_ITER, lo, hi
        mid = 0.5 * (lo + hi)
        gm = score_scalar(mid, s_sum, n, s_n)
        it += 1
        if gm < 0.0:
            lo = mid
        elif gm > 0.0:
            hi = mid
        else:
            lo = mid
            hi = mid
    b = 0.5 * (lo + hi)
    g = score_scalar(b, s_sum, n, s_n)
    d = score_deriv_scalar(b, s_sum, n, s_n)
    if d > 0.0:
        cand = b - g / d
        if lo <= cand <= hi:
            gc = score_scalar(cand, s_sum, n, s_n)
            if abs(gc) <= abs(g):
                b = cand
    return b, it, OK, lo, hi


@njit
def solve_score_jit(s_sum, n, s_n, rel_width, max_iter):
    m = s_sum.shape[0]
    b = np.empty(m)
    iters = np.empty(m, dtype=np.int64)
    status = np.empty(m, dtype=np.int64)
    lo = np.empty(m)
    hi = np.empty(m)
    for i in range(m):
        r = _solve_one(s_sum[i], n[i], s_n[i], rel_width, max_iter)
        b[i] = r[0]
        iters[i] = r[1]
        status[i] = r[2]
        lo[i] = r[3]
        hi[i] = r[4]
    return b, iters, status, lo, hi


@njit
def count_at_jit(times, offsets, grid):
    """Counts N(t) = #{s <= t} for every log (CSR layout) and grid point."""
    reps = offsets.shape[0] - 1
    out = np.zeros((reps, grid.shape[0]), dtype=np.int64)
    for r in range(reps):
        start = offsets[r]
        stop = offsets[r + 1]
        for j in range(grid.shape[0]):
            t = grid[j]
            # times within a log are sorted: binary search for the right edge
            left = start
            right = stop
            while left < right:
                mid = (left + right) // 2
                if times[mid] <= t:
                    left = mid + 1
                else:
                    right = mid
            out[r, j] = left - start
    return out


def score_numpy(b, s_sum, n, s_n):
    b = np.asarray(b, dtype=float)
    x = b * s_n
    with np.errstate(over="ignore", divide="ignore"):
        tail = np.where(x < _X_BIG, n * s_n / np.expm1(np.minimum(x, _X_BIG)), 0.0)
    return s_sum - n / b + tail


def score_deriv_numpy(b, s_sum, n, s_n):
    b = np.asarray(b, dtype=float)
    x = np.minimum(b * s_n, _X_BIG)
    with np.errstate(over="ignore", divide="ignore"):
        tail = np.where(b * s_n < _X_BIG,
                        n * s_n * s_n / (np.expm1(x) * -np.expm1(-x)), 0.0)
    return n / (b * b) - tail


def solve_score_numpy(s_sum, n, s_n, rel_width, max_iter):
    s_sum = np.asarray(s_sum, dtype=float)
    n = np.asarray(n, dtype=float)
    s_n = np.asarray(s_n, dtype=float)
    m = s_sum.shape[0]
    lo = np.full(m, B_LO0)
    hi = np.full(m, B_HI0)
    iters = np.zeros(m, dtype=np.int64)
    status = np.full(m, OK, dtype=np.int64)
    active = s_sum / n < 0.5 * s_n
    status[~active] = NO_ROOT
    lo[~active] = np.nan
    hi[~active] = np.nan

    def step(mask, update, budget_after=True):
        # one iteration on the rows in ``mask``; rows hitting max_iter drop out
        idx = np.flatnonzero(mask)
        update(idx)
        iters[idx] += 1
        if budget_after:
            done = idx[iters[idx] >= max_iter]
            status[done] = MAX_ITER
            active[done] = False

    def down(idx):
        hi[idx] = lo[idx]
        lo[idx] = lo[idx] * 0.1

    def up(idx):
        lo[idx] = hi[idx]
        hi[idx] = hi[idx] * 10.0

    while True:
        mask = active & (score_numpy(lo, s_sum, n, s_n) >= 0.0)
        if not mask.any():
            break
        step(mask, down)
    while True:
        mask = active & (score_numpy(hi, s_sum, n, s_n) <= 0.0)
        if not mask.any():
            break
        step(mask, up)

    def bisect(idx):
        mid = 0.5 * (lo[idx] + hi[idx])
        gm = score_numpy(mid, s_sum[idx], n[idx], s_n[idx])
        neg = gm < 0.0
        pos = gm > 0.0
        zero = ~(neg | pos)
        lo[idx[neg | zero]] = mid[neg | zero]
        hi[idx[pos | zero]] = mid[pos | zero]

    while True:
        wide = active & (hi - lo > rel_width * 0.5 * (lo + hi))
        if not wide.any():
            break
        # rows that are still wide but already out of budget stop here
        spent = wide & (iters >= max_iter)
        status[spent] = MAX_ITER
        active[spent] = False
        wide &= ~spent
        if wide.any():
            step(wide, bisect, budget_after=False)

    b = 0.5 * (lo + hi)
    fin = status == OK
    g = score_numpy(b, s_sum, n, s_n)
    d = score_deriv_numpy(b, s_sum, n, s_n)
    with np.errstate(invalid="ignore", divide="ignore"):
        cand = b - g / d
    ok = fin & (d > 0.0) & (lo <= cand) & (cand <= hi)
    gc = score_numpy(np.where(ok, cand, b), s_sum, n, s_n)
    ok &= np.abs(gc) <= np.abs(g)
    b = np.where(ok, cand, b)
    b[status == NO_ROOT] = np.nan
    return b, iters, status, lo, hi


def count_at_numpy(times, offsets, grid):
    reps = len(offsets) - 1
    out = np.zeros((reps, len(grid)), dtype=np.int64)
    for r in range(reps):
        out[r] = np.searchsorted(times[offsets[r]:offsets[r + 1]], grid, side="right")
    return out


if HAVE_NUMBA:
    solve_score = solve_score_jit
    count_at = count_at_jit
else:
    solve_score = solve_score_numpy
    count_at = count_at_numpy
