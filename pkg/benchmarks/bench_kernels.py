"""Compare the numba and pure-numpy kernel backends.

    python benchmarks/bench_kernels.py [--logs 20000] [--repeat 5]

Times the batched score root finder (one MLE per simulated log) and the
counting-process tabulation used by the mean-curve check.
"""
import argparse
import timeit

import numpy as np

from reliaspc import GoModel, _accel, _kernels
from reliaspc.simulate import SimulationSpec, horizon_for_mean, simulate_many


def sufficient_stats(logs):
    logs = [log for log in logs if log.n >= 2]
    s_sum = np.array([log.times.sum() for log in logs])
    n = np.array([float(log.n) for log in logs])
    s_n = np.array([log.total_time for log in logs])
    return s_sum, n, s_n


def csr(logs):
    sizes = np.array([log.n for log in logs], dtype=np.int64)
    offsets = np.concatenate([[0], np.cumsum(sizes)]).astype(np.int64)
    return np.concatenate([log.times for log in logs]), offsets


def best_of(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--logs", type=int, default=20_000)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    model = GoModel(40.0, 0.005)
    logs = simulate_many(SimulationSpec(model, horizon_for_mean(model, 35.0), seed=1), args.logs)
    s_sum, n, s_n = sufficient_stats(logs)
    flat, offsets = csr(logs)
    grid = np.linspace(0, 420, 64)

    rows = []
    numpy_solve = best_of(lambda: _kernels.solve_score_numpy(s_sum, n, s_n, 1e-13, 200), args.repeat)
    numpy_count = best_of(lambda: _kernels.count_at_numpy(flat, offsets, grid), args.repeat)
    rows.append(("numpy", numpy_solve, numpy_count))
    if _accel.HAVE_NUMBA:
        _kernels.solve_score_jit(s_sum[:2], n[:2], s_n[:2], 1e-13, 200)  # compile
        _kernels.count_at_jit(flat[:1], offsets[:2], grid)
        rows.append(("numba",
                     best_of(lambda: _kernels.solve_score_jit(s_sum, n, s_n, 1e-13, 200), args.repeat),
                     best_of(lambda: _kernels.count_at_jit(flat, offsets, grid), args.repeat)))
    else:
        print("numba unavailable or disabled; timing the numpy backend only")

    print(f"{len(s_sum)} MLE solves, {len(logs)} logs x {len(grid)} grid points")
    print(f"{'backend':<8} {'solve [ms]':>12} {'count [ms]':>12}")
    for name, solve, count in rows:
        print(f"{name:<8} {solve * 1e3:>12.2f} {count * 1e3:>12.2f}")
    if len(rows) == 2:
        print(f"speedup  {rows[0][1] / rows[1][1]:>11.1f}x {rows[0][2] / rows[1][2]:>11.1f}x")


if __name__ == "__main__":
    main()
