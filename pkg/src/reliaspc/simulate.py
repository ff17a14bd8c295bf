"""Synthetic GO-process failure logs.

Random numbers come from numpy's PCG64 bit generator seeded through
``numpy.random.SeedSequence``. Replication ``i`` of a spec with seed ``s``
uses ``SeedSequence(s, spawn_key=(i,))``, which is the ``i``-th child of
``SeedSequence(s).spawn(...)``; a single :func:`simulate_log` call uses
``SeedSequence(s)`` itself.
"""
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .dataset import FailureLog
from .errors import DomainError
from .model import GoModel, cdf, mean_value

RNG_NAME = "numpy.random.PCG64 via SeedSequence"
SIM_METHODS = ("order_statistics", "thinning")


@dataclass(frozen=True)
class SimulationSpec:
    model: GoModel
    horizon: float
    seed: int = 0
    method: str = "order_statistics"

    def __post_init__(self):
        if not self.horizon > 0:
            raise DomainError(f"horizon must be positive, got {self.horizon!r}")
        if self.method not in SIM_METHODS:
            raise ValueError(f"unknown simulation method {self.method!r}")
        if not 0 <= int(self.seed) < 2**64:
            raise DomainError("seed must be a 64-bit unsigned integer")

    def describe(self):
        return (f"simulate a={self.model.a!r} b={self.model.b!r} horizon={self.horizon!r} "
                f"seed={self.seed} method={self.method} rng={RNG_NAME}")


def horizon_for_mean(model, expected):
    """Horizon ``T`` with ``m(T) == expected`` (requires ``expected < a``)."""
    if not 0 < expected < model.a:
        raise DomainError(f"expected count must lie in (0, a={model.a}), got {expected}")
    return -np.log1p(-expected / model.a) / model.b


def _generator(seed, replication=None):
    if replication is None:
        ss = np.random.SeedSequence(int(seed))
    else:
        ss = np.random.SeedSequence(int(seed), spawn_key=(int(replication),))
    return np.random.Generator(np.random.PCG64(ss))


def _order_statistics(rng, model, horizon):
    f_t = cdf(model, horizon)
    count = rng.poisson(model.a * f_t)

    def draw(k):
        # uniforms on (0, 1] so that no time lands exactly on 0
        u = 1.0 - rng.random(k)
        return np.minimum(-np.log1p(-u * f_t) / model.b, horizon)

    return _redraw_ties(np.sort(draw(count)), draw)


def _thinning(rng, model, horizon):
    rate = model.a * model.b
    count = rng.poisson(rate * horizon)

    def candidates(k):
        return horizon * (1.0 - rng.random(k))

    cand = np.sort(candidates(count))
    keep = rng.random(count) < np.exp(-model.b * cand)
    times = cand[keep]

    def draw(k):
        # a redrawn point is a fresh draw from the accepted-time law on (0, T]
        out = np.empty(0)
        while out.size < k:
            c = candidates(k)
            out = np.concatenate([out, c[rng.random(k) < np.exp(-model.b * c)]])
        return out[:k]

    return _redraw_ties(times, draw)


def _redraw_ties(times, draw):
    while True:
        dup = np.flatnonzero(np.diff(times) == 0)
        if dup.size == 0:
            return times
        times = times.copy()
        times[dup] = draw(dup.size)
        times.sort()


def simulate_log(spec, replication=None):
    rng = _generator(spec.seed, replication)
    if spec.method == "thinning":
        times = _thinning(rng, spec.model, spec.horizon)
    else:
        times = _order_statistics(rng, spec.model, spec.horizon)
    return FailureLog(times)


def simulate_many(spec, replications):
    return [simulate_log(spec, i) for i in range(replications)]


def count_matrix(logs, grid):
    """``N(t)`` for every log (rows) at every grid time (columns)."""
    grid = np.asarray(grid, dtype=float)
    sizes = np.array([log.n for log in logs], dtype=np.int64)
    offsets = np.concatenate([[0], np.cumsum(sizes)]).astype(np.int64)
    flat = np.concatenate([log.times for log in logs]) if logs else np.empty(0)
    return _kernels.count_at(np.ascontiguousarray(flat, dtype=float), offsets, grid)


def empirical_mean_curve(spec, replications, grid):
    """Average counting process over ``replications`` runs, as ``(t, mean N(t))`` rows."""
    grid = np.asarray(grid, dtype=float).reshape(-1)
    if grid.size == 0:
        raise DomainError("grid must contain at least one time point")
    if replications < 1:
        raise DomainError("at least one replication is required")
    counts = count_matrix(simulate_many(spec, replications), grid)
    return np.column_stack([grid, counts.mean(axis=0)])


def expected_counts(model, grid):
    return np.asarray(mean_value(model, np.asarray(grid, dtype=float)))
