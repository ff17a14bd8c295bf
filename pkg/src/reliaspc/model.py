"""The Goel-Okumoto exponential NHPP model.

Mean value ``m(t) = a (1 - exp(-b t))`` and intensity
``lambda(t) = b (a - m(t))``. All functions accept scalars or arrays of
times and return the same shape.
"""
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class GoModel:
    a: float  # expected total number of faults
    b: float  # per-fault detection rate

    def __post_init__(self):
        for name in ("a", "b"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise DomainError(f"GO parameter {name} must be positive and finite, got {v!r}")
            object.__setattr__(self, name, float(v))


def _times(t):
    arr = np.asarray(t, dtype=float)
    if np.any(arr < 0) or np.any(np.isnan(arr)):
        raise DomainError("time must be non-negative")
    return arr


def _out(arr):
    return float(arr) if arr.ndim == 0 else arr


def cdf(model, t):
    """Exponential cdf ``1 - exp(-b t)``, computed as ``-expm1(-b t)``."""
    return _out(-np.expm1(-model.b * _times(t)))


def mean_value(model, t):
    return _out(model.a * -np.expm1(-model.b * _times(t)))


def intensity(model, t):
    return _out(model.a * model.b * np.exp(-model.b * _times(t)))


def quantile(model, p):
    """Time at which the cdf reaches ``p``; ``quantile(0) == 0``."""
    p_arr = np.asarray(p, dtype=float)
    if np.any(~((p_arr >= 0) & (p_arr < 1))):
        raise DomainError(f"probability must lie in [0, 1), got {p!r}")
    # + 0.0 turns the -0.0 at p == 0 into 0.0
    return _out(-np.log1p(-p_arr) / model.b + 0.0)
