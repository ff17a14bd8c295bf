"""Mean-value control chart: limits, successive differences and signals.

Control limits are mean-value *levels* ``a * p`` at three cdf probabilities;
chart points are *differences* ``m(s_{k+1}) - m(s_k)`` of the fitted mean
value function between consecutive failures. A difference strictly below
the lower limit is an alarm. A difference strictly above the upper limit
is reported as ``AboveUpper``, which is informational only (it reads as
unusually good quality) and never counts as an alarm.
"""
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from .errors import DomainError, InsufficientDataError
from .estimate import fit
from .model import mean_value, quantile

DEFAULT_PROBS = (0.00135, 0.5, 0.99865)


class Signal(str, Enum):
    ALARM = "Alarm"
    IN_CONTROL = "InControl"
    ABOVE_UPPER = "AboveUpper"


@dataclass(frozen=True)
class ControlLimits:
    p_low: float
    p_center: float
    p_high: float
    t_low: float
    t_center: float
    t_high: float
    m_low: float
    m_center: float
    m_high: float

    def triples(self):
        """``(p, t, m)`` for the lower, center and upper limit, in that order."""
        return [(self.p_low, self.t_low, self.m_low),
                (self.p_center, self.t_center, self.m_center),
                (self.p_high, self.t_high, self.m_high)]


@dataclass(frozen=True)
class ChartPoint:
    index: int  # failure number k; diff pairs failure k with failure k+1
    diff: float
    signal: Signal | None = None


@dataclass(frozen=True, eq=False)
class MonitorReport:
    method: str  # "mle", "mmle", or "fixed" for a supplied model
    model: object
    estimate: object
    limits: ControlLimits
    points: tuple
    log: object

    @property
    def alarms(self):
        return [p.index for p in self.points if p.signal is Signal.ALARM]


def validate_probs(probs):
    p_low, p_center, p_high = (float(p) for p in probs)
    if not 0 < p_low < p_center < p_high < 1:
        raise DomainError("control probabilities must satisfy 0 < low < center < high < 1, "
                          f"got {tuple(probs)}")
    return p_low, p_center, p_high


def control_limits(model, probs=DEFAULT_PROBS):
    ps = validate_probs(probs)
    ts = [quantile(model, p) for p in ps]
    ms = [model.a * p for p in ps]
    return ControlLimits(*ps, *ts, *ms)


def successive_differences(model, log):
    if log.n < 2:
        raise InsufficientDataError(f"successive differences need n >= 2 failures, got n={log.n}")
    m = np.asarray(mean_value(model, log.times))
    diffs = np.diff(m)
    return [ChartPoint(k + 1, float(d)) for k, d in enumerate(diffs)]


def classify_value(diff, limits):
    if diff < limits.m_low:
        return Signal.ALARM
    if diff > limits.m_high:
        return Signal.ABOVE_UPPER
    return Signal.IN_CONTROL


def classify(points, limits):
    return [replace(p, signal=classify_value(p.diff, limits)) for p in points]


def monitor(log, method="mle", probs=DEFAULT_PROBS, model=None, **fit_kwargs):
    """Fit (unless ``model`` is given), derive limits, and classify every point."""
    probs = validate_probs(probs)
    estimate = None
    if model is None:
        estimate = fit(log, method, **fit_kwargs)
        model = estimate.model
    else:
        method = "fixed"
    limits = control_limits(model, probs)
    points = classify(successive_differences(model, log), limits)
    return MonitorReport(method, model, estimate, limits, tuple(points), log)
