"""Parameter estimation for the GO model from failure-truncated data.

Two estimators are provided:

* :func:`fit_mle` solves the score equation for ``b`` by bracket expansion,
  bisection and a final Newton step, then sets ``a = n / (1 - exp(-b s_n))``.
* :func:`fit_mmle` replaces the transcendental term of the score with a
  secant line through two points that depend on ``n`` only, which turns the
  score equation into a linear one and gives ``b`` in closed form.

Both plug ``b`` into the same relation for ``a``.
"""
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import (ConvergenceError, InsufficientDataError, LinearizationRangeError,
                     NoFiniteMLEError, SingularMatrixError, DomainError)
from .model import GoModel

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 200
# bisection stops once the bracket is this narrow relative to its midpoint
BRACKET_REL_WIDTH = 1e-13
METHODS = ("mle", "mmle")


@dataclass(frozen=True, eq=False)
class EstimateResult:
    model: GoModel
    method: str
    iterations: int
    converged: bool
    score_residual: float | None = None
    covariance: np.ndarray | None = None

    @property
    def standard_errors(self):
        if self.covariance is None:
            return None
        return np.sqrt(np.diag(self.covariance))


@dataclass(frozen=True)
class LinearizationConstants:
    """Secant approximation ``h(z) ~ intercept + slope * z`` on ``[z_lo, z_hi]``."""

    n: int
    p: float
    z_lo: float
    z_hi: float
    slope: float
    intercept: float


def _require_failures(log, minimum=2):
    if log.n < minimum:
        raise InsufficientDataError(
            f"estimation needs at least {minimum} failures (n >= {minimum}), got n={log.n}")


def a_from_b(b, n, s_n):
    """``a = n / (1 - exp(-b s_n))``: the stationarity condition in ``a``."""
    return n / -math.expm1(-b * s_n)


def log_likelihood(model, log):
    _require_failures(log, 1)
    a, b = model.a, model.b
    n = log.n
    return -a * -math.expm1(-b * log.total_time) + n * math.log(a * b) - b * log.time_sum


def log_likelihood_gradient(model, log):
    """Analytic ``(d/da, d/db)`` of :func:`log_likelihood`."""
    a, b = model.a, model.b
    n, s_n = log.n, log.total_time
    e = math.exp(-b * s_n)
    return np.array([-(1.0 - e) + n / a, -a * s_n * e + n / b - log.time_sum])


def score_b(b, log):
    """Profile score ``g(b)``; its root is the MLE of ``b``."""
    if not b > 0:
        raise DomainError(f"b must be positive, got {b!r}")
    return float(_kernels.score_scalar(float(b), log.time_sum, float(log.n), log.total_time))


def fit_mle(log, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER, covariance=True):
    _require_failures(log)
    s_sum, n, s_n = log.time_sum, float(log.n), log.total_time
    b, iters, status, lo, hi = _kernels.solve_score(
        np.array([s_sum]), np.array([n]), np.array([s_n]), BRACKET_REL_WIDTH, max_iter)
    b, iters, status = float(b[0]), int(iters[0]), int(status[0])
    if status == _kernels.NO_ROOT:
        raise NoFiniteMLEError(
            f"no finite MLE: mean failure time {s_sum / n:.6g} is not below s_n/2 = {s_n / 2:.6g}, "
            "so the score equation has no positive root")
    if status == _kernels.MAX_ITER:
        bracket = (float(lo[0]), float(hi[0]))
        raise ConvergenceError(f"MLE did not converge in {max_iter} iterations; "
                               f"root bracket [{bracket[0]:.6g}, {bracket[1]:.6g}]",
                               bracket=bracket, iterations=iters)
    residual = score_b(b, log)
    if abs(residual) > tol * (1.0 + abs(s_sum)):
        raise ConvergenceError(f"score residual {residual:.3g} exceeds tolerance",
                               bracket=(float(lo[0]), float(hi[0])), iterations=iters)
    model = GoModel(a_from_b(b, n, s_n), b)
    cov = _covariance_or_none(model, log) if covariance else None
    return EstimateResult(model, "mle", iters, True, residual, cov)


def _h(z):
    return z / math.expm1(z)


def mmle_constants(n):
    """Secant constants for sample size ``n``.

    The two abscissae are the standard-exponential quantiles of
    ``p -/+ sd`` where ``p = n/(n+1)`` and ``sd = sqrt(p q / (n+2))`` are the
    mean and standard deviation of the largest of ``n`` uniforms.
    """
    if n < 2:
        raise DomainError(f"linearization constants need n >= 2, got {n}")
    p = n / (n + 1)
    q = 1.0 - p
    sd = math.sqrt(p * q / (n + 2))
    z_lo = -math.log1p(-(p - sd))
    z_hi = -math.log1p(-(p + sd))
    slope = (_h(z_hi) - _h(z_lo)) / (z_hi - z_lo)
    intercept = _h(z_lo) - slope * z_lo
    return LinearizationConstants(n, p, z_lo, z_hi, slope, intercept)


def fit_mmle(log, covariance=True):
    _require_failures(log)
    n, s_n = log.n, log.total_time
    c = mmle_constants(n)
    denom = log.time_sum / n + c.slope * s_n
    if not denom > 0:
        raise LinearizationRangeError(
            f"linearization out of range: mean(s) + slope*s_n = {denom:.6g} is not positive")
    b = (1.0 - c.intercept) / denom
    model = GoModel(a_from_b(b, n, s_n), b)
    cov = _covariance_or_none(model, log) if covariance else None
    return EstimateResult(model, "mmle", 0, True, None, cov)


def fit(log, method="mle", **kwargs):
    if method == "mle":
        return fit_mle(log, **kwargs)
    if method == "mmle":
        kwargs.pop("tol", None)
        kwargs.pop("max_iter", None)
        return fit_mmle(log, **kwargs)
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")


def observed_information(model, log):
    """Negated Hessian of the log-likelihood at ``(a, b)``."""
    a, b = model.a, model.b
    n, s_n = log.n, log.total_time
    e = math.exp(-b * s_n)
    off = s_n * e
    return np.array([[n / a**2, off],
                     [off, n / b**2 - a * s_n**2 * e]])


def asymptotic_covariance(info):
    info = np.asarray(info, dtype=float)
    (p, q), (r, s) = info
    det = p * s - q * r
    if not abs(det) >= 1e-300:
        raise SingularMatrixError(f"information matrix is singular (det={det:.3g})")
    return np.array([[s, -q], [-r, p]]) / det


def _covariance_or_none(model, log):
    # away from the MLE the observed information need not be positive definite
    try:
        cov = asymptotic_covariance(observed_information(model, log))
    except SingularMatrixError:
        return None
    if np.any(np.diag(cov) < 0):
        return None
    return cov
