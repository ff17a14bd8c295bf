"""Goel-Okumoto software reliability fitting and mean-value control charts."""
__version__ = "0.1.0"

from .dataset import (FailureLog, InterFailureTimes, cumulative_from_gaps, embedded_xie_dataset,
                      format_failure_data, gaps_from_cumulative, load_dataset, parse_failure_data)
from .estimate import (EstimateResult, LinearizationConstants, asymptotic_covariance, fit,
                       fit_mle, fit_mmle, log_likelihood, mmle_constants, observed_information,
                       score_b)
from .model import GoModel, cdf, intensity, mean_value, quantile
from .spc import (ChartPoint, ControlLimits, MonitorReport, Signal, classify, control_limits,
                  monitor, successive_differences)
from .simulate import SimulationSpec, empirical_mean_curve, simulate_log
from .chart import ChartConfig, render_chart
from ._accel import backend_name
