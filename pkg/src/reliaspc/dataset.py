"""Failure-time data: validation, TBF/cumulative conversion, text I/O and the
embedded 30-failure reference dataset.
"""
import math
import re
from dataclasses import dataclass, field

import numpy as np

from .errors import DataError

FORMATS = ("tbf", "cumulative")

# Time between failures, failure numbers 1..30.
_XIE2002_GAPS = (
    30.02, 1.44, 22.47, 1.36, 3.43, 13.2, 5.15, 3.83, 21, 12.97,
    0.47, 6.23, 3.39, 9.11, 2.18, 15.53, 25.72, 2.79, 1.92, 4.13,
    70.47, 17.07, 3.99, 176.06, 81.07, 2.27, 15.63, 120.78, 30.81, 34.19,
)


def _frozen_array(values):
    arr = np.array(values, dtype=float).reshape(-1)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class InterFailureTimes:
    """Elapsed times between consecutive failures."""

    gaps: np.ndarray

    def __post_init__(self):
        gaps = _frozen_array(self.gaps)
        if gaps.size == 0:
            raise DataError("at least one inter-failure time is required")
        bad = np.flatnonzero(~(gaps > 0) | ~np.isfinite(gaps))
        if bad.size:
            i = int(bad[0])
            raise DataError(f"gap {i + 1} is not a positive finite number: {gaps[i]!r}", index=i)
        object.__setattr__(self, "gaps", gaps)

    def __len__(self):
        return self.gaps.size

    def __eq__(self, other):
        if not isinstance(other, InterFailureTimes):
            return NotImplemented
        return np.array_equal(self.gaps, other.gaps)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class FailureLog:
    """Strictly increasing cumulative failure times ``s_1 < ... < s_n``.

    An empty log is representable (simulation over a short horizon can
    produce one); every consumer that needs data checks ``n`` itself.
    The gap sequence a log was built from is remembered so that TBF text
    round-trips exactly.
    """

    times: np.ndarray
    _gaps: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        times = _frozen_array(self.times)
        bad = np.flatnonzero(~(times > 0) | ~np.isfinite(times))
        if bad.size:
            i = int(bad[0])
            raise DataError(f"failure time {i + 1} is not a positive finite number: {times[i]!r}",
                            index=i)
        flat = np.flatnonzero(np.diff(times) <= 0)
        if flat.size:
            i = int(flat[0]) + 1
            raise DataError(f"failure times must be strictly increasing; time {i + 1} "
                            f"({times[i]!r}) does not exceed time {i} ({times[i - 1]!r})", index=i)
        object.__setattr__(self, "times", times)
        if self._gaps is not None:
            object.__setattr__(self, "_gaps", _frozen_array(self._gaps))

    @property
    def n(self):
        return self.times.size

    @property
    def total_time(self):
        """s_n, the time of the last failure."""
        return float(self.times[-1])

    @property
    def time_sum(self):
        """sum of s_k, accumulated exactly."""
        return math.fsum(self.times)

    def scaled(self, factor):
        return FailureLog(self.times * factor)

    def __len__(self):
        return self.n

    def __eq__(self, other):
        if not isinstance(other, FailureLog):
            return NotImplemented
        return np.array_equal(self.times, other.times)

    __hash__ = None


def cumulative_from_gaps(gaps):
    if not isinstance(gaps, InterFailureTimes):
        gaps = InterFailureTimes(gaps)
    times = np.cumsum(gaps.gaps)
    return FailureLog(times, _gaps=gaps.gaps)


def gaps_from_cumulative(log):
    if log._gaps is not None:
        return InterFailureTimes(log._gaps)
    return InterFailureTimes(np.diff(log.times, prepend=0.0))


_SPLIT = re.compile(r"[,\s]+")


def parse_failure_data(text, format="tbf"):
    """Parse newline- or comma-separated decimals into a :class:`FailureLog`.

    The first content line may be a header equal to the format name (any
    case). Blank lines and lines starting with ``#`` are ignored.
    """
    if format not in FORMATS:
        raise ValueError(f"unknown format {format!r}; expected one of {FORMATS}")
    values, lines = [], []
    seen_content = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not seen_content:
            seen_content = True
            if line.lower() == format:
                continue
        for token in _SPLIT.split(line):
            if not token:
                continue
            try:
                value = float(token)
            except ValueError:
                raise DataError(f"line {lineno}: cannot parse {token!r} as a number",
                                index=len(values), line=lineno) from None
            values.append(value)
            lines.append(lineno)
    if not values:
        raise DataError("no failure data found in input")
    try:
        if format == "tbf":
            return cumulative_from_gaps(values)
        return FailureLog(values)
    except DataError as exc:
        if exc.index is None:
            raise
        line = lines[exc.index]
        raise DataError(f"line {line}: {exc}", index=exc.index, line=line) from None


def format_failure_data(log, format="tbf", comments=(), precision=None, separator="\n"):
    """Inverse of :func:`parse_failure_data`.

    Values are written with ``repr`` (exact round trip) unless ``precision``
    significant digits are requested. With ``separator=","`` the values go on
    a single line and the header and comments are omitted.
    """
    if format not in FORMATS:
        raise ValueError(f"unknown format {format!r}; expected one of {FORMATS}")
    values = gaps_from_cumulative(log).gaps if format == "tbf" and log.n else log.times
    if precision is None:
        text = [repr(float(v)) for v in values]
    else:
        text = [f"{float(v):.{precision}g}" for v in values]
    if separator == ",":
        return ",".join(text) + "\n"
    out = [f"# {c}" for c in comments]
    out.append(format)
    out.extend(text)
    return "\n".join(out) + "\n"


def embedded_xie_dataset():
    return InterFailureTimes(_XIE2002_GAPS)


DATASETS = {"xie2002": embedded_xie_dataset}


def load_dataset(name):
    """Return an embedded dataset by name as a :class:`FailureLog`."""
    try:
        factory = DATASETS[name]
    except KeyError:
        raise KeyError(f"no embedded dataset named {name!r}") from None
    return cumulative_from_gaps(factory())
