import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from reliaspc import (FailureLog, InterFailureTimes, cumulative_from_gaps, embedded_xie_dataset,
                      format_failure_data, gaps_from_cumulative, load_dataset, parse_failure_data)
from reliaspc.errors import DataError

from conftest import REF_CUMULATIVE

gap_lists = st.lists(st.floats(min_value=1e-3, max_value=1e4, allow_nan=False), min_size=1, max_size=60)


def test_cumulative_from_gaps_first_rows():
    log = cumulative_from_gaps([30.02, 1.44, 22.47])
    np.testing.assert_allclose(log.times, [30.02, 31.46, 53.93], rtol=0, atol=1e-12)


def test_cumulative_single():
    assert list(cumulative_from_gaps([5.0]).times) == [5.0]


def test_embedded_cumulative_matches_reference_table():
    log = load_dataset("xie2002")
    np.testing.assert_allclose(log.times, REF_CUMULATIVE, rtol=0, atol=1e-9)
    assert log.total_time == pytest.approx(738.68, abs=1e-9)


@pytest.mark.parametrize("bad", [[1.0, 0.0, 2.0], [1.0, -2.0], [math.nan]])
def test_non_positive_gap_names_index(bad):
    with pytest.raises(DataError) as info:
        cumulative_from_gaps(bad)
    assert info.value.index == next(i for i, v in enumerate(bad) if not v > 0)


def test_gaps_from_cumulative():
    gaps = gaps_from_cumulative(FailureLog([30.02, 31.46, 53.93]))
    np.testing.assert_allclose(gaps.gaps, [30.02, 1.44, 22.47], atol=1e-12)
    assert list(gaps_from_cumulative(FailureLog([5.0])).gaps) == [5.0]


def test_embedded_round_trip_is_exact():
    gaps = embedded_xie_dataset()
    assert gaps_from_cumulative(cumulative_from_gaps(gaps)) == gaps


def test_embedded_dataset_contents():
    gaps = embedded_xie_dataset().gaps
    assert len(gaps) == 30
    assert gaps[0] == 30.02 and gaps[-1] == 34.19
    assert gaps[23] == 176.06
    assert math.fsum(gaps) == pytest.approx(738.68, abs=1e-9)


def test_parse_tbf():
    log = parse_failure_data("30.02\n1.44\n22.47\n", "tbf")
    np.testing.assert_allclose(log.times, [30.02, 31.46, 53.93], atol=1e-12)


def test_parse_cumulative_commas():
    assert list(parse_failure_data("1.0,2.0,3.0", "cumulative").times) == [1.0, 2.0, 3.0]


def test_parse_negative_gap_reports_line():
    with pytest.raises(DataError) as info:
        parse_failure_data("1.0\n-2.0\n", "tbf")
    assert info.value.line == 2
    assert "line 2" in str(info.value)


def test_parse_bad_token_reports_line():
    with pytest.raises(DataError) as info:
        parse_failure_data("tbf\n1.0\n2.x\n", "tbf")
    assert info.value.line == 3


@pytest.mark.parametrize("text", ["", "\n\n", "cumulative\n", "# only a comment\n"])
def test_parse_empty(text):
    with pytest.raises(DataError):
        parse_failure_data(text, "cumulative")


@pytest.mark.parametrize("header", ["tbf", "TBF", "Tbf"])
def test_header_case_insensitive(header):
    log = parse_failure_data(f"{header}\n1\n2\n", "tbf")
    assert list(log.times) == [1.0, 3.0]


def test_duplicate_cumulative_rejected():
    with pytest.raises(DataError) as info:
        parse_failure_data("1\n2\n2\n", "cumulative")
    assert info.value.line == 3


def test_decreasing_cumulative_rejected():
    with pytest.raises(DataError):
        FailureLog([1.0, 3.0, 2.0])


def test_comments_are_skipped():
    log = parse_failure_data("# simulated\ncumulative\n1.5\n2.5\n", "cumulative")
    assert list(log.times) == [1.5, 2.5]


def test_logs_are_immutable():
    log = load_dataset("xie2002")
    with pytest.raises(ValueError):
        log.times[0] = 1.0


@given(gap_lists)
def test_gap_round_trip_property(gaps):
    back = gaps_from_cumulative(FailureLog(cumulative_from_gaps(gaps).times)).gaps
    np.testing.assert_allclose(back, gaps, rtol=1e-12, atol=1e-12 * max(gaps) * len(gaps))


@given(gap_lists, st.sampled_from(["tbf", "cumulative"]))
def test_parse_serialize_parse_fixed_point(gaps, fmt):
    text = format_failure_data(cumulative_from_gaps(gaps), fmt)
    first = parse_failure_data(text, fmt)
    second = parse_failure_data(format_failure_data(first, fmt), fmt)
    assert first == second
    assert format_failure_data(second, fmt) == format_failure_data(first, fmt)


@given(gap_lists, st.integers(min_value=0, max_value=59), st.sampled_from([0.0, -1.0, -1e-9]))
def test_non_positive_gap_always_rejected(gaps, pos, bad):
    gaps = list(gaps)
    gaps[pos % len(gaps)] = bad
    with pytest.raises(DataError):
        InterFailureTimes(gaps)


def test_unknown_dataset():
    with pytest.raises(KeyError):
        load_dataset("nope")
