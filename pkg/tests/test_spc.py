import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from reliaspc import (ChartPoint, FailureLog, GoModel, Signal, classify, control_limits, monitor,
                      successive_differences, mean_value, load_dataset)
from reliaspc.errors import DomainError, InsufficientDataError
from reliaspc.spc import DEFAULT_PROBS

from conftest import REF_LIMITS, REF_DIFF


def test_control_limits_paper(paper_model):
    lim = control_limits(paper_model)
    assert lim.m_high == pytest.approx(33.3512569383, rel=1e-6)
    assert lim.m_center == pytest.approx(16.6981710073, rel=1e-6)
    assert lim.m_low == pytest.approx(0.0450850610, rel=1e-6)
    for ours, paper in zip((lim.m_low, lim.m_center, lim.m_high), REF_LIMITS):
        assert ours == pytest.approx(paper, rel=1e-6)
    assert lim.t_center == pytest.approx(np.log(2) / 0.003962, rel=1e-12)
    assert lim.t_center == pytest.approx(174.95, abs=0.01)
    assert lim.t_low < lim.t_center < lim.t_high
    for p, _, m in lim.triples():
        assert m == pytest.approx(paper_model.a * p, rel=1e-12)


def test_control_limits_unit_model():
    lim = control_limits(GoModel(1.0, 1.0))
    assert lim.m_center == 0.5
    assert lim.t_center == pytest.approx(np.log(2), rel=1e-15)


@pytest.mark.parametrize("probs", [(0.5, 0.00135, 0.99865), (0.0, 0.5, 0.9), (0.1, 0.5, 1.0),
                                   (0.1, 0.1, 0.9)])
def test_control_limits_bad_probs(paper_model, probs):
    with pytest.raises(DomainError):
        control_limits(paper_model, probs)


def test_successive_differences_reference_table(paper_model, xie_log):
    pts = successive_differences(paper_model, xie_log)
    assert len(pts) == 29
    assert [p.index for p in pts] == list(range(1, 30))
    assert pts[0].diff == pytest.approx(0.168687503, abs=1e-4)
    assert pts[9].diff == pytest.approx(0.039414228, abs=1e-4)
    assert pts[24].diff == pytest.approx(0.035902670, abs=1e-4)
    np.testing.assert_allclose([p.diff for p in pts], REF_DIFF, atol=2e-4)


def test_successive_differences_two_points(paper_model):
    pts = successive_differences(paper_model, FailureLog([50.0, 100.0]))
    assert len(pts) == 1
    assert pts[0].diff == pytest.approx(mean_value(paper_model, 100.0) - mean_value(paper_model, 50.0))
    assert pts[0].diff > 0


def test_successive_differences_needs_two(paper_model):
    with pytest.raises(InsufficientDataError):
        successive_differences(paper_model, FailureLog([1.0]))


def test_classify_reference_table(paper_model, xie_log):
    lim = control_limits(paper_model)
    pts = classify(successive_differences(paper_model, xie_log), lim)
    assert [p.index for p in pts if p.signal is Signal.ALARM] == [10, 25]
    assert all(p.signal is Signal.IN_CONTROL for p in pts if p.index not in (10, 25))


def test_classify_paper_printed_differences(paper_model):
    lim = control_limits(paper_model)
    pts = classify([ChartPoint(i + 1, d) for i, d in enumerate(REF_DIFF)], lim)
    assert [p.index for p in pts if p.signal is Signal.ALARM] == [10, 25]
    assert not any(p.signal is Signal.ABOVE_UPPER for p in pts)


def test_classify_edges(paper_model):
    lim = control_limits(paper_model)
    assert classify([], lim) == []
    pts = classify([ChartPoint(1, lim.m_low), ChartPoint(2, lim.m_high),
                    ChartPoint(3, np.nextafter(lim.m_low, 0)),
                    ChartPoint(4, np.nextafter(lim.m_high, np.inf))], lim)
    assert [p.signal for p in pts] == [Signal.IN_CONTROL, Signal.IN_CONTROL,
                                       Signal.ALARM, Signal.ABOVE_UPPER]


def test_classify_idempotent_and_order_preserving(paper_model, xie_log):
    lim = control_limits(paper_model)
    pts = successive_differences(paper_model, xie_log)[::-1]
    once = classify(pts, lim)
    assert classify(once, lim) == once
    assert [p.index for p in once] == [p.index for p in pts]


def test_telescoping(paper_model, xie_log):
    pts = successive_differences(paper_model, xie_log)
    total = sum(p.diff for p in pts)
    m = mean_value(paper_model, xie_log.times)
    assert total == pytest.approx(m[-1] - m[0], abs=1e-9)
    assert all(0 < p.diff < paper_model.a for p in pts)


@pytest.mark.parametrize("method", ["mle", "mmle"])
def test_monitor_table1(xie_log, method):
    report = monitor(xie_log, method)
    assert report.alarms == [10, 25]
    assert report.method == method
    assert report.estimate.method == method
    assert not any(p.signal is Signal.ABOVE_UPPER for p in report.points)


def test_monitor_parity(xie_log):
    assert monitor(xie_log, "mle").alarms == monitor(xie_log, "mmle").alarms


def test_monitor_fixed_model(paper_model, xie_log):
    report = monitor(xie_log, model=paper_model)
    assert report.method == "fixed" and report.estimate is None
    assert report.alarms == [10, 25]


def test_monitor_single_failure():
    with pytest.raises(InsufficientDataError):
        monitor(FailureLog([4.0]), "mle")


@settings(max_examples=25, deadline=None)
@given(st.floats(1e-4, 1e4), st.sampled_from(["mle", "mmle"]))
def test_signals_scale_invariant(gamma, method):
    xie_log = load_dataset("xie2002")
    base = monitor(xie_log, method)
    scaled = monitor(xie_log.scaled(gamma), method)
    assert [p.signal for p in scaled.points] == [p.signal for p in base.points]
    assert scaled.model.a == pytest.approx(base.model.a, rel=1e-9)
    assert scaled.model.b * gamma == pytest.approx(base.model.b, rel=1e-9)


def test_default_probs():
    assert DEFAULT_PROBS == (0.00135, 0.5, 0.99865)
