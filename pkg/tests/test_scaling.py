"""Tests for the discrepancy scaling sweep."""

import math

import pytest

from forddisc.errors import CapacityError, InvalidArgumentError
from forddisc.scaling import ScalingRow, measure_order, scaling_sweep, summarize_sweep
from forddisc.settings import Settings


def test_measure_small_orders():
    """Test disc and position of small orders"""
    row = measure_order(3)
    assert (row.disc, row.position) == (3, 3)
    assert row.ratio == pytest.approx(9 / (8 * math.log(3)))
    assert row.ratio == pytest.approx(1.024, abs=1e-3)
    five = measure_order(5)
    assert (five.disc, five.position) == (8, 18)
    assert five.ratio == pytest.approx(0.777, abs=1e-3)


def test_sweep_rows_in_order():
    """Test that rows come back ordered by n"""
    rows = scaling_sweep(3, 12, settings=Settings())
    assert [row.n for row in rows] == list(range(3, 13))
    assert all(row.ratio > 0 for row in rows)


def test_sweep_with_workers_matches_serial():
    """Test that a process pool gives the serial rows"""
    settings = Settings()
    assert scaling_sweep(4, 10, threads=2, settings=settings) == scaling_sweep(4, 10, settings=settings)


def test_sweep_bad_ranges():
    """Test the range preconditions"""
    with pytest.raises(InvalidArgumentError):
        scaling_sweep(10, 9)
    with pytest.raises(InvalidArgumentError):
        scaling_sweep(1, 4)
    with pytest.raises(InvalidArgumentError):
        scaling_sweep(3, 5, threads=0)


def test_sweep_respects_cap():
    """Test the streaming cap on sweeps"""
    with pytest.raises(CapacityError):
        scaling_sweep(3, 12, settings=Settings(stream_max_order=11))


def test_summarize_sweep():
    """Test the ratio summary"""
    rows = [ScalingRow(n=n, disc=1, position=1, ratio=r) for n, r in [(3, 0.5), (4, 1.0), (5, 0.75)]]
    summary = summarize_sweep(rows)
    assert (summary.min_ratio, summary.max_ratio) == (0.5, 1.0)
    assert summary.spread == 2.0
    with pytest.raises(InvalidArgumentError):
        summarize_sweep([])


@pytest.mark.slow
def test_ratio_spread_is_bounded():
    """Test that the ratio stays bounded for 16 <= n <= 24"""
    rows = scaling_sweep(16, 24, threads=2, settings=Settings())
    assert summarize_sweep(rows).spread < 3
