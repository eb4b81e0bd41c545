"""
Growth of the discrepancy with the order.

Each order is streamed through a PrefixTracker, so memory stays O(n) while
2**n symbols go by. Orders are independent and may run in worker processes.
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from forddisc.errors import CapacityError, InvalidArgumentError
from forddisc.sequences import LyndonStream
from forddisc.settings import HARD_MAX_ORDER, Settings
from forddisc.words import PrefixTracker

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ScalingRow:
    """disc of one order, the length of the earliest prefix reaching it,
    and n disc / (2^n ln n)"""
    n: int
    disc: int
    position: int
    ratio: float


def measure_order(n: int) -> ScalingRow:
    if n < 2:
        raise InvalidArgumentError(f"the ratio needs n >= 2, got {n}")
    tracker = PrefixTracker()
    for word in LyndonStream(n):
        tracker.feed_word(word)
    report = tracker.report()
    ratio = n * report.disc / (2 ** n * math.log(n))
    logger.debug("order %d: disc=%d at %d", n, report.disc, report.argmax_position + 1)
    return ScalingRow(n=n, disc=report.disc, position=report.argmax_position + 1, ratio=ratio)


def scaling_sweep(
    n_min: int,
    n_max: int,
    threads: int = 1,
    settings: Optional[Settings] = None,
) -> List[ScalingRow]:
    """One row per order in n_min..n_max, in increasing n"""
    settings = settings or Settings.get_defaults()
    if n_min < 2 or n_min > n_max:
        raise InvalidArgumentError(f"need 2 <= min <= max, got min={n_min}, max={n_max}")
    cap = min(settings.stream_max_order, HARD_MAX_ORDER)
    if n_max > cap:
        raise CapacityError(f"scaling sweep is capped at order {cap}, got {n_max}")
    if threads < 1:
        raise InvalidArgumentError("thread count must be at least 1")
    orders = range(n_min, n_max + 1)
    logger.info("Sweeping orders %d..%d with %d worker(s)", n_min, n_max, threads)
    if threads == 1:
        return [measure_order(n) for n in orders]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        # largest orders are submitted first; rows are merged back by n
        rows = {row.n: row for row in pool.map(measure_order, sorted(orders, reverse=True))}
    return [rows[n] for n in orders]


@dataclass(frozen=True)
class SweepSummary:
    min_ratio: float
    max_ratio: float

    @property
    def spread(self) -> float:
        return self.max_ratio / self.min_ratio


def summarize_sweep(rows: List[ScalingRow]) -> SweepSummary:
    if not rows:
        raise InvalidArgumentError("cannot summarize an empty sweep")
    ratios = np.array([row.ratio for row in rows], dtype=np.float64)
    return SweepSummary(min_ratio=float(ratios.min()), max_ratio=float(ratios.max()))
