"""
Construction of the lexicographically least de Bruijn sequence of order n.

Two independent routes produce the same 2**n symbols: the FKM successor rule
over Lyndon words (constant memory, streamed) and the prefer-zero greedy
rule seeded with 1**n (one flag per window, materialized).
"""

import logging
from itertools import chain
from typing import Iterator, List, Optional, Tuple

import numpy as np
import psutil

from forddisc.errors import CapacityError, InvalidArgumentError
from forddisc.settings import Settings
from forddisc.words import BitWord, WordLike

logger = logging.getLogger(__name__)

MAX_STREAM_ORDER = 62


def _check_order(n: int, cap: int, what: str):
    if n < 1:
        raise InvalidArgumentError(f"order must be at least 1, got {n}")
    if n > cap:
        raise CapacityError(f"{what} is capped at order {cap}, got {n}")


class LyndonStream:
    """Lyndon words of length dividing `order`, in increasing lexicographic order.

    Each step extends the current word periodically to length `order`,
    strips trailing 1s and flips the last 0. Words whose length does not
    divide the order are skipped. State is a single list of at most
    `order` symbols.
    """

    def __init__(self, order: int, max_order: int = MAX_STREAM_ORDER):
        _check_order(order, max_order, "Lyndon streaming")
        self.order = order
        self._word: List[int] = [0]
        self._started = False

    @property
    def exhausted(self) -> bool:
        return not self._word

    @property
    def current_word(self) -> Optional[BitWord]:
        return BitWord(tuple(self._word)) if self._word else None

    def _advance(self):
        w = self._word
        n = self.order
        m = len(w)
        while len(w) < n:
            w.append(w[-m])
        while w and w[-1] == 1:
            w.pop()
        if w:
            w[-1] = 1

    def __iter__(self) -> "LyndonStream":
        return self

    def __next__(self) -> Tuple[int, ...]:
        n = self.order
        if not self._word:
            raise StopIteration
        if self._started:
            self._advance()
        self._started = True
        while self._word and n % len(self._word):
            self._advance()
        if not self._word:
            raise StopIteration
        return tuple(self._word)


def fkm_stream(n: int) -> Iterator[int]:
    """Yield the 2**n symbols of the least de Bruijn sequence one at a time"""
    return chain.from_iterable(LyndonStream(n))


def _greedy_table(n: int) -> bytearray:
    total = 1 << n
    # one bit per window, plus the output buffer and the pointer array of the result tuple
    needed = (total >> 3) + 1 + total + 8 * total
    available = psutil.virtual_memory().available
    if needed > available:
        raise CapacityError(
            f"greedy order {n} needs about {needed} bytes, {available} available"
        )
    return bytearray((total >> 3) + 1)


def greedy_prefer_zero(n: int, settings: Optional[Settings] = None) -> BitWord:
    """Seed with 1**n and keep appending the smallest symbol whose new
    length-n window has not been seen; the 2**n appended symbols are returned."""
    cap = (settings or Settings.get_defaults()).greedy_max_order
    _check_order(n, cap, "greedy construction")
    seen = _greedy_table(n)
    mask = (1 << n) - 1
    window = mask
    total = 1 << n
    out = bytearray()
    while len(out) < total:
        candidate = (window << 1) & mask
        if not seen[candidate >> 3] & (1 << (candidate & 7)):
            out.append(0)
        elif not seen[(candidate | 1) >> 3] & (1 << ((candidate | 1) & 7)):
            candidate |= 1
            out.append(1)
        else:
            break
        seen[candidate >> 3] |= 1 << (candidate & 7)
        window = candidate
    logger.debug("greedy order %d appended %d symbols", n, len(out))
    return BitWord(tuple(out))


def window_values(w: BitWord, n: int) -> np.ndarray:
    """Integer value of every cyclic length-n window, most significant bit first"""
    size = len(w)
    bits = np.frombuffer(bytes(w.symbols), dtype=np.uint8).astype(np.int64)
    extended = np.concatenate([bits, bits[: n - 1]])
    values = np.zeros(size, dtype=np.int64)
    for i in range(n):
        values = (values << 1) | extended[i : i + size]
    return values


def verify_debruijn(w: WordLike, n: int) -> bool:
    """True iff the 2**n cyclic windows of length n are pairwise distinct"""
    w = BitWord.coerce(w)
    if n < 1:
        raise InvalidArgumentError(f"order must be at least 1, got {n}")
    size = 1 << n
    if len(w) != size:
        raise InvalidArgumentError(f"a de Bruijn word of order {n} has length {size}, got {len(w)}")
    return np.unique(window_values(w, n)).size == size


def lyndon_words(n: int, settings: Optional[Settings] = None) -> List[BitWord]:
    """All Lyndon words of length dividing n, in lexicographic order"""
    cap = (settings or Settings.get_defaults()).lyndon_max_order
    _check_order(n, cap, "materialized Lyndon lists")
    return [BitWord(word) for word in LyndonStream(n)]
