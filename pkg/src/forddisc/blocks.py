"""
Block structure of the least de Bruijn sequence for prime orders.

For prime n the sequence is "0", then every length-n Lyndon word, then "1".
The length-n words arrive grouped by the length k of their leading zero
run, from k = n-1 down to 1; block k is the concatenation of group k.
Per-block skews and signed prefix extremes are enough to recover the
exact discrepancy of the whole sequence.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional

from forddisc.counting import build_table
from forddisc.errors import CapacityError, InvalidArgumentError
from forddisc.reports import CheckReport
from forddisc.sequences import LyndonStream
from forddisc.settings import Settings
from forddisc.words import BitWord, DiscReport, PrefixTracker, skew, zero_run_stats

logger = logging.getLogger(__name__)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class BlockReport:
    """One block of the sequence: all length-n Lyndon words with k leading zeros.

    Offsets are positions in the full sequence; argmax/argmin offsets are
    the earliest positions inside the block where the within-block prefix
    sum reaches max_signed / min_signed.
    """
    k: int
    length: int
    skew: int
    max_signed: int
    min_signed: int
    word_count: int
    offset: int
    argmax_offset: int
    argmin_offset: int
    word: Optional[BitWord] = field(default=None, compare=False, repr=False)

    @property
    def disc(self) -> int:
        return max(abs(self.max_signed), abs(self.min_signed))


def _check_prime_order(n: int, settings: Settings):
    if n == 2:
        raise InvalidArgumentError("order 2 has no interior blocks")
    if not is_prime(n):
        raise InvalidArgumentError(
            f"block decomposition needs a prime order, got {n}; use composite_correction for composite orders"
        )
    if n > settings.stream_max_order:
        raise CapacityError(f"streaming is capped at order {settings.stream_max_order}, got {n}")


def decompose(n: int, settings: Optional[Settings] = None, keep_words: bool = False) -> List[BlockReport]:
    """Stream the sequence of prime order n and report its blocks, k = n-1 first"""
    settings = settings or Settings.get_defaults()
    _check_prime_order(n, settings)
    if keep_words and n > settings.lyndon_max_order:
        raise CapacityError(f"materialized blocks are capped at order {settings.lyndon_max_order}, got {n}")

    stream = LyndonStream(n)
    if next(stream) != (0,):
        raise AssertionError("stream must open with the word 0")

    blocks: List[BlockReport] = []
    offset = 1
    current_k = None
    tracker = PrefixTracker()
    count = 0
    words: List[int] = []

    def close():
        blocks.append(
            BlockReport(
                k=current_k,
                length=tracker.position,
                skew=tracker.total,
                max_signed=tracker.max_signed,
                min_signed=tracker.min_signed,
                word_count=count,
                offset=offset,
                argmax_offset=tracker.argmax,
                argmin_offset=tracker.argmin,
                word=BitWord(tuple(words)) if keep_words else None,
            )
        )

    closing = None
    for word in stream:
        if len(word) != n:
            closing = word
            break
        k = word.index(1)
        if k != current_k:
            if current_k is not None:
                close()
                offset += tracker.position
            current_k = k
            tracker = PrefixTracker()
            count = 0
            words = []
        tracker.feed_word(word)
        count += 1
        if keep_words:
            words.extend(word)
    if current_k is not None:
        close()
    if closing != (1,):
        raise AssertionError("stream must close with the word 1")
    logger.debug("order %d split into %d blocks", n, len(blocks))
    return blocks


def block_words(n: int, settings: Optional[Settings] = None) -> Dict[int, BitWord]:
    """The concatenated block of every class k"""
    return {block.k: block.word for block in decompose(n, settings, keep_words=True)}


def block_skew_weighted(n: int, k: int, settings: Optional[Settings] = None) -> Fraction:
    """Skew of block k recomputed from 0**(k+1)-free words w of length n-k-2.

    Every class in block k has exactly t+1 rotations of the form 0^k 1 w 1,
    where t is the number of runs 0^k inside w, so each such w contributes
    (k - 2 + skew(w)) / (t + 1).
    """
    settings = settings or Settings.get_defaults()
    if n > settings.weighted_max_order:
        raise CapacityError(f"weighted block skews are capped at order {settings.weighted_max_order}, got {n}")
    if not is_prime(n):
        raise InvalidArgumentError(f"weighted block skew needs a prime order, got {n}")
    if not 4 <= k <= n - 3:
        raise InvalidArgumentError(f"weighted block skew needs 4 <= k <= n-3, got n={n}, k={k}")
    m = n - k - 2
    total = Fraction(0)
    for symbols in product((0, 1), repeat=m):
        stats = zero_run_stats(symbols)
        if stats.max_run > k:
            continue
        runs = stats.run_count if stats.max_run == k else 0
        total += Fraction(k - 2 + skew(symbols), runs + 1)
    return total


def proposition_verdict(n: int, block: BlockReport) -> Optional[bool]:
    """(k-6) alpha <= 3 skew and skew <= (2k-3) alpha with alpha = alpha_{k+1}(n-k-2);
    None when k lies outside 4 <= k <= n-3"""
    k = block.k
    if not 4 <= k <= n - 3:
        return None
    m = n - k - 2
    alpha = build_table(k + 1, m).a[m]
    return (k - 6) * alpha <= 3 * block.skew and block.skew <= (2 * k - 3) * alpha


def proposition_check(n: int, settings: Optional[Settings] = None, blocks: Optional[List[BlockReport]] = None) -> CheckReport:
    """Ratio sandwich for every block with 4 <= k <= n-3, cross-multiplied exactly"""
    if n < 11 or not is_prime(n):
        raise InvalidArgumentError(f"proposition check needs a prime order of at least 11, got {n}")
    blocks = blocks if blocks is not None else decompose(n, settings)
    report = CheckReport(claim="proposition", range={"n": [n, n], "k": [4, n - 3]})
    for block in blocks:
        verdict = proposition_verdict(n, block)
        if verdict is None:
            if block.k >= n - 2:
                report.observe(n=n, k=block.k, skew=block.skew, note="alpha of negative length; unverifiable as stated")
            continue
        report.checked += 1
        if not verdict:
            m = n - block.k - 2
            report.record_failure(n=n, k=block.k, skew=block.skew, alpha=build_table(block.k + 1, m).a[m])
    return report


def block_size_check(n: int, settings: Optional[Settings] = None, blocks: Optional[List[BlockReport]] = None) -> CheckReport:
    """word_count(block k) <= alpha_{k+1}(n-k-2) for k <= n-2, and block n-1 is 0^(n-1) 1"""
    blocks = blocks if blocks is not None else decompose(n, settings)
    report = CheckReport(claim="block_size", range={"n": [n, n], "k": [1, n - 1]})
    for block in blocks:
        report.checked += 1
        if block.k == n - 1:
            if (block.word_count, block.skew, block.length) != (1, n - 2, n):
                report.record_failure(n=n, k=block.k, word_count=block.word_count, skew=block.skew)
            continue
        m = n - block.k - 2
        alpha = build_table(block.k + 1, m).a[m]
        if block.word_count > alpha:
            report.record_failure(n=n, k=block.k, word_count=block.word_count, alpha=alpha)
    return report


@dataclass(frozen=True)
class BlockwiseDisc:
    """Exact discrepancy from block data, next to the running-sum bound over blocks"""
    n: int
    exact: DiscReport
    paper_bound: int
    boundary_sums: List[int]

    @property
    def position(self) -> int:
        return self.exact.argmax_position + 1


def disc_blockwise(n: int, settings: Optional[Settings] = None, blocks: Optional[List[BlockReport]] = None) -> BlockwiseDisc:
    """disc of the full sequence from per-block extremes and the running base at each boundary"""
    if n < 5:
        raise InvalidArgumentError(f"blockwise discrepancy needs an order of at least 5, got {n}")
    blocks = blocks if blocks is not None else decompose(n, settings)

    # (signed value, position) of every candidate extreme, the leading "0" first
    candidates = [(1, 0)]
    boundary_sums = []
    base = 1
    for block in blocks:
        boundary_sums.append(base)
        candidates.append((base + block.max_signed, block.offset + block.argmax_offset))
        candidates.append((base + block.min_signed, block.offset + block.argmin_offset))
        base += block.skew
    boundary_sums.append(base)
    candidates.append((base - 1, (1 << n) - 1))

    disc = max(abs(value) for value, _ in candidates)
    argmax = min(position for value, position in candidates if abs(value) == disc)
    exact = DiscReport(
        disc=disc,
        max_signed=max(value for value, _ in candidates),
        min_signed=min(value for value, _ in candidates),
        argmax_position=argmax,
    )

    bound = None
    running = 1
    for t in range(1, n - 1):
        running += blocks[t - 1].skew
        term = running + blocks[t].disc
        bound = term if bound is None else max(bound, term)
    return BlockwiseDisc(n=n, exact=exact, paper_bound=bound, boundary_sums=boundary_sums)


@dataclass(frozen=True)
class CompositeCorrection:
    """Symbols contributed by Lyndon words of proper divisor lengths"""
    n: int
    actual_symbols: int
    divisor_bound: int

    @property
    def square_bound(self) -> float:
        """n^2 2^(n/2)"""
        return self.n ** 2 * 2 ** (self.n / 2)

    @property
    def holds(self) -> bool:
        # divisor_bound < n^2 2^(n/2), squared to stay in integers
        return (
            self.actual_symbols <= self.divisor_bound
            and self.divisor_bound ** 2 < self.n ** 4 * 2 ** self.n
        )


def composite_correction(n: int, settings: Optional[Settings] = None) -> CompositeCorrection:
    settings = settings or Settings.get_defaults()
    if n < 4 or is_prime(n):
        raise InvalidArgumentError(f"composite correction needs a composite order, got {n}")
    if n > settings.stream_max_order:
        raise CapacityError(f"streaming is capped at order {settings.stream_max_order}, got {n}")
    actual = sum(len(word) for word in LyndonStream(n) if len(word) < n)
    divisor_bound = sum(d * 2 ** d for d in range(1, n) if n % d == 0)
    return CompositeCorrection(n=n, actual_symbols=actual, divisor_bound=divisor_bound)
