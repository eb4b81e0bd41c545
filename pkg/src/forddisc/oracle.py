"""
Brute-force reference implementations.

Everything here enumerates and filters plain strings and shares no code
with the streaming and recurrence modules it is used to check.
"""

import logging
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Set, Tuple

import numpy as np

from forddisc.errors import CapacityError, InvalidArgumentError
from forddisc.settings import OracleConfig
from forddisc.words import BitWord, WordLike

logger = logging.getLogger(__name__)

DISC_BRUTE_CAP = 1 << 24


def _words(m: int) -> Iterator[str]:
    if m == 0:
        yield ""
        return
    for x in range(1 << m):
        yield format(x, f"0{m}b")


def _check_length(m: int, config: Optional[OracleConfig]):
    cap = (config or OracleConfig()).max_word_length
    if m < 0:
        raise InvalidArgumentError(f"word length must be nonnegative, got {m}")
    if m > cap:
        raise CapacityError(f"exhaustive enumeration is capped at length {cap}, got {m}")


@lru_cache(maxsize=512)
def _run_free_totals(k: int, m: int) -> Tuple[int, int]:
    forbidden = "0" * k
    count = 0
    total_skew = 0
    for s in _words(m):
        if forbidden in s:
            continue
        count += 1
        total_skew += 2 * s.count("0") - m
    return count, total_skew


def alpha_brute(k: int, m: int, config: Optional[OracleConfig] = None) -> int:
    """Number of words of length m with no run of k zeros"""
    _check_length(m, config)
    if k < 1:
        raise InvalidArgumentError(f"k must be positive, got {k}")
    return _run_free_totals(k, m)[0]


def beta_brute(k: int, m: int, config: Optional[OracleConfig] = None) -> int:
    """Total skew of the words of length m with no run of k zeros"""
    _check_length(m, config)
    if k < 1:
        raise InvalidArgumentError(f"k must be positive, got {k}")
    return _run_free_totals(k, m)[1]


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, n))


def _cyclic_max_zero_run(s: str) -> int:
    if "1" not in s:
        return len(s)
    return max(len(run) for run in (s + s).split("1"))


@lru_cache(maxsize=16)
def _classes_by_run(n: int) -> Dict[int, List[str]]:
    classes: Dict[int, Set[str]] = {}
    for s in _words(n):
        run = _cyclic_max_zero_run(s)
        least = min(s[i:] + s[:i] for i in range(n))
        classes.setdefault(run, set()).add(least)
    return {run: sorted(words) for run, words in classes.items()}


def ell_brute(n: int, k: int, config: Optional[OracleConfig] = None) -> BitWord:
    """Sorted least rotations of all length-n words whose cyclic longest zero run is k, concatenated"""
    if not _is_prime(n):
        raise InvalidArgumentError(f"block oracle needs a prime order, got {n}")
    cap = (config or OracleConfig()).max_ell_order
    if n > cap:
        raise CapacityError(f"block oracle is capped at order {cap}, got {n}")
    if not 1 <= k <= n - 1:
        raise InvalidArgumentError(f"k must lie in 1..{n - 1}, got {k}")
    return BitWord.from_string("".join(_classes_by_run(n).get(k, [])))


def _debruijn_words(n: int, config: Optional[OracleConfig]) -> Iterator[str]:
    cap = (config or OracleConfig()).max_debruijn_order
    if n < 1:
        raise InvalidArgumentError(f"order must be at least 1, got {n}")
    if n > cap:
        raise CapacityError(f"exhaustive de Bruijn search is capped at order {cap}, got {n}")
    size = 1 << n
    free = size - n
    prefix = "0" * n
    for x in range(1 << free):
        word = prefix + (format(x, f"0{free}b") if free else "")
        cyclic = word + word[: n - 1]
        if len({cyclic[i : i + n] for i in range(size)}) == size:
            yield word


def count_debruijn_exhaustive(n: int, config: Optional[OracleConfig] = None) -> int:
    """Count de Bruijn cycles of order n via their rotation starting with 0^n"""
    count = sum(1 for _ in _debruijn_words(n, config))
    logger.debug("order %d: %d de Bruijn cycles", n, count)
    return count


def least_debruijn_exhaustive(n: int, config: Optional[OracleConfig] = None) -> BitWord:
    """The lexicographically least de Bruijn word of order n found by exhaustive search"""
    for word in _debruijn_words(n, config):
        return BitWord.from_string(word)
    raise AssertionError(f"no de Bruijn word of order {n} found")


def disc_brute(w: WordLike) -> int:
    """max |prefix sum| by cumulative sum over the whole word"""
    bits = np.fromiter(BitWord.coerce(w).symbols, dtype=np.int64)
    if bits.size > DISC_BRUTE_CAP:
        raise CapacityError(f"disc oracle is capped at {DISC_BRUTE_CAP} symbols, got {bits.size}")
    if not bits.size:
        raise InvalidArgumentError("empty word has no prefixes")
    return int(np.abs(np.cumsum(1 - 2 * bits)).max())
