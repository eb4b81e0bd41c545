"""
Finite binary words and the statistics the analysis is built on: skew,
prefix-sum discrepancy, rotations, least conjugates, Lyndon tests and
zero-run statistics.

Symbol 0 counts +1 and symbol 1 counts -1 in every signed sum.
"""

from dataclasses import dataclass
from typing import FrozenSet, Iterable, Iterator, Sequence, Tuple, Union

from forddisc.errors import InvalidArgumentError


@dataclass(frozen=True)
class BitWord:
    """An immutable word over {0, 1}, indexed from 0"""
    symbols: Tuple[int, ...] = ()

    def __post_init__(self):
        if not isinstance(self.symbols, tuple):
            object.__setattr__(self, "symbols", tuple(self.symbols))
        for symbol in self.symbols:
            if symbol not in (0, 1):
                raise InvalidArgumentError(f"binary words hold only 0 and 1, got {symbol!r}")

    @classmethod
    def from_string(cls, text: str) -> "BitWord":
        try:
            return cls(tuple(int(c) for c in text))
        except ValueError:
            raise InvalidArgumentError(f"not a binary string: {text!r}") from None

    @classmethod
    def coerce(cls, value: "WordLike") -> "BitWord":
        if isinstance(value, BitWord):
            return value
        if isinstance(value, str):
            return cls.from_string(value)
        return cls(tuple(value))

    @property
    def length(self) -> int:
        return len(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[int]:
        return iter(self.symbols)

    def __getitem__(self, index: int) -> int:
        return self.symbols[index]

    def __add__(self, other: "BitWord") -> "BitWord":
        return BitWord(self.symbols + BitWord.coerce(other).symbols)

    def __lt__(self, other: "BitWord") -> bool:
        return self.symbols < other.symbols

    def __str__(self) -> str:
        return "".join("1" if s else "0" for s in self.symbols)


WordLike = Union[BitWord, str, Sequence[int]]


@dataclass(frozen=True)
class DiscReport:
    """Prefix-sum extremes of a word over its nonempty prefixes"""
    disc: int
    max_signed: int
    min_signed: int
    argmax_position: int

    def __post_init__(self):
        if self.disc != max(abs(self.max_signed), abs(self.min_signed)):
            raise InvalidArgumentError("disc must equal the larger absolute signed extreme")


@dataclass(frozen=True)
class RunStats:
    """Longest zero run, how many maximal runs reach it, and where they start"""
    max_run: int
    run_count: int
    run_print: FrozenSet[int]


class PrefixTracker:
    """Running signed prefix sum with its extremes, fed one symbol at a time.

    Holds O(1) state, so it can follow a stream of any length. The earliest
    prefix whose absolute sum reaches the final discrepancy is tracked
    through the earliest position of each signed extreme.
    """

    __slots__ = ("total", "position", "max_signed", "min_signed", "argmax", "argmin")

    def __init__(self, start: int = 0):
        self.total = start
        self.position = 0
        self.max_signed = None
        self.min_signed = None
        self.argmax = -1
        self.argmin = -1

    def feed(self, symbol: int):
        self.total += -1 if symbol else 1
        if self.max_signed is None or self.total > self.max_signed:
            self.max_signed = self.total
            self.argmax = self.position
        if self.min_signed is None or self.total < self.min_signed:
            self.min_signed = self.total
            self.argmin = self.position
        self.position += 1

    def feed_word(self, symbols: Iterable[int]):
        it = iter(symbols)
        if self.max_signed is None:
            for symbol in it:
                self.feed(symbol)
                break
            else:
                return
        total, position = self.total, self.position
        hi, lo = self.max_signed, self.min_signed
        argmax, argmin = self.argmax, self.argmin
        for symbol in it:
            if symbol:
                total -= 1
                if total < lo:
                    lo = total
                    argmin = position
            else:
                total += 1
                if total > hi:
                    hi = total
                    argmax = position
            position += 1
        self.total, self.position = total, position
        self.max_signed, self.min_signed = hi, lo
        self.argmax, self.argmin = argmax, argmin

    @property
    def empty(self) -> bool:
        return self.position == 0

    def report(self) -> DiscReport:
        if self.empty:
            raise InvalidArgumentError("empty word has no prefixes")
        hi, lo = self.max_signed, self.min_signed
        disc = max(abs(hi), abs(lo))
        candidates = []
        if abs(hi) == disc:
            candidates.append(self.argmax)
        if abs(lo) == disc:
            candidates.append(self.argmin)
        return DiscReport(disc=disc, max_signed=hi, min_signed=lo, argmax_position=min(candidates))


def skew(w: WordLike) -> int:
    """Number of zeros minus number of ones"""
    w = BitWord.coerce(w)
    ones = sum(w.symbols)
    return len(w) - 2 * ones


def discrepancy(w: WordLike) -> DiscReport:
    """Largest absolute prefix sum over the nonempty prefixes of `w`"""
    w = BitWord.coerce(w)
    if not len(w):
        raise InvalidArgumentError("empty word has no prefixes")
    tracker = PrefixTracker()
    tracker.feed_word(w.symbols)
    return tracker.report()


def rotate(w: WordLike, j: int) -> BitWord:
    """Cyclic left rotation by `j` positions"""
    w = BitWord.coerce(w)
    if not len(w):
        return w
    j %= len(w)
    return BitWord(w.symbols[j:] + w.symbols[:j])


def _least_rotation_index(s: Tuple[int, ...]) -> int:
    # Booth's algorithm over the doubled word
    n = len(s)
    doubled = s + s
    failure = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        sj = doubled[j]
        i = failure[j - k - 1]
        while i != -1 and sj != doubled[k + i + 1]:
            if sj < doubled[k + i + 1]:
                k = j - i - 1
            i = failure[i]
        if sj != doubled[k + i + 1]:
            if sj < doubled[k]:
                k = j
            failure[j - k] = -1
        else:
            failure[j - k] = i + 1
    return k


def min_rotation(w: WordLike) -> BitWord:
    """The lexicographically least rotation of `w`"""
    w = BitWord.coerce(w)
    if not len(w):
        raise InvalidArgumentError("empty word has no rotations")
    return rotate(w, _least_rotation_index(w.symbols))


def is_primitive(w: WordLike) -> bool:
    """True when `w` is not a proper power of a shorter word"""
    text = str(BitWord.coerce(w))
    return (text + text).find(text, 1) == len(text)


def is_lyndon(w: WordLike) -> bool:
    """True iff `w` is aperiodic and equal to its least rotation"""
    w = BitWord.coerce(w)
    if not len(w):
        raise InvalidArgumentError("empty word is not a Lyndon word")
    return is_primitive(w) and min_rotation(w) == w


def _linear_runs(symbols: Sequence[int]) -> Iterator[Tuple[int, int]]:
    """(start, length) of every maximal zero run"""
    start = None
    for i, symbol in enumerate(symbols):
        if symbol == 0:
            if start is None:
                start = i
        elif start is not None:
            yield start, i - start
            start = None
    if start is not None:
        yield start, len(symbols) - start


def _collect(runs: Iterable[Tuple[int, int]]) -> RunStats:
    best = 0
    starts = []
    for start, length in runs:
        if length > best:
            best = length
            starts = [start]
        elif length == best:
            starts.append(start)
    if best == 0:
        return RunStats(max_run=0, run_count=0, run_print=frozenset())
    return RunStats(max_run=best, run_count=len(starts), run_print=frozenset(starts))


def zero_run_stats(w: WordLike, cyclic: bool = False) -> RunStats:
    """Longest run of zeros, the number of maximal runs of that length and
    their start indices. Cyclic runs may wrap from the end to the start."""
    w = BitWord.coerce(w)
    n = len(w)
    if not n:
        raise InvalidArgumentError("empty word has no runs")
    symbols = w.symbols
    if not cyclic:
        return _collect(_linear_runs(symbols))
    if 1 not in symbols:
        return RunStats(max_run=n, run_count=1, run_print=frozenset({0}))
    # Reading from just after the last 1 makes every cyclic run linear.
    shift = n - symbols[::-1].index(1)
    rotated = symbols[shift:] + symbols[:shift]
    runs = (((start + shift) % n, length) for start, length in _linear_runs(rotated))
    return _collect(runs)
