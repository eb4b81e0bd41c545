"""Tests for binary words, skew, discrepancy, rotations and zero runs."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from forddisc.errors import InvalidArgumentError
from forddisc.words import (
    BitWord,
    PrefixTracker,
    discrepancy,
    is_lyndon,
    is_primitive,
    min_rotation,
    rotate,
    skew,
    zero_run_stats,
)

bits = st.lists(st.integers(min_value=0, max_value=1), min_size=1, max_size=64)
short_bits = st.lists(st.integers(min_value=0, max_value=1), min_size=1, max_size=16)
any_bits = st.lists(st.integers(min_value=0, max_value=1), max_size=64)


def _prefix_sums(symbols):
    total = 0
    sums = []
    for symbol in symbols:
        total += -1 if symbol else 1
        sums.append(total)
    return sums


def test_bitword_rejects_other_symbols():
    """Only 0 and 1 are accepted"""
    with pytest.raises(InvalidArgumentError):
        BitWord((0, 2))
    with pytest.raises(InvalidArgumentError):
        BitWord.from_string("01a")


def test_bitword_string_roundtrip():
    """Test string conversion, indexing and concatenation"""
    w = BitWord.from_string("00010111")
    assert str(w) == "00010111"
    assert len(w) == 8
    assert w[3] == 1
    assert w + "1" == BitWord.from_string("000101111")


@pytest.mark.parametrize("word,expected", [("0011", 0), ("00001", 3), ("", 0), ("111", -3)])
def test_skew(word, expected):
    """Test zeros minus ones"""
    assert skew(word) == expected


@given(any_bits, any_bits)
def test_skew_is_additive(x, y):
    """Test skew(xy) = skew(x) + skew(y)"""
    assert skew(BitWord(tuple(x)) + BitWord(tuple(y))) == skew(x) + skew(y)


def test_discrepancy_of_order_three_sequence():
    """Prefix sums 1,2,3,2,3,2,1,0 peak first at index 2"""
    report = discrepancy("00010111")
    assert report.disc == 3
    assert report.max_signed == 3
    assert report.min_signed == 0
    assert report.argmax_position == 2


def test_discrepancy_short_words():
    """Test discrepancy of alternating and single-symbol words"""
    assert discrepancy("01").disc == 1
    assert discrepancy("01" * 8).disc == 1
    report = discrepancy("1")
    assert (report.disc, report.max_signed, report.min_signed) == (1, -1, -1)


def test_discrepancy_of_empty_word():
    """Test that the empty word is refused"""
    with pytest.raises(InvalidArgumentError, match="empty word has no prefixes"):
        discrepancy("")


def test_discrepancy_negative_extreme_wins():
    """The earliest prefix reaching disc may be a negative one"""
    report = discrepancy("0111")
    assert report.disc == 2
    assert report.min_signed == -2
    assert report.argmax_position == 3


@given(bits)
def test_discrepancy_matches_prefix_sums(symbols):
    """Test discrepancy against explicit prefix sums"""
    sums = _prefix_sums(symbols)
    report = discrepancy(symbols)
    assert report.disc == max(abs(s) for s in sums)
    assert report.max_signed == max(sums)
    assert report.min_signed == min(sums)
    assert report.argmax_position == next(i for i, s in enumerate(sums) if abs(s) == report.disc)


@given(bits)
def test_discrepancy_at_most_length(symbols):
    """Test disc <= |w|, with equality exactly for constant words"""
    report = discrepancy(symbols)
    assert report.disc <= len(symbols)
    assert (report.disc == len(symbols)) == (len(set(symbols)) == 1)


@given(bits, st.integers(min_value=1, max_value=8))
def test_tracker_feed_word_matches_feed(symbols, pieces):
    """Feeding whole words and single symbols gives the same report"""
    by_symbol = PrefixTracker()
    for symbol in symbols:
        by_symbol.feed(symbol)
    by_word = PrefixTracker()
    step = max(1, len(symbols) // pieces)
    for i in range(0, len(symbols), step):
        by_word.feed_word(symbols[i : i + step])
    assert by_word.report() == by_symbol.report()
    assert by_word.total == skew(symbols)


def test_tracker_ignores_empty_words():
    """Test that empty words leave the tracker untouched"""
    tracker = PrefixTracker()
    tracker.feed_word(())
    assert tracker.empty
    tracker.feed_word((0, 0))
    tracker.feed_word(())
    assert tracker.report().disc == 2


def test_rotate():
    """Test left, right, full and empty rotations"""
    assert rotate("0011", 1) == BitWord.from_string("0110")
    assert rotate("0011", -1) == BitWord.from_string("1001")
    assert rotate("0011", 4) == BitWord.from_string("0011")
    assert rotate("", 3) == BitWord()


@pytest.mark.parametrize("word,expected", [("110", "011"), ("0011", "0011"), ("1001", "0011"), ("1", "1")])
def test_min_rotation(word, expected):
    """Test the least rotation of small words"""
    assert min_rotation(word) == BitWord.from_string(expected)


@given(bits)
def test_min_rotation_is_least_rotation(symbols):
    """Test the least rotation against all rotations"""
    rotations = [rotate(symbols, j) for j in range(len(symbols))]
    assert min_rotation(symbols) == min(rotations, key=lambda w: w.symbols)


@given(bits)
def test_min_rotation_is_idempotent(symbols):
    """Test that the least rotation is its own least rotation"""
    once = min_rotation(symbols)
    assert min_rotation(once) == once


@given(short_bits.filter(is_primitive))
def test_aperiodic_word_has_one_lyndon_rotation(symbols):
    """Test that exactly one rotation of an aperiodic word is a Lyndon word"""
    rotations = {rotate(symbols, j) for j in range(len(symbols))}
    assert len(rotations) == len(symbols)
    assert sum(is_lyndon(w) for w in rotations) == 1


def test_min_rotation_of_empty_word():
    """Test that the empty word has no least rotation"""
    with pytest.raises(InvalidArgumentError):
        min_rotation("")


@pytest.mark.parametrize("word,expected", [("0011", True), ("0101", False), ("0", True), ("1", True), ("10", False)])
def test_is_lyndon(word, expected):
    """Test Lyndon membership of small words"""
    assert is_lyndon(word) is expected


def test_is_primitive():
    """Test primitive and periodic words"""
    assert is_primitive("001")
    assert not is_primitive("0101")
    assert not is_primitive("000")


def test_zero_runs_linear():
    """Test linear zero-run statistics"""
    stats = zero_run_stats("00100110")
    assert stats.max_run == 2
    assert stats.run_count == 2
    assert stats.run_print == frozenset({0, 3})


def test_zero_runs_cyclic():
    """Test runs that wrap around the end of the word"""
    stats = zero_run_stats("10001", cyclic=True)
    assert (stats.max_run, stats.run_count) == (3, 1)
    stats = zero_run_stats("0110", cyclic=True)
    assert (stats.max_run, stats.run_count) == (2, 1)
    assert stats.run_print == frozenset({3})


def test_zero_runs_all_zero_and_all_one():
    """Test the constant words in both modes"""
    for cyclic in (False, True):
        stats = zero_run_stats("0000", cyclic=cyclic)
        assert (stats.max_run, stats.run_count, stats.run_print) == (4, 1, frozenset({0}))
    assert zero_run_stats("111", cyclic=True).max_run == 0


@given(bits.filter(lambda s: 1 in s))
def test_cyclic_runs_match_doubled_word(symbols):
    """The cyclic longest run equals the longest linear run of the doubled word"""
    doubled = zero_run_stats(symbols + symbols)
    assert zero_run_stats(symbols, cyclic=True).max_run == doubled.max_run
