"""Tests for the block decomposition of prime orders."""

from fractions import Fraction

import pytest

from forddisc.blocks import (
    block_size_check,
    block_skew_weighted,
    block_words,
    composite_correction,
    decompose,
    disc_blockwise,
    is_prime,
    proposition_check,
    proposition_verdict,
)
from forddisc.errors import CapacityError, InvalidArgumentError
from forddisc.reports import ClaimStatus
from forddisc.sequences import LyndonStream, fkm_stream
from forddisc.settings import Settings
from forddisc.words import BitWord, PrefixTracker, discrepancy, zero_run_stats

LARGE_PRIMES = [17, 19, 23]


@pytest.fixture(scope="module")
def blocks_13():
    return decompose(13)


@pytest.fixture(scope="module")
def large_blocks():
    """Decompositions of the larger primes, computed once per module"""
    return {n: decompose(n) for n in LARGE_PRIMES}


def _streamed_disc(n):
    tracker = PrefixTracker()
    for word in LyndonStream(n):
        tracker.feed_word(word)
    return tracker.report()


def test_is_prime():
    """Test primality on small integers"""
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_decompose_order_five():
    """Test the four blocks of order five"""
    blocks = decompose(5)
    assert [(b.k, b.length, b.skew) for b in blocks] == [(4, 5, 3), (3, 5, 1), (2, 10, 0), (1, 10, -4)]
    assert [b.word_count for b in blocks] == [1, 1, 2, 2]
    assert [b.offset for b in blocks] == [1, 6, 11, 21]


@pytest.mark.parametrize("n", [5, 7, 11, 13, 17])
def test_block_k_decreases_along_the_stream(n):
    """Test that every k from n-1 down to 1 gets exactly one block, in that order"""
    assert [b.k for b in decompose(n)] == list(range(n - 1, 0, -1))


def test_decompose_rejects_composite_and_degenerate_orders():
    """Test that composite and tiny orders are refused"""
    with pytest.raises(InvalidArgumentError, match="composite_correction"):
        decompose(9)
    with pytest.raises(InvalidArgumentError):
        decompose(2)


def test_decompose_respects_stream_cap():
    """Test the streaming cap on decomposition"""
    with pytest.raises(CapacityError):
        decompose(13, Settings(stream_max_order=11))


@pytest.mark.parametrize("n", [3, 5, 7, 11])
def test_blocks_reassemble_the_sequence(n):
    """Test that 0, the block words and the final 1 spell the sequence"""
    words = decompose(n, keep_words=True)
    body = BitWord((0,))
    for block in words:
        body = body + block.word
    assert body + BitWord((1,)) == BitWord(tuple(fkm_stream(n)))


@pytest.mark.parametrize("n", [5, 7, 11])
def test_block_words_have_cyclic_run_k(n):
    """Test that every word in block k has cyclic maximal zero run k"""
    for k, word in block_words(n).items():
        for i in range(0, len(word), n):
            piece = word.symbols[i : i + n]
            assert zero_run_stats(piece, cyclic=True).max_run == k


def test_block_words_order_five():
    """Test the materialized blocks of order five"""
    words = block_words(5)
    assert str(words[2]) == "0010100111"
    assert str(words[4]) == "00001"


@pytest.mark.parametrize("n,k", [(11, 4), (13, 5), (13, 4), (13, 10)])
def test_weighted_skew_matches_stream(n, k, blocks_13):
    """Test the weighted skew identity against streamed block skews"""
    blocks = blocks_13 if n == 13 else decompose(n)
    streamed = next(b.skew for b in blocks if b.k == k)
    value = block_skew_weighted(n, k)
    assert isinstance(value, Fraction)
    assert value == streamed


def test_weighted_skew_every_block_of_order_17(large_blocks):
    """Test the weighted skew identity for every block with 4 <= k <= 14 at n = 17"""
    checked = 0
    for block in large_blocks[17]:
        if 4 <= block.k <= 14:
            assert block_skew_weighted(17, block.k) == block.skew
            checked += 1
    assert checked == 11


def test_weighted_skew_preconditions():
    """Test the order and k ranges of the weighted identity"""
    with pytest.raises(InvalidArgumentError):
        block_skew_weighted(9, 4)
    with pytest.raises(InvalidArgumentError):
        block_skew_weighted(11, 3)
    with pytest.raises(InvalidArgumentError):
        block_skew_weighted(11, 9)
    with pytest.raises(CapacityError):
        block_skew_weighted(23, 5, Settings(weighted_max_order=19))


def test_proposition_order_13(blocks_13):
    """Test the skew sandwich at n = 13 and its out-of-range observations"""
    report = proposition_check(13, blocks=blocks_13)
    assert report.status is ClaimStatus.PASS
    assert report.checked == len(range(4, 11))
    assert {obs["k"] for obs in report.observations} == {11, 12}
    assert proposition_verdict(13, blocks_13[0]) is None


def test_proposition_needs_prime_of_at_least_11():
    """Test the proposition preconditions"""
    with pytest.raises(InvalidArgumentError):
        proposition_check(7)
    with pytest.raises(InvalidArgumentError):
        proposition_check(15)


@pytest.mark.parametrize("n", LARGE_PRIMES)
def test_proposition_larger_primes(n, large_blocks):
    """Test the skew sandwich for every in-range block of the larger primes"""
    report = proposition_check(n, blocks=large_blocks[n])
    assert report.status is ClaimStatus.PASS
    assert report.checked == n - 6


@pytest.mark.parametrize("n", [5, 7, 11, 13])
def test_block_size(n):
    """Test the block size identity"""
    assert block_size_check(n).status is ClaimStatus.PASS


def test_disc_blockwise_order_five():
    """Test the blockwise discrepancy and its running-sum bound at n = 5"""
    result = disc_blockwise(5)
    assert result.exact.disc == 8
    assert result.paper_bound == 9
    assert result.position == 18
    assert result.boundary_sums == [1, 4, 5, 5, 1]


@pytest.mark.parametrize("n", [7, 11, 13])
def test_disc_blockwise_matches_stream(n):
    """Test that block data reproduce the streamed discrepancy"""
    result = disc_blockwise(n)
    assert result.exact == discrepancy(tuple(fkm_stream(n)))
    assert result.paper_bound >= result.exact.disc
    assert min(result.boundary_sums) >= 0


@pytest.mark.parametrize("n", LARGE_PRIMES)
def test_disc_blockwise_larger_primes(n, large_blocks):
    """Test blockwise discrepancy against the stream for the larger primes"""
    result = disc_blockwise(n, blocks=large_blocks[n])
    assert result.exact == _streamed_disc(n)
    assert result.paper_bound >= result.exact.disc
    assert min(result.boundary_sums) >= 0


def test_disc_blockwise_needs_order_five():
    """Test the order precondition of the blockwise discrepancy"""
    with pytest.raises(InvalidArgumentError):
        disc_blockwise(3)


def test_composite_correction():
    """Test the divisor and square bounds for composite orders"""
    six = composite_correction(6)
    assert six.actual_symbols == 10
    assert six.divisor_bound == 34
    assert six.holds
    nine = composite_correction(9)
    assert nine.actual_symbols == 8
    assert nine.divisor_bound == 26
    assert nine.square_bound == pytest.approx(81 * 2 ** 4.5)


def test_composite_correction_rejects_primes():
    """Test that prime orders are refused by the composite correction"""
    with pytest.raises(InvalidArgumentError):
        composite_correction(7)
