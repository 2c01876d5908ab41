"""Prime sequence configuration."""
from __future__ import annotations

import pytest

from amalgam.primes import PrimeSeq, as_prime_seq, is_prime, next_prime


def test_is_prime_small_table():
    primes = [n for n in range(60) if is_prime(n)]
    assert primes == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]


def test_next_prime_steps():
    assert next_prime(2) == 3
    assert next_prime(11) == 13
    assert next_prime(13) == 17


def test_first_and_default():
    assert tuple(PrimeSeq.first(5)) == (2, 3, 5, 7, 11)
    assert len(PrimeSeq.default()) == 16
    assert tuple(PrimeSeq.default())[:3] == (2, 3, 5)


def test_parse_and_accessors():
    seq = PrimeSeq.parse("2, 3,5")
    assert tuple(seq) == (2, 3, 5)
    assert seq.p(1) == 3
    assert seq.cube(2) == 125
    assert len(seq) == 3


def test_rejects_composite_and_duplicates():
    with pytest.raises(ValueError, match="not prime"):
        PrimeSeq.parse("2,4")
    with pytest.raises(ValueError, match="distinct"):
        PrimeSeq.parse("2,3,3")


def test_unconfigured_index_raises():
    seq = PrimeSeq.parse("2,3")
    with pytest.raises(IndexError, match="prime index 2"):
        seq.p(2)


def test_extended_appends_fresh_primes():
    seq = PrimeSeq.parse("5,2")
    longer = seq.extended(4)
    assert tuple(longer) == (5, 2, 7, 11, 13, 17)
    assert len(set(longer)) == 6


def test_as_prime_seq_accepts_iterables():
    assert tuple(as_prime_seq([2, 3])) == (2, 3)
    seq = PrimeSeq.parse("2,3")
    assert as_prime_seq(seq) is seq
