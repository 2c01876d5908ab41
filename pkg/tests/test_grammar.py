"""Element text grammar: parse and format round trips."""
from __future__ import annotations

import pytest

from amalgam.grammar import (
    ElementSyntaxError,
    UnconfiguredPrimeError,
    format_element,
    parse_element,
)
from amalgam.primes import PrimeSeq
from amalgam.sampling import Sampler
from amalgam.words import Tower

PRIMES = PrimeSeq.parse("2,3,5")


@pytest.fixture(scope="module")
def tw() -> Tower:
    return Tower(PRIMES)


def test_parse_atoms(tw: Tower):
    assert parse_element(tw, "e").is_identity
    h = parse_element(tw, "h(1;1,2,0)")
    assert tw.eq(h, tw.h(1, (1, 2, 0)))
    lam = parse_element(tw, "L[1,1,0;0,1,0;0,0,1]")
    assert tw.eq(lam, tw.lam(((1, 1, 0), (0, 1, 0), (0, 0, 1))))
    t = parse_element(tw, "t(2)")
    assert tw.eq(t, tw.stable(2))


def test_parse_products_and_powers(tw: Tower):
    w = parse_element(tw, "t(1) * h(0;1,0,0) * t(1)^-1")
    assert tw.eq(w, tw.h(0, (1, 0, 0)))  # the level-1 letter centralizes the lattice
    sq = parse_element(tw, "t(2)^3")
    assert tw.eq(sq, tw.stable(2, 3))
    assert parse_element(tw, "h(0;1,0,0)^2").is_identity


def test_whitespace_is_insignificant(tw: Tower):
    a = parse_element(tw, "t(1)*h(2;1,1,1)")
    b = parse_element(tw, "  t( 1 )  *  h( 2 ; 1 , 1 , 1 )  ")
    assert tw.eq(a, b)


def test_negative_coordinates_reduce(tw: Tower):
    w = parse_element(tw, "h(1;-1,4,0)")
    assert w.g0.k.block(1) == (2, 1, 0)


def test_syntax_error_positions(tw: Tower):
    with pytest.raises(ElementSyntaxError) as err:
        parse_element(tw, "h(1;1,2)")
    assert err.value.position == 7
    with pytest.raises(ElementSyntaxError):
        parse_element(tw, "t(0)")
    with pytest.raises(ElementSyntaxError):
        parse_element(tw, "h(1;1,2,0) * ")
    with pytest.raises(ElementSyntaxError):
        parse_element(tw, "q(1)")
    with pytest.raises(ElementSyntaxError):
        parse_element(tw, "t(1) h(0;1,0,0)")


def test_rejects_non_unimodular_matrix(tw: Tower):
    with pytest.raises(ValueError, match="determinant"):
        parse_element(tw, "L[2,0,0;0,1,0;0,0,1]")


def test_rejects_unconfigured_block(tw: Tower):
    with pytest.raises(UnconfiguredPrimeError):
        parse_element(tw, "h(3;1,0,0)")


def test_format_atoms(tw: Tower):
    assert format_element(tw.identity()) == "e"
    assert "h(1;" in format_element(tw.h(1, (1, 0, 0)))
    assert "t(2)" in format_element(tw.stable(2))


def test_format_parse_round_trip_random(tw: Tower):
    sampler = Sampler(tw, seed=101)
    for i in range(120):
        w = sampler.word(1 + i % 6, level_cap=3)
        again = parse_element(tw, format_element(w))
        assert tw.eq(w, again)


def test_round_trip_reduced_words(tw: Tower):
    sampler = Sampler(tw, seed=7)
    for i in range(40):
        w = sampler.reduced_word(1 + i % 3, syllables=1 + i % 2)
        again = parse_element(tw, format_element(w))
        assert tw.eq(w, again)
        assert again.level == w.level
