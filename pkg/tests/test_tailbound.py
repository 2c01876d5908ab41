"""Tail traces, defect budgets, and the deviation inequality."""
from __future__ import annotations

import random
from fractions import Fraction

import pytest

from amalgam.primes import PrimeSeq
from amalgam.sampling import Sampler
from amalgam.tailbound import (
    DeviationReport,
    atom_mass,
    atom_points,
    deviation_bound_check,
    epsilon_defect,
    tail_remainder_bound,
    tail_trace,
)
from amalgam.words import Tower

PRIMES = PrimeSeq.parse("2,3,5,7,11")


def test_tail_trace_closed_form():
    # Frozen oracle: (1 - 1/8)(1 - 1/27)(1 - 1/125) = 2821/3375.
    assert tail_trace(PRIMES, 0, 2) == Fraction(2821, 3375)
    assert tail_trace(PRIMES, 0, 0) == Fraction(7, 8)
    assert tail_trace(PRIMES, 1, 1) == Fraction(26, 27)
    assert tail_trace(PRIMES, 2, 2) == Fraction(124, 125)


def test_tail_trace_multiplies_independent_windows():
    assert tail_trace(PRIMES, 0, 2) == tail_trace(PRIMES, 0, 1) * tail_trace(PRIMES, 2, 2)


def test_window_validation():
    with pytest.raises(ValueError):
        tail_trace(PRIMES, -1, 0)
    with pytest.raises(ValueError):
        tail_trace(PRIMES, 2, 1)
    with pytest.raises(IndexError):
        tail_trace(PRIMES, 0, 99)


def test_epsilon_defect_complement():
    eps = epsilon_defect(PRIMES, 0, 2)
    assert eps == Fraction(554, 3375)
    assert eps + tail_trace(PRIMES, 0, 2) == 1
    assert abs(float(eps) - 0.16415) < 1e-4


def test_remainder_bound_dominates_actual_tails():
    # The bound at cutoff `last` must dominate every finite continuation
    # of the configured sequence.
    bound = tail_remainder_bound(PRIMES, 2)
    actual = sum(Fraction(1, PRIMES.cube(n)) for n in (3, 4))
    assert bound >= actual
    assert tail_remainder_bound(PRIMES, 4) > 0


def test_atom_points_and_masses():
    pts = atom_points(3)
    assert len(pts) == 8
    assert pts[0] == (0, 0, 0)
    assert pts[-1] == (1, 1, 1)
    total = sum(atom_mass(PRIMES, 0, bits) for bits in pts)
    assert total == 1
    # the all-zeros atom carries the window trace
    assert atom_mass(PRIMES, 0, (0, 0, 0)) == Fraction(2821, 3375)
    assert atom_mass(PRIMES, 0, (1, 0, 0)) == Fraction(1, 8) * Fraction(26, 27) * Fraction(124, 125)


def test_deviation_report_exactness():
    values = {bits: Fraction(1) for bits in atom_points(3)}
    report = deviation_bound_check(PRIMES, 0, 2, values)
    assert isinstance(report, DeviationReport)
    assert report.passed
    assert report.lhs_squared == 0  # constants deviate by nothing
    assert report.mean == 1
    assert report.bound_squared == 16 * Fraction(554, 3375)


def test_flip_atom_closed_form():
    # Putting -1 on a single atom of mass T and +1 elsewhere gives
    # lhs^2 = 4 T (1 - T) exactly.
    for flip in ((0, 0, 0), (1, 1, 0)):
        values = {bits: Fraction(-1 if bits == flip else 1) for bits in atom_points(3)}
        report = deviation_bound_check(PRIMES, 0, 2, values)
        T = atom_mass(PRIMES, 0, flip)
        assert report.lhs_squared == 4 * T * (1 - T)


def test_sign_extremes_all_pass():
    # All 2^8 sign patterns satisfy the inequality: the worst case over
    # +-1 values is 4 mu (1 - mu) <= 4 eps < 16 eps.
    eps = epsilon_defect(PRIMES, 0, 2)
    worst = Fraction(0)
    for mask in range(256):
        values = {
            bits: Fraction(1 if (mask >> i) & 1 == 0 else -1)
            for i, bits in enumerate(atom_points(3))
        }
        report = deviation_bound_check(PRIMES, 0, 2, values)
        assert report.passed
        worst = max(worst, report.lhs_squared)
    assert worst <= 4 * eps


def test_random_unit_ball_passes():
    tower = Tower(PRIMES)
    sampler = Sampler(tower, seed=55)
    for _ in range(300):
        values = sampler.unit_ball_values(8)
        report = deviation_bound_check(PRIMES, 0, 2, values)
        assert report.passed
        assert report.lhs == report.lhs_squared ** Fraction(1, 2) or report.lhs >= 0


def test_rejects_out_of_ball_values():
    values = [Fraction(2)] + [Fraction(1)] * 7
    with pytest.raises(ValueError, match="sup"):
        deviation_bound_check(PRIMES, 0, 2, values)


def test_rejects_wrong_atom_count():
    with pytest.raises(ValueError):
        deviation_bound_check(PRIMES, 0, 2, [Fraction(1)] * 7)
    with pytest.raises(ValueError):
        deviation_bound_check(PRIMES, 0, 2, {(0, 0, 0): Fraction(1)})


def test_sequence_input_matches_mapping_input():
    rng = random.Random(3)
    seq = [Fraction(rng.randrange(-9, 10), 10) for _ in range(8)]
    mapping = dict(zip(atom_points(3), seq))
    a = deviation_bound_check(PRIMES, 0, 2, seq)
    b = deviation_bound_check(PRIMES, 0, 2, mapping)
    assert a.as_pair() == b.as_pair()
