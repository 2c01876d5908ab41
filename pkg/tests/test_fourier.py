"""Blockwise duality: functions on a block vs group-algebra coefficients."""
from __future__ import annotations

import random
from fractions import Fraction

import numpy as np
import pytest

from amalgam.fourier import (
    GroupAlgebraElement,
    action_permutation,
    block_points,
    check_intertwiner,
    fourier,
    inverse_fourier,
    projection_en,
    transform_matrix,
)
from amalgam.matrices import ELEMENTARY_GENERATORS, elementary
from amalgam.primes import PrimeSeq
from amalgam.words import Tower

PRIMES = PrimeSeq.parse("2,3,5")
TOL = 1e-9


@pytest.fixture(scope="module")
def tw() -> Tower:
    return Tower(PRIMES)


def _random_function(rng: random.Random, p: int) -> np.ndarray:
    return np.array([complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(p**3)])


def test_transform_matrix_inverts_against_characters():
    for p in (2, 3):
        F = transform_matrix(p)
        pts = np.array(block_points(p))
        characters = np.exp(2j * np.pi * ((pts @ pts.T) % p) / p)
        assert np.max(np.abs(characters.T @ F - np.eye(p**3))) < TOL


def test_round_trip_all_blocks(tw: Tower):
    rng = random.Random(4)
    for n in range(3):
        p = PRIMES.p(n)
        f = _random_function(rng, p)
        back = inverse_fourier(fourier(tw, n, f), n)
        assert float(np.max(np.abs(back - f))) < TOL


def test_fourier_accepts_mapping_input(tw: Tower):
    el = fourier(tw, 0, {(0, 0, 0): 1.0})
    arr = np.zeros(8, dtype=complex)
    arr[0] = 1.0
    assert el.equals(fourier(tw, 0, arr))
    with pytest.raises(ValueError, match="8 values"):
        fourier(tw, 0, np.zeros(7))


def test_trace_is_mean_of_function(tw: Tower):
    rng = random.Random(6)
    f = _random_function(rng, 3)
    el = fourier(tw, 1, f)
    assert abs(complex(el.trace()) - complex(np.mean(f))) < TOL


def test_plancherel(tw: Tower):
    rng = random.Random(9)
    for n in (0, 1):
        p = PRIMES.p(n)
        f = _random_function(rng, p)
        el = fourier(tw, n, f)
        norm_fun = np.sqrt(np.sum(np.abs(f) ** 2) / p**3)
        norm_coeff = np.sqrt(sum(abs(c) ** 2 for c in el.coeffs.values()))
        assert abs(norm_fun - norm_coeff) < TOL


def test_pointwise_product_becomes_convolution(tw: Tower):
    rng = random.Random(12)
    p, n = 3, 1
    f, g = _random_function(rng, p), _random_function(rng, p)
    lhs = fourier(tw, n, f * g)
    rhs = fourier(tw, n, f).mul(fourier(tw, n, g))
    for w in set(lhs.coeffs) | set(rhs.coeffs):
        assert abs(complex(lhs.coefficient(w)) - complex(rhs.coefficient(w))) < TOL


def test_intertwiner_exact_for_generators(tw: Tower):
    for n in range(3):
        for g in ELEMENTARY_GENERATORS:
            assert check_intertwiner(tw, g, n) <= TOL


def test_intertwiner_rejects_wrong_relabel(tw: Tower):
    # The relabel must use the inverse transpose; a plain transpose pairs
    # wrongly and the deviation is macroscopic, not rounding-sized.
    g = elementary(0, 1, 1)
    p = PRIMES.p(1)
    F = transform_matrix(p)
    lhs = F[:, action_permutation(p, g)]
    wrong = F[action_permutation(p, g.inverse()), :]  # relabel by g^-1 instead of g^T
    assert float(np.linalg.norm(lhs - wrong, axis=0).max()) > 1e-2


def test_action_permutation_is_permutation():
    for p in (2, 3):
        for g in ELEMENTARY_GENERATORS[:4]:
            perm = action_permutation(p, g)
            assert sorted(perm.tolist()) == list(range(p**3))


def test_projection_identities_exact(tw: Tower):
    for n in range(3):
        p = PRIMES.p(n)
        en = projection_en(tw, n)
        assert en.support_size == p**3
        assert all(c == Fraction(1, p**3) for c in en.coeffs.values())
        assert en.mul(en).equals(en)
        assert en.star().equals(en)
        assert en.trace() == Fraction(1, p**3)


def test_projection_matches_transform_of_indicator(tw: Tower):
    for n in range(2):
        p = PRIMES.p(n)
        indicator = np.zeros(p**3, dtype=complex)
        indicator[0] = 1.0
        alpha = fourier(tw, n, indicator)
        en = projection_en(tw, n)
        diff = alpha.sub(en)
        assert all(abs(complex(c)) < TOL for c in diff.coeffs.values())


def test_exact_convolution_matches_generic(tw: Tower):
    rng = random.Random(21)
    words = [tw.h(1, (rng.randrange(3), rng.randrange(3), rng.randrange(3))) for _ in range(6)]
    a = GroupAlgebraElement(tw, {w: Fraction(rng.randrange(-3, 4), 7) for w in words})
    b = GroupAlgebraElement(tw, {w: Fraction(rng.randrange(-3, 4), 5) for w in words})
    exact = a.mul(b)  # rational fast path
    floaty = GroupAlgebraElement(tw, {w: complex(c) for w, c in a.coeffs.items()}).mul(b)
    assert exact.is_exact()
    assert not floaty.is_exact()
    for w in set(exact.coeffs) | set(floaty.coeffs):
        assert abs(complex(exact.coefficient(w)) - complex(floaty.coefficient(w))) < TOL


def test_algebra_operations(tw: Tower):
    u = GroupAlgebraElement.basis(tw.h(0, (1, 0, 0)))
    v = GroupAlgebraElement.basis(tw.h(0, (0, 1, 0)), Fraction(1, 2))
    s = u.add(v)
    assert s.support_size == 2
    assert s.scale(2).coefficient(tw.h(0, (0, 1, 0))) == Fraction(1)
    assert s.sub(s).support_size == 0
    # convolution of basis vectors follows the group law
    prod = u.mul(u)
    assert prod.coefficient(tw.identity()) == Fraction(1)  # order-2 element squares to e
    # the adjoint inverts the word and conjugates the coefficient
    w = tw.stable(1)
    el = GroupAlgebraElement(tw, {w: 2 + 1j})
    assert el.star().coefficient(tw.inv(w)) == 2 - 1j


def test_mul_rejects_mismatched_towers(tw: Tower):
    other = Tower(PrimeSeq.parse("2,3"))
    a = GroupAlgebraElement.basis(tw.identity())
    b = GroupAlgebraElement.basis(other.identity())
    with pytest.raises(ValueError, match="tower"):
        a.mul(b)
