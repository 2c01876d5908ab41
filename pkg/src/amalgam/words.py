"""Reduced words in the inductive tower of amalgamated products.

Level 0 is the semidirect product of the restricted coordinate sum with
the integer matrix group.  Level N+1 adjoins a stable letter t(N+1) that
commutes exactly with the coordinate blocks at index >= N, i.e. the two
factors are glued along that subgroup.  A word of level L >= 1 is an
alternating product

    x_0 * t(L)^{m_1} * x_1 * ... * t(L)^{m_r} * x_r

with every x_i of level < L, every m_i nonzero, and no x_i between two
stable powers lying in the glued subgroup.  Such words are never the
identity (r >= 1), which is what makes equality decidable by rewriting
a * b^{-1} to its reduced form.  No coset transversal is chosen, so two
reduced words may still denote the same element; `Tower.eq` is the
equality contract.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .matrices import (
    ELEMENTARY_GENERATORS,
    IDENTITY_MATRIX,
    LambdaMatrix,
    generator_ball,
)
from .primes import PrimeSeq
from .semidirect import G0Element, KVector, ZERO_K
from . import primes as _primes_mod

__all__ = ["GroupWord", "Tower"]

# token kinds for the rewriting engine
_BASE = 0
_STABLE = 1


@dataclass(frozen=True)
class GroupWord:
    """Immutable reduced word.  Build these through a Tower, never directly.

    Structural equality/hash compare the representation, not the group
    element; use Tower.eq for element equality.
    """

    tower: "Tower" = field(compare=False, repr=False)
    level: int
    g0: G0Element | None = None
    factors: tuple["GroupWord", ...] = ()
    exponents: tuple[int, ...] = ()

    @property
    def is_identity(self) -> bool:
        return self.level == 0 and self.g0.is_identity

    @property
    def syllable_count(self) -> int:
        """Number r of stable powers at the top level (0 for base elements)."""
        return len(self.exponents)

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return self.tower.mul(self, other)

    def inverse(self) -> "GroupWord":
        return self.tower.inv(self)

    def __pow__(self, n: int) -> "GroupWord":
        if n < 0:
            return self.inverse() ** (-n)
        out = self.tower.identity()
        for _ in range(n):
            out = self.tower.mul(out, self)
        return out

    def format(self) -> str:
        """Render in the element grammar (h/L/t atoms joined by '*')."""
        return _format_word(self)

    def __repr__(self) -> str:
        return f"<word {self.format()}>"

    def __hash__(self) -> int:
        # cached: words are hot dict keys in convolutions and orbit searches
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.level, self.g0, self.factors, self.exponents))
            object.__setattr__(self, "_hash", h)
        return h


_SUBGROUP_RE = re.compile(r"^(K|G)_?(\d+)$|^(K)$|^(Lambda|L)$")


class Tower:
    """The tower of groups over one configured prime sequence.

    All element construction and arithmetic flows through a tower so that
    coordinates are reduced mod the right primes.  Words from different
    towers must not be mixed unless the prime sequences agree.
    """

    def __init__(self, primes: PrimeSeq | Sequence[int] | None = None):
        if primes is None:
            primes = PrimeSeq.default()
        self.primes = _primes_mod.as_prime_seq(primes)
        self._identity = GroupWord(tower=self, level=0, g0=G0Element.identity())
        self._ball_cache: dict[int, tuple[GroupWord, ...]] = {}

    # ------------------------------------------------------------------
    # element constructors

    def identity(self) -> GroupWord:
        return self._identity

    def g0(self, element: G0Element) -> GroupWord:
        if element.is_identity:
            return self._identity
        return GroupWord(tower=self, level=0, g0=element)

    def h(self, n: int, coords: Iterable[int]) -> GroupWord:
        """Pure coordinate element supported on block n."""
        return self.g0(G0Element(KVector.single(self.primes, n, coords), IDENTITY_MATRIX))

    def k_vector(self, blocks: dict[int, Iterable[int]]) -> GroupWord:
        """Pure coordinate element with several blocks."""
        return self.g0(G0Element(KVector.from_mapping(self.primes, blocks), IDENTITY_MATRIX))

    def lam(self, matrix: LambdaMatrix | Sequence[Sequence[int]]) -> GroupWord:
        """Pure matrix element."""
        if not isinstance(matrix, LambdaMatrix):
            matrix = LambdaMatrix(tuple(tuple(int(e) for e in row) for row in matrix))
        return self.g0(G0Element(ZERO_K, matrix))

    def stable(self, level: int, power: int = 1) -> GroupWord:
        """The stable letter t(level) raised to `power`."""
        if level < 1:
            raise ValueError(f"stable letters start at level 1, got {level}")
        if power == 0:
            return self._identity
        e = self._identity
        return GroupWord(
            tower=self, level=level, factors=(e, e), exponents=(power,)
        )

    # ------------------------------------------------------------------
    # membership predicates (arguments must be reduced words, which every
    # tower operation returns)

    def in_gn(self, w: GroupWord, n: int) -> bool:
        return w.level <= n

    def in_k(self, w: GroupWord) -> bool:
        return w.level == 0 and w.g0.lam.is_identity

    def in_kn(self, w: GroupWord, n: int) -> bool:
        return self.in_k(w) and w.g0.k.supported_at_or_above(n)

    def in_lambda(self, w: GroupWord) -> bool:
        return w.level == 0 and w.g0.k.is_zero

    def membership(self, a: GroupWord, sub: str) -> bool:
        """Membership in a named subgroup: K, K<N>, Lambda, or G<N>."""
        m = _SUBGROUP_RE.match(sub.strip())
        if not m:
            raise ValueError(f"unknown subgroup {sub!r} (expected K, K<N>, Lambda, G<N>)")
        if m.group(4):
            return self.in_lambda(a)
        if m.group(3):
            return self.in_k(a)
        n = int(m.group(2))
        if m.group(1) == "K":
            return self.in_kn(a, n)
        return self.in_gn(a, n)

    # ------------------------------------------------------------------
    # the rewriting engine

    def _tokens(self, w: GroupWord, level: int) -> list[tuple[int, object]]:
        """Flatten `w` into base/stable tokens relative to `level`."""
        if w.level == level:
            out: list[tuple[int, object]] = []
            if not w.factors[0].is_identity:
                out.append((_BASE, w.factors[0]))
            for i, m in enumerate(w.exponents):
                out.append((_STABLE, m))
                x = w.factors[i + 1]
                if not x.is_identity:
                    out.append((_BASE, x))
            return out
        if w.is_identity:
            return []
        return [(_BASE, w)]

    def _push_base(self, out: list, w: GroupWord) -> None:
        if w.is_identity:
            return
        if out and out[-1][0] == _BASE:
            prev = out.pop()[1]
            self._push_base(out, self.mul(prev, w))
            return
        out.append((_BASE, w))

    def _push_stable(self, out: list, m: int, level: int) -> None:
        if m == 0:
            return
        if out and out[-1][0] == _STABLE:
            a = out.pop()[1]
            self._push_stable(out, a + m, level)
            return
        if (
            len(out) >= 2
            and out[-1][0] == _BASE
            and out[-2][0] == _STABLE
            and self.in_kn(out[-1][1], level - 1)
        ):
            # a glued-subgroup block between stable powers commutes out:
            # t^a z t^m -> z t^(a+m), then z merges leftwards.
            z = out.pop()[1]
            a = out.pop()[1]
            self._push_base(out, z)
            self._push_stable(out, a + m, level)
            return
        out.append((_STABLE, m))

    def _build(self, out: list, level: int) -> GroupWord:
        if (
            len(out) >= 2
            and out[0][0] == _BASE
            and out[1][0] == _STABLE
            and self.in_kn(out[0][1], level - 1)
        ):
            # leading glued-subgroup block commutes rightwards across the
            # first stable power and folds into the next factor
            rebuilt: list = []
            self._push_stable(rebuilt, out[1][1], level)
            self._push_base(rebuilt, out[0][1])
            for kind, val in out[2:]:
                if kind == _BASE:
                    self._push_base(rebuilt, val)
                else:
                    self._push_stable(rebuilt, val, level)
            out = rebuilt
        if not out:
            return self._identity
        if len(out) == 1 and out[0][0] == _BASE:
            return out[0][1]
        factors: list[GroupWord] = []
        exponents: list[int] = []
        expect_base = True
        for kind, val in out:
            if kind == _BASE:
                assert expect_base, "token list lost alternation"
                factors.append(val)
                expect_base = False
            else:
                if expect_base:
                    factors.append(self._identity)
                exponents.append(val)
                expect_base = True
        if expect_base:
            factors.append(self._identity)
        return GroupWord(
            tower=self,
            level=level,
            factors=tuple(factors),
            exponents=tuple(exponents),
        )

    def _check(self, w: GroupWord) -> None:
        if w.tower is not self and w.tower.primes != self.primes:
            raise ValueError("cannot mix words from towers with different primes")

    # ------------------------------------------------------------------
    # group operations

    def mul(self, a: GroupWord, b: GroupWord) -> GroupWord:
        self._check(a)
        self._check(b)
        if a.level == 0 and b.level == 0:
            return self.g0(a.g0.mul(b.g0, self.primes))
        level = max(a.level, b.level)
        out: list = []
        for tok in self._tokens(a, level):
            if tok[0] == _BASE:
                self._push_base(out, tok[1])
            else:
                self._push_stable(out, tok[1], level)
        for tok in self._tokens(b, level):
            if tok[0] == _BASE:
                self._push_base(out, tok[1])
            else:
                self._push_stable(out, tok[1], level)
        return self._build(out, level)

    def inv(self, a: GroupWord) -> GroupWord:
        self._check(a)
        if a.level == 0:
            return self.g0(a.g0.inv(self.primes))
        level = a.level
        out: list = []
        for kind, val in reversed(self._tokens(a, level)):
            if kind == _BASE:
                self._push_base(out, self.inv(val))
            else:
                self._push_stable(out, -val, level)
        return self._build(out, level)

    def conj(self, g: GroupWord, h: GroupWord) -> GroupWord:
        """The conjugate h * g * h^{-1}, reduced."""
        return self.mul(self.mul(h, g), self.inv(h))

    def eq(self, a: GroupWord, b: GroupWord) -> bool:
        """Element equality, decided by reducing a * b^{-1}."""
        if a is b or a == b:
            return True
        return self.mul(a, self.inv(b)).is_identity

    def reduce(self, word: GroupWord | Iterable[GroupWord]) -> GroupWord:
        """Reduce a raw word (a sequence of already-built syllables or a word)."""
        if isinstance(word, GroupWord):
            self._check(word)
            return word
        out = self._identity
        for part in word:
            out = self.mul(out, part)
        return out

    # ------------------------------------------------------------------
    # conjugacy growth

    def lambda_ball(self, radius: int) -> tuple[GroupWord, ...]:
        """Pure matrix elements that are products of <= radius generators."""
        if radius not in self._ball_cache:
            self._ball_cache[radius] = tuple(
                self.lam(m) for m in generator_ball(radius)
            )
        return self._ball_cache[radius]

    def lambda_image(self, w: GroupWord) -> LambdaMatrix:
        """Image under the quotient that kills coordinates and stable letters."""
        if w.level == 0:
            return w.g0.lam
        out = IDENTITY_MATRIX
        for x in w.factors:
            out = out * self.lambda_image(x)
        return out

    def _conjugate_key(self, w: GroupWord):
        # invariant of the element (not just the representation): level-0
        # words are canonical; higher words are pinned up to glued-subgroup
        # shifts, under which exponents and factorwise matrix images are stable
        if w.level == 0:
            return (0, w.g0)
        return (
            w.level,
            w.exponents,
            tuple(self.lambda_image(x).rows for x in w.factors),
        )

    def _register(self, buckets: dict, w: GroupWord) -> bool:
        """Add a conjugate to the distinct set; True if it was new."""
        bucket = buckets.setdefault(self._conjugate_key(w), [])
        for rep in bucket:
            if self.eq(w, rep):
                return False
        bucket.append(w)
        return True

    def alphabet(self, level_cap: int, block_cap: int = 3) -> tuple[GroupWord, ...]:
        """Finite generating letters used for word-metric balls.

        The twelve elementary matrices, the stable letters up to
        `level_cap` and their inverses, and the +-unit coordinate vectors
        of the first `block_cap` configured blocks.
        """
        letters: dict[GroupWord, None] = {}
        for m in ELEMENTARY_GENERATORS:
            letters[self.lam(m)] = None
        for lvl in range(1, level_cap + 1):
            letters[self.stable(lvl, 1)] = None
            letters[self.stable(lvl, -1)] = None
        for n in range(min(len(self.primes), block_cap)):
            for i in range(3):
                for s in (1, -1):
                    coords = [0, 0, 0]
                    coords[i] = s
                    letters[self.h(n, coords)] = None
        return tuple(letters)

    def conjugate_growth_profile(self, g: GroupWord, radius: int) -> tuple[int, ...]:
        """Distinct conjugate counts at radii 0..radius.

        Conjugators run over matrix-generator balls when g is outside the
        coordinate subgroup, and over word-metric balls one level above g
        otherwise (where matrix conjugation alone would be too coarse a
        reading of the ambient group).
        """
        if g.is_identity:
            raise ValueError("conjugate growth of the identity is not defined")
        if radius < 0:
            raise ValueError(f"radius must be >= 0, got {radius}")
        if self.in_k(g):
            letters = self.alphabet(level_cap=g.level + 1)
        else:
            letters = [self.lam(m) for m in ELEMENTARY_GENERATORS]
        buckets: dict = {}
        self._register(buckets, g)
        counts = [1]
        frontier = [g]
        for _ in range(radius):
            nxt: list[GroupWord] = []
            for c in frontier:
                for ltr in letters:
                    cand = self.conj(c, ltr)
                    if self._register(buckets, cand):
                        nxt.append(cand)
            counts.append(counts[-1] + len(nxt))
            frontier = nxt
        return tuple(counts)

    def conjugate_growth(self, g: GroupWord, radius: int) -> int:
        """Number of distinct conjugates of g over the radius-`radius` ball."""
        return self.conjugate_growth_profile(g, radius)[-1]


def _format_g0(e: G0Element) -> str:
    parts = [
        f"h({n};{c[0]},{c[1]},{c[2]})" for n, c in e.k.items
    ]
    if not e.lam.is_identity:
        r = e.lam.rows
        parts.append(
            "L[%d,%d,%d;%d,%d,%d;%d,%d,%d]"
            % (r[0][0], r[0][1], r[0][2], r[1][0], r[1][1], r[1][2], r[2][0], r[2][1], r[2][2])
        )
    if not parts:
        return "e"
    return " * ".join(parts)


def _format_word(w: GroupWord) -> str:
    if w.level == 0:
        return _format_g0(w.g0)
    parts = []
    if not w.factors[0].is_identity:
        parts.append(_format_word(w.factors[0]))
    for i, m in enumerate(w.exponents):
        parts.append(f"t({w.level})" if m == 1 else f"t({w.level})^{m}")
        x = w.factors[i + 1]
        if not x.is_identity:
            parts.append(_format_word(x))
    return " * ".join(parts)
