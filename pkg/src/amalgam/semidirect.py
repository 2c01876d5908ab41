"""Finitely supported mod-p coordinate vectors and the base semidirect product.

The abelian normal part is a restricted direct sum over block index n of
rank-3 vectors mod p_n; the matrix group acts on every block at once.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .matrices import IDENTITY_MATRIX, LambdaMatrix
from .primes import PrimeSeq

__all__ = ["HnVector", "KVector", "G0Element", "ZERO_K"]

Triple = tuple[int, int, int]


@dataclass(frozen=True)
class HnVector:
    """A single rank-3 block: coordinates mod `modulus` at block `index`."""

    index: int
    modulus: int
    coords: Triple

    def __post_init__(self) -> None:
        if self.index < 0:
            raise ValueError(f"block index must be >= 0, got {self.index}")
        if any(not (0 <= c < self.modulus) for c in self.coords):
            raise ValueError(f"coords {self.coords} not reduced mod {self.modulus}")

    @classmethod
    def make(cls, primes: PrimeSeq, index: int, coords: Iterable[int]) -> "HnVector":
        p = primes.p(index)
        c = tuple(int(x) % p for x in coords)
        if len(c) != 3:
            raise ValueError(f"need 3 coordinates, got {c}")
        return cls(index, p, c)

    @property
    def is_zero(self) -> bool:
        return self.coords == (0, 0, 0)


@dataclass(frozen=True)
class KVector:
    """Finitely supported element of the restricted direct sum of blocks.

    Stored as (index, coords) pairs sorted by index with zero blocks
    dropped, so equal vectors have equal representations.
    """

    items: tuple[tuple[int, Triple], ...]

    @classmethod
    def from_mapping(cls, primes: PrimeSeq, blocks: Mapping[int, Iterable[int]]) -> "KVector":
        items = []
        for n in sorted(blocks):
            p = primes.p(n)
            c = tuple(int(x) % p for x in blocks[n])
            if len(c) != 3:
                raise ValueError(f"block {n} needs 3 coordinates, got {c}")
            if c != (0, 0, 0):
                items.append((n, c))
        return cls(tuple(items))

    @classmethod
    def single(cls, primes: PrimeSeq, n: int, coords: Iterable[int]) -> "KVector":
        return cls.from_mapping(primes, {n: tuple(coords)})

    @property
    def is_zero(self) -> bool:
        return not self.items

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(n for n, _ in self.items)

    def min_index(self) -> int | None:
        return self.items[0][0] if self.items else None

    def block(self, n: int) -> Triple:
        for m, c in self.items:
            if m == n:
                return c
        return (0, 0, 0)

    def add(self, other: "KVector", primes: PrimeSeq) -> "KVector":
        a, b = self.items, other.items
        if not b:
            return self
        if not a:
            return other
        # merge the two sorted supports
        out: list[tuple[int, Triple]] = []
        i = j = 0
        while i < len(a) and j < len(b):
            na, ca = a[i]
            nb, cb = b[j]
            if na < nb:
                out.append(a[i])
                i += 1
            elif nb < na:
                out.append(b[j])
                j += 1
            else:
                p = primes.p(na)
                s = ((ca[0] + cb[0]) % p, (ca[1] + cb[1]) % p, (ca[2] + cb[2]) % p)
                if s != (0, 0, 0):
                    out.append((na, s))
                i += 1
                j += 1
        out.extend(a[i:])
        out.extend(b[j:])
        return KVector(tuple(out))

    def neg(self, primes: PrimeSeq) -> "KVector":
        out = []
        for n, c in self.items:
            p = primes.p(n)
            out.append((n, ((-c[0]) % p, (-c[1]) % p, (-c[2]) % p)))
        return KVector(tuple(out))

    def act(self, g: LambdaMatrix, primes: PrimeSeq) -> "KVector":
        """Blockwise matrix action: the same matrix applied to every block."""
        out = []
        for n, c in self.items:
            v = g.apply(c, primes.p(n))
            if v != (0, 0, 0):
                out.append((n, v))
        return KVector(tuple(out))

    def supported_at_or_above(self, cutoff: int) -> bool:
        return all(n >= cutoff for n, _ in self.items)


ZERO_K = KVector(())


@dataclass(frozen=True)
class G0Element:
    """Semidirect pair (vector part, matrix part) with law (k, g)(k', g') = (k + g k', g g')."""

    k: KVector
    lam: LambdaMatrix

    @classmethod
    def identity(cls) -> "G0Element":
        return cls(ZERO_K, IDENTITY_MATRIX)

    @property
    def is_identity(self) -> bool:
        return self.k.is_zero and self.lam.is_identity

    def mul(self, other: "G0Element", primes: PrimeSeq) -> "G0Element":
        if self.lam.is_identity:
            return G0Element(self.k.add(other.k, primes), other.lam)
        return G0Element(self.k.add(other.k.act(self.lam, primes), primes), self.lam * other.lam)

    def inv(self, primes: PrimeSeq) -> "G0Element":
        lam_inv = self.lam.inverse()
        return G0Element(self.k.neg(primes).act(lam_inv, primes), lam_inv)
