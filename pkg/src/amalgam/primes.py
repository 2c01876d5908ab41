"""Configured sequences of distinct primes indexing the mod-p coordinate blocks."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

__all__ = ["PrimeSeq", "is_prime", "next_prime"]


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test (small inputs only)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def next_prime(n: int) -> int:
    """Smallest prime strictly greater than n."""
    k = n + 1
    while not is_prime(k):
        k += 1
    return k


@dataclass(frozen=True)
class PrimeSeq:
    """An explicit finite prefix p_0, p_1, ... of distinct primes.

    Index n hosts a rank-3 coordinate block mod p_n.  Operations that
    would need an index beyond the configured prefix raise IndexError;
    use extended() to lengthen the prefix on demand.
    """

    primes: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.primes:
            raise ValueError("prime sequence must be nonempty")
        for p in self.primes:
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
        if len(set(self.primes)) != len(self.primes):
            raise ValueError(f"primes must be distinct, got {self.primes}")

    @classmethod
    def first(cls, count: int) -> "PrimeSeq":
        """The increasing sequence of the first `count` primes."""
        out: list[int] = []
        p = 1
        for _ in range(count):
            p = next_prime(p)
            out.append(p)
        return cls(tuple(out))

    @classmethod
    def default(cls) -> "PrimeSeq":
        return cls.first(16)

    @classmethod
    def parse(cls, text: str) -> "PrimeSeq":
        """Parse a comma-separated list such as '2,3,5'."""
        try:
            values = tuple(int(part) for part in text.split(",") if part.strip())
        except ValueError as exc:
            raise ValueError(f"bad prime list {text!r}: {exc}") from None
        return cls(values)

    def p(self, n: int) -> int:
        """The prime at index n."""
        if n < 0:
            raise IndexError(f"prime index {n} is negative")
        if n >= len(self.primes):
            raise IndexError(
                f"prime index {n} not configured (only {len(self.primes)} primes)"
            )
        return self.primes[n]

    def cube(self, n: int) -> int:
        """Size p_n**3 of the rank-3 block at index n."""
        return self.p(n) ** 3

    def extended(self, count: int) -> "PrimeSeq":
        """A longer sequence: `count` further primes above the current maximum."""
        out = list(self.primes)
        p = max(out)
        for _ in range(count):
            p = next_prime(p)
            out.append(p)
        return PrimeSeq(tuple(out))

    def __len__(self) -> int:
        return len(self.primes)

    def __iter__(self) -> Iterator[int]:
        return iter(self.primes)


def as_prime_seq(primes: "PrimeSeq | Sequence[int]") -> PrimeSeq:
    """Coerce a raw sequence of ints into a PrimeSeq."""
    if isinstance(primes, PrimeSeq):
        return primes
    return PrimeSeq(tuple(primes))
