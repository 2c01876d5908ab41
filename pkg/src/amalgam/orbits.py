"""Diagonal matrix action on finite products of rank-3 blocks.

The twelve elementary generators act simultaneously on every chosen
block (each reduced mod its own prime).  This module computes the orbit
partition of the product space by breadth-first closure and, separately,
the dimension of the space of invariant functions by exact rational
elimination, so the two can be compared.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .matrices import ELEMENTARY_GENERATORS, LambdaMatrix
from .primes import PrimeSeq
from .semidirect import HnVector

__all__ = [
    "OrbitPartition",
    "SizeGuardExceeded",
    "act_mod_p",
    "diagonal_orbits",
    "zero_pattern_partition",
    "partitions_agree",
    "fixed_point_dimension",
]

Triple = tuple[int, int, int]
Point = tuple[int, ...]  # encoded block indices, one per position

DEFAULT_SIZE_GUARD = 10_000_000


class SizeGuardExceeded(ValueError):
    """The requested product space is larger than the configured guard."""


def act_mod_p(g: LambdaMatrix, x: HnVector) -> HnVector:
    """Apply the matrix to one block, mod that block's prime."""
    return HnVector(x.index, x.modulus, g.apply(x.coords, x.modulus))


def _check_size(primes_used: Sequence[int], size_guard: int) -> int:
    total = 1
    for p in primes_used:
        total *= p**3
    if total > size_guard:
        raise SizeGuardExceeded(
            f"product space has {total} points, above the guard of {size_guard}"
        )
    return total


def _block_triples(p: int) -> list[Triple]:
    return list(itertools.product(range(p), repeat=3))


@dataclass(eq=False)
class OrbitPartition:
    """Deterministic orbit partition of a product of blocks.

    Blocks are numbered in order of their lexicographically least point,
    and `representatives[i]` is that least point.  `labels` maps every
    point (a tuple of coordinate triples) to its block number.
    """

    indices: tuple[int, ...]
    primes_used: tuple[int, ...]
    block_sizes: tuple[int, ...]
    representatives: tuple[tuple[Triple, ...], ...]
    labels: dict = field(repr=False)

    @property
    def block_count(self) -> int:
        return len(self.block_sizes)

    def block_of(self, point: tuple[Triple, ...]) -> int:
        return self.labels[point]


def diagonal_orbits(
    primes: PrimeSeq,
    indices: Sequence[int],
    size_guard: int = DEFAULT_SIZE_GUARD,
) -> OrbitPartition:
    """Orbit partition of the product of the given blocks under the
    diagonal action of the elementary generators (BFS closure)."""
    indices = tuple(indices)
    ps = tuple(primes.p(n) for n in indices)
    _check_size(ps, size_guard)

    # precompute, per position and generator, the permutation of that
    # block's p^3 triples; product points are then tuples of small ints
    triples = [_block_triples(p) for p in ps]
    enc = [{t: i for i, t in enumerate(ts)} for ts in triples]
    perms: list[list[list[int]]] = []  # perms[gi][pos][code] -> code
    for g in ELEMENTARY_GENERATORS:
        per_pos = []
        for pos, p in enumerate(ps):
            per_pos.append([enc[pos][g.apply(t, p)] for t in triples[pos]])
        perms.append(per_pos)

    npos = len(ps)
    labels: dict[Point, int] = {}
    sizes: list[int] = []
    reps: list[Point] = []
    for start in itertools.product(*[range(len(ts)) for ts in triples]):
        if start in labels:
            continue
        bid = len(sizes)
        reps.append(start)
        labels[start] = bid
        queue = deque([start])
        size = 0
        while queue:
            x = queue.popleft()
            size += 1
            for per_pos in perms:
                y = tuple(per_pos[pos][x[pos]] for pos in range(npos))
                if y not in labels:
                    labels[y] = bid
                    queue.append(y)
        sizes.append(size)

    decode = lambda pt: tuple(triples[pos][code] for pos, code in enumerate(pt))
    return OrbitPartition(
        indices=indices,
        primes_used=ps,
        block_sizes=tuple(sizes),
        representatives=tuple(decode(r) for r in reps),
        labels={decode(pt): bid for pt, bid in labels.items()},
    )


def zero_pattern_partition(
    primes: PrimeSeq,
    indices: Sequence[int],
    size_guard: int = DEFAULT_SIZE_GUARD,
) -> OrbitPartition:
    """The partition of the product space by which positions are zero.

    Every part is a product over positions of either {0} or the nonzero
    triples of that block.  This is the candidate answer the BFS orbit
    partition is compared against.
    """
    indices = tuple(indices)
    ps = tuple(primes.p(n) for n in indices)
    _check_size(ps, size_guard)
    triples = [_block_triples(p) for p in ps]

    labels: dict[tuple[Triple, ...], int] = {}
    pattern_to_bid: dict[tuple[bool, ...], int] = {}
    sizes: list[int] = []
    reps: list[tuple[Triple, ...]] = []
    for point in itertools.product(*triples):
        pattern = tuple(t == (0, 0, 0) for t in point)
        bid = pattern_to_bid.get(pattern)
        if bid is None:
            bid = len(sizes)
            pattern_to_bid[pattern] = bid
            sizes.append(0)
            reps.append(point)
        labels[point] = bid
        sizes[bid] += 1
    return OrbitPartition(
        indices=indices,
        primes_used=ps,
        block_sizes=tuple(sizes),
        representatives=tuple(reps),
        labels=labels,
    )


def partitions_agree(a: OrbitPartition, b: OrbitPartition) -> bool:
    """Whether two partitions of the same point set have identical parts."""
    if set(a.labels) != set(b.labels):
        return False
    fwd: dict[int, int] = {}
    bwd: dict[int, int] = {}
    for point, la in a.labels.items():
        lb = b.labels[point]
        if fwd.setdefault(la, lb) != lb or bwd.setdefault(lb, la) != la:
            return False
    return True


def fixed_point_dimension(
    primes: PrimeSeq,
    indices: Sequence[int],
    size_guard: int = DEFAULT_SIZE_GUARD,
) -> int:
    """Dimension of the space of functions invariant under every generator.

    Solves the linear system F(x) = F(g x), over all generators g and
    points x, by exact elimination; the answer is the number of points
    minus the rank.  Independent of the BFS orbit computation.

    Each constraint row F(x) - F(g x) has two entries, +1 and -1, and
    eliminating such a row by another one leaves again at most two such
    entries.  A pivot row normalized to leading +1 is therefore fully
    described by its off-pivot column, and keeping every pivot row
    reduced against the others turns each row reduction into a pair of
    column walks.
    """
    indices = tuple(indices)
    ps = tuple(primes.p(n) for n in indices)
    npoints = _check_size(ps, size_guard)
    triples = [_block_triples(p) for p in ps]
    enc = [{t: i for i, t in enumerate(ts)} for ts in triples]

    weights = []
    w = 1
    for ts in reversed(triples):
        weights.append(w)
        w *= len(ts)
    weights.reverse()

    # pivot_off[c] = c' means the pivot row at column c is F(c) - F(c')
    pivot_off: dict[int, int] = {}

    def reduce_column(c: int) -> int:
        # follow pivot substitutions until an unpivoted column remains,
        # then rewrite the visited pivot rows against that column
        chain = []
        while c in pivot_off:
            chain.append(c)
            c = pivot_off[c]
        for seen in chain:
            pivot_off[seen] = c
        return c

    rank = 0
    npos = len(ps)
    for g in ELEMENTARY_GENERATORS:
        per_pos = [[enc[pos][g.apply(t, ps[pos])] for t in triples[pos]] for pos in range(npos)]
        for pt in itertools.product(*[range(len(ts)) for ts in triples]):
            image = tuple(per_pos[pos][pt[pos]] for pos in range(npos))
            i = sum(code * weights[pos] for pos, code in enumerate(pt))
            j = sum(code * weights[pos] for pos, code in enumerate(image))
            if i == j:
                continue
            a, b = reduce_column(i), reduce_column(j)
            if a == b:
                continue  # row reduced to zero: dependent constraint
            pivot_off[min(a, b)] = max(a, b)
            rank += 1
    return npoints - rank
