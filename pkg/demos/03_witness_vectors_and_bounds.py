"""
Witness vectors, invariance, and the deviation budget
=====================================================

Block-uniform unit vectors are fixed by conjugation from low levels of
the tower and first moved by the stable letter two levels up.  This
script locates that boundary, verifies the orthogonality inequality
behind it, and evaluates the exact tail-mass budget that controls
almost-invariant vectors.
"""
from __future__ import annotations

import math
from fractions import Fraction

from amalgam import (
    PrimeSeq,
    Sampler,
    Tower,
    atom_points,
    block_stabilized,
    delta,
    deviation_bound_check,
    epsilon_defect,
    orthogonality_inequality_check,
    search_invariance_violation,
    tail_trace,
    xi,
    xi_overlap_squared,
)

primes = PrimeSeq.parse("2,3,5,7,11")
tower = Tower(primes)

# ---------------------------------------------------------------------
# The block-uniform state xi(n) spreads mass p^{-3/2} over the p^3
# words of block n; its squared overlap with the identity is exactly
# p^{-3}.
for n in range(3):
    v = xi(tower, n)
    print(
        f"xi({n}): support {v.support_size}, norm^2 = {v.norm_squared():.6f},"
        f" overlap^2 = {xi_overlap_squared(tower, n)}"
    )

# Every letter at level N fixes xi(n) for n > N — and products of
# fixing letters fix too, so single letters decide all word lengths:
for cutoff, n in ((0, 1), (1, 2), (2, 3)):
    moved = [g for g in tower.alphabet(cutoff) if not block_stabilized(tower, n, g)]
    print(f"letters at level {cutoff} moving block {n}: {len(moved)}")

# The first mover of block n appears exactly at level n + 2:
for cutoff in (1, 2, 3):
    for n in (0, 1):
        if n > cutoff:
            continue
        g = search_invariance_violation(tower, cutoff, n, max_length=2)
        found = g.format() if g is not None else "none at radius 2"
        print(f"violating conjugator at level {cutoff} for block {n}: {found}")

# ---------------------------------------------------------------------
# Orthogonality: conjugating by the next stable letter moves the part of
# a lattice vector below the cutoff to fresh basis words, so
# ||g y g^-1 - y||^2 = 2 ||y - E(y)||^2 exactly.
y = delta(tower, tower.h(0, (1, 0, 0))).scale(Fraction(3, 5)).add(
    delta(tower, tower.h(2, (1, 1, 0))).scale(Fraction(4, 5))
)
report = orthogonality_inequality_check(y, 1)
print(
    "orthogonality: lhs^2 =", report.lhs_squared, " rhs^2 =", report.rhs_squared,
    " disjoint supports:", report.disjoint_supports,
)

# ---------------------------------------------------------------------
# The tail budget.  The product of (1 - p^-3) over a window is the trace
# of the all-zeros atom; its defect epsilon feeds the deviation bound
# lhs^2 <= 16 epsilon for functions bounded by 1.
trace = tail_trace(primes, 0, 2)
eps = epsilon_defect(primes, 0, 2)
print("window trace  :", trace, f"= {float(trace):.6f}")
print("defect epsilon:", eps, f"-> 4 sqrt(eps) = {4 * math.sqrt(eps):.4f}")

# The extreme points of the unit ball are sign patterns on the atoms;
# the worst one realizes 4 mu (1 - mu) and still sits under the budget:
worst = Fraction(0)
for mask in range(2**8):
    values = {
        bits: Fraction(1 if (mask >> i) & 1 == 0 else -1)
        for i, bits in enumerate(atom_points(3))
    }
    worst = max(worst, deviation_bound_check(primes, 0, 2, values).lhs_squared)
print("worst extreme lhs^2:", worst, " budget 16 eps:", 16 * eps)

# A seeded random sweep over the solid ball stays under budget as well:
sampler = Sampler(tower, seed=1)
results = [
    deviation_bound_check(primes, 0, 2, sampler.unit_ball_values(8)).passed
    for _ in range(200)
]
print("random unit-ball sweeps passing:", sum(results), "/", len(results))

print("done.")
