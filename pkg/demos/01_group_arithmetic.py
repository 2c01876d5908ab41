"""
Group arithmetic in the iterated tower
======================================

Build elements of the base group (lattice vectors twisted by integer
matrices), climb the tower by adjoining stable letters, and watch words
reduce, commute, and demote.  Everything here is exact integer
arithmetic; run the script top to bottom.
"""
from __future__ import annotations

from amalgam import PrimeSeq, Tower, format_element, parse_element

tower = Tower(PrimeSeq.parse("2,3,5"))

# ---------------------------------------------------------------------
# The base group: coordinate blocks and matrices.
#
# h(n; a,b,c) is a vector in the rank-3 block at index n, with entries
# mod the n-th configured prime.  L[...] is an integer matrix of
# determinant one acting on every block at once.
k0 = tower.h(0, (1, 0, 0))
k1 = tower.h(1, (1, 2, 0))
lam = tower.lam(((1, 1, 0), (0, 1, 0), (0, 0, 1)))

print("a block-0 vector:     ", k0.format())
print("a block-1 vector:     ", k1.format())
print("a shear matrix:       ", lam.format())

# The twisted product folds the matrix action into the vector part:
prod = tower.mul(lam, k0)
print("lam * k0 reduces to:  ", prod.format())
print("its inverse:          ", tower.inv(prod).format())
assert tower.mul(prod, tower.inv(prod)).is_identity

# Conjugating a vector by a matrix moves it inside its own block:
print("lam k1 lam^-1 =       ", tower.conj(k1, lam).format())

# ---------------------------------------------------------------------
# Stable letters.  t(m) is a fresh letter at level m that commutes with
# every block at index >= m - 1; t(1) therefore commutes with the whole
# lattice, and higher letters commute with smaller and smaller tails.
t1, t2 = tower.stable(1), tower.stable(2)

conj_by_t1 = tower.conj(k0, t1)
print("t(1) k0 t(1)^-1 =     ", conj_by_t1.format(), " (demoted to the base)")
assert tower.eq(conj_by_t1, k0)

conj_by_t2 = tower.conj(k0, t2)
print("t(2) k0 t(2)^-1 =     ", conj_by_t2.format(), " (a genuine level-2 word)")
assert conj_by_t2.level == 2
assert not tower.in_k(conj_by_t2)

# Block 1 is above the cutoff of t(2), so it is fixed exactly:
assert tower.eq(tower.conj(k1, t2), k1)

# ---------------------------------------------------------------------
# Reduction is confluent across levels: a word spelled with redundant
# syllables collapses to its lowest level.
w = tower.reduce([t1, k1, tower.inv(t1), k0])
print("t(1) k1 t(1)^-1 k0 =  ", w.format(), " (level", w.level, ")")
assert w.level == 0

# Membership in the named subgroups of the tower:
for sub in ("K", "K1", "Lambda", "G0", "G1"):
    print(f"  {prod.format()} in {sub:7s}?", tower.membership(prod, sub))

# ---------------------------------------------------------------------
# The same elements as text: parse and format are inverse to each other.
text = "t(2) * h(0;1,0,0) * t(2)^-1"
parsed = parse_element(tower, text)
print("parsed:", text, "->", format_element(parsed))
assert tower.eq(parsed, conj_by_t2)

print("done.")
