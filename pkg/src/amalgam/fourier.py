"""Fourier duality on one coordinate block and the convolution algebra.

Functions on a block (with pointwise product) correspond to finitely
supported combinations of group basis elements u_x (with convolution
product) through the characters chi_x(y) = exp(2 pi i <x,y> / p).  The
forward direction sends a function to its coefficient family

    c(x) = p^{-3} sum_y f(y) conj(chi_x(y)),

which is trace preserving (the coefficient at 0 is the mean of f) and
turns pointwise products into convolutions.  The matrix action on the
block intertwines the two sides up to an inverse transpose, which
`check_intertwiner` measures numerically.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from numbers import Rational
from typing import Mapping, Sequence

import numpy as np

from .matrices import LambdaMatrix
from .words import GroupWord, Tower

__all__ = [
    "GroupAlgebraElement",
    "block_points",
    "transform_matrix",
    "fourier",
    "inverse_fourier",
    "action_permutation",
    "coefficient_relabel_permutation",
    "check_intertwiner",
    "projection_en",
]

Triple = tuple[int, int, int]


def block_points(p: int) -> list[Triple]:
    """The p^3 coordinate triples of a block, in lexicographic order."""
    return list(itertools.product(range(p), repeat=3))


def _point_array(p: int) -> np.ndarray:
    return np.array(block_points(p), dtype=np.int64)


def transform_matrix(p: int) -> np.ndarray:
    """Matrix of the function-to-coefficients map in the lex point basis."""
    pts = _point_array(p)
    pairing = (pts @ pts.T) % p
    return np.exp(-2j * np.pi * pairing / p) / p**3


def action_permutation(p: int, g: LambdaMatrix) -> np.ndarray:
    """Index permutation sending each point x to g x mod p."""
    pts = _point_array(p)
    rows = np.array(g.rows, dtype=np.int64)
    image = (pts @ rows.T) % p
    return image[:, 0] * p * p + image[:, 1] * p + image[:, 2]


def coefficient_relabel_permutation(p: int, g: LambdaMatrix) -> np.ndarray:
    """Permutation matrix action u_x -> u_{g x} expressed on coefficient vectors."""
    return action_permutation(p, g)


def _as_values(p: int, f) -> np.ndarray:
    if isinstance(f, Mapping):
        return np.array([complex(f.get(pt, 0)) for pt in block_points(p)])
    arr = np.asarray(f, dtype=complex).reshape(-1)
    if arr.shape != (p**3,):
        raise ValueError(f"need {p**3} values for a block mod {p}, got {arr.shape}")
    return arr


@dataclass
class GroupAlgebraElement:
    """Finitely supported combination of group basis elements u_w.

    Coefficients may be exact rationals or complex floats; convolution,
    adjoint, and trace follow the group algebra rules.  Keys must be
    reduced words of one tower.
    """

    tower: Tower = field(repr=False)
    coeffs: dict[GroupWord, object]

    def __post_init__(self) -> None:
        self.coeffs = {w: c for w, c in self.coeffs.items() if c != 0}

    @classmethod
    def basis(cls, word: GroupWord, coeff=Fraction(1)) -> "GroupAlgebraElement":
        return cls(word.tower, {word: coeff})

    def coefficient(self, word: GroupWord):
        return self.coeffs.get(word, 0)

    @property
    def support_size(self) -> int:
        return len(self.coeffs)

    def trace(self):
        """Coefficient at the identity."""
        return self.coeffs.get(self.tower.identity(), 0)

    def mul(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        """Convolution: (u_a)(u_b) = u_{ab}."""
        if self.is_exact() and other.is_exact():
            return self._mul_exact(other)
        tw = self.tower
        tmul = tw.mul
        out: dict[GroupWord, object] = {}
        for wa, ca in self.coeffs.items():
            for wb, cb in other.coeffs.items():
                key = tmul(wa, wb)
                prev = out.get(key)
                out[key] = ca * cb if prev is None else prev + ca * cb
        return GroupAlgebraElement(tw, out)

    def _mul_exact(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        """Rational convolution over a common denominator (integer inner loop)."""
        tmul = self.tower.mul
        da = lcm(*(Fraction(c).denominator for c in self.coeffs.values())) if self.coeffs else 1
        db = lcm(*(Fraction(c).denominator for c in other.coeffs.values())) if other.coeffs else 1
        left = [(w, int(c * da)) for w, c in self.coeffs.items()]
        right = [(w, int(c * db)) for w, c in other.coeffs.items()]
        acc: dict[GroupWord, int] = {}
        get = acc.get
        for wa, na in left:
            for wb, nb in right:
                key = tmul(wa, wb)
                acc[key] = get(key, 0) + na * nb
        denom = da * db
        return GroupAlgebraElement(self.tower, {w: Fraction(n, denom) for w, n in acc.items()})

    def star(self) -> "GroupAlgebraElement":
        """Adjoint: conjugate coefficients on inverted basis words."""
        tw = self.tower
        out = {}
        for w, c in self.coeffs.items():
            out[tw.inv(w)] = c.conjugate() if isinstance(c, complex) else c
        return GroupAlgebraElement(tw, out)

    def add(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            prev = out.get(w)
            out[w] = c if prev is None else prev + c
        return GroupAlgebraElement(self.tower, out)

    def scale(self, factor) -> "GroupAlgebraElement":
        return GroupAlgebraElement(self.tower, {w: factor * c for w, c in self.coeffs.items()})

    def sub(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        return self.add(other.scale(-1))

    def is_exact(self) -> bool:
        return all(isinstance(c, Rational) for c in self.coeffs.values())

    def equals(self, other: "GroupAlgebraElement") -> bool:
        """Coefficientwise equality (keys supported in the base lattice are canonical)."""
        return self.coeffs == other.coeffs


def fourier(tower: Tower, n: int, f) -> GroupAlgebraElement:
    """Function on block n -> coefficients on the group basis of that block.

    `f` is a mapping triple -> value or an array over the lex point order.
    """
    p = tower.primes.p(n)
    values = _as_values(p, f)
    coeff = transform_matrix(p) @ values
    pts = block_points(p)
    out: dict[GroupWord, object] = {}
    for i, x in enumerate(pts):
        c = complex(coeff[i])
        if c != 0:
            out[tower.h(n, x)] = c
    return GroupAlgebraElement(tower, out)


def inverse_fourier(element: GroupAlgebraElement, n: int) -> np.ndarray:
    """Coefficients back to the function sum_x c(x) chi_x, over lex points."""
    tower = element.tower
    p = tower.primes.p(n)
    pts = block_points(p)
    coeff = np.zeros(p**3, dtype=complex)
    for i, x in enumerate(pts):
        c = element.coefficient(tower.h(n, x))
        if c:
            coeff[i] = complex(c)
    pts_arr = _point_array(p)
    pairing = (pts_arr @ pts_arr.T) % p
    characters = np.exp(2j * np.pi * pairing / p)
    return characters.T @ coeff


def check_intertwiner(tower: Tower, g: LambdaMatrix, n: int) -> float:
    """Worst basis-function defect between transform-then-act and act-then-relabel.

    Acting on functions by x -> g^{-1} x and then transforming must agree
    with transforming first and relabelling u_x -> u_{h x} for h the
    inverse transpose of g.  Returns the largest 2-norm defect over the
    delta-function basis; exactness of the identity shows up as a value
    at rounding level.
    """
    p = tower.primes.p(n)
    F = transform_matrix(p)
    # columns of LHS: transform of the delta at g y, i.e. F with columns
    # pulled back along y -> g y
    col_perm = action_permutation(p, g)
    lhs = F[:, col_perm]
    # rows of RHS: relabel u_x -> u_{h x} with h = inverse transpose of g;
    # row j of the result is row at h^{-1} point_j = g^T point_j
    row_perm = action_permutation(p, g.transpose())
    rhs = F[row_perm, :]
    return float(np.linalg.norm(lhs - rhs, axis=0).max())


def projection_en(tower: Tower, n: int) -> GroupAlgebraElement:
    """The averaging idempotent of block n: p^{-3} sum over the block basis."""
    p = tower.primes.p(n)
    w = Fraction(1, p**3)
    return GroupAlgebraElement(
        tower, {tower.h(n, x): w for x in block_points(p)}
    )
