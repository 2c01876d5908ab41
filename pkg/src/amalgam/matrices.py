"""Integer 3x3 determinant-one matrices and their elementary-generator balls."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

__all__ = [
    "LambdaMatrix",
    "IDENTITY_MATRIX",
    "ELEMENTARY_GENERATORS",
    "elementary",
    "generator_ball",
]

Rows = tuple[tuple[int, int, int], tuple[int, int, int], tuple[int, int, int]]

_ID_ROWS: Rows = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def _det3(r: Rows) -> int:
    return (
        r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
        - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
        + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
    )


@dataclass(frozen=True)
class LambdaMatrix:
    """An element of the integer special linear group in rank 3.

    Entries are arbitrary-precision ints; the determinant must be +1,
    so the inverse is the integer adjugate.
    """

    rows: Rows

    def __post_init__(self) -> None:
        if len(self.rows) != 3 or any(len(r) != 3 for r in self.rows):
            raise ValueError(f"need a 3x3 matrix, got {self.rows!r}")
        d = _det3(self.rows)
        if d != 1:
            raise ValueError(f"matrix determinant must be 1, got {d}")

    @property
    def is_identity(self) -> bool:
        return self.rows == _ID_ROWS

    def __mul__(self, other: "LambdaMatrix") -> "LambdaMatrix":
        a, b = self.rows, other.rows
        return LambdaMatrix(
            tuple(
                tuple(sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3))
                for i in range(3)
            )
        )

    def inverse(self) -> "LambdaMatrix":
        """Integer inverse via the adjugate (valid because det == 1)."""
        r = self.rows
        cof = [
            [
                r[(i + 1) % 3][(j + 1) % 3] * r[(i + 2) % 3][(j + 2) % 3]
                - r[(i + 1) % 3][(j + 2) % 3] * r[(i + 2) % 3][(j + 1) % 3]
                for j in range(3)
            ]
            for i in range(3)
        ]
        # adjugate = transpose of cofactor matrix
        return LambdaMatrix(tuple(tuple(cof[j][i] for j in range(3)) for i in range(3)))

    def transpose(self) -> "LambdaMatrix":
        return LambdaMatrix(tuple(tuple(self.rows[j][i] for j in range(3)) for i in range(3)))

    def apply(self, v: tuple[int, int, int], modulus: int) -> tuple[int, int, int]:
        """Matrix-vector product with coordinates reduced mod `modulus`."""
        r = self.rows
        return tuple(
            (r[i][0] * v[0] + r[i][1] * v[1] + r[i][2] * v[2]) % modulus
            for i in range(3)
        )

    def mod(self, modulus: int) -> Rows:
        return tuple(tuple(e % modulus for e in row) for row in self.rows)

    def __repr__(self) -> str:
        return f"LambdaMatrix({self.rows})"


IDENTITY_MATRIX = LambdaMatrix(_ID_ROWS)


def elementary(i: int, j: int, amount: int) -> LambdaMatrix:
    """Identity plus `amount` in off-diagonal slot (i, j)."""
    if i == j or not (0 <= i < 3 and 0 <= j < 3):
        raise ValueError(f"elementary slot must be off-diagonal, got ({i}, {j})")
    rows = [[1 if a == b else 0 for b in range(3)] for a in range(3)]
    rows[i][j] = amount
    return LambdaMatrix(tuple(tuple(r) for r in rows))


# The twelve one-step generators: both signs in each off-diagonal slot,
# in a fixed order so reports and balls are reproducible.
ELEMENTARY_GENERATORS: tuple[LambdaMatrix, ...] = tuple(
    elementary(i, j, s) for i in range(3) for j in range(3) if i != j for s in (1, -1)
)


@lru_cache(maxsize=None)
def generator_ball(radius: int) -> tuple[LambdaMatrix, ...]:
    """All products of at most `radius` elementary generators, in BFS order."""
    if radius < 0:
        raise ValueError(f"radius must be >= 0, got {radius}")
    seen: dict[LambdaMatrix, None] = {IDENTITY_MATRIX: None}
    frontier = [IDENTITY_MATRIX]
    for _ in range(radius):
        nxt: list[LambdaMatrix] = []
        for m in frontier:
            for g in ELEMENTARY_GENERATORS:
                prod = m * g
                if prod not in seen:
                    seen[prod] = None
                    nxt.append(prod)
        frontier = nxt
    return tuple(seen)
