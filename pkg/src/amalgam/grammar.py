"""Text grammar for group elements.

    e                        identity
    h(n;a,b,c)               coordinate block at index n
    L[a,b,c;d,e,f;g,h,i]     determinant-one integer matrix
    t(N)                     stable letter at level N >= 1
    x * y                    product
    x^m                      integer power (so x^-1 is the inverse)

Whitespace is insignificant.  Syntax errors report the offset at which
parsing failed.
"""
from __future__ import annotations

from .words import GroupWord, Tower

__all__ = ["parse_element", "format_element", "ElementSyntaxError", "UnconfiguredPrimeError"]


class ElementSyntaxError(ValueError):
    """Malformed element text; `position` is the failing offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


class UnconfiguredPrimeError(ValueError):
    """A block index beyond the configured prime prefix."""


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, expected: str) -> None:
        self.skip_ws()
        if not self.text.startswith(expected, self.pos):
            raise ElementSyntaxError(f"expected {expected!r}", self.pos)
        self.pos += len(expected)

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            raise ElementSyntaxError("expected an integer", start)
        return int(self.text[start : self.pos])

    def int_list(self, count: int, sep: str) -> list[int]:
        out = [self.integer()]
        for _ in range(count - 1):
            self.take(sep)
            out.append(self.integer())
        return out

    @property
    def done(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)


def _atom(scanner: _Scanner, tower: Tower) -> GroupWord:
    ch = scanner.peek()
    if ch == "e":
        scanner.take("e")
        return tower.identity()
    if ch == "h":
        scanner.take("h")
        scanner.take("(")
        n = scanner.integer()
        scanner.take(";")
        coords = scanner.int_list(3, ",")
        scanner.take(")")
        try:
            return tower.h(n, coords)
        except IndexError as exc:
            raise UnconfiguredPrimeError(str(exc)) from None
    if ch == "L":
        scanner.take("L")
        scanner.take("[")
        rows = [scanner.int_list(3, ",")]
        scanner.take(";")
        rows.append(scanner.int_list(3, ","))
        scanner.take(";")
        rows.append(scanner.int_list(3, ","))
        scanner.take("]")
        try:
            return tower.lam(rows)
        except ValueError as exc:
            raise ElementSyntaxError(str(exc), scanner.pos)
    if ch == "t":
        scanner.take("t")
        scanner.take("(")
        level = scanner.integer()
        scanner.take(")")
        if level < 1:
            raise ElementSyntaxError(f"stable letters start at level 1, got {level}", scanner.pos)
        return tower.stable(level)
    raise ElementSyntaxError("expected an atom (e, h, L, or t)", scanner.pos)


def _term(scanner: _Scanner, tower: Tower) -> GroupWord:
    base = _atom(scanner, tower)
    if scanner.peek() == "^":
        scanner.take("^")
        return base ** scanner.integer()
    return base


def parse_element(tower: Tower, text: str) -> GroupWord:
    """Parse element text into a reduced word over `tower`."""
    scanner = _Scanner(text)
    word = _term(scanner, tower)
    while not scanner.done:
        scanner.take("*")
        word = tower.mul(word, _term(scanner, tower))
    return word


def format_element(word: GroupWord) -> str:
    """Render a word in the grammar; parse_element inverts this up to eq."""
    return word.format()
