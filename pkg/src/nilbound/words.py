"""Reduced words in a free group of finite rank.

Words are stored run-length encoded as ``((generator, exponent), ...)`` so that
large powers such as ``a^1000`` cost a single entry.  The commutator convention
used everywhere in the package is ``[x, y] = x y x^-1 y^-1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

ALPHABET = "abcdefghijklmnopqrstuvwxyz"

_TOKEN = re.compile(r"\s*([a-z])\s*(?:\^\s*([+-]?\d+))?\s*")


def reduce(letters: Iterable[tuple[int, int]], rank: int) -> "FreeWord":
    """Freely reduce a raw ``(generator, exponent)`` sequence.

    Zero exponents are dropped and adjacent powers of the same generator are
    merged, cascading through any cancellation that exposes new neighbours.
    """
    stack: list[list[int]] = []
    for gen, exp in letters:
        if not 0 <= gen < rank:
            raise ValueError(f"generator index {gen} out of range for rank {rank}")
        if exp == 0:
            continue
        if stack and stack[-1][0] == gen:
            stack[-1][1] += exp
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([gen, exp])
    return FreeWord(tuple((g, e) for g, e in stack), rank, _checked=True)


@dataclass(frozen=True)
class FreeWord:
    letters: tuple[tuple[int, int], ...]
    rank: int
    _checked: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("rank must be positive")
        if not self._checked:
            reduced = reduce(self.letters, self.rank)
            if reduced.letters != tuple(self.letters):
                raise ValueError("letters are not freely reduced; use reduce()")
        object.__setattr__(self, "letters", tuple(self.letters))
        object.__setattr__(self, "_checked", True)

    @classmethod
    def identity(cls, rank: int) -> "FreeWord":
        return cls((), rank, _checked=True)

    @classmethod
    def generator(cls, index: int, rank: int, exponent: int = 1) -> "FreeWord":
        return reduce([(index, exponent)], rank)

    @classmethod
    def parse(cls, text: str, rank: int) -> "FreeWord":
        """Parse the text form, e.g. ``"a^2 b^-1"``; ``"1"`` is the identity."""
        text = text.strip()
        if text in ("", "1"):
            return cls.identity(rank)
        letters = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None or m.end() == pos:
                raise ValueError(f"cannot parse word {text!r} at position {pos}")
            exp = int(m.group(2)) if m.group(2) is not None else 1
            letters.append((ALPHABET.index(m.group(1)), exp))
            pos = m.end()
        return reduce(letters, rank)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        parts = []
        for gen, exp in self.letters:
            name = ALPHABET[gen] if gen < len(ALPHABET) else f"x{gen}"
            parts.append(name if exp == 1 else f"{name}^{exp}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"FreeWord({str(self)!r}, rank={self.rank})"

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return multiply(self, other)

    def __pow__(self, k: int) -> "FreeWord":
        return power(self, k)

    def inverse(self) -> "FreeWord":
        return invert(self)

    def is_cyclically_reduced(self) -> bool:
        if len(self.letters) < 2:
            return True
        return self.letters[0][0] != self.letters[-1][0]

    def substitute(self, images: Sequence["FreeWord"], rank: int) -> "FreeWord":
        """Apply the homomorphism sending generator ``i`` to ``images[i]``."""
        out = FreeWord.identity(rank)
        for gen, exp in self.letters:
            out = out * power(images[gen], exp)
        return out


def _check_rank(u: FreeWord, v: FreeWord) -> None:
    if u.rank != v.rank:
        raise ValueError(f"rank mismatch: {u.rank} != {v.rank}")


def multiply(u: FreeWord, v: FreeWord) -> FreeWord:
    _check_rank(u, v)
    if not u.letters:
        return v
    if not v.letters:
        return u
    # only the junction can cancel, so walk it instead of re-reducing everything
    left = list(u.letters)
    right = list(v.letters)
    j = 0
    while left and j < len(right) and left[-1][0] == right[j][0]:
        gen = left[-1][0]
        exp = left[-1][1] + right[j][1]
        left.pop()
        j += 1
        if exp != 0:
            left.append((gen, exp))
            break
    return FreeWord(tuple(left) + tuple(right[j:]), u.rank, _checked=True)


def invert(u: FreeWord) -> FreeWord:
    return FreeWord(tuple((g, -e) for g, e in reversed(u.letters)), u.rank, _checked=True)


def power(u: FreeWord, k: int) -> FreeWord:
    if k < 0:
        u, k = invert(u), -k
    if k == 0 or not u.letters:
        return FreeWord.identity(u.rank)
    if len(u.letters) == 1:
        g, e = u.letters[0]
        return FreeWord(((g, e * k),), u.rank, _checked=True)
    out = FreeWord.identity(u.rank)
    base = u
    while k:
        if k & 1:
            out = out * base
        base = base * base
        k >>= 1
    return out


def commutator(x: FreeWord, y: FreeWord) -> FreeWord:
    """``[x, y] = x y x^-1 y^-1``."""
    _check_rank(x, y)
    return x * y * invert(x) * invert(y)


def generalized_commutator(args: Sequence[FreeWord]) -> FreeWord:
    """Left-nested commutator ``[...[[a1, a2], a3], ..., am]``."""
    if not args:
        raise ValueError("generalized commutator needs at least one argument")
    out = args[0]
    for y in args[1:]:
        out = commutator(out, y)
    return out


def abelianize(u: FreeWord) -> tuple[int, ...]:
    """Exponent-sum vector of ``u``."""
    vec = [0] * u.rank
    for gen, exp in u.letters:
        vec[gen] += exp
    return tuple(vec)
