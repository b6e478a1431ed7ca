"""Simple closed curves on handle tori of a punctured surface.

For a surface of genus ``g`` with ``p >= 1`` punctures the fundamental group is
free on ``a_1, b_1, ..., a_g, b_g, c_1, ..., c_{p-1}`` (rank ``2g + p - 1``),
with ``a_i, b_i`` generator indices ``2i - 2, 2i - 1``.  Homology coordinates
are those of the closed-up surface: puncture loops map to zero.

Curves in handle ``i`` are Christoffel words in ``a_i, b_i``.  Slope signs:

====================  =========================================
``(p, q)``            word
====================  =========================================
``p >= 0, q >= 0``    lower Christoffel word ``C(p, q)``
``p < 0 < q``         ``C(|p|, q)`` with ``a -> a^-1``
``p <= 0, q <= 0``    ``C(|p|, |q|)^-1``
``q < 0 < p``         ``(C(p, |q|) with a -> a^-1)^-1``
====================  =========================================
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .symplectic import split_pair
from .words import FreeWord, abelianize, invert, reduce


@dataclass(frozen=True)
class SurfaceSpec:
    genus: int
    punctures: int = 1

    def __post_init__(self):
        if self.genus < 1:
            raise ValueError("genus must be >= 1")
        if self.punctures < 1:
            raise ValueError("only punctured surfaces (free fundamental group) are supported")

    @property
    def rank(self) -> int:
        return 2 * self.genus + self.punctures - 1


@dataclass(frozen=True)
class CurveWord:
    word: FreeWord
    handle: int
    slope: tuple[int, int]

    def __str__(self) -> str:
        return str(self.word)

    def to_json(self) -> dict:
        return {"handle": self.handle, "slope": list(self.slope), "word": str(self.word)}


def christoffel(p: int, q: int) -> FreeWord:
    """Christoffel word with abelianization ``(p, q)`` in ``F(a, b)``."""
    if gcd(p, q) != 1:
        raise ValueError(f"slope ({p}, {q}) is not primitive")
    if p <= 0 and q <= 0:
        return invert(christoffel(-p, -q))
    if q < 0 < p:
        return invert(christoffel(-p, -q))
    if p < 0 < q:
        w = christoffel(-p, q)
        return reduce([(g, -e if g == 0 else e) for g, e in w.letters], 2)
    n = p + q
    letters = []
    for i in range(1, n + 1):
        letters.append((1, 1) if (i * q) // n > ((i - 1) * q) // n else (0, 1))
    return reduce(letters, 2)


def handle_embed(w: FreeWord, handle: int, spec: SurfaceSpec) -> FreeWord:
    """Send ``a -> a_handle``, ``b -> b_handle``."""
    if not 1 <= handle <= spec.genus:
        raise ValueError(f"handle {handle} out of range for genus {spec.genus}")
    if w.rank != 2:
        raise ValueError("handle words live in the rank-2 free group")
    base = 2 * (handle - 1)
    return reduce([(base + g, e) for g, e in w.letters], spec.rank)


def curve(p: int, q: int, handle: int, spec: SurfaceSpec) -> CurveWord:
    return CurveWord(handle_embed(christoffel(p, q), handle, spec), handle, (p, q))


def homology(w: FreeWord, spec: SurfaceSpec) -> tuple[int, ...]:
    return abelianize(w)[: 2 * spec.genus]


def scc_section(h: Sequence[int], spec: SurfaceSpec, minimal: bool = True) -> list[CurveWord]:
    """At most two curves per handle whose product has homology ``h``.

    A primitive handle block becomes a single curve unless ``minimal`` is
    False, in which case every nonzero block goes through ``split_pair``.
    """
    h = tuple(int(x) for x in h)
    if len(h) != 2 * spec.genus:
        raise ValueError(f"homology vector must have length {2 * spec.genus}")
    out = []
    for i in range(spec.genus):
        x, y = h[2 * i], h[2 * i + 1]
        if x == 0 and y == 0:
            continue
        if minimal and gcd(x, y) == 1:
            out.append(curve(x, y, i + 1, spec))
        else:
            for p, q in split_pair(x, y):
                out.append(curve(p, q, i + 1, spec))
    return out


def truncated_slopes(height: int) -> list[tuple[int, int]]:
    """Primitive ``(p, q)`` with ``max(|p|, |q|) <= height``, in a fixed order."""
    out = []
    for p in range(-height, height + 1):
        for q in range(-height, height + 1):
            if gcd(p, q) == 1:
                out.append((p, q))
    return out
