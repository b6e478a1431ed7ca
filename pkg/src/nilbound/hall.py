"""Hall bases of basic commutators.

Weights follow the classical convention ``gamma_1 = F``,
``gamma_{w+1} = [F, gamma_w]``; a quotient of nilpotency class ``c`` is
``F / gamma_{c+1}``.

The Hall order used here puts heavier trees *before* lighter ones and orders
trees of equal weight lexicographically by the keys of their (left, right)
factors, generators coming by index.  A tree ``(u, v)`` is basic when

* ``u`` and ``v`` are basic and ``u < v`` (so ``weight(u) >= weight(v)``);
* ``u`` is a generator, or ``u = (x, y)`` with ``y >= v``.

This is a Hall set in the sense of Reutenauer, so the associated Lie
polynomials form a Z-basis of the free Lie ring and the corresponding group
commutators, listed by increasing weight, give Mal'cev coordinates for every
free nilpotent quotient.  For rank 2 the first elements are::

    a, b, [a,b], [[a,b],a], [[a,b],b], [[[a,b],a],a], [[[a,b],b],a], ...

Each group commutator uses ``[x, y] = x y x^-1 y^-1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .words import ALPHABET, FreeWord, commutator


@dataclass(frozen=True)
class QuotientSpec:
    """Free nilpotent quotient of ``F_rank`` of class ``nclass``."""

    rank: int
    nclass: int

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("rank must be >= 1")
        if self.nclass < 1:
            raise ValueError("class must be >= 1")


@dataclass(frozen=True)
class BasicCommutator:
    weight: int
    generator: int | None = None
    left: "BasicCommutator | None" = None
    right: "BasicCommutator | None" = None
    # position in the Hall order among all trees (smaller = earlier)
    key: tuple = field(default=(), compare=False, repr=False)

    @property
    def is_generator(self) -> bool:
        return self.generator is not None

    def word(self, rank: int) -> FreeWord:
        if self.is_generator:
            return FreeWord.generator(self.generator, rank)
        return commutator(self.left.word(rank), self.right.word(rank))

    def __str__(self) -> str:
        if self.is_generator:
            return ALPHABET[self.generator] if self.generator < 26 else f"x{self.generator}"
        return f"[{self.left},{self.right}]"


@dataclass(frozen=True)
class HallBasis:
    spec: QuotientSpec
    elements: tuple[BasicCommutator, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def weight_slice(self, w: int) -> slice:
        """Index range of the weight-``w`` elements."""
        start = sum(self.sizes[: w - 1])
        return slice(start, start + self.sizes[w - 1])

    @property
    def sizes(self) -> tuple[int, ...]:
        counts = [0] * self.spec.nclass
        for c in self.elements:
            counts[c.weight - 1] += 1
        return tuple(counts)

    @property
    def weights(self) -> tuple[int, ...]:
        return tuple(c.weight for c in self.elements)


def _is_basic_pair(u: BasicCommutator, v: BasicCommutator) -> bool:
    if not u.key < v.key:
        return False
    return u.is_generator or u.right.key >= v.key


@lru_cache(maxsize=None)
def build_hall_basis(spec: QuotientSpec) -> HallBasis:
    rank, nclass = spec.rank, spec.nclass
    by_weight: list[list[BasicCommutator]] = [[]]
    by_weight.append([BasicCommutator(1, generator=i, key=(-1, i)) for i in range(rank)])
    for w in range(2, nclass + 1):
        candidates = []
        for wl in range(w - 1, 0, -1):
            wr = w - wl
            if wr > wl:
                continue
            for u in by_weight[wl]:
                for v in by_weight[wr]:
                    if _is_basic_pair(u, v):
                        candidates.append((u.key, v.key, u, v))
        candidates.sort(key=lambda t: (t[0], t[1]))
        by_weight.append(
            [BasicCommutator(w, left=u, right=v, key=(-w, pos))
             for pos, (_, _, u, v) in enumerate(candidates)]
        )
    elements = tuple(c for level in by_weight[1:] for c in level)
    return HallBasis(spec, elements)


def mobius(n: int) -> int:
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


def witt_number(rank: int, w: int) -> int:
    """Rank of the weight-``w`` slice of the free Lie ring on ``rank`` letters."""
    total = sum(mobius(d) * rank ** (w // d) for d in range(1, w + 1) if w % d == 0)
    return total // w
