"""Exact arithmetic in free nilpotent quotients via Mal'cev coordinates.

An element of ``F_r / gamma_{c+1}`` is written uniquely as
``c_1^e_1 c_2^e_2 ... c_N^e_N`` over the Hall basis listed by increasing
weight; the exponent vector is its :class:`NormalForm`.

Collection goes through the truncated Magnus embedding: the image of a word is
computed in ``Z<<X>>/(deg > c)`` and the exponents are peeled off weight by
weight.  If ``h`` lies in ``gamma_w`` its degree-``w`` part is
``sum_j e_j P(c_j)`` over the weight-``w`` basis elements, where ``P`` is the
Lie polynomial of the tree; solving that system gives the ``e_j``, and
dividing them off leaves an element of ``gamma_{w+1}``.

Index translation, for readers coming from the lower-central-series
literature that starts counting at zero (``Gamma_0 = F``):

=====================  ==========================
zero-based notation     here
=====================  ==========================
``Gamma_n``             ``gamma_{n+1}`` (weight ``n+1``)
``L_n = F/Gamma_n``     class-``n`` quotient
``A_n``                 weight-``n+1`` coordinate block
=====================  ==========================
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .hall import HallBasis, QuotientSpec, build_hall_basis
from .intlinalg import left_inverse_rows
from .magnus import MagnusAlgebra, magnus_algebra
from .words import FreeWord, generalized_commutator, invert, power


class Collector:
    """Per-quotient tables: Magnus images of basis elements and slice solvers."""

    def __init__(self, spec: QuotientSpec):
        self.spec = spec
        self.basis: HallBasis = build_hall_basis(spec)
        self.alg: MagnusAlgebra = magnus_algebra(spec.rank, spec.nclass)
        alg = self.alg
        images = [alg.of_word(c.word(spec.rank)) for c in self.basis]
        self.powers = [alg.nilpotent_powers(m) for m in images]
        self.slices = []
        for w in range(1, spec.nclass + 1):
            sl = self.basis.weight_slice(w)
            cols = [alg.degree_part(images[j], w) for j in range(sl.start, sl.stop)]
            rows, inverse, den = left_inverse_rows(cols)
            self.slices.append((sl, [alg.offsets[w] + r for r in rows], inverse, den))
        self._cache: dict[tuple, list[int]] = {}
        self._lock = threading.Lock()

    def basis_power(self, j: int, e: int) -> list[int]:
        """Magnus image of ``c_j^e``, memoised."""
        key = (j, e)
        hit = self._cache.get(key)
        if hit is None:
            hit = self.alg.power_from(self.powers[j], e)
            with self._lock:
                if len(self._cache) > 100_000:
                    self._cache.clear()
                self._cache[key] = hit
        return hit

    def extract(self, m: Sequence[int]) -> tuple[int, ...]:
        alg = self.alg
        h = list(m)
        exps = [0] * len(self.basis)
        for sl, rows, inverse, den in self.slices:
            t = [h[r] for r in rows]
            block = []
            for row in inverse:
                num = sum(a * b for a, b in zip(row, t))
                q, rem = divmod(num, den)
                if rem:
                    raise ArithmeticError("non-integral Mal'cev coordinate")
                block.append(q)
            for j, e in zip(range(sl.start, sl.stop), block):
                exps[j] = e
                if e:
                    h = alg.mul(self.basis_power(j, -e), h)
            if not any(h[1:]):
                break
        return tuple(exps)

    def magnus_of(self, exps: Sequence[int]) -> list[int]:
        out = self.alg.one()
        for j, e in enumerate(exps):
            if e:
                out = self.alg.mul(out, self.basis_power(j, e))
        return out


@lru_cache(maxsize=None)
def collector(spec: QuotientSpec) -> Collector:
    return Collector(spec)


@dataclass(frozen=True)
class NormalForm:
    spec: QuotientSpec
    exponents: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(int(e) for e in self.exponents))
        if len(self.exponents) != len(build_hall_basis(self.spec)):
            raise ValueError("exponent vector length does not match the Hall basis")

    @classmethod
    def identity(cls, spec: QuotientSpec) -> "NormalForm":
        return cls(spec, (0,) * len(build_hall_basis(spec)))

    def __mul__(self, other: "NormalForm") -> "NormalForm":
        return nf_multiply(self, other)

    def inverse(self) -> "NormalForm":
        col = collector(self.spec)
        return NormalForm(self.spec, col.extract(col.alg.inverse(col.magnus_of(self.exponents))))

    def is_identity(self) -> bool:
        return not any(self.exponents)

    def block(self, w: int) -> tuple[int, ...]:
        sl = build_hall_basis(self.spec).weight_slice(w)
        return self.exponents[sl]

    def to_word(self) -> FreeWord:
        """A free word whose collected form is this normal form."""
        basis = build_hall_basis(self.spec)
        out = FreeWord.identity(self.spec.rank)
        for c, e in zip(basis, self.exponents):
            if e:
                out = out * power(c.word(self.spec.rank), e)
        return out

    def to_json(self) -> dict:
        return {"rank": self.spec.rank, "class": self.spec.nclass, "exponents": list(self.exponents)}

    @classmethod
    def from_json(cls, data: dict) -> "NormalForm":
        return cls(QuotientSpec(int(data["rank"]), int(data["class"])), tuple(int(e) for e in data["exponents"]))


def collect(w: FreeWord, spec: QuotientSpec) -> NormalForm:
    if w.rank != spec.rank:
        raise ValueError(f"word rank {w.rank} does not match quotient rank {spec.rank}")
    col = collector(spec)
    return NormalForm(spec, col.extract(col.alg.of_word(w)))


def nf_multiply(x: NormalForm, y: NormalForm) -> NormalForm:
    if x.spec != y.spec:
        raise ValueError("normal forms live in different quotients")
    col = collector(x.spec)
    m = col.alg.mul(col.magnus_of(x.exponents), col.magnus_of(y.exponents))
    return NormalForm(x.spec, col.extract(m))


def equal_mod(u: FreeWord, v: FreeWord, n: int) -> bool:
    """Whether ``u`` and ``v`` agree in the class-``n`` quotient."""
    if u.rank != v.rank:
        raise ValueError("rank mismatch")
    if u == v:
        return True
    spec = QuotientSpec(u.rank, n)
    col = collector(spec)
    return col.alg.of_word(u) == col.alg.of_word(v)


def weight_filtration_level(w: FreeWord, spec: QuotientSpec) -> int:
    """Smallest weight carrying a nonzero exponent, or ``class + 1`` for the identity.

    ``w`` lies in ``gamma_m`` (modulo ``gamma_{class+1}``) iff the result is ``>= m``.
    """
    nf = collect(w, spec)
    for c, e in zip(build_hall_basis(spec), nf.exponents):
        if e:
            return c.weight
    return spec.nclass + 1


def graded_image(w: FreeWord, m: int, spec: QuotientSpec | None = None) -> tuple[int, ...]:
    """Weight-``m`` coordinate block of ``w``, which must lie in ``gamma_m``."""
    if spec is None:
        spec = QuotientSpec(w.rank, m)
    if spec.nclass < m:
        raise ValueError("quotient class is below the requested weight")
    # the weight-m block of an element of gamma_m does not depend on the class
    nf = collect(w, QuotientSpec(spec.rank, m))
    basis = build_hall_basis(nf.spec)
    if any(e for c, e in zip(basis, nf.exponents) if c.weight < m):
        raise ValueError(f"word has nonzero coordinates below weight {m}")
    return nf.block(m)


def power_shift_pair(args: Sequence[FreeWord], k: int) -> tuple[FreeWord, FreeWord]:
    """``([a1,...,am]^k, [a1^k, a2, ..., am])``."""
    lhs = power(generalized_commutator(args), k)
    rhs = generalized_commutator([power(args[0], k), *args[1:]])
    return lhs, rhs


def verify_power_shift(args: Sequence[FreeWord], k: int) -> bool:
    """Check ``[a1,...,am]^k == [a1^k, a2, ..., am]`` modulo ``gamma_{m+1}``."""
    if len(args) < 2:
        raise ValueError("need at least two commutator entries")
    lhs, rhs = power_shift_pair(args, k)
    return equal_mod(lhs, rhs, len(args))


def power_shift_witness(args: Sequence[FreeWord], k: int) -> dict:
    """Normal forms of ``lhs * rhs^-1`` at classes ``m`` and ``m + 1``."""
    m = len(args)
    lhs, rhs = power_shift_pair(args, k)
    q = lhs * invert(rhs)
    at_m = collect(q, QuotientSpec(q.rank, m))
    at_next = collect(q, QuotientSpec(q.rank, m + 1))
    return {"holds": at_m.is_identity(), "class_m": at_m, "class_m_plus_1": at_next}
