"""Bounded-length rewriting of words over a generating set, class by class.

Given a generating set ``S`` and an abelian section (a rule writing every
homology vector as a product of at most ``N0`` elements of ``S``), every word
``w`` is rewritten as an ``S``-word that agrees with ``w`` in the class-``n``
quotient and whose ``S``-length is at most ``length_bound(n)``, a number that
depends on ``n``, ``N0`` and the rank only.

Class ``n`` is handled from class ``n - 1``: if ``u`` agrees with ``w`` up to
class ``n - 1`` then ``delta = u^-1 w`` lies in ``gamma_n``, and its weight-``n``
coordinates are an integer combination ``sum k_i gamma_i`` of left-normed
commutators ``gamma_i = [s_1, ..., s_n]`` of core generators.  Modulo
``gamma_{n+1}`` an ``n``-entry commutator is multilinear, so

    gamma_i^k == [s_1^k, s_2, ..., s_n] == [v, s_2, ..., s_n]

where ``v = section(k * abelianize(s_1))`` has at most ``N0`` letters no matter
how large ``k`` is.  The rewrite of ``w`` is ``u`` followed by these words.

Signed indices are 1-based: ``+i`` is ``gens[i-1]`` and ``-i`` its inverse.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import islice, product
from typing import Sequence

from .errors import NotInLattice, SectionMiss
from .hall import QuotientSpec, witt_number
from .intlinalg import elementary_divisors, minimal_support_solution, transpose
from .nilpotent import equal_mod, graded_image
from .surface import SurfaceSpec, scc_section
from .words import FreeWord, abelianize, generalized_commutator, invert


class GeneratingSet:
    """A finite, growable list of words.

    The first ``core_size`` elements are fixed at construction and feed the
    commutator columns; sections may append further elements (curves of new
    slopes, say) through :meth:`add`, which deduplicates.
    """

    def __init__(self, rank: int, elements: Sequence[FreeWord] = ()):
        self.rank = rank
        self._elements: list[FreeWord] = []
        self._index: dict[FreeWord, int] = {}
        for w in elements:
            self.add(w)
        self.core_size = len(self._elements)

    def add(self, w: FreeWord) -> int:
        """0-based position of ``w``, appending it if new."""
        if w.rank != self.rank:
            raise ValueError("generator rank does not match the generating set")
        pos = self._index.get(w)
        if pos is None:
            pos = len(self._elements)
            self._elements.append(w)
            self._index[w] = pos
        return pos

    def __len__(self) -> int:
        return len(self._elements)

    def __getitem__(self, i: int) -> FreeWord:
        return self._elements[i]

    @property
    def elements(self) -> tuple[FreeWord, ...]:
        return tuple(self._elements)

    @property
    def core(self) -> tuple[FreeWord, ...]:
        return tuple(self._elements[: self.core_size])

    def generates_homology(self) -> bool:
        """Whether the abelianized elements span ``Z^rank`` (all elementary divisors 1)."""
        if not self._elements:
            return False
        cols = [abelianize(w) for w in self._elements]
        divisors = elementary_divisors(transpose(cols))
        return len(divisors) == self.rank and all(d == 1 for d in divisors)

    def expand(self, indices: Sequence[int]) -> FreeWord:
        out = FreeWord.identity(self.rank)
        for s in indices:
            if s == 0 or abs(s) > len(self._elements):
                raise IndexError(f"signed index {s} outside the generating set")
            w = self._elements[abs(s) - 1]
            out = out * (w if s > 0 else invert(w))
        return out

    @classmethod
    def from_mapping(cls, rank: int, mapping: dict[int, FreeWord]) -> "GeneratingSet":
        """Rebuild a set from ``{1-based index: word}``; gaps are not allowed."""
        size = max(mapping) if mapping else 0
        if sorted(mapping) != list(range(1, size + 1)):
            raise ValueError("generator indices must be 1..N without gaps")
        return cls(rank, [mapping[i] for i in range(1, size + 1)])


class AbelianSection:
    """Writes homology vectors as short signed index sequences into a generating set."""

    bound: int

    def __call__(self, h: Sequence[int], gens: GeneratingSet) -> list[int]:
        raise NotImplementedError


class StandardSection(AbelianSection):
    """Greedy section over the free basis: ``h`` becomes ``x_1^h_1 ... x_r^h_r``.

    Only vectors with ``|h|_1 <= bound`` are served.
    """

    def __init__(self, bound: int):
        if bound < 1:
            raise ValueError("section bound must be positive")
        self.bound = bound

    def __call__(self, h, gens):
        if sum(abs(x) for x in h) > self.bound:
            raise SectionMiss(f"{tuple(h)} has l1 norm above the section bound {self.bound}")
        out = []
        for i, x in enumerate(h):
            if x:
                pos = gens.add(FreeWord.generator(i, gens.rank)) + 1
                out.extend([pos if x > 0 else -pos] * abs(x))
        return out


class SurfaceSection(AbelianSection):
    """At most two handle curves per handle, so ``bound = 2g``."""

    def __init__(self, spec: SurfaceSpec):
        self.spec = spec
        self.bound = 2 * spec.genus

    def __call__(self, h, gens):
        g2 = 2 * self.spec.genus
        if any(h[g2:]):
            raise SectionMiss("puncture coordinates are outside the handle section")
        return [gens.add(c.word) + 1 for c in scc_section(h[:g2], self.spec)]


def surface_generating_set(spec: SurfaceSpec) -> GeneratingSet:
    """Core generators ``a_1, b_1, ..., a_g, b_g`` and the puncture loops."""
    return GeneratingSet(spec.rank, [FreeWord.generator(i, spec.rank) for i in range(spec.rank)])


def commutator_labels(core_size: int, m: int, budget: int = 4096) -> list[tuple[int, ...]]:
    """Entry tuples of the ``m``-entry commutator columns, lexicographic."""
    return list(islice(product(range(core_size), repeat=m), budget))


def graded_generator_matrix(gens: GeneratingSet, m: int, spec: QuotientSpec | None = None,
                            budget: int = 4096) -> list[list[int]]:
    """Rows: weight-``m`` Hall basis elements; columns: commutators of core generators."""
    if spec is not None and spec.nclass < m:
        raise ValueError("quotient class is below the requested weight")
    core = gens.core
    cols = []
    for label in commutator_labels(len(core), m, budget):
        gamma = generalized_commutator([core[i] for i in label])
        cols.append(list(graded_image(gamma, m)))
    return transpose(cols, witt_number(gens.rank, m))


def solve_graded(target: Sequence[int], matrix: Sequence[Sequence[int]],
                 max_subsets: int = 200_000) -> list[int]:
    """Minimal-support integer coefficients with ``matrix @ k == target``.

    Ties between supports of equal size go to the lexicographically first
    column subset.  Raises :class:`NotInLattice` when no solution exists.
    """
    ncols = len(matrix[0]) if matrix else 0
    columns = [[row[j] for row in matrix] for j in range(ncols)]
    k = minimal_support_solution(columns, list(target), max_subsets)
    if k is None:
        raise NotInLattice(f"target {tuple(target)} is not in the commutator lattice")
    return k


def commutator_length(first: int, m: int) -> int:
    """``S``-length of ``[x, s_2, ..., s_m]`` with ``len(x) = first``, ``len(s_i) = 1``."""
    length = first
    for _ in range(m - 1):
        length = 2 * (length + 1)
    return length


def length_bound(n: int, n0: int, rank: int) -> int:
    """``D_1 = N0``, ``D_n = D_{n-1} + witt(rank, n) * C_n``."""
    bound = n0
    for m in range(2, n + 1):
        bound += witt_number(rank, m) * commutator_length(n0, m)
    return bound


def bound_formula(n: int, n0: int, rank: int) -> str:
    parts = [f"D1=N0={n0}"]
    bound = n0
    for m in range(2, n + 1):
        p, c = witt_number(rank, m), commutator_length(n0, m)
        bound += p * c
        parts.append(f"D{m}=D{m - 1}+p{m}*C{m}={bound - p * c}+{p}*{c}={bound}")
    parts.append("C_m: len([x,y])=2(len x+len y), first slot N0, other slots 1")
    return "; ".join(parts)


def _inverse_seq(seq):
    return [-s for s in reversed(seq)]


def _commutator_seq(x, y):
    return x + y + _inverse_seq(x) + _inverse_seq(y)


def _cancel(seq):
    out = []
    for s in seq:
        if out and out[-1] == -s:
            out.pop()
        else:
            out.append(s)
    return out


@dataclass(frozen=True)
class RewriteCertificate:
    input: FreeWord
    nclass: int
    indices: tuple[int, ...]
    output_word: FreeWord
    bound: int
    n0: int
    generators: dict = field(default_factory=dict, compare=False)

    @property
    def s_length(self) -> int:
        return len(self.indices)

    def to_json(self, verified: bool | None = None) -> dict:
        data = {
            "input": str(self.input),
            "rank": self.input.rank,
            "class": self.nclass,
            "indices": list(self.indices),
            "s_length": self.s_length,
            "bound": self.bound,
            "n0": self.n0,
            "bound_formula": bound_formula(self.nclass, self.n0, self.input.rank),
            "output_word": str(self.output_word),
            "generators": {str(i): str(w) for i, w in sorted(self.generators.items())},
        }
        if verified is not None:
            data["verified"] = verified
        return data


def certificate_from_json(data: dict) -> tuple[RewriteCertificate, GeneratingSet]:
    rank = int(data["rank"])
    mapping = {int(i): FreeWord.parse(w, rank) for i, w in data["generators"].items()}
    gens = GeneratingSet.from_mapping(rank, mapping) if mapping else GeneratingSet(rank)
    cert = RewriteCertificate(
        input=FreeWord.parse(data["input"], rank),
        nclass=int(data["class"]),
        indices=tuple(int(i) for i in data["indices"]),
        output_word=FreeWord.parse(data["output_word"], rank),
        bound=int(data["bound"]),
        n0=int(data["n0"]),
        generators=mapping,
    )
    return cert, gens


def verify_certificate(cert: RewriteCertificate, gens: GeneratingSet, n0: int | None = None) -> bool:
    n0 = cert.n0 if n0 is None else n0
    try:
        expanded = gens.expand(cert.indices)
    except IndexError:
        return False
    for i, w in cert.generators.items():
        if i > len(gens) or gens[i - 1] != w:
            return False
    if expanded != cert.output_word:
        return False
    if cert.bound != length_bound(cert.nclass, n0, gens.rank):
        return False
    if cert.s_length > cert.bound:
        return False
    return equal_mod(cert.input, cert.output_word, cert.nclass)


class BoundedRewriter:
    """Rewrites words over ``gens`` with lengths bounded per nilpotency class."""

    def __init__(self, gens: GeneratingSet, section: AbelianSection, column_budget: int = 4096,
                 max_subsets: int = 200_000):
        if not gens.generates_homology():
            raise NotInLattice("core generators do not generate the abelianization")
        self.gens = gens
        self.section = section
        self.column_budget = column_budget
        self.max_subsets = max_subsets
        self._matrices: dict[int, tuple[list[tuple[int, ...]], list[list[int]]]] = {}

    @property
    def n0(self) -> int:
        return self.section.bound

    def columns(self, m: int):
        hit = self._matrices.get(m)
        if hit is None:
            labels = commutator_labels(self.gens.core_size, m, self.column_budget)
            matrix = graded_generator_matrix(self.gens, m, budget=self.column_budget)
            hit = self._matrices[m] = (labels, matrix)
        return hit

    def _indices(self, w: FreeWord, n: int) -> list[int]:
        if n == 1:
            seq = self.section(abelianize(w), self.gens)
            if len(seq) > self.n0:
                raise SectionMiss("section returned a sequence longer than its bound")
            return seq
        prev = self._indices(w, n - 1)
        delta = invert(self.gens.expand(prev)) * w
        target = graded_image(delta, n)
        if not any(target):
            return prev
        labels, matrix = self.columns(n)
        coeffs = solve_graded(target, matrix, self.max_subsets)
        out = list(prev)
        for label, k in zip(labels, coeffs):
            if not k:
                continue
            first = self.gens.core[label[0]]
            h = tuple(k * x for x in abelianize(first))
            seq = self.section(h, self.gens)
            for i in label[1:]:
                seq = _commutator_seq(seq, [i + 1])
            out.extend(seq)
        return _cancel(out)

    def rewrite(self, w: FreeWord, n: int) -> RewriteCertificate:
        if w.rank != self.gens.rank:
            raise ValueError("word rank does not match the generating set")
        if n < 1:
            raise ValueError("class must be >= 1")
        indices = tuple(self._indices(w, n))
        used = {abs(i) for i in indices}
        return RewriteCertificate(
            input=w,
            nclass=n,
            indices=indices,
            output_word=self.gens.expand(indices),
            bound=length_bound(n, self.n0, self.gens.rank),
            n0=self.n0,
            generators={i: self.gens[i - 1] for i in range(1, max(used, default=0) + 1)},
        )

    def verify(self, cert: RewriteCertificate) -> bool:
        return verify_certificate(cert, self.gens, self.n0)


def rewrite(w: FreeWord, n: int, gens: GeneratingSet, section: AbelianSection) -> RewriteCertificate:
    return BoundedRewriter(gens, section).rewrite(w, n)
