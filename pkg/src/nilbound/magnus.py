"""Truncated Magnus algebra ``Z<<X_0..X_{r-1}>> / (degree > c)``.

The Magnus map ``x_i -> 1 + X_i`` is injective on ``F / gamma_{c+1}``, so a
dense coefficient vector of length ``sum_{d<=c} r^d`` is an exact, hashable
image of an element of the free nilpotent quotient of class ``c``.

Monomials are indexed degree by degree; within degree ``d`` the word
``X_{i1}...X_{id}`` has index ``offset[d] + (i1 i2 ... id)`` read in base ``r``.
"""

from __future__ import annotations

from functools import lru_cache

from .words import FreeWord


def binomial(n: int, k: int) -> int:
    """Generalised binomial coefficient, valid for negative ``n``."""
    if k < 0:
        return 0
    num = 1
    for i in range(k):
        num *= n - i
    den = 1
    for i in range(2, k + 1):
        den *= i
    return num // den


class MagnusAlgebra:
    def __init__(self, rank: int, degree: int):
        self.rank = rank
        self.degree = degree
        self.offsets = [0]
        for d in range(degree + 1):
            self.offsets.append(self.offsets[-1] + rank**d)
        self.dim = self.offsets[-1]
        self.degrees = [d for d in range(degree + 1) for _ in range(rank**d)]
        # shift[i][g]: index of monomial i followed by letter g, or -1
        self.shift = []
        for i in range(self.dim):
            d = self.degrees[i]
            if d == degree:
                self.shift.append([-1] * rank)
                continue
            local = i - self.offsets[d]
            self.shift.append([self.offsets[d + 1] + local * rank + g for g in range(rank)])
        # products[i] lists (j, k) with monomial_i * monomial_j = monomial_k
        self.products = []
        for i in range(self.dim):
            di = self.degrees[i]
            li = i - self.offsets[di]
            row = []
            for dj in range(0, degree - di + 1):
                scale = rank**dj
                base = self.offsets[di + dj] + li * scale
                for lj in range(scale):
                    row.append((self.offsets[dj] + lj, base + lj))
            self.products.append(row)

    def monomial(self, letters) -> int:
        d = len(letters)
        local = 0
        for g in letters:
            local = local * self.rank + g
        return self.offsets[d] + local

    def monomial_letters(self, index: int) -> tuple[int, ...]:
        d = self.degrees[index]
        local = index - self.offsets[d]
        out = []
        for _ in range(d):
            local, g = divmod(local, self.rank)
            out.append(g)
        return tuple(reversed(out))

    def one(self) -> list[int]:
        v = [0] * self.dim
        v[0] = 1
        return v

    def mul(self, x, y) -> list[int]:
        out = [0] * self.dim
        ynz = [j for j in range(self.dim) if y[j]]
        if len(ynz) == 1 and ynz[0] == 0:
            c = y[0]
            return [c * a for a in x]
        yset = set(ynz)
        for i in range(self.dim):
            xi = x[i]
            if not xi:
                continue
            for j, k in self.products[i]:
                if j in yset:
                    out[k] += xi * y[j]
        return out

    def mul_generator_power(self, x, gen: int, exp: int) -> list[int]:
        """``x * (1 + X_gen)^exp``."""
        out = list(x)
        term = list(x)
        for k in range(1, self.degree + 1):
            shifted = [0] * self.dim
            nonzero = False
            for i, c in enumerate(term):
                if c:
                    t = self.shift[i][gen]
                    if t >= 0:
                        shifted[t] = c
                        nonzero = True
            if not nonzero:
                break
            term = shifted
            coeff = binomial(exp, k)
            if coeff:
                for i, c in enumerate(term):
                    if c:
                        out[i] += coeff * c
        return out

    def of_word(self, w: FreeWord) -> list[int]:
        v = self.one()
        for gen, exp in w.letters:
            v = self.mul_generator_power(v, gen, exp)
        return v

    def nilpotent_powers(self, x) -> list[list[int]]:
        """``[N^0, N^1, ...]`` for ``N = x - 1`` until the power vanishes."""
        n = list(x)
        n[0] -= 1
        powers = [self.one()]
        cur = n
        while any(cur):
            powers.append(cur)
            cur = self.mul(cur, n)
        return powers

    def power_from(self, powers, e: int) -> list[int]:
        """``(1 + N)^e`` from precomputed powers of ``N``."""
        out = [0] * self.dim
        for k, nk in enumerate(powers):
            coeff = binomial(e, k)
            if coeff:
                for i, c in enumerate(nk):
                    if c:
                        out[i] += coeff * c
        return out

    def inverse(self, x) -> list[int]:
        return self.power_from(self.nilpotent_powers(x), -1)

    def degree_part(self, x, d: int) -> list[int]:
        return list(x[self.offsets[d]: self.offsets[d + 1]])


@lru_cache(maxsize=None)
def magnus_algebra(rank: int, degree: int) -> MagnusAlgebra:
    return MagnusAlgebra(rank, degree)
