"""Exact integer linear algebra on lists of Python ints.

Matrices are lists of rows.  Nothing here touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import comb


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a, b):
    if not a:
        return []
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(cols)] for i in range(len(a))]


def matvec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def transpose(a, ncols: int | None = None):
    if not a:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*a)]


def smith_normal_form(a):
    """Return ``(U, D, V)`` with ``U @ a @ V == D`` and ``U``, ``V`` unimodular.

    ``D`` is diagonal with nonnegative entries, each dividing the next.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    d = [list(row) for row in a]
    u = identity(m)
    v = identity(n)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):  # row_dst += q * row_src
        d[dst] = [x + q * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, q):
        for row in d:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            # pivot: smallest nonzero magnitude in the remaining block
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if d[i][j] and (best is None or abs(d[i][j]) < abs(d[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return u, d, v
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = d[t][t]
            clean = True
            for i in range(t + 1, m):
                if d[i][t]:
                    add_row(t, i, -(d[i][t] // p))
                    clean = clean and d[i][t] == 0
            for j in range(t + 1, n):
                if d[t][j]:
                    add_col(t, j, -(d[t][j] // p))
                    clean = clean and d[t][j] == 0
            if not clean:
                continue
            # divisibility: fold any entry not divisible by the pivot into row t
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if d[i][j] % p), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    return u, d, v


def elementary_divisors(a) -> list[int]:
    _, d, _ = smith_normal_form(a)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0)) if d[i][i]]


def solve_integer(a, b):
    """One integer solution of ``a @ x == b`` (free variables set to 0), or None."""
    m = len(a)
    n = len(a[0]) if m else 0
    if m == 0:
        return [0] * n
    u, d, v = smith_normal_form(a)
    c = matvec(u, b)
    y = [0] * n
    for i in range(m):
        di = d[i][i] if i < n else 0
        if di == 0:
            if c[i] != 0:
                return None
        elif c[i] % di:
            return None
        else:
            y[i] = c[i] // di
    return matvec(v, y)


def rational_rank(a) -> int:
    rows = [[Fraction(x) for x in row] for row in a]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col] / rows[rank][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def left_inverse_rows(cols):
    """Exact left inverse of a full-column-rank integer matrix given by columns.

    Returns ``(rows, inverse, denominator)``: picking the coordinates listed in
    ``rows`` gives an invertible square system, and for any vector ``t`` in the
    column span the coefficients are ``inverse @ t[rows] / denominator``.
    """
    k = len(cols)
    if k == 0:
        return [], [], 1
    n = len(cols[0])
    # greedy row choice by exact elimination on the transposed system
    chosen: list[int] = []
    basis: list[list[Fraction]] = []
    pivots: list[int] = []
    for r in range(n):
        vec = [Fraction(cols[j][r]) for j in range(k)]
        for b, p in zip(basis, pivots):
            if vec[p]:
                f = vec[p] / b[p]
                vec = [x - f * y for x, y in zip(vec, b)]
        p = next((j for j in range(k) if vec[j]), None)
        if p is None:
            continue
        basis.append(vec)
        pivots.append(p)
        chosen.append(r)
        if len(chosen) == k:
            break
    if len(chosen) < k:
        raise ValueError("columns are linearly dependent")
    square = [[Fraction(cols[j][r]) for j in range(k)] for r in chosen]
    inv = _invert_fraction_matrix(square)
    den = 1
    for row in inv:
        for x in row:
            den = den * x.denominator // _gcd(den, x.denominator)
    inverse = [[int(x * den) for x in row] for row in inv]
    return chosen, inverse, den


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def _invert_fraction_matrix(m):
    n = len(m)
    aug = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def minimal_support_solution(columns, target, max_subsets: int = 200_000):
    """Integer combination of ``columns`` equal to ``target`` using as few columns as possible.

    Supports are tried by increasing size and, within a size, in lexicographic
    order of column indices; the first subset whose lattice contains
    ``target`` wins.  Once the number of subsets to try would exceed
    ``max_subsets`` the search stops and a Smith-normal-form solution over all
    columns is returned instead.  Returns None when ``target`` is not in the
    lattice spanned by the columns.
    """
    k = len(columns)
    if not any(target):
        return [0] * k
    usable = [j for j in range(k) if any(columns[j])]
    tried = 0
    for size in range(1, len(usable) + 1):
        tried += comb(len(usable), size)
        if tried > max_subsets:
            break
        for subset in combinations(usable, size):
            a = transpose([columns[j] for j in subset])
            x = solve_integer(a, list(target))
            if x is not None:
                out = [0] * k
                for j, xj in zip(subset, x):
                    out[j] = xj
                return out
        # every usable column has been included at the largest size
    a = transpose(columns) if columns else [[] for _ in target]
    return solve_integer(a, list(target)) if columns else None
