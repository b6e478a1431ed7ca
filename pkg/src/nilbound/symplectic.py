"""Integer vectors as sums of at most two vectors in the orbit ``Sp_2n(Z) . e_hat``.

The symplectic form pairs coordinates blockwise, ``(1,2), (3,4), ...``::

    J = diag([[0, 1], [-1, 0]], ..., [[0, 1], [-1, 0]])

so the block-diagonal matrices with ``SL_2(Z)`` blocks form a subgroup
``SL_2(Z)^n`` of ``Sp_2n(Z)``.  Every witness produced here is such a block
matrix applied to ``e_hat = e_1 + e_3 + ... + e_{2n-1}``.

A vector whose consecutive pairs are all coprime is hit by a single block
matrix; any other vector splits as ``(a-1, 1) + (1, b-1)`` in each block.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

Matrix = tuple[tuple[int, ...], ...]


def extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``a*x + b*y == g == gcd(a, b) >= 0``."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    if old_r == 0:
        return 0, 0, 0
    return old_r, old_x, old_y


def sl2_with_first_column(a: int, b: int) -> Matrix:
    """``[[a, -y], [b, x]]`` with ``a*x + b*y == 1``."""
    g, x, y = extended_gcd(a, b)
    if g != 1:
        raise ValueError(f"({a}, {b}) is not a primitive vector")
    return ((a, -y), (b, x))


def split_pair(a: int, b: int) -> tuple[tuple[int, int], tuple[int, int]]:
    return (a - 1, 1), (1, b - 1)


def form_matrix(n: int) -> Matrix:
    """The block form ``J`` on ``Z^(2n)``."""
    rows = []
    for i in range(2 * n):
        row = [0] * (2 * n)
        if i % 2 == 0:
            row[i + 1] = 1
        else:
            row[i - 1] = -1
        rows.append(tuple(row))
    return tuple(rows)


def e_hat(n: int) -> tuple[int, ...]:
    return tuple(1 if i % 2 == 0 else 0 for i in range(2 * n))


def _matmul(a, b):
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0])))
        for i in range(len(a))
    )


def apply(m: Sequence[Sequence[int]], v: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in m)


def is_symplectic(m: Sequence[Sequence[int]]) -> bool:
    size = len(m)
    if size == 0 or size % 2 or any(len(row) != size for row in m):
        raise ValueError("expected a square matrix of even dimension")
    j = form_matrix(size // 2)
    mt = tuple(zip(*m))
    return _matmul(_matmul(mt, j), m) == j


def block_diagonal(blocks: Sequence[Matrix]) -> Matrix:
    size = 2 * len(blocks)
    rows = [[0] * size for _ in range(size)]
    for i, blk in enumerate(blocks):
        for r in range(2):
            for c in range(2):
                rows[2 * i + r][2 * i + c] = blk[r][c]
    return tuple(tuple(r) for r in rows)


def _check_vector(v: Sequence[int]) -> tuple[int, ...]:
    v = tuple(int(x) for x in v)
    if len(v) < 2 or len(v) % 2:
        raise ValueError("vector must have even dimension >= 2")
    return v


def block_orbit_witness(v: Sequence[int]) -> Matrix | None:
    """Block-diagonal symplectic ``M`` with ``M @ e_hat == v``, if every block is primitive."""
    v = _check_vector(v)
    pairs = [(v[i], v[i + 1]) for i in range(0, len(v), 2)]
    if any(gcd(a, b) != 1 for a, b in pairs):
        return None
    return block_diagonal([sl2_with_first_column(a, b) for a, b in pairs])


@dataclass(frozen=True)
class Decomposition:
    target: tuple[int, ...]
    terms: tuple[Matrix, ...]

    def summands(self) -> list[tuple[int, ...]]:
        eh = e_hat(len(self.target) // 2)
        return [apply(m, eh) for m in self.terms]

    def reconstruct(self) -> tuple[int, ...]:
        out = [0] * len(self.target)
        for s in self.summands():
            out = [x + y for x, y in zip(out, s)]
        return tuple(out)

    def to_json(self) -> dict:
        return {"v": list(self.target), "terms": [{"matrix": [list(r) for r in m]} for m in self.terms]}


def decompose(v: Sequence[int]) -> Decomposition:
    v = _check_vector(v)
    if not any(v):
        return Decomposition(v, ())
    single = block_orbit_witness(v)
    if single is not None:
        return Decomposition(v, (single,))
    first, second = [], []
    for i in range(0, len(v), 2):
        p, q = split_pair(v[i], v[i + 1])
        first.extend(p)
        second.extend(q)
    return Decomposition(v, (block_orbit_witness(first), block_orbit_witness(second)))
