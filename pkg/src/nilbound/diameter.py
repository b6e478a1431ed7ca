"""Breadth-first word-metric exploration of free nilpotent quotients.

Group elements are stored as rows of their truncated Magnus images (exact,
injective on the quotient), so right multiplication by a generator is a fixed
integer matrix and a whole BFS layer moves with one matrix product.  Each new
layer is converted to Mal'cev coordinates to count how much of the box
``{|e_j| <= M for all j}`` has been reached.

The generating set is symmetric, so the neighbours of layer ``r`` lie in layers
``r - 1``, ``r`` and ``r + 1``; only the last two layers are kept for
deduplication.

Reported radii are exact for the truncated generator list restricted to the
box.  With respect to the full infinite curve set they are upper bounds on the
distances of box elements, and the covering radius of the box is only a lower
indication for the diameter of the whole quotient.
"""

from __future__ import annotations

import csv
import io
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import BudgetExceeded
from .hall import QuotientSpec, build_hall_basis
from .magnus import magnus_algebra
from .nilpotent import NormalForm, collect, collector
from .surface import SurfaceSpec, curve, truncated_slopes
from .words import FreeWord, invert

_SAFE = 2**62

CAVEATS = (
    "distances are exact for the truncated generator list only",
    "box elements: reported distances are upper bounds for the full curve set",
    "covering radius of the box is a lower indication for the quotient diameter, not the diameter",
)


@dataclass(frozen=True)
class TruncationSpec:
    """Curves of height ``max(|p|, |q|) <= height`` in the listed handles."""

    height: int
    handles: tuple[int, ...] | None = None
    extra_words: tuple[FreeWord, ...] = ()

    def __post_init__(self):
        if self.height < 1:
            raise ValueError("height must be >= 1")


def truncated_generators(spec: QuotientSpec, trunc: TruncationSpec, surface: SurfaceSpec) -> list[NormalForm]:
    """Deduplicated normal forms of the truncated curves and their inverses, sorted."""
    if spec.rank != surface.rank:
        raise ValueError("quotient rank does not match the surface")
    handles = trunc.handles or tuple(range(1, surface.genus + 1))
    words = [curve(p, q, i, surface).word for i in handles for p, q in truncated_slopes(trunc.height)]
    words.extend(trunc.extra_words)
    forms = set()
    for w in words:
        forms.add(collect(w, spec).exponents)
        forms.add(collect(invert(w), spec).exponents)
    return [NormalForm(spec, e) for e in sorted(forms)]


class BatchEngine:
    """Vectorised Magnus products and Mal'cev extraction for one quotient."""

    def __init__(self, spec: QuotientSpec):
        self.spec = spec
        self.col = collector(spec)
        self.alg = magnus_algebra(spec.rank, spec.nclass)
        triples = [(i, j, k) for i in range(self.alg.dim) for j, k in self.alg.products[i]]
        self.pairs = np.array(triples, dtype=np.int64).reshape(-1, 3)

    def magnus(self, nf: NormalForm) -> np.ndarray:
        return np.array(self.col.magnus_of(nf.exponents), dtype=object)

    def right_matrix(self, g: Sequence[int]) -> np.ndarray:
        """``R`` with ``x @ R`` the Magnus image of ``x * g``."""
        d = self.alg.dim
        r = np.zeros((d, d), dtype=object)
        for i, j, k in self.pairs:
            if g[j]:
                r[i, k] += g[j]
        return r

    @staticmethod
    def _fit(*arrays):
        """Cast to int64 when every product below stays far from overflow."""
        bound = 1
        for a in arrays:
            m = int(np.abs(a).max()) if a.size else 0
            bound *= max(m, 1)
        width = max(a.shape[-1] for a in arrays)
        if bound * width * 4 < _SAFE:
            return [a.astype(np.int64) for a in arrays]
        return [a.astype(object) for a in arrays]

    def step(self, rows: np.ndarray, right: np.ndarray) -> np.ndarray:
        a, b = self._fit(rows, right)
        return a @ b

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Row-wise Magnus products ``a[i] * b[i]``."""
        a, b = self._fit(a, b)
        out = np.zeros_like(a)
        for i, j, k in self.pairs:
            out[:, k] += a[:, i] * b[:, j]
        return out

    def _binomials(self, e: np.ndarray, kmax: int) -> list[np.ndarray]:
        m = int(np.abs(e).max()) + kmax if e.size else 0
        e = e.astype(np.int64) if m**kmax < _SAFE else e.astype(object)
        out = [np.ones_like(e)]
        for k in range(1, kmax + 1):
            out.append(out[-1] * (e - (k - 1)) // k)
        return out

    def extract(self, rows: np.ndarray) -> np.ndarray:
        """Mal'cev exponents of every row."""
        col = self.col
        h = rows.astype(object) if rows.dtype == object else rows.astype(np.int64)
        n = len(col.basis)
        exps = np.zeros((len(h), n), dtype=object)
        for sl, prow, inverse, den in col.slices:
            t = h[:, prow]
            inv = np.array(inverse, dtype=object).T
            t, inv = self._fit(t, inv)
            num = t @ inv
            if np.any(num % den):
                raise ArithmeticError("non-integral Mal'cev coordinate")
            block = num // den
            for local, j in enumerate(range(sl.start, sl.stop)):
                e = block[:, local]
                exps[:, j] = e
                if not np.any(e):
                    continue
                powers = col.powers[j]
                binoms = self._binomials(-e, len(powers) - 1)
                wide = h.dtype == object or binoms[-1].dtype == object
                factor = np.zeros((len(h), self.alg.dim), dtype=object if wide else np.int64)
                for bk, nk in zip(binoms, powers):
                    nk_arr = np.array(nk, dtype=factor.dtype)
                    factor = factor + bk[:, None] * nk_arr[None, :]
                h = self.mul(factor, h)
        return self._fit(exps)[0] if exps.size else exps.astype(np.int64)


def _void_view(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    return a.view(np.dtype((np.void, a.dtype.itemsize * a.shape[1]))).ravel()


def _dedupe(cand: np.ndarray, old: Sequence[np.ndarray]) -> np.ndarray:
    """Unique rows of ``cand`` not present in any array of ``old``, in sorted order."""
    if cand.dtype == object:
        seen = {tuple(r) for arr in old for r in arr.tolist()}
        uniq = sorted({tuple(r) for r in cand.tolist()} - seen)
        return np.array(uniq, dtype=object).reshape(-1, cand.shape[1])
    cand = cand.astype(np.int64)
    vc = _void_view(cand)
    _, first = np.unique(vc, return_index=True)
    cand = cand[np.sort(first)]
    for arr in old:
        if len(arr) == 0 or len(cand) == 0:
            continue
        arr = arr.astype(np.int64)
        cand = cand[~np.isin(_void_view(cand), _void_view(arr))]
    order = np.lexsort(cand.T[::-1]) if len(cand) else np.arange(0)
    return cand[order]


@dataclass
class DiameterReport:
    spec: QuotientSpec
    genus: int
    height: int | None
    box_radius: int
    max_radius: int
    generator_count: int
    box_size: int
    new_in_box: list[int]
    layer_sizes: list[int]
    covering_radius: int | None
    status: str
    elapsed_seconds: float = field(default=0.0, compare=False)

    @property
    def cumulative(self) -> list[int]:
        out, total = [], 0
        for x in self.new_in_box:
            total += x
            out.append(total)
        return out

    def to_json(self, include_timing: bool = False) -> dict:
        data = {
            "rank": self.spec.rank,
            "class": self.spec.nclass,
            "genus": self.genus,
            "height": self.height,
            "box_radius": self.box_radius,
            "max_radius": self.max_radius,
            "generator_count": self.generator_count,
            "box_size": self.box_size,
            "coverage": [
                {"radius": r, "new_in_box": n, "cumulative": c}
                for r, (n, c) in enumerate(zip(self.new_in_box, self.cumulative))
            ],
            "layer_sizes": self.layer_sizes,
            "covering_radius": self.covering_radius,
            "status": self.status,
            "caveats": list(CAVEATS),
        }
        if include_timing:
            data["elapsed_seconds"] = round(self.elapsed_seconds, 3)
        return data

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["radius", "newly_covered", "cumulative"])
        for r, (n, c) in enumerate(zip(self.new_in_box, self.cumulative)):
            writer.writerow([r, n, c])
        return buf.getvalue()


@lru_cache(maxsize=None)
def batch_engine(spec: QuotientSpec) -> BatchEngine:
    return BatchEngine(spec)


def _bfs_layers(generators: Sequence[NormalForm], spec: QuotientSpec, max_radius: int,
                workers: int = 1, max_states: int = 5_000_000):
    """Yield ``(radius, magnus_rows, malcev_rows)`` for each BFS layer.

    Raises :class:`BudgetExceeded` (after yielding what fits) when a layer's
    candidate list exceeds ``max_states`` rows.
    """
    eng = batch_engine(spec)
    rights = [eng.right_matrix(eng.magnus(g)) for g in generators]
    ident = np.array([eng.alg.one()], dtype=np.int64)
    prev = np.zeros((0, eng.alg.dim), dtype=np.int64)
    cur = ident
    yield 0, cur, eng.extract(cur)
    pool = ThreadPoolExecutor(workers) if workers > 1 else None
    try:
        for radius in range(1, max_radius + 1):
            if len(cur) == 0:
                return
            if len(cur) * len(rights) > max_states:
                raise BudgetExceeded(f"radius {radius} would generate {len(cur) * len(rights)} candidates")
            if pool is None:
                parts = [eng.step(cur, r) for r in rights]
            else:
                parts = list(pool.map(lambda r: eng.step(cur, r), rights))
            cand = np.concatenate(parts) if parts else cur[:0]
            new = _dedupe(cand, [prev, cur])
            prev, cur = cur, new
            yield radius, cur, eng.extract(cur) if len(cur) else np.zeros((0, len(eng.col.basis)), dtype=np.int64)
    finally:
        if pool is not None:
            pool.shutdown()


def _in_box(coords: np.ndarray, m: int) -> np.ndarray:
    if len(coords) == 0:
        return np.zeros(0, dtype=bool)
    return np.all(np.abs(coords.astype(object) if coords.dtype == object else coords) <= m, axis=1)


def bfs_coverage(generators: Sequence[NormalForm], spec: QuotientSpec, box: int, max_radius: int,
                 workers: int = 1, max_states: int = 5_000_000, genus: int = 0,
                 height: int | None = None) -> DiameterReport:
    start = time.perf_counter()
    size = (2 * box + 1) ** len(build_hall_basis(spec))
    new_in_box: list[int] = []
    layer_sizes: list[int] = []
    covered = None
    status = "not covered by max radius"
    try:
        for radius, _, coords in _bfs_layers(generators, spec, max_radius, workers, max_states):
            new_in_box.append(int(np.count_nonzero(_in_box(coords, box))))
            layer_sizes.append(len(coords))
            if sum(new_in_box) == size:
                covered = radius
                status = "covered"
                break
    except BudgetExceeded as exc:
        status = f"state budget exceeded: {exc}"
    report = DiameterReport(spec, genus, height, box, max_radius, len(generators), size,
                            new_in_box, layer_sizes, covered, status)
    report.elapsed_seconds = time.perf_counter() - start
    return report


def distance_profile(targets: Sequence[NormalForm], generators: Sequence[NormalForm], spec: QuotientSpec,
                     max_radius: int, workers: int = 1, max_states: int = 5_000_000) -> list[int | None]:
    """BFS distance of each target, or None when not reached within ``max_radius``."""
    wanted: dict[tuple, list[int]] = {}
    for pos, t in enumerate(targets):
        wanted.setdefault(t.exponents, []).append(pos)
    out: list[int | None] = [None] * len(targets)
    remaining = set(wanted)
    if not remaining:
        return out
    keys = np.array(sorted(remaining), dtype=object)
    lo = keys.min(axis=0)
    hi = keys.max(axis=0)
    for radius, _, coords in _bfs_layers(generators, spec, max_radius, workers, max_states):
        if len(coords) == 0:
            continue
        c = coords.astype(object)
        mask = np.all((c >= lo) & (c <= hi), axis=1)
        for row in c[mask].tolist():
            key = tuple(int(x) for x in row)
            if key in remaining:
                remaining.discard(key)
                for pos in wanted[key]:
                    out[pos] = radius
        if not remaining:
            break
    return out


def diameter_run(spec: QuotientSpec, surface: SurfaceSpec, height: int, box: int, max_radius: int,
                 workers: int = 1, max_states: int = 5_000_000) -> DiameterReport:
    gens = truncated_generators(spec, TruncationSpec(height), surface)
    return bfs_coverage(gens, spec, box, max_radius, workers, max_states, genus=surface.genus, height=height)
