"""Acceptance criteria, one test per criterion.

Each test prints a single ``PASS``/``FAIL`` line; the lines are also repeated
in the pytest terminal summary.  Run on its own with::

    pytest tests/test_acceptance.py -v
"""

import functools
import itertools
import json
import random
import time
from math import gcd
from pathlib import Path

from conftest import heisenberg, random_word
from test_hall import brute_basis, show
from nilbound.diameter import diameter_run
from nilbound.hall import QuotientSpec, build_hall_basis, witt_number
from nilbound.nilpotent import collect, power_shift_pair
from nilbound.rewriter import BoundedRewriter, SurfaceSection, length_bound, surface_generating_set
from nilbound.surface import SurfaceSpec, homology, scc_section
from nilbound.symplectic import apply, decompose, e_hat, is_symplectic
from nilbound.words import FreeWord, commutator, invert

RESULTS: list[str] = []
FIXTURE = Path(__file__).parent / "data" / "heisenberg_h6_m3.json"


def criterion(number, title):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            start = time.perf_counter()
            try:
                detail = fn(*args, **kwargs)
            except BaseException as exc:
                line = f"FAIL  #{number} {title}: {type(exc).__name__}: {exc}".splitlines()[0]
                RESULTS.append(line)
                print(line)
                raise
            line = f"PASS  #{number} {title} ({time.perf_counter() - start:.2f}s){': ' + detail if detail else ''}"
            RESULTS.append(line)
            print(line)
        return run
    return wrap


@criterion(1, "symplectic decomposition uses at most two orbit terms")
def test_symplectic_two_terms():
    rng = random.Random(1)
    start = time.perf_counter()
    most = 0
    for _ in range(10_000):
        n = rng.randint(1, 5)
        v = tuple(rng.randint(-100, 100) for _ in range(2 * n))
        d = decompose(v)
        assert len(d.terms) <= 2
        assert all(is_symplectic(m) for m in d.terms)
        total = [0] * (2 * n)
        for m in d.terms:
            total = [x + y for x, y in zip(total, apply(m, e_hat(n)))]
        assert tuple(total) == v
        most = max(most, len(d.terms))
    elapsed = time.perf_counter() - start
    assert elapsed <= 5, f"took {elapsed:.1f}s"
    return f"10000 vectors, max terms {most}"


@criterion(2, "power shift holds modulo the next lower central term")
def test_power_shift():
    rng = random.Random(2)
    start = time.perf_counter()
    letters = [FreeWord.parse(t, 2) for t in ("a", "b", "a^-1", "b^-1")]
    checked = 0
    for m in (2, 3, 4):
        tuples = list(itertools.product(letters[:2], repeat=m))
        tuples += [tuple(random_word(rng, 2, 2, 1) for _ in range(m)) for _ in range(12)]
        tuples += [tuple(rng.choice(letters) for _ in range(m)) for _ in range(8)]
        for args in tuples:
            for k in range(-3, 4):
                lhs, rhs = power_shift_pair(args, k)
                q = lhs * invert(rhs)
                assert collect(q, QuotientSpec(2, m)).is_identity()
                nf = collect(q, QuotientSpec(2, m + 1))
                assert all(not any(nf.block(w)) for w in range(1, m + 1))
                checked += 1
    elapsed = time.perf_counter() - start
    assert elapsed <= 60, f"took {elapsed:.1f}s"
    return f"{checked} (tuple, k) cases"


@criterion(3, "Hall basis sizes equal Witt numbers and brute-force counts")
def test_witt_counts():
    for rank, nclass in ((2, 6), (3, 4)):
        basis = build_hall_basis(QuotientSpec(rank, nclass))
        assert list(basis.sizes) == [witt_number(rank, w) for w in range(1, nclass + 1)]
        assert [str(c) for c in basis] == [show(t) for t in brute_basis(rank, nclass)]
    return "rank 2 class 6 and rank 3 class 4"


@criterion(4, "class-2 collection agrees with the Heisenberg representation")
def test_heisenberg_collection():
    rng = random.Random(4)
    spec = QuotientSpec(2, 2)
    for _ in range(1000):
        w = random_word(rng, 2, 12)
        assert collect(w, spec).exponents == heisenberg(w)
    return "1000 words"


def _rewrite_maxima(max_len, rng):
    torus = SurfaceSpec(1)
    rw = BoundedRewriter(surface_generating_set(torus), SurfaceSection(torus))
    words = [random_word(rng, 2, max_len) for _ in range(200)]
    maxima = {}
    for n in (1, 2, 3, 4):
        bound = length_bound(n, 2, 2)
        for w in words:
            cert = rw.rewrite(w, n)
            assert rw.verify(cert)
            assert cert.s_length <= bound == cert.bound
        maxima[n] = max(rw.rewrite(w, n).s_length for w in words)
    return maxima


@criterion(5, "rewriting stays within the class bound for any input length")
def test_bounded_rewriting():
    start = time.perf_counter()
    short = _rewrite_maxima(8, random.Random(5))
    long = _rewrite_maxima(16, random.Random(55))
    bounds = {n: length_bound(n, 2, 2) for n in (1, 2, 3, 4)}
    assert all(short[n] <= bounds[n] and long[n] <= bounds[n] for n in bounds)
    elapsed = time.perf_counter() - start
    assert elapsed <= 300, f"took {elapsed:.1f}s"
    return f"bounds {bounds}, max s_length len<=8 {short}, len<=16 {long}"


@criterion(6, "commutator powers rewrite with a length independent of the power")
def test_k_independence():
    torus = SurfaceSpec(1)
    rw = BoundedRewriter(surface_generating_set(torus), SurfaceSection(torus))
    gamma = commutator(FreeWord.parse("a", 2), FreeWord.parse("b", 2))
    lengths = {}
    for k in list(range(-8, 9)) + [10**4, -(10**4)]:
        cert = rw.rewrite(gamma**k, 2)
        assert rw.verify(cert)
        lengths[k] = cert.s_length
    constant = length_bound(2, 2, 2)
    assert max(lengths.values()) <= constant
    return f"max s_length {max(lengths.values())} <= {constant} for k in -8..8 and +-10^4"


@criterion(7, "handle-curve section realises every homology vector")
def test_scc_section():
    rng = random.Random(7)
    for genus in (1, 2, 3):
        spec = SurfaceSpec(genus)
        for _ in range(1000):
            h = tuple(rng.randint(-100, 100) for _ in range(2 * genus))
            curves = scc_section(h, spec)
            assert len(curves) <= 2 * genus
            total = FreeWord.identity(spec.rank)
            for c in curves:
                assert gcd(*c.slope) == 1
                total = total * c.word
            assert homology(total, spec) == h
    return "1000 vectors each for genus 1, 2, 3"


@criterion(8, "diameter lab: class-1 radius 2, class-2 run reproducible")
def test_diameter_lab():
    torus = SurfaceSpec(1)
    start = time.perf_counter()
    first = diameter_run(QuotientSpec(2, 1), torus, height=6, box=10, max_radius=10)
    elapsed = time.perf_counter() - start
    assert first.covering_radius == 2
    assert elapsed <= 10, f"took {elapsed:.1f}s"
    expected = json.loads(FIXTURE.read_text())
    runs = [json.dumps(diameter_run(QuotientSpec(2, 2), torus, 6, 3, 6, workers=w).to_json(), sort_keys=True)
            for w in (1, 1, 2, 4)]
    assert len(set(runs)) == 1
    second = json.loads(runs[0])
    assert second == expected and second["status"] == "covered"
    return f"class 1 covering radius 2; class 2 estimate {second['covering_radius']} (fixture match)"
