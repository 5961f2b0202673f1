"""Acceptance criteria, one test each.

Every test records a PASS/FAIL line which is echoed to the terminal (and to
stdout with ``-s``) so the suite doubles as a readable report.
"""

import functools
import itertools
import random
import time

import pytest

from atgraph.core import ATGraph, induced_subgraph, counterexample_k6, three_crossing_k6
from atgraph.database import (
    PACKAGE_DB_DIR,
    generate_database,
    heredity_violations,
    load_database,
)
from atgraph.geometry import convex_atgraph, convex_ers
from atgraph.gf2 import rank
from atgraph.hanging import build_g, expected_length, format_word, nail_rank, remove_nail
from atgraph.rotation import invert_rs
from atgraph.simple import check_simple, compute_rotation_system
from atgraph.z2 import (
    EvenK5,
    Odd2K3,
    all_switch_moves,
    apply_moves,
    check_z2,
    check_z2_algebraic,
    convex_drawing_vector,
    petersen_analysis,
    switch_matrix,
)

RESULTS: list[str] = []


def criterion(number, title):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            try:
                detail = fn(*args, **kwargs)
            except BaseException as err:
                line = f"criterion {number:>2} FAIL  {title}: {type(err).__name__}: {err}".splitlines()[0]
                RESULTS.append(line)
                print(line)
                raise
            line = f"criterion {number:>2} PASS  {title}" + (f" ({detail})" if detail else "")
            RESULTS.append(line)
            print(line)

        return run

    return wrap


@pytest.fixture(scope="module")
def dbs():
    return load_database(4), load_database(5), load_database(6)


@criterion(1, "six-vertex counterexample rejected, its 5-vertex subgraphs accepted")
def test_c01_counterexample(dbs):
    _, db5, db6 = dbs
    A = counterexample_k6()
    start = time.perf_counter()
    v = check_simple(A, db5, db6)
    subs = [check_simple(induced_subgraph(A, U), db5, db6).realizable for U in itertools.combinations(range(6), 5)]
    elapsed = time.perf_counter() - start
    assert not v.realizable and v.witness == (0, 1, 2, 3, 4, 5)
    assert all(subs) and len(subs) == 6
    assert elapsed < 1.0
    return f"{elapsed * 1000:.0f} ms"


def _z2_samples(n, count, rnd):
    moves = all_switch_moves(n)
    base = convex_drawing_vector(n)
    M = 3 * len(list(itertools.combinations(range(n), 4)))
    for i in range(count):
        kind = i % 3
        if kind == 0:
            yield ATGraph.from_mask(n, rnd.getrandbits(M))
            continue
        bits = apply_moves(n, base, rnd.choices(moves, k=rnd.randint(1, 25))).bits
        if kind == 2:
            bits ^= 1 << rnd.randrange(M)
        yield ATGraph.from_mask(n, bits)


@criterion(2, "scan and linear-algebra Z2 verdicts agree")
def test_c02_z2_equivalence():
    start = time.perf_counter()
    disagreements = 0
    realizable = 0
    for m in range(1 << 15):
        A = ATGraph.from_mask(5, m)
        a, b = check_z2(A).realizable, check_z2_algebraic(A).realizable
        disagreements += a != b
        realizable += a
    rnd = random.Random(2024)
    counts = {}
    for n in (6, 7):
        counts[n] = 0
        for A in _z2_samples(n, 2000, rnd):
            a, b = check_z2(A).realizable, check_z2_algebraic(A).realizable
            disagreements += a != b
            counts[n] += 1
    elapsed = time.perf_counter() - start
    assert counts == {6: 2000, 7: 2000}
    assert disagreements == 0
    assert elapsed < 120
    return f"{(1 << 15) + 4000} graphs, {realizable} realizable at n=5, {elapsed:.1f} s"


@criterion(3, "minimal Z2 obstructions with exact witnesses")
def test_c03_minimality():
    v = check_z2(ATGraph(5, frozenset()))
    assert not v.realizable and v.witness == EvenK5((0, 1, 2, 3, 4))
    A = three_crossing_k6()
    v = check_z2(A, all_witnesses=True)
    assert v.witness == Odd2K3((0, 1, 4), (2, 3, 5))
    assert not any(isinstance(w, EvenK5) for w in v.all_witnesses)
    return f"{v.witness}"


@criterion(4, "rank of the switch-vector matrix")
def test_c04_dimension():
    r5, r6 = rank(switch_matrix(5)), rank(switch_matrix(6))
    assert (r5, r6) == (14, 35)
    return f"n=5: {r5}, n=6: {r6}"


@criterion(5, "Petersen-graph cycle counts")
def test_c05_petersen():
    r = petersen_analysis()
    assert r.odd_total == 32 and r.odd_types == {"C5": 12, "C9": 20}
    assert r.even_dim == 5 and r.even_types == {"C6": 10, "C8": 15, "2C5": 6}
    return "32 odd, even dimension 5"


@criterion(6, "switch moves preserve Z2 parity on K7")
def test_c06_parity_invariance():
    rnd = random.Random(6)
    moves = all_switch_moves(7)
    base = convex_drawing_vector(7)
    violations = 0
    for _ in range(10_000):
        A = ATGraph.from_mask(7, apply_moves(7, base, rnd.choices(moves, k=rnd.randint(1, 30))).bits)
        violations += not check_z2(A).realizable
    assert violations == 0
    return "10000 sequences, 0 violations"


@criterion(7, "database contents, heredity and generation time")
def test_c07_database(dbs):
    db4, db5, db6 = dbs
    assert len(db4) == 2
    assert ATGraph(4, frozenset()) in db4 and ATGraph.from_pairs(4, [((0, 2), (1, 3))]) in db4
    assert ATGraph(5, frozenset()) not in db5
    assert sum(len(e.atgraph().crossings) == 5 for e in db5.entries.values()) == 2
    assert heredity_violations(db5, db4) == [] and heredity_violations(db6, db5) == []
    for e in db5.entries.values():
        A = e.atgraph()
        for v in range(5):
            free = [u for u in range(5) if u != v and not any((min(u, v), max(u, v)) in p for p in A.crossings)]
            assert free, f"vertex {v} has no crossing-free edge"
    start = time.perf_counter()
    fresh = generate_database(6, db_prev=db5)
    elapsed = time.perf_counter() - start
    assert fresh.dumps() == db6.dumps()
    assert elapsed < 3600
    return f"DB sizes {len(db4)}/{len(db5)}/{len(db6)}, DB6 in {elapsed:.1f} s"


@criterion(8, "rotation systems of convex drawings recovered")
def test_c08_rotation_pipeline(dbs):
    _, db5, _ = dbs
    for n in range(5, 10):
        x = convex_ers(n)
        r = compute_rotation_system(ATGraph(n, x.crossings), db5)
        assert r.rs in (x.rs, invert_rs(x.rs)), n
    return "n=5..9"


@criterion(9, "picture-hanging words")
def test_c09_hanging():
    assert format_word(build_g(2)) == "z y^-1 z^-1"
    assert format_word(build_g(3)) == "z y^-1 z^-1 x1^-1 z y z^-1"
    assert format_word(build_g(4)) == (
        "z y^-1 z^-1 x1^-1 x2^-1 x1 z y z^-1 x1^-1 z y^-1 z^-1 x1^-1 x2 x1 z y z^-1"
    )
    for k in range(2, 13):
        g = build_g(k)
        assert len(g) == 3 + (k - 2) * 2 ** (k - 1) == expected_length(k)
        for i in range(k):
            out = remove_nail(g, i)
            assert all(nail_rank(k, j) <= nail_rank(k, i) for j in out.generators()), (k, i)
        assert len(remove_nail(g, "x1" if k > 2 else "y")) == 0
    return "k=2..12"


@criterion(10, "databases and witnesses identical across runs and job counts")
def test_c10_determinism(dbs):
    _, db5, db6 = dbs
    files = {k: (PACKAGE_DB_DIR / f"db{k}.atdb").read_text() for k in (4, 5, 6)}
    assert generate_database(4).dumps() == generate_database(4).dumps() == files[4]
    assert generate_database(5).dumps() == generate_database(5, jobs=2).dumps() == files[5]
    assert generate_database(6, jobs=2, db_prev=db5).dumps() == files[6]

    big = convex_atgraph(14)
    fixtures = [counterexample_k6(), ATGraph(7, frozenset()), ATGraph.from_mask(14, big.mask ^ (1 << 2990))]
    for A in fixtures:
        runs = [check_simple(A, db5, db6, witness_all=True, jobs=j) for j in (1, 1, 3)]
        assert len({(r.witness, r.all_witnesses) for r in runs}) == 1
    for A in (ATGraph(5, frozenset()), three_crossing_k6(), counterexample_k6()):
        assert len({(check_z2(A, all_witnesses=True).all_witnesses) for _ in range(2)}) == 1
    return "DB4/DB5/DB6 and witnesses"
