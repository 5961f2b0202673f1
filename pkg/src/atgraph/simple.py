"""Subset-scan decider for simple drawings of AT-graphs on K_n.

The decision is a scan: a complete AT-graph is simply realizable iff every
induced AT-graph on five and six vertices is in the corresponding database.
The rotation pipeline additionally assembles a global rotation system from
the five-vertex pieces, or returns a six-vertex obstruction.
"""

from __future__ import annotations

import itertools
import multiprocessing
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping, Optional, Sequence

from .core import ATGraph, Edge, _index_table, edge, pairs_of
from .database import Database, load_database
from .drawenum import k4_entry
from .rotation import (
    ExtendedRotationSystem,
    Rotation,
    RotationSystem,
    normalize_cycle,
    restrict_cycle,
)

Subset = tuple[int, ...]


@dataclass(frozen=True)
class SimpleVerdict:
    realizable: bool
    witness: Optional[Subset] = None
    rotation_system: Optional[ExtendedRotationSystem] = field(default=None, compare=False)
    all_witnesses: tuple[Subset, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.realizable != (self.witness is None):
            raise ValueError("a verdict carries a witness exactly when it is negative")


@dataclass(frozen=True)
class Obstruction:
    """A vertex set (at most six vertices) whose induced AT-graph is not simply realizable."""

    vertices: Subset
    reason: str

    def __str__(self) -> str:
        return "witness " + " ".join(map(str, self.vertices))


class IncompatibleRotationsError(ValueError):
    def __init__(self, first: Subset, second: Subset):
        super().__init__(f"partial rotations on {first} and {second} are incompatible")
        self.first = first
        self.second = second


# -- induced masks ------------------------------------------------------------------


@lru_cache(maxsize=None)
def _local_pairs(k: int) -> tuple:
    return pairs_of(k)


def induced_mask(n: int, mask: int, U: Sequence[int]) -> int:
    """Mask of the AT-graph induced on ``U`` (relabeled by ascending id)."""
    table = _index_table(n)
    out = 0
    for j, ((a, b), (c, d)) in enumerate(_local_pairs(len(U))):
        i = table[(edge(U[a], U[b]), edge(U[c], U[d]))]
        if mask >> i & 1:
            out |= 1 << j
    return out


def _bad_subsets(args) -> list[Subset]:
    n, mask, k, subsets, good, first_only = args
    bad = []
    for U in subsets:
        if induced_mask(n, mask, U) not in good:
            bad.append(U)
            if first_only:
                break
    return bad


def _scan(n, mask, k, good, witness_all, jobs) -> list[Subset]:
    subsets = list(itertools.combinations(range(n), k))
    if jobs <= 1 or len(subsets) < 2000:
        return _bad_subsets((n, mask, k, subsets, good, not witness_all))
    size = -(-len(subsets) // (4 * jobs))
    chunks = [(n, mask, k, subsets[i : i + size], good, not witness_all) for i in range(0, len(subsets), size)]
    with multiprocessing.get_context("fork").Pool(jobs) as pool:
        parts = pool.map(_bad_subsets, chunks)  # ordered, so the first witness is deterministic
    out = [U for part in parts for U in part]
    return out if witness_all else out[:1]


def check_simple(
    A: ATGraph,
    db5: Optional[Database] = None,
    db6: Optional[Database] = None,
    witness_all: bool = False,
    want_rotation: bool = False,
    jobs: int = 1,
    db4: Optional[Database] = None,
) -> SimpleVerdict:
    """Scan all 5-subsets, then all 6-subsets, against the databases.

    The witness is the lexicographically first failing 5-subset, or failing
    that the first failing 6-subset.  With ``witness_all`` every minimal
    failing subset is listed: all failing 5-subsets plus the failing
    6-subsets none of whose 5-subsets fail.
    """
    n = A.n
    if n <= 3:
        return SimpleVerdict(True)
    if n == 4:
        db4 = db4 or load_database(4)
        ok = A in db4
        return SimpleVerdict(ok, None if ok else (0, 1, 2, 3), all_witnesses=() if ok else ((0, 1, 2, 3),))
    db5 = db5 or load_database(5)
    bad = _scan(n, A.mask, 5, db5.labeled_masks(), witness_all, jobs)
    if n >= 6 and (witness_all or not bad):
        db6 = db6 or load_database(6)
        bad5 = set(bad)
        bad6 = [
            U
            for U in _scan(n, A.mask, 6, db6.labeled_masks(), True if witness_all else False, jobs)
            if not any(Q in bad5 for Q in itertools.combinations(U, 5))
        ]
        bad += bad6
    if bad:
        return SimpleVerdict(False, bad[0], all_witnesses=tuple(bad) if witness_all else (bad[0],))
    rot = None
    if want_rotation and n >= 5:
        rot = compute_rotation_system(A, db5)
        if isinstance(rot, Obstruction):
            raise AssertionError(f"scan accepted but rotation pipeline found {rot}")
    return SimpleVerdict(True, rotation_system=rot)


# -- five-vertex pieces -------------------------------------------------------------


def lookup_rotation(A5: ATGraph, db5: Optional[Database] = None) -> Optional[RotationSystem]:
    """Rotation system realizing a 5-vertex AT-graph in its own labels, or None."""
    if A5.n != 5:
        raise ValueError("lookup_rotation takes a 5-vertex AT-graph")
    x = (db5 or load_database(5)).lookup(A5)
    return None if x is None else x.rs


def _piece(A: ATGraph, db5: Database, Q: Subset):
    x = db5.lookup(ATGraph.from_mask(5, induced_mask(A.n, A.mask, Q)))
    return x


def _globalize(rs: RotationSystem, Q: Subset) -> dict[int, Rotation]:
    return {Q[i]: normalize_cycle([Q[u] for u in r]) for i, r in enumerate(rs)}


def _restrict_global(rot: Mapping[int, Rotation], F: Sequence[int]) -> tuple[Rotation, ...]:
    return tuple(restrict_cycle(rot[v], F) for v in F)


def _invert_global(rot: Mapping[int, Rotation]) -> dict[int, Rotation]:
    return {v: normalize_cycle(r[::-1]) for v, r in rot.items()}


@dataclass
class Orientation:
    """Oriented rotation systems ``phi[Q]`` for every 5-subset ``Q`` (global labels)."""

    phi: dict[Subset, dict[int, Rotation]]
    flips: dict[Subset, bool]


def _flip_label(r1: Mapping[int, Rotation], r2: Mapping[int, Rotation], F: Subset) -> Optional[bool]:
    a, b = _restrict_global(r1, F), _restrict_global(r2, F)
    if a == b:
        return False
    if a == _restrict_global(_invert_global(r2), F):
        return True
    return None


def _neighbors(Q: Subset, n: int):
    members = set(Q)
    outside = [v for v in range(n) if v not in members]
    for a in Q:
        for b in outside:
            yield tuple(sorted((members - {a}) | {b})), tuple(x for x in Q if x != a)


def orient_5tuples(A: ATGraph, db5: Optional[Database] = None) -> Orientation | Obstruction:
    """Orient the rotation systems of all 5-subsets consistently.

    Two 5-subsets sharing four vertices are linked, with label "flip" when
    one system must be inverted to agree with the other on the shared four.
    Labels are propagated by BFS from ``{0..4}``, whose system is normalized
    so that vertex 0 sees ``1, 2, 3`` in that cyclic order.  A label that
    conflicts with the propagated flips certifies a six-vertex set whose
    5-subsets cannot be oriented; the first such set is returned.
    """
    db5 = db5 or load_database(5)
    n = A.n
    if n < 5:
        raise ValueError("orient_5tuples needs at least five vertices")
    raw: dict[Subset, dict[int, Rotation]] = {}
    for Q in itertools.combinations(range(n), 5):
        x = _piece(A, db5, Q)
        if x is None:
            return Obstruction(Q, "5-subset not simply realizable")
        raw[Q] = _globalize(x.rs, Q)

    root = tuple(range(5))
    flips = {root: restrict_cycle(raw[root][0], (1, 2, 3)) != (1, 2, 3)}
    queue = deque([root])
    conflict = False
    while queue:
        Q = queue.popleft()
        for R, F in _neighbors(Q, n):
            label = _flip_label(raw[Q], raw[R], F)
            if label is None:
                return Obstruction(tuple(sorted(set(Q) | set(R))), "incompatible rotations on a shared K4")
            if R not in flips:
                flips[R] = flips[Q] ^ label
                queue.append(R)
            elif flips[R] != flips[Q] ^ label:
                conflict = True
    if len(flips) != len(raw):
        raise AssertionError("graph of 5-subsets is disconnected")
    if conflict:
        S = _nonorientable_6set(raw, n)
        if S is None:
            raise AssertionError("orientation conflict without a nonorientable 6-subset")
        return Obstruction(S, "5-subsets cannot be oriented consistently")
    phi = {Q: (_invert_global(r) if flips[Q] else r) for Q, r in raw.items()}
    return Orientation(phi, flips)


def _nonorientable_6set(raw, n: int) -> Optional[Subset]:
    """First 6-set containing an odd triangle of flip labels."""
    for S in itertools.combinations(range(n), 6):
        quints = list(itertools.combinations(S, 5))
        for Q1, Q2, Q3 in itertools.combinations(quints, 3):
            total = 0
            for P, R in ((Q1, Q2), (Q2, Q3), (Q1, Q3)):
                F = tuple(sorted(set(P) & set(R)))
                label = _flip_label(raw[P], raw[R], F)
                if label is None:
                    return S
                total ^= label
            if total:
                return S
    return None


# -- merging cyclic orders ----------------------------------------------------------


def merge_rotations(partials: Mapping[Subset, Rotation]) -> Rotation:
    """Merge cyclic orders on all 4-subsets of a ground set into one cyclic order.

    Raises ``IncompatibleRotationsError`` naming two 4-subsets whose orders
    disagree on their three common elements.
    """
    partials = {tuple(sorted(F)): normalize_cycle(r) for F, r in partials.items()}
    ground = sorted(set().union(*partials)) if partials else []
    if len(ground) < 4:
        raise ValueError("need a ground set of at least four elements")
    for F in itertools.combinations(ground, 4):
        if F not in partials:
            raise ValueError(f"missing partial rotation for {F}")
        if sorted(partials[F]) != list(F):
            raise ValueError(f"rotation {partials[F]} is not a cyclic order of {F}")
    seen: dict[Subset, tuple[Subset, Rotation]] = {}
    for F in sorted(partials):
        for T in itertools.combinations(F, 3):
            r = restrict_cycle(partials[F], T)
            if T in seen and seen[T][1] != r:
                raise IncompatibleRotationsError(seen[T][0], F)
            seen.setdefault(T, (F, r))

    cyc = list(partials[tuple(ground[:4])])
    for i, x in enumerate(ground[4:], start=4):
        placed = ground[:i]
        tests = [F + (x,) for F in itertools.combinations(placed, 3)]
        options = []
        for gap in range(1, len(cyc) + 1):
            cand = cyc[:gap] + [x] + cyc[gap:]
            if all(restrict_cycle(cand, T) == partials[tuple(sorted(T))] for T in tests):
                options.append(cand)
        if len(options) != 1:
            raise AssertionError(f"{len(options)} admissible positions for {x}")
        cyc = options[0]
    return normalize_cycle(cyc)


# -- global rotation system -------------------------------------------------------


def crossing_order_relation(
    A: ATGraph, v: int, e: Edge, db5: Optional[Database] = None
) -> tuple[tuple[Edge, ...], None] | tuple[None, Obstruction]:
    """Order in which the edges ``v u`` crossing ``e`` meet ``e`` (from its smaller endpoint).

    Each two such edges span a 5-subset with ``e`` whose realization fixes
    their order; a cyclic relation yields an oriented triangle and the
    six-vertex obstruction ``{v, u1, u2, u3, x, y}``.
    """
    db5 = db5 or load_database(5)
    x, y = e = edge(*e)
    if v in e:
        raise ValueError("v must not be an endpoint of e")
    star = [edge(v, u) for u in range(A.n) if u not in (v, x, y) and A.crosses(e, edge(v, u))]
    before: dict[tuple[Edge, Edge], bool] = {}
    for f, g in itertools.combinations(star, 2):
        Q = tuple(sorted({x, y, v, *f, *g}))
        piece = _piece(A, db5, Q)
        if piece is None:
            return None, Obstruction(Q, "5-subset not simply realizable")
        local = {w: i for i, w in enumerate(Q)}
        seq = piece.orders[(local[x], local[y])]
        lf, lg = edge(local[f[0]], local[f[1]]), edge(local[g[0]], local[g[1]])
        before[(f, g)] = seq.index(lf) < seq.index(lg)
        before[(g, f)] = not before[(f, g)]
    for f, g, h in itertools.combinations(star, 3):
        for a, b, c in ((f, g, h), (f, h, g)):
            if before[(a, b)] and before[(b, c)] and before[(c, a)]:
                us = {w for s in (a, b, c) for w in s if w != v}
                return None, Obstruction(tuple(sorted(us | {v, x, y})), "cyclic crossing order")
    wins = {f: sum(before[(f, g)] for g in star if g != f) for f in star}
    return tuple(sorted(star, key=lambda f: -wins[f])), None


def compute_rotation_system(A: ATGraph, db5: Optional[Database] = None) -> ExtendedRotationSystem | Obstruction:
    """Extended rotation system of a simple realization of ``A``, or an obstruction.

    Crossing orders are filled for the edges on which every two crossing
    edges share a vertex (the only pairs whose order is forced); other edges
    are left out of ``orders``.
    """
    db5 = db5 or load_database(5)
    n = A.n
    if n < 5:
        raise ValueError("compute_rotation_system needs at least five vertices")
    oriented = orient_5tuples(A, db5)
    if isinstance(oriented, Obstruction):
        return oriented
    rs = []
    for v in range(n):
        others = [u for u in range(n) if u != v]
        partials = {}
        for F in itertools.combinations(others, 4):
            Q = tuple(sorted(F + (v,)))
            partials[F] = oriented.phi[Q][v]
        try:
            rs.append(merge_rotations(partials))
        except IncompatibleRotationsError as err:
            return Obstruction(tuple(sorted({v, *err.first, *err.second})), "incompatible partial rotations")
    rs = tuple(rs)
    rotations = {}
    for quad in itertools.combinations(range(n), 4):
        entry = k4_entry(rs, quad)
        if entry.status == "unrealizable":
            raise AssertionError(f"merged rotation system has an unrealizable K4 on {quad}")
        if entry.status == "crossing":
            rotations[entry.pair] = entry.rotation
    if frozenset(rotations) != A.crossings:
        raise AssertionError("merged rotation system does not reproduce the crossing set")
    orders = {}
    for e in itertools.combinations(range(n), 2):
        crossing = [f for p in A.crossings if e in p for f in p if f != e]
        if len(crossing) <= 1:
            if crossing:
                orders[e] = tuple(crossing)
            continue
        if not all(set(f) & set(g) for f, g in itertools.combinations(crossing, 2)):
            continue
        order = _edge_order(A, e, crossing, db5)
        if isinstance(order, Obstruction):
            return order
        orders[e] = order
    return ExtendedRotationSystem(rs, A.crossings, rotations, orders)


def _edge_order(A, e, crossing, db5):
    # all crossing edges pairwise share a vertex: a star at one vertex, or a triangle
    common = set.intersection(*(set(f) for f in crossing))
    if common:
        (v,) = common
        order, obstruction = crossing_order_relation(A, v, e, db5)
        return obstruction if obstruction is not None else order
    x, y = e
    U = tuple(sorted({x, y, *(w for f in crossing for w in f)}))
    piece = _piece(A, db5, U) if len(U) == 5 else None
    if piece is None:
        raise AssertionError(f"edge {e}: crossing edges {crossing} share no vertex yet span {U}")
    local = {w: i for i, w in enumerate(U)}
    back = {edge(local[a], local[b]): (a, b) for a, b in crossing}
    return tuple(back[f] for f in piece.orders[(local[x], local[y])])


def witness_is_rejected(A: ATGraph, U: Subset, db5=None, db6=None) -> bool:
    """Whether the AT-graph induced on ``U`` is missing from its database."""
    db = {4: None, 5: db5, 6: db6}[len(U)] or load_database(len(U))
    return induced_mask(A.n, A.mask, U) not in db.labeled_masks()
