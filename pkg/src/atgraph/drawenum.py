"""Ground-truth simple realizability for small complete graphs.

Rotation systems are enumerated vertex by vertex with pruning on induced K4
(and, from six vertices on, K5) subsystems.  Crossings and crossing
rotations follow from the K4 table; the remaining freedom, the order of
crossings along each edge, is searched until a planarization with Euler
characteristic 2 turns up.

Why this decides realizability: a simple drawing planarizes into a spherical
map whose vertex rotations are the drawing's rotations and whose crossing
nodes alternate between the two edges.  Conversely, given such a map on the
sphere, reading each edge as the path through its crossing nodes gives a
drawing in which exactly the pairs of ``X`` cross, each once, and the
alternation makes every crossing proper.  So ``(K_n, X)`` is simply
realizable iff some rotation system, crossing rotation assignment and edge
order yields a spherical map.  Crossing rotations are forced by the K4
subdrawing containing the crossing, and edge orders of two crossing edges
sharing a vertex are forced by the K5 subdrawing they span.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator, Optional, Sequence

from .cmap import build_map, is_spherical
from .core import ATGraph, Edge, EdgePair, edge, edge_pair
from .geometry import K4_CONVEX, K4_TRIANGLE, mirror, straight_line_ers
from .rotation import (
    EdgeOrders,
    ExtendedRotationSystem,
    Rotation,
    RotationSystem,
    cyclic_orders,
    invert_rs,
    normalize_cycle,
    relabel_rs,
    restrict_rs,
)

log = logging.getLogger(__name__)

MAX_EXTENSIONS = 10**7


class ExtensionCapExceeded(RuntimeError):
    pass


# -- K4 table ------------------------------------------------------------------


@dataclass(frozen=True)
class K4Entry:
    status: str  # "planar", "crossing" or "unrealizable"
    pair: Optional[EdgePair] = None
    rotation: Optional[Rotation] = None


@lru_cache(maxsize=None)
def _positions(rot: Rotation) -> dict[int, int]:
    return {v: i for i, v in enumerate(rot)}


def _orient(rot: Rotation, x: int, y: int, z: int) -> bool:
    p = _positions(rot)
    px, py, pz = p[x], p[y], p[z]
    return px < py < pz or py < pz < px or pz < px < py


def _k4_bits(rs: RotationSystem, quad: Sequence[int]) -> tuple[bool, ...]:
    a, b, c, d = quad
    return (
        _orient(rs[a], b, c, d),
        _orient(rs[b], a, c, d),
        _orient(rs[c], a, b, d),
        _orient(rs[d], a, b, c),
    )


@lru_cache(maxsize=None)
def _k4_by_bits() -> dict[tuple[bool, ...], K4Entry]:
    table: dict[tuple[bool, ...], K4Entry] = {}
    for config in (K4_CONVEX, K4_TRIANGLE):
        for pts in (config, mirror(config)):
            for perm in itertools.permutations(range(4)):
                placed = [None] * 4
                for pos, label in enumerate(perm):
                    placed[label] = pts[pos]
                x = straight_line_ers(placed)
                if x.crossings:
                    (p,) = x.crossings
                    entry = K4Entry("crossing", p, x.crossing_rotations[p])
                else:
                    entry = K4Entry("planar")
                key = _k4_bits(x.rs, (0, 1, 2, 3))
                if table.setdefault(key, entry) != entry:
                    raise AssertionError(f"K4 geometry gives two drawings for {x.rs}")
    return table


def k4_table() -> dict[RotationSystem, K4Entry]:
    """All 16 rotation systems of K4, each marked planar, crossing or unrealizable."""
    by_bits = _k4_by_bits()
    out = {}
    for rots in itertools.product(*(cyclic_orders([u for u in range(4) if u != v]) for v in range(4))):
        rs = tuple(rots)
        out[rs] = by_bits.get(_k4_bits(rs, (0, 1, 2, 3)), K4Entry("unrealizable"))
    return out


def k4_entry(rs: RotationSystem, quad: Sequence[int]) -> K4Entry:
    """K4 table entry of the subsystem on ``quad``, in original labels."""
    quad = sorted(quad)
    entry = _k4_by_bits().get(_k4_bits(rs, quad))
    if entry is None:
        return K4Entry("unrealizable")
    if entry.status == "planar":
        return entry
    (a, b), (c, d) = entry.pair
    q = quad
    return K4Entry(
        "crossing",
        edge_pair((q[a], q[b]), (q[c], q[d])),
        normalize_cycle([q[i] for i in entry.rotation]),
    )


def crossings_from_rotations(rs: RotationSystem) -> Optional[frozenset[EdgePair]]:
    derived = derive_crossings(rs)
    return None if derived is None else frozenset(derived)


def derive_crossings(rs: RotationSystem) -> Optional[dict[EdgePair, Rotation]]:
    """Crossing pairs with their rotations, or None if some K4 is unrealizable."""
    out = {}
    for quad in itertools.combinations(range(len(rs)), 4):
        entry = k4_entry(rs, quad)
        if entry.status == "unrealizable":
            return None
        if entry.status == "crossing":
            out[entry.pair] = entry.rotation
    return out


# -- crossing orders -------------------------------------------------------------

K5Lookup = Callable[[RotationSystem], Optional[EdgeOrders]]


def _crossing_partners(crossings) -> dict[Edge, list[Edge]]:
    partners: dict[Edge, list[Edge]] = {}
    for e, f in crossings:
        partners.setdefault(e, []).append(f)
        partners.setdefault(f, []).append(e)
    for lst in partners.values():
        lst.sort()
    return partners


@dataclass(frozen=True)
class OrderObstruction:
    vertices: tuple[int, ...]
    reason: str


def order_constraints(
    rs: RotationSystem, crossings, k5: Optional[K5Lookup]
) -> dict[Edge, set[tuple[Edge, Edge]]] | OrderObstruction:
    """Forced relative orders along each edge: ``(f, g)`` means ``f`` is met
    before ``g`` walking from the smaller endpoint.

    Only pairs ``f, g`` sharing a vertex are forced, by the K5 they span
    together with the edge.  With ``k5=None`` (five vertices or fewer) there
    are no constraints.
    """
    partners = _crossing_partners(crossings)
    out: dict[Edge, set[tuple[Edge, Edge]]] = {e: set() for e in partners}
    if k5 is None or len(rs) <= 5:
        return out
    for e, fs in partners.items():
        for f, g in itertools.combinations(fs, 2):
            shared = set(f) & set(g)
            if not shared:
                continue
            U = sorted(set(e) | set(f) | set(g))
            sub = k5(restrict_rs(rs, U))
            if sub is None:
                return OrderObstruction(tuple(U), "unrealizable 5-vertex subsystem")
            local = {v: i for i, v in enumerate(U)}
            seq = sub[(local[e[0]], local[e[1]])]
            lf, lg = (local[f[0]], local[f[1]]), (local[g[0]], local[g[1]])
            out[e].add((f, g) if seq.index(lf) < seq.index(lg) else (g, f))
    for e, rel in out.items():
        if _has_cycle(partners[e], rel):
            return OrderObstruction(tuple(sorted(set(e) | {v for f, g in rel for v in f + g})), "cyclic order")
    return out


def _has_cycle(nodes, rel) -> bool:
    return next(linear_extensions(nodes, rel), None) is None and bool(nodes)


def linear_extensions(nodes: Sequence[Edge], rel: set[tuple[Edge, Edge]], reverse: bool = False) -> Iterator[tuple[Edge, ...]]:
    nodes = sorted(nodes, reverse=reverse)
    preds = {x: {a for a, b in rel if b == x} for x in nodes}

    def rec(placed: list[Edge], left: list[Edge]):
        if not left:
            yield tuple(placed)
            return
        done = set(placed)
        for x in left:
            if preds[x] <= done:
                placed.append(x)
                yield from rec(placed, [y for y in left if y != x])
                placed.pop()

    yield from rec([], nodes)


def search_orders(
    rs: RotationSystem,
    rotations: dict[EdgePair, Rotation],
    constraints: dict[Edge, set[tuple[Edge, Edge]]],
    find_all: bool = False,
    reverse: bool = False,
) -> list[EdgeOrders]:
    """Edge orders giving a spherical planarization (the first one, or all)."""
    partners = _crossing_partners(rotations)
    edges = sorted(partners)
    choices = [list(linear_extensions(partners[e], constraints.get(e, set()), reverse)) for e in edges]
    total = 1
    for c in choices:
        total *= len(c)
    if total > MAX_EXTENSIONS:
        raise ExtensionCapExceeded(f"{total} order combinations for rotation system {rs}")
    found = []
    crossings = frozenset(rotations)
    for combo in itertools.product(*choices):
        orders = dict(zip(edges, combo))
        if is_spherical(build_map(ExtendedRotationSystem(rs, crossings, rotations, orders))):
            found.append(orders)
            if not find_all:
                break
    return found


# -- rotation system enumeration ----------------------------------------------------

Accept4 = Callable[[RotationSystem, tuple[int, ...]], bool]
Accept5 = Callable[[RotationSystem, tuple[int, ...]], bool]


def _insert_options(rot: Rotation, new: int) -> list[Rotation]:
    if len(rot) < 2:
        return [normalize_cycle(rot + (new,))]
    return [normalize_cycle(rot[:i] + (new,) + rot[i:]) for i in range(1, len(rot) + 1)]


def extend_rotation_systems(
    rs: RotationSystem,
    accept4: Accept4,
    accept5: Optional[Accept5] = None,
    fix_vertex0: bool = False,
    reverse: bool = False,
) -> Iterator[RotationSystem]:
    """Rotation systems on ``len(rs) + 1`` vertices restricting to ``rs``."""
    m = len(rs)
    own_orders = cyclic_orders(range(m))
    if reverse:
        own_orders = own_orders[::-1]
    for own in own_orders:
        cur = list(rs) + [own]

        def place(v: int) -> Iterator[RotationSystem]:
            if v == m:
                full = tuple(cur)
                if accept5 is not None and m >= 4:
                    for rest in itertools.combinations(range(m), 4):
                        if not accept5(full, rest + (m,)):
                            return
                yield full
                return
            if fix_vertex0 and v == 0:
                opts = [rs[0] + (m,)]
            else:
                opts = _insert_options(rs[v], m)
                if reverse:
                    opts = opts[::-1]
            for opt in opts:
                cur[v] = opt
                if all(accept4(cur, (a, b, v, m)) for a, b in itertools.combinations(range(v), 2)):
                    yield from place(v + 1)
            cur[v] = rs[v]

        yield from place(0)


def enumerate_rotation_systems(
    k: int,
    accept4: Accept4,
    accept5: Optional[Accept5] = None,
    fix_vertex0: bool = False,
    reverse: bool = False,
    start: Optional[Sequence[RotationSystem]] = None,
) -> Iterator[RotationSystem]:
    """Depth-first enumeration of rotation systems of K_k (k >= 3) passing the filters.

    With ``fix_vertex0`` the rotation of vertex 0 is ``(1, 2, ..., k-1)``.
    ``start`` overrides the initial systems (default: the unique one of K3).
    """
    if start is None:
        start = [((1, 2), (0, 2), (0, 1))]

    def rec(rs: RotationSystem) -> Iterator[RotationSystem]:
        if len(rs) == k:
            yield rs
            return
        for nxt in extend_rotation_systems(rs, accept4, accept5, fix_vertex0, reverse):
            yield from rec(nxt)

    for rs in start:
        yield from rec(rs)


def _realizable_k4(rs: RotationSystem, quad) -> bool:
    return _k4_by_bits().get(_k4_bits(rs, quad)) is not None


def inversion_partner(rs: RotationSystem) -> RotationSystem:
    """Inverse system relabeled so vertex 0 again has rotation ``(1, ..., k-1)``."""
    k = len(rs)
    perm = [0] + [k - i for i in range(1, k)]
    return relabel_rs(invert_rs(rs), perm)


# -- K5 order oracles --------------------------------------------------------------


@lru_cache(maxsize=None)
def free_k5_orders(rs5: RotationSystem) -> Optional[EdgeOrders]:
    """Edge orders of a realization of this K5 rotation system, by free search."""
    rot = derive_crossings(rs5)
    if rot is None:
        return None
    found = search_orders(rs5, rot, order_constraints(rs5, rot, None))
    return found[0] if found else None


def realize_rotation_system(
    rs: RotationSystem, k5: Optional[K5Lookup] = None, find_all: bool = False, reverse: bool = False
) -> list[ExtendedRotationSystem]:
    """Simple drawings with rotation system ``rs`` (first one found, or all)."""
    rot = derive_crossings(rs)
    if rot is None:
        return []
    if k5 is None and len(rs) > 5:
        k5 = free_k5_orders
    cons = order_constraints(rs, rot, k5)
    if isinstance(cons, OrderObstruction):
        return []
    crossings = frozenset(rot)
    return [
        ExtendedRotationSystem(rs, crossings, dict(rot), orders)
        for orders in search_orders(rs, rot, cons, find_all=find_all, reverse=reverse)
    ]


def realize_simple(A: ATGraph, k5: Optional[K5Lookup] = None) -> Optional[ExtendedRotationSystem]:
    """A simple realization of ``A`` (as extended rotation system), or None.

    Independent of the databases: rotation systems are pruned against the
    crossings prescribed on each K4, and K5 orders are found by free search.
    """
    if A.n < 4:
        return ExtendedRotationSystem(tuple(tuple(u for u in range(A.n) if u != v) for v in range(A.n)), A.crossings)
    X = A.crossings

    def accept4(rs, quad) -> bool:
        entry = k4_entry(rs, quad)
        if entry.status == "unrealizable":
            return False
        a, b, c, d = sorted(quad)
        local = [p for p in ((edge(a, b), edge(c, d)), (edge(a, c), edge(b, d)), (edge(a, d), edge(b, c))) if p in X]
        if entry.status == "planar":
            return not local
        return local == [entry.pair]

    def accept5(rs, quint) -> bool:
        return free_k5_orders(restrict_rs(rs, quint)) is not None

    for rs in enumerate_rotation_systems(A.n, accept4, accept5 if A.n > 5 else None):
        found = realize_rotation_system(rs, k5)
        if found:
            return found[0]
    return None
