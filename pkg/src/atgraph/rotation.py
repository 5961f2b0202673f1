"""Cyclic orders, rotation systems and extended rotation systems.

A rotation is a tuple holding a cyclic order, rotated so its smallest element
comes first.  A rotation system is a tuple of rotations indexed by vertex;
``rs[v]`` lists the other vertices in clockwise order around ``v``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .core import Edge, EdgePair, edge, edge_pair

Rotation = tuple[int, ...]
RotationSystem = tuple[Rotation, ...]


def normalize_cycle(seq: Sequence[int]) -> Rotation:
    seq = tuple(seq)
    if not seq:
        return seq
    i = seq.index(min(seq))
    return seq[i:] + seq[:i]


def invert_cycle(seq: Sequence[int]) -> Rotation:
    return normalize_cycle(tuple(reversed(seq)))


def restrict_cycle(seq: Sequence[int], subset: Iterable[int]) -> Rotation:
    keep = set(subset)
    return normalize_cycle([x for x in seq if x in keep])


def compatible(c1: Sequence[int], c2: Sequence[int]) -> bool:
    """Whether two cyclic orders are restrictions of one cyclic order of the union."""
    common = set(c1) & set(c2)
    return restrict_cycle(c1, common) == restrict_cycle(c2, common)


def cyclic_orders(elements: Sequence[int]) -> list[Rotation]:
    """All cyclic orders of ``elements``, normalized, in lexicographic order."""
    elements = sorted(elements)
    if len(elements) <= 2:
        return [tuple(elements)]
    first, rest = elements[0], elements[1:]
    return [(first, *p) for p in itertools.permutations(rest)]


def orient3(rot: Sequence[int], x: int, y: int, z: int) -> bool:
    """True if ``x, y, z`` appear in this cyclic order in ``rot``."""
    px, py, pz = rot.index(x), rot.index(y), rot.index(z)
    return px < py < pz or py < pz < px or pz < px < py


def invert_rs(rs: RotationSystem) -> RotationSystem:
    return tuple(invert_cycle(r) for r in rs)


def relabel_rs(rs: RotationSystem, perm: Sequence[int]) -> RotationSystem:
    out: list[Rotation] = [()] * len(rs)
    for v, r in enumerate(rs):
        out[perm[v]] = normalize_cycle([perm[u] for u in r])
    return tuple(out)


def restrict_rs(rs: RotationSystem, U: Iterable[int]) -> RotationSystem:
    """Induced rotation system on ``U`` relabeled ``0..|U|-1`` by ascending id."""
    U = sorted(U)
    local = {v: i for i, v in enumerate(U)}
    return tuple(normalize_cycle([local[u] for u in rs[v] if u in local]) for v in U)


def same_up_to_inversion(r1: RotationSystem, r2: RotationSystem) -> bool:
    return r1 == r2 or r1 == invert_rs(r2)


def is_rotation_system(rs: RotationSystem) -> bool:
    n = len(rs)
    return all(sorted(r) == [u for u in range(n) if u != v] for v, r in enumerate(rs))


EdgeOrders = dict[Edge, tuple[Edge, ...]]


def relabel_orders(orders: EdgeOrders, perm: Sequence[int]) -> EdgeOrders:
    out: EdgeOrders = {}
    for (a, b), seq in orders.items():
        mapped = tuple(edge(perm[x], perm[y]) for x, y in seq)
        if perm[a] > perm[b]:
            mapped = mapped[::-1]
        out[edge(perm[a], perm[b])] = mapped
    return out


def restrict_orders(orders: EdgeOrders, U: Iterable[int]) -> EdgeOrders:
    U = sorted(U)
    local = {v: i for i, v in enumerate(U)}
    out: EdgeOrders = {}
    for (a, b), seq in orders.items():
        if a in local and b in local:
            kept = tuple((local[x], local[y]) for x, y in seq if x in local and y in local)
            if kept:
                out[(local[a], local[b])] = kept
    return out


def freeze_orders(orders: EdgeOrders) -> tuple[tuple[Edge, tuple[Edge, ...]], ...]:
    return tuple(sorted((e, s) for e, s in orders.items() if s))


@dataclass
class ExtendedRotationSystem:
    """Vertex rotations, crossing rotations and per-edge crossing orders.

    ``orders[(a, b)]`` lists the edges crossing ``ab`` from ``a`` towards ``b``
    (``a < b``); it may be missing for edges whose order is not determined.
    """

    rs: RotationSystem
    crossings: frozenset[EdgePair]
    crossing_rotations: dict[EdgePair, Rotation] = field(default_factory=dict)
    orders: EdgeOrders = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.rs)

    def inverse(self) -> ExtendedRotationSystem:
        return ExtendedRotationSystem(
            invert_rs(self.rs),
            self.crossings,
            {p: invert_cycle(r) for p, r in self.crossing_rotations.items()},
            dict(self.orders),
        )

    def relabel(self, perm: Sequence[int]) -> ExtendedRotationSystem:
        return ExtendedRotationSystem(
            relabel_rs(self.rs, perm),
            frozenset(edge_pair((perm[a], perm[b]), (perm[c], perm[d])) for (a, b), (c, d) in self.crossings),
            {
                edge_pair((perm[a], perm[b]), (perm[c], perm[d])): normalize_cycle([perm[x] for x in r])
                for ((a, b), (c, d)), r in self.crossing_rotations.items()
            },
            relabel_orders(self.orders, perm),
        )

    def crossing_order(self, e: Edge) -> Optional[tuple[Edge, ...]]:
        e = edge(*e)
        if e in self.orders:
            return self.orders[e]
        if not any(e in p for p in self.crossings):
            return ()
        return None

    def check(self) -> None:
        """Raise ValueError on inconsistent data."""
        if not is_rotation_system(self.rs):
            raise ValueError("incomplete rotation system")
        for p in self.crossings:
            (a, b), (c, d) = p
            rot = self.crossing_rotations.get(p)
            if rot is not None:
                if sorted(rot) != sorted((a, b, c, d)):
                    raise ValueError(f"crossing rotation {rot} does not match pair {p}")
                pos = {x: i for i, x in enumerate(rot)}
                if (pos[a] - pos[b]) % 2 != 0:
                    raise ValueError(f"crossing rotation {rot} does not alternate")
        for e, seq in self.orders.items():
            want = sorted(f for p in self.crossings for f in p if e in p and f != e)
            if sorted(seq) != want:
                raise ValueError(f"crossing order of {e} is {seq}, expected crossings {want}")
