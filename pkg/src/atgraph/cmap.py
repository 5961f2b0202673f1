"""Combinatorial maps of planarized drawings and the sphericity test.

Darts are ``0..2m-1``.  ``sigma[d]`` is the next dart clockwise around the
node of ``d``; ``alpha[d]`` is the other dart of the same segment.  Faces are
the orbits of ``sigma o alpha``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Edge, EdgePair
from .rotation import ExtendedRotationSystem


class DisconnectedMapError(ValueError):
    pass


class InconsistentDrawingError(ValueError):
    pass


@dataclass(frozen=True)
class CombinatorialMap:
    sigma: tuple[int, ...]
    alpha: tuple[int, ...]

    def __post_init__(self):
        n = len(self.sigma)
        if len(self.alpha) != n or sorted(self.sigma) != list(range(n)):
            raise ValueError("sigma is not a permutation of the darts")
        if any(self.alpha[d] == d or self.alpha[self.alpha[d]] != d for d in range(n)):
            raise ValueError("alpha is not a fixed-point-free involution")

    @property
    def num_darts(self) -> int:
        return len(self.sigma)

    def num_vertices(self) -> int:
        return _count_orbits(self.sigma)

    def num_edges(self) -> int:
        return len(self.sigma) // 2

    def num_faces(self) -> int:
        phi = [self.sigma[self.alpha[d]] for d in range(len(self.sigma))]
        return _count_orbits(phi)

    def is_connected(self) -> bool:
        n = len(self.sigma)
        if n == 0:
            return True
        seen = [False] * n
        stack = [0]
        seen[0] = True
        while stack:
            d = stack.pop()
            for nxt in (self.sigma[d], self.alpha[d]):
                if not seen[nxt]:
                    seen[nxt] = True
                    stack.append(nxt)
        return all(seen)

    def euler_characteristic(self) -> int:
        return self.num_vertices() - self.num_edges() + self.num_faces()


def _count_orbits(perm) -> int:
    seen = bytearray(len(perm))
    count = 0
    for start in range(len(perm)):
        if seen[start]:
            continue
        count += 1
        d = start
        while not seen[d]:
            seen[d] = 1
            d = perm[d]
    return count


def is_spherical(m: CombinatorialMap) -> bool:
    if not m.is_connected():
        raise DisconnectedMapError("map is disconnected")
    return m.euler_characteristic() == 2


def build_map(x: ExtendedRotationSystem) -> CombinatorialMap:
    """Planarize: every crossing becomes a degree-4 node, edges are subdivided."""
    n = x.n
    crossing_of: dict[EdgePair, dict[Edge, tuple[int, int]]] = {p: {} for p in x.crossings}
    at_vertex: dict[tuple[int, int], int] = {}  # (vertex, neighbor) -> dart
    alpha: list[int] = []

    def new_segment() -> tuple[int, int]:
        d = len(alpha)
        alpha.extend((d + 1, d))
        return d, d + 1

    for a in range(n):
        for b in range(a + 1, n):
            e = (a, b)
            seq = x.orders.get(e, ())
            expected = sorted(f for p in x.crossings if e in p for f in p if f != e)
            if sorted(seq) != expected:
                raise InconsistentDrawingError(f"crossing sequence of edge {e} is {seq}, expected {expected}")
            prev_out = None
            for i in range(len(seq) + 1):
                d_fwd, d_back = new_segment()  # d_fwd leaves the node nearer a
                if i == 0:
                    at_vertex[(a, b)] = d_fwd
                else:
                    f = seq[i - 1]
                    p = (e, f) if e < f else (f, e)
                    crossing_of[p][e] = (prev_out, d_fwd)  # (dart toward a, dart toward b)
                if i == len(seq):
                    at_vertex[(b, a)] = d_back
                prev_out = d_back

    sigma = [0] * len(alpha)
    for v in range(n):
        darts = [at_vertex[(v, u)] for u in x.rs[v]]
        for i, d in enumerate(darts):
            sigma[d] = darts[(i + 1) % len(darts)]
    for p, halves in crossing_of.items():
        (a, b), (c, d) = p
        rot = x.crossing_rotations.get(p)
        if rot is None:
            raise InconsistentDrawingError(f"missing rotation for crossing {p}")
        toward = {a: halves[(a, b)][0], b: halves[(a, b)][1], c: halves[(c, d)][0], d: halves[(c, d)][1]}
        darts = [toward[w] for w in rot]
        for i, dd in enumerate(darts):
            sigma[dd] = darts[(i + 1) % 4]
    return CombinatorialMap(tuple(sigma), tuple(alpha))
