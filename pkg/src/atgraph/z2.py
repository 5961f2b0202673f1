"""Independent Z2-realizability of complete AT-graphs.

Three deciders that must agree:

* :func:`check_z2` scans for an even K5 or an odd pair of disjoint triangles;
* :func:`check_z2_algebraic` solves ``x - v in W`` where ``v`` is the convex
  drawing and ``W`` is spanned by edge-vertex switch vectors;
* :func:`realize_z2_constructive` clears the coordinates edge by edge and
  returns an explicit list of switches.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Optional, Union

from .core import ATGraph, Edge, _index_table, edge, edges_of, num_pairs, pair_unindex, pairs_of
from .gf2 import BitMatrix, BitVector, EchelonBasis, in_span


@dataclass(frozen=True)
class SwitchMove:
    """Pass edge ``e`` over vertex ``v``."""

    e: Edge
    v: int

    def __post_init__(self):
        object.__setattr__(self, "e", edge(*self.e))
        if self.v in self.e:
            raise ValueError(f"switch vertex {self.v} lies on edge {self.e}")

    def __str__(self) -> str:
        return f"switch {self.e[0]} {self.e[1]} {self.v}"


@dataclass(frozen=True)
class EvenK5:
    vertices: tuple[int, ...]

    def __str__(self) -> str:
        return "evenK5 " + " ".join(map(str, self.vertices))


@dataclass(frozen=True)
class Odd2K3:
    first: tuple[int, int, int]
    second: tuple[int, int, int]

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self.first + self.second))

    def __str__(self) -> str:
        return "odd2K3 " + " ".join(map(str, self.first)) + " | " + " ".join(map(str, self.second))


Z2Witness = Union[EvenK5, Odd2K3]


@dataclass(frozen=True)
class Z2Verdict:
    realizable: bool
    witness: Optional[Z2Witness] = None
    realization: Optional[tuple[SwitchMove, ...]] = None
    all_witnesses: tuple[Z2Witness, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.realizable and self.witness is not None:
            raise ValueError("realizable verdict cannot carry a witness")
        if not self.realizable and (self.witness is None or self.realization is not None):
            raise ValueError("non-realizable verdict needs a witness and no realization")


class Z2ClearingError(RuntimeError):
    """The clearing procedure met a vector outside the K5/2K3 subspace."""

    def __init__(self, message: str, witness: Z2Witness):
        super().__init__(f"{message}: {witness}")
        self.witness = witness


# -- vectors -------------------------------------------------------------------


def _pair_bit(n: int, e: Edge, f: Edge) -> int:
    return 1 << _index_table(n)[(e, f) if e < f else (f, e)]


def _switch_bits(n: int, e: Edge, v: int) -> int:
    bits = 0
    for u in range(n):
        if u != v and u not in e:
            bits |= _pair_bit(n, e, edge(u, v))
    return bits


def switch_vector(n: int, s: SwitchMove) -> BitVector:
    """Parity change caused by passing ``s.e`` over ``s.v``: weight ``n - 3``."""
    if max(s.e[1], s.v) >= n:
        raise ValueError(f"switch {s} out of range for n={n}")
    return BitVector(num_pairs(n), _switch_bits(n, s.e, s.v))


@lru_cache(maxsize=None)
def all_switch_moves(n: int) -> tuple[SwitchMove, ...]:
    return tuple(SwitchMove(e, v) for e in edges_of(n) for v in range(n) if v not in e)


@lru_cache(maxsize=None)
def switch_matrix(n: int) -> BitMatrix:
    """One row per edge-vertex switch, in :func:`all_switch_moves` order."""
    return BitMatrix([switch_vector(n, s) for s in all_switch_moves(n)], num_pairs(n))


def _interleave(a: int, b: int, c: int, d: int) -> bool:
    # chords ab and cd of a circle with vertices in id order
    return (a < c < b) != (a < d < b)


@lru_cache(maxsize=None)
def _convex_bits(n: int) -> int:
    bits = 0
    for i, ((a, b), (c, d)) in enumerate(pairs_of(n)):
        if _interleave(a, b, c, d):
            bits |= 1 << i
    return bits


def convex_drawing_vector(n: int) -> BitVector:
    """Crossing vector of the straight-line drawing on a circle in id order."""
    if n < 4:
        raise ValueError("convex drawing vector needs n >= 4")
    return BitVector(num_pairs(n), _convex_bits(n))


def apply_moves(n: int, base: BitVector, moves) -> BitVector:
    bits = base.bits
    for s in moves:
        bits ^= _switch_bits(n, s.e, s.v)
    return BitVector(base.length, bits)


def y_vector(n: int, i: int, j: int) -> BitVector:
    """``w(v0 vi, vj) + sum_k w(vj vk, vi)`` over ``k`` in ``1..n-1`` minus ``{i, j}``."""
    if not (1 <= i < n and 1 <= j < n) or i == j:
        raise ValueError(f"y_vector index out of range: n={n}, i={i}, j={j}")
    return BitVector(num_pairs(n), _y_bits(n, i, j))


def _y_moves(n: int, i: int, j: int) -> list[SwitchMove]:
    moves = [SwitchMove((0, i), j)]
    moves += [SwitchMove((j, k), i) for k in range(1, n) if k not in (i, j)]
    return moves


@lru_cache(maxsize=None)
def _y_bits(n: int, i: int, j: int) -> int:
    bits = 0
    for s in _y_moves(n, i, j):
        bits ^= _switch_bits(n, s.e, s.v)
    return bits


# -- scan form -----------------------------------------------------------------


def _k5_violations(A: ATGraph, mask: int) -> Iterator[EvenK5]:
    n = A.n
    table = _index_table(n)
    for Q in itertools.combinations(range(n), 5):
        count = 0
        for (a, b), (c, d) in itertools.combinations(itertools.combinations(Q, 2), 2):
            if len({a, b, c, d}) == 4:
                count += mask >> table[((a, b), (c, d))] & 1
        if count % 2 == 0:
            yield EvenK5(Q)


def triangle_pairs(n: int) -> Iterator[tuple[tuple[int, int, int], tuple[int, int, int]]]:
    """Unordered pairs of vertex-disjoint triangles in scan order.

    A triangle ``a < b < p`` is read as base edge ``ab`` with apex ``p``.  Pairs
    ``(T1, T2)`` with ``min T1 < min T2`` are ordered lexicographically by
    ``(a1, b1, a2, b2, p1, p2)``: base edges first, apexes last.
    """
    keyed = []
    for T1, T2 in itertools.combinations(itertools.combinations(range(n), 3), 2):
        if set(T1) & set(T2):
            continue
        keyed.append(((T1[0], T1[1], T2[0], T2[1], T1[2], T2[2]), T1, T2))
    keyed.sort()
    for _, T1, T2 in keyed:
        yield T1, T2


def _cross_triangle_weight(n: int, mask: int, T1, T2) -> int:
    table = _index_table(n)
    count = 0
    for e in itertools.combinations(T1, 2):
        for f in itertools.combinations(T2, 2):
            count += mask >> table[(e, f) if e < f else (f, e)] & 1
    return count


def _2k3_violations(A: ATGraph, mask: int) -> Iterator[Odd2K3]:
    for T1, T2 in triangle_pairs(A.n):
        if _cross_triangle_weight(A.n, mask, T1, T2) % 2:
            yield Odd2K3(T1, T2)


def check_z2(A: ATGraph, all_witnesses: bool = False) -> Z2Verdict:
    """Decide by scanning 5-subsets (odd count required) and then pairs of
    disjoint triangles (even count required); the first violation wins."""
    mask = A.mask
    violations = itertools.chain(_k5_violations(A, mask), _2k3_violations(A, mask))
    if all_witnesses:
        found = tuple(violations)
        if found:
            return Z2Verdict(False, found[0], all_witnesses=found)
        return Z2Verdict(True)
    first = next(violations, None)
    if first is not None:
        return Z2Verdict(False, first, all_witnesses=(first,))
    return Z2Verdict(True)


def witness_is_valid(A: ATGraph, w: Z2Witness) -> bool:
    if isinstance(w, EvenK5):
        inside = set(w.vertices)
        count = sum(1 for e, f in A.crossings if set(e) | set(f) <= inside)
        return len(inside) == 5 and count % 2 == 0
    return _cross_triangle_weight(A.n, A.mask, w.first, w.second) % 2 == 1


# -- algebraic form --------------------------------------------------------------


def check_z2_algebraic(A: ATGraph) -> Z2Verdict:
    """Solve ``x - v in span(switch vectors)`` by Gaussian elimination.

    A non-realizable verdict still reports a witness, found by the scan, so
    the verdict type stays uniform.
    """
    n = A.n
    if n < 4:
        return Z2Verdict(True, realization=())
    target = BitVector(num_pairs(n), A.mask ^ _convex_bits(n))
    coeffs = in_span(switch_matrix(n), target)
    if coeffs is None:
        scan = check_z2(A)
        if scan.realizable:
            raise AssertionError(f"algebraic and scan verdicts disagree on {A!r}")
        return Z2Verdict(False, scan.witness)
    moves = all_switch_moves(n)
    return Z2Verdict(True, realization=tuple(moves[i] for i in coeffs.support()))


@lru_cache(maxsize=None)
def _switch_basis(n: int) -> EchelonBasis:
    basis = EchelonBasis(num_pairs(n))
    for row in switch_matrix(n).rows:
        basis.add(row.bits, 0)
    return basis


def is_z2_realizable_algebraic(A: ATGraph) -> bool:
    """Membership test only, against a cached reduced basis of the switch space."""
    if A.n < 4:
        return True
    residue, _ = _switch_basis(A.n).reduce(A.mask ^ _convex_bits(A.n))
    return residue == 0


# -- constructive form -------------------------------------------------------------


def _edge_partners(n: int, bits: int, e: Edge) -> list[Edge]:
    return [f for f in edges_of(n) if not set(e) & set(f) and bits & _pair_bit(n, e, f)]


def _bipartition(n: int, i: int, E: list[Edge]) -> tuple[set[int], set[int]]:
    """Split ``{2..n-1} - {i}`` so that ``E`` is exactly the cut between the sides."""
    verts = [v for v in range(2, n) if v != i]
    E = set(E)
    for t in itertools.combinations(verts, 3):
        if sum(e in E for e in itertools.combinations(t, 2)) % 2:
            raise Z2ClearingError(
                f"crossing partners of edge 1{i} are not complete bipartite", Odd2K3((0, 1, i), t)
            )
    first = verts[0]
    side_a = {first} | {v for v in verts[1:] if edge(first, v) not in E}
    return side_a, set(verts) - side_a


def realize_z2_constructive(A: ATGraph) -> list[SwitchMove]:
    """Switch moves turning the convex drawing into a Z2-realization of ``A``.

    Steps ``1..n-1`` clear the edges ``0i`` with single switches; steps
    ``n..2n-3`` clear the edges ``1i`` with sums of y-vectors over one side of
    the bipartition of the crossing partners of ``1i``.
    """
    n = A.n
    if n < 4:
        return []
    u = A.mask ^ _convex_bits(n)
    moves: Counter[SwitchMove] = Counter()

    def add(s: SwitchMove):
        nonlocal u
        u ^= _switch_bits(n, s.e, s.v)
        moves[s] += 1

    for i in range(1, n):
        for f in _edge_partners(n, u, (0, i)):
            add(SwitchMove(f, i))
    assert not any(_edge_partners(n, u, (0, i)) for i in range(1, n))

    for i in range(2, n):
        E = _edge_partners(n, u, (1, i))
        if not E:
            continue
        side_a, side_b = _bipartition(n, i, E)
        early = set(range(2, i))
        if not (early <= side_a or early <= side_b):
            j = next(v for v in early if v in side_a)
            k = next(v for v in early if v in side_b)
            raise Z2ClearingError(
                "earlier vertices split by the bipartition", EvenK5(tuple(sorted((0, 1, i, j, k))))
            )
        if early <= side_b:
            side_a, side_b = side_b, side_a
        for j in sorted(side_b):
            for s in _y_moves(n, i, j):
                add(s)

    if u:
        (a, b), (c, d) = pair_unindex(n, (u & -u).bit_length() - 1)
        raise Z2ClearingError("nonzero residue after clearing", Odd2K3((0, a, b), (1, c, d)))
    return sorted((s for s, c in moves.items() if c % 2), key=lambda s: (s.e, s.v))


# -- Petersen graph interpretation ------------------------------------------------


@dataclass(frozen=True)
class PetersenReport:
    cycle_space_dim: int
    even_dim: int
    even_types: dict[str, int]
    odd_types: dict[str, int]
    odd_total: int
    drawing_vectors_are_odd_cycles: bool

    def lines(self) -> list[str]:
        out = [f"cycle space dimension {self.cycle_space_dim}", f"even cycle space dimension {self.even_dim}"]
        out += [f"even {k} {v}" for k, v in sorted(self.even_types.items())]
        out.append(f"odd cycles {self.odd_total}")
        out += [f"odd {k} {v}" for k, v in sorted(self.odd_types.items())]
        out.append(f"drawings match odd cycles {self.drawing_vectors_are_odd_cycles}")
        return out


def _cycle_type(edges: list[tuple[Edge, Edge]]) -> str:
    """Isomorphism label of a 2-regular graph: e.g. ``C6`` or ``2C5``."""
    if not edges:
        return "empty"
    adj: dict[Edge, list[Edge]] = {}
    for a, b in edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    if any(len(v) != 2 for v in adj.values()):
        return "other"
    seen: set[Edge] = set()
    lengths = []
    for start in adj:
        if start in seen:
            continue
        stack, size = [start], 0
        seen.add(start)
        while stack:
            x = stack.pop()
            size += 1
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        lengths.append(size)
    c = Counter(lengths)
    return " ".join(f"{m if m > 1 else ''}C{L}" for L, m in sorted(c.items()))


def petersen_analysis() -> PetersenReport:
    """Classify the vectors of K6 whose star at vertex 0 is clear.

    Such vectors live on the 15 independent pairs among edges of K5 on
    ``{1..5}``, i.e. edge sets of the Kneser graph KG(5,2) (the Petersen graph).
    """
    n = 6
    sub_edges = list(itertools.combinations(range(1, 6), 2))
    kneser = [(e, f) for e, f in itertools.combinations(sub_edges, 2) if not set(e) & set(f)]
    index = [_index_table(n)[p] for p in kneser]

    even_types: Counter[str] = Counter()
    odd_types: Counter[str] = Counter()
    cycle_space = even_space = 0
    odd_bits: set[int] = set()
    drawing_bits: set[int] = set()
    for sel in range(1 << len(kneser)):
        bits = 0
        chosen = []
        for t, (i, p) in enumerate(zip(index, kneser)):
            if sel >> t & 1:
                bits |= 1 << i
                chosen.append(p)
        A = ATGraph.from_mask(n, bits)
        if is_z2_realizable_algebraic(A):
            drawing_bits.add(bits)
        if next(_2k3_violations(A, bits), None) is not None:
            continue
        cycle_space += 1
        kind = _cycle_type(chosen)
        if len(chosen) % 2 == 0:
            even_space += 1
            if chosen:
                even_types[kind] += 1
        else:
            odd_types[kind] += 1
            odd_bits.add(bits)

    return PetersenReport(
        cycle_space_dim=cycle_space.bit_length() - 1,
        even_dim=even_space.bit_length() - 1,
        even_types=dict(even_types),
        odd_types=dict(odd_types),
        odd_total=sum(odd_types.values()),
        drawing_vectors_are_odd_cycles=drawing_bits == odd_bits,
    )
