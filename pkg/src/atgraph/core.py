"""Complete abstract topological graphs: data model, pair indexing, relabeling.

Vertices are ``0..n-1``. An edge is a sorted tuple ``(u, v)``; an edge pair is a
tuple ``(e, f)`` with ``e < f`` and the two edges vertex-disjoint.  The crossing
set of an :class:`ATGraph` is kept as a frozenset of such pairs; the bitmask
view (bit ``i`` = pair with index ``i``) is what the linear algebra uses.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

import numpy as np

Edge = tuple[int, int]
EdgePair = tuple[Edge, Edge]

CANONICAL_MAX_N = 8


class ATGraphError(ValueError):
    """Invalid vertex, edge or edge pair."""


class ATParseError(ATGraphError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def edge(u: int, v: int) -> Edge:
    if u == v:
        raise ATGraphError(f"loop edge {u}{v}")
    return (u, v) if u < v else (v, u)


def edge_pair(e: Sequence[int], f: Sequence[int]) -> EdgePair:
    e, f = edge(*e), edge(*f)
    if set(e) & set(f):
        raise ATGraphError(f"dependent pair {{{e[0]}{e[1]},{f[0]}{f[1]}}}")
    return (e, f) if e < f else (f, e)


def num_pairs(n: int) -> int:
    """Number of unordered independent edge pairs of K_n, 3*C(n,4)."""
    return 3 * comb(n, 4)


@lru_cache(maxsize=None)
def edges_of(n: int) -> tuple[Edge, ...]:
    return tuple(itertools.combinations(range(n), 2))


@lru_cache(maxsize=None)
def pairs_of(n: int) -> tuple[EdgePair, ...]:
    """All independent pairs of K_n in index order (lexicographic in (e, f))."""
    es = edges_of(n)
    return tuple(
        (e, f) for e, f in itertools.combinations(es, 2) if not (set(e) & set(f))
    )


@lru_cache(maxsize=None)
def _index_table(n: int) -> dict[EdgePair, int]:
    return {p: i for i, p in enumerate(pairs_of(n))}


def _check_pair(n: int, p: EdgePair) -> EdgePair:
    (a, b), (c, d) = p
    for x in (a, b, c, d):
        if not 0 <= x < n:
            raise ATGraphError(f"vertex {x} out of range for n={n}")
    return edge_pair((a, b), (c, d))


def pair_index(n: int, p: EdgePair) -> int:
    return _index_table(n)[_check_pair(n, p)]


def pair_unindex(n: int, i: int) -> EdgePair:
    pairs = pairs_of(n)
    if not 0 <= i < len(pairs):
        raise ATGraphError(f"pair index {i} out of range for n={n}")
    return pairs[i]


def fmt_edge(e: Edge) -> str:
    return f"{e[0]}{e[1]}" if max(e) < 10 else f"{e[0]}-{e[1]}"


def fmt_pair(p: EdgePair) -> str:
    return "{" + fmt_edge(p[0]) + "," + fmt_edge(p[1]) + "}"


@dataclass(frozen=True)
class ATGraph:
    """A complete AT-graph (K_n, X)."""

    n: int
    crossings: frozenset[EdgePair]

    def __post_init__(self):
        if self.n < 3:
            raise ATGraphError(f"n must be at least 3, got {self.n}")
        object.__setattr__(
            self, "crossings", frozenset(_check_pair(self.n, p) for p in self.crossings)
        )

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[Sequence[int], Sequence[int]]]) -> ATGraph:
        return cls(n, frozenset(edge_pair(e, f) for e, f in pairs))

    @classmethod
    def from_mask(cls, n: int, mask: int) -> ATGraph:
        pairs = pairs_of(n)
        return cls(n, frozenset(pairs[i] for i in range(len(pairs)) if mask >> i & 1))

    @property
    def mask(self) -> int:
        table = _index_table(self.n)
        m = 0
        for p in self.crossings:
            m |= 1 << table[p]
        return m

    def __len__(self) -> int:
        return len(self.crossings)

    def crosses(self, e: Edge, f: Edge) -> bool:
        e, f = edge(*e), edge(*f)
        return ((e, f) if e < f else (f, e)) in self.crossings

    def sorted_pairs(self) -> list[EdgePair]:
        return sorted(self.crossings)

    def __repr__(self) -> str:
        body = ", ".join(fmt_pair(p) for p in self.sorted_pairs())
        return f"ATGraph(K{self.n}, {{{body}}})"


def induced_subgraph(A: ATGraph, U: Iterable[int]) -> ATGraph:
    """Restriction of ``A`` to ``U``, relabeled ``0..|U|-1`` by ascending id."""
    U = sorted(set(U))
    if len(U) < 3:
        raise ATGraphError("induced subgraph needs at least 3 vertices")
    if U[0] < 0 or U[-1] >= A.n:
        raise ATGraphError(f"vertex set {U} out of range for n={A.n}")
    local = {v: i for i, v in enumerate(U)}
    out = []
    for (a, b), (c, d) in A.crossings:
        if a in local and b in local and c in local and d in local:
            out.append(((local[a], local[b]), (local[c], local[d])))
    return ATGraph.from_pairs(len(U), out)


def relabel_pair(p: EdgePair, perm: Sequence[int]) -> EdgePair:
    (a, b), (c, d) = p
    return edge_pair((perm[a], perm[b]), (perm[c], perm[d]))


def relabel(A: ATGraph, perm: Sequence[int]) -> ATGraph:
    """Apply vertex map ``v -> perm[v]``."""
    if sorted(perm) != list(range(A.n)):
        raise ATGraphError(f"not a permutation of range({A.n}): {perm}")
    return ATGraph(A.n, frozenset(relabel_pair(p, perm) for p in A.crossings))


# -- canonical forms ---------------------------------------------------------


@lru_cache(maxsize=None)
def _perm_tables(n: int) -> tuple[np.ndarray, np.ndarray]:
    """All n! permutations and, per permutation, the pullback of pair indices.

    ``pull[p, j]`` is the index ``i`` whose image under permutation ``p`` is
    pair ``j``, so the relabeled bit vector is ``x[pull[p]]``.
    """
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int16)
    pairs = pairs_of(n)
    table = _index_table(n)
    pull = np.empty((len(perms), len(pairs)), dtype=np.int32)
    for row, perm in enumerate(perms):
        for i, p in enumerate(pairs):
            pull[row, table[relabel_pair(p, perm)]] = i
    return perms, pull


def mask_to_bits(n: int, mask: int) -> np.ndarray:
    m = num_pairs(n)
    raw = np.frombuffer(mask.to_bytes((m + 7) // 8 or 1, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:m].astype(bool)


def all_relabelings(n: int, mask: int) -> np.ndarray:
    """Bit matrix with one row per permutation (itertools order)."""
    _, pull = _perm_tables(n)
    return mask_to_bits(n, mask)[pull]


def relabeled_masks(n: int, mask: int) -> set[int]:
    """Masks of every relabeling of the AT-graph with the given mask."""
    packed = np.packbits(all_relabelings(n, mask), axis=1, bitorder="little")
    return {int.from_bytes(row.tobytes(), "little") for row in np.unique(packed, axis=0)}


def _canonical(n: int, mask: int) -> tuple[bytes, list[tuple[int, ...]]]:
    if n > CANONICAL_MAX_N:
        raise ATGraphError(f"canonical form limited to n <= {CANONICAL_MAX_N}")
    perms, _ = _perm_tables(n)
    if num_pairs(n) == 0:
        return b"", [tuple(int(v) for v in p) for p in perms]
    # pair index 0 is the most significant bit of the encoding
    packed = np.packbits(all_relabelings(n, mask), axis=1, bitorder="big")
    order = np.lexsort(packed.T[::-1])
    best = packed[order[0]]
    hits = np.flatnonzero((packed == best).all(axis=1))
    return best.tobytes(), [tuple(int(v) for v in perms[h]) for h in hits]


def canonical_form(A: ATGraph) -> bytes:
    """Minimum bit encoding of the crossing set over all vertex relabelings."""
    return _canonical(A.n, A.mask)[0]


def canonical_perms(A: ATGraph) -> tuple[bytes, list[tuple[int, ...]]]:
    """Canonical form plus every permutation ``perm`` with
    ``relabel(A, perm)`` encoding to it (first one in itertools order first)."""
    return _canonical(A.n, A.mask)


def mask_from_canonical(n: int, form: bytes) -> int:
    """Labeled mask of the canonical representative encoded by ``form``."""
    bits = np.unpackbits(np.frombuffer(form, dtype=np.uint8), bitorder="big")[: num_pairs(n)]
    return sum(1 << i for i in np.flatnonzero(bits).tolist())


# -- text format ---------------------------------------------------------------


def parse_atgraph(text: str) -> ATGraph:
    n = None
    pairs: list[EdgePair] = []
    seen: set[EdgePair] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if tok[0] == "n":
            if n is not None:
                raise ATParseError(lineno, "duplicate 'n' line")
            if len(tok) != 2 or not tok[1].lstrip("-").isdigit():
                raise ATParseError(lineno, "expected 'n <int>'")
            n = int(tok[1])
            if n < 3:
                raise ATParseError(lineno, f"n must be at least 3, got {n}")
        elif tok[0] == "cross":
            if n is None:
                raise ATParseError(lineno, "'cross' before 'n' line")
            if len(tok) != 5 or not all(t.isdigit() for t in tok[1:]):
                raise ATParseError(lineno, "expected 'cross <a> <b> <c> <d>'")
            a, b, c, d = map(int, tok[1:])
            for x in (a, b, c, d):
                if x >= n:
                    raise ATParseError(lineno, f"vertex {x} out of range for n={n}")
            try:
                p = edge_pair((a, b), (c, d))
            except ATGraphError as exc:
                raise ATParseError(lineno, str(exc)) from None
            if p in seen:
                raise ATParseError(lineno, f"duplicate pair {fmt_pair(p)}")
            seen.add(p)
            pairs.append(p)
        else:
            raise ATParseError(lineno, f"unknown directive {tok[0]!r}")
    if n is None:
        raise ATParseError(0, "missing 'n' line")
    return ATGraph(n, frozenset(pairs))


def serialize_atgraph(A: ATGraph) -> str:
    lines = [f"n {A.n}"]
    for (a, b), (c, d) in A.sorted_pairs():
        lines.append(f"cross {a} {b} {c} {d}")
    return "\n".join(lines) + "\n"


# The complete AT-graph on six vertices whose 5-vertex subgraphs are all
# simply realizable while the whole graph is not.
COUNTEREXAMPLE_PAIRS = [
    ("02", "13"), ("02", "14"), ("02", "15"), ("02", "35"), ("03", "14"),
    ("03", "15"), ("03", "24"), ("04", "15"), ("04", "25"), ("04", "35"),
    ("13", "24"), ("24", "35"), ("35", "14"), ("14", "25"), ("25", "13"),
]


def counterexample_k6() -> ATGraph:
    return ATGraph.from_pairs(
        6, [((int(e[0]), int(e[1])), (int(f[0]), int(f[1]))) for e, f in COUNTEREXAMPLE_PAIRS]
    )


def three_crossing_k6() -> ATGraph:
    """K6 with crossings 01/23, 23/45, 01/45: every K5 is odd, triangles 014 and 235 cross oddly."""
    return ATGraph.from_pairs(6, [((0, 1), (2, 3)), ((2, 3), (4, 5)), ((0, 1), (4, 5))])
