"""Databases of simply realizable complete AT-graphs on few vertices.

An entry maps the canonical form of an AT-graph to one extended rotation
system realizing its canonical labeling.  Generation enumerates rotation
systems with the rotation of vertex 0 fixed and modulo global inversion; the
representative stored per class is the smallest candidate over every
realization found, so the result does not depend on enumeration order.
"""

from __future__ import annotations

import itertools
import logging
import multiprocessing
import os
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .core import ATGraph, canonical_perms, induced_subgraph, mask_from_canonical, relabeled_masks
from .drawenum import (
    _realizable_k4,
    derive_crossings,
    enumerate_rotation_systems,
    inversion_partner,
    k4_entry,
    realize_rotation_system,
)
from .rotation import (
    EdgeOrders,
    ExtendedRotationSystem,
    RotationSystem,
    freeze_orders,
    invert_rs,
    relabel_orders,
    relabel_rs,
    restrict_rs,
)

log = logging.getLogger(__name__)

DB_DIR_ENV = "ATGRAPH_DB_DIR"
DB_SIZES = (4, 5, 6)
PACKAGE_DB_DIR = Path(__file__).with_name("data")

FrozenOrders = tuple[tuple[tuple[int, int], tuple[tuple[int, int], ...]], ...]


class DatabaseError(RuntimeError):
    pass


@dataclass(frozen=True)
class DBEntry:
    key: bytes
    rs: RotationSystem
    orders: FrozenOrders

    @property
    def mask(self) -> int:
        return mask_from_canonical(len(self.rs), self.key)

    def atgraph(self) -> ATGraph:
        return ATGraph.from_mask(len(self.rs), self.mask)

    def ers(self) -> ExtendedRotationSystem:
        rot = derive_crossings(self.rs)
        if rot is None:
            raise DatabaseError(f"stored rotation system {self.rs} has an unrealizable K4")
        return ExtendedRotationSystem(self.rs, frozenset(rot), rot, dict(self.orders))


@dataclass
class Database:
    k: int
    entries: dict[bytes, DBEntry]
    witnesses: Optional[dict[bytes, list[tuple[RotationSystem, FrozenOrders]]]] = None
    _labeled: Optional[set[int]] = field(default=None, repr=False)

    def __len__(self) -> int:
        return len(self.entries)

    def keys(self) -> list[bytes]:
        return sorted(self.entries)

    def labeled_masks(self) -> set[int]:
        """Masks of every labeled AT-graph in the database."""
        if self._labeled is None:
            out: set[int] = set()
            for e in self.entries.values():
                out |= relabeled_masks(self.k, e.mask)
            self._labeled = out
        return self._labeled

    def contains_mask(self, mask: int) -> bool:
        return mask in self.labeled_masks()

    def __contains__(self, A: ATGraph) -> bool:
        self._check_size(A)
        return self.contains_mask(A.mask)

    def lookup(self, A: ATGraph) -> Optional[ExtendedRotationSystem]:
        """Extended rotation system realizing ``A`` in its own labels, or None."""
        self._check_size(A)
        return _lookup(self, A.mask)

    def _check_size(self, A: ATGraph) -> None:
        if A.n != self.k:
            raise DatabaseError(f"database holds K{self.k} entries, got n={A.n}")

    # -- file format --------------------------------------------------------

    def dumps(self) -> str:
        lines = [f"atdb {self.k} {len(self.entries)}"]
        for key in self.keys():
            e = self.entries[key]
            rots = " ".join(",".join(map(str, r)) for r in e.rs)
            orders = " ".join(
                f"{a}-{b}:" + ",".join(f"{c}-{d}" for c, d in seq) for (a, b), seq in e.orders
            )
            lines.append(f"{key.hex()} {rots} | {orders}".rstrip())
        return "\n".join(lines) + "\n"

    def save(self, path: str | os.PathLike) -> None:
        Path(path).write_text(self.dumps())

    @classmethod
    def loads(cls, text: str) -> Database:
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise DatabaseError("empty database file")
        head = lines[0].split()
        if len(head) != 3 or head[0] != "atdb":
            raise DatabaseError(f"bad header {lines[0]!r}")
        k, count = int(head[1]), int(head[2])
        entries = {}
        for lineno, line in enumerate(lines[1:], start=2):
            left, sep, right = line.partition("|")
            parts = left.split()
            if not sep or len(parts) != k + 1:
                raise DatabaseError(f"line {lineno}: malformed entry")
            key = bytes.fromhex(parts[0])
            rs = tuple(tuple(int(x) for x in p.split(",")) for p in parts[1:])
            orders = []
            for tok in right.split():
                e, _, seq = tok.partition(":")
                orders.append((_parse_edge(e), tuple(_parse_edge(f) for f in seq.split(","))))
            entries[key] = DBEntry(key, rs, tuple(orders))
        if len(entries) != count:
            raise DatabaseError(f"header announces {count} entries, found {len(entries)}")
        return cls(k, entries)

    @classmethod
    def load(cls, path: str | os.PathLike) -> Database:
        return cls.loads(Path(path).read_text())


def _parse_edge(tok: str) -> tuple[int, int]:
    a, b = tok.split("-")
    return int(a), int(b)


def _lookup(db: Database, mask: int) -> Optional[ExtendedRotationSystem]:
    if not db.contains_mask(mask):
        return None
    key, perms = canonical_perms(ATGraph.from_mask(db.k, mask))
    perm = perms[0]
    inv = [0] * db.k
    for v, p in enumerate(perm):
        inv[p] = v
    return db.entries[key].ers().relabel(inv)


def db_path(k: int, directory: Optional[str | os.PathLike] = None) -> Path:
    if directory is None:
        directory = os.environ.get(DB_DIR_ENV) or PACKAGE_DB_DIR
    return Path(directory) / f"db{k}.atdb"


_loaded: dict[Path, Database] = {}


def load_database(k: int, directory: Optional[str | os.PathLike] = None) -> Database:
    """Load (and cache) ``db<k>.atdb`` from ``directory``, ``$ATGRAPH_DB_DIR``
    or the copy shipped with the package."""
    path = db_path(k, directory).resolve()
    if path not in _loaded:
        if not path.exists():
            raise DatabaseError(f"database file {path} not found; run `atgraph gen-db --k {k}`")
        db = Database.load(path)
        if db.k != k:
            raise DatabaseError(f"{path} holds k={db.k}, expected {k}")
        _loaded[path] = db
    return _loaded[path]


# -- generation -----------------------------------------------------------------


def _k5_table(db5: Database) -> dict[RotationSystem, EdgeOrders]:
    """Labeled K5 rotation systems of DB5 representatives, with their orders."""
    table: dict[RotationSystem, EdgeOrders] = {}
    for e in db5.entries.values():
        orders = dict(e.orders)
        for perm in itertools.permutations(range(5)):
            o = relabel_orders(orders, perm)
            table[relabel_rs(e.rs, perm)] = o
            table[relabel_rs(invert_rs(e.rs), perm)] = o
    return table


_worker_state: dict = {}


def _init_worker(k: int, k5: Optional[dict], debug: bool, reverse: bool) -> None:
    _worker_state.update(k=k, k5=k5, debug=debug, reverse=reverse)


def _accept5(rs: RotationSystem, quint) -> bool:
    return restrict_rs(rs, quint) in _worker_state["k5"]


def _candidates(x: ExtendedRotationSystem) -> tuple[bytes, set[tuple[RotationSystem, FrozenOrders]]]:
    key, perms = canonical_perms(ATGraph(x.n, x.crossings))
    out = set()
    for perm in perms:
        rs = relabel_rs(x.rs, perm)
        orders = freeze_orders(relabel_orders(x.orders, perm))
        out.add((rs, orders))
        out.add((invert_rs(rs), orders))
    return key, out


def _process_prefix(prefix: RotationSystem) -> dict[bytes, set]:
    st = _worker_state
    k, k5, reverse = st["k"], st["k5"], st["reverse"]
    lookup = None if k5 is None else k5.get
    accept5 = None if k5 is None else _accept5
    found: dict[bytes, set] = {}
    for rs in enumerate_rotation_systems(
        k, _realizable_k4, accept5, fix_vertex0=True, reverse=reverse, start=[prefix]
    ):
        if inversion_partner(rs) < rs:
            continue
        for x in realize_rotation_system(rs, lookup, find_all=True, reverse=reverse):
            key, cands = _candidates(x)
            found.setdefault(key, set()).update(cands)
    return found


def _prefixes(k: int, k5: Optional[dict], reverse: bool) -> list[RotationSystem]:
    level = min(k - 1, 5)
    _init_worker(k, k5, False, reverse)
    accept5 = None if k5 is None else _accept5
    return list(enumerate_rotation_systems(level, _realizable_k4, accept5, fix_vertex0=True, reverse=reverse))


def generate_database(
    k: int,
    jobs: int = 1,
    reverse: bool = False,
    debug: bool = False,
    db_prev: Optional[Database] = None,
) -> Database:
    """Enumerate every simply realizable AT-graph on ``k`` vertices.

    For ``k == 6`` the DB5 of ``db_prev`` (default: the loaded one) supplies
    the forced crossing orders.  ``debug`` keeps every realization found per
    class as ``Database.witnesses``.
    """
    if k not in DB_SIZES:
        raise DatabaseError(f"databases are available for k in {DB_SIZES}")
    started = time.perf_counter()
    k5 = None
    if k == 6:
        k5 = _k5_table(db_prev if db_prev is not None else load_database(5))
    prefixes = _prefixes(k, k5, reverse)
    merged: dict[bytes, set] = {}
    if jobs > 1:
        ctx = multiprocessing.get_context("fork")
        with ctx.Pool(jobs, initializer=_init_worker, initargs=(k, k5, debug, reverse)) as pool:
            for part in pool.imap_unordered(_process_prefix, prefixes):
                for key, c in part.items():
                    merged.setdefault(key, set()).update(c)
    else:
        _init_worker(k, k5, debug, reverse)
        for prefix in prefixes:
            for key, c in _process_prefix(prefix).items():
                merged.setdefault(key, set()).update(c)
    entries = {}
    for key in sorted(merged):
        rs, orders = min(merged[key])
        entries[key] = DBEntry(key, rs, orders)
    witnesses = {key: sorted(merged[key]) for key in sorted(merged)} if debug else None
    log.info("generated DB%d: %d classes in %.1fs", k, len(entries), time.perf_counter() - started)
    return Database(k, entries, witnesses)


# -- consistency checks ----------------------------------------------------------------


@dataclass
class UniquenessReport:
    k: int
    classes: int
    witnesses: int
    violations: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations

    def lines(self) -> list[str]:
        out = [f"DB{self.k}: {self.classes} classes, {self.witnesses} witnessing extended rotation systems"]
        out += [f"violation: {v}" for v in self.violations]
        out.append("rotation systems unique up to inversion" if self.ok else "uniqueness FAILED")
        return out


def verify_rotation_uniqueness(db: Database) -> UniquenessReport:
    """Check that all realizations of each class share one rotation system up
    to inversion, and that each K4 of each witness matches the K4 table."""
    if db.witnesses is None:
        raise DatabaseError("database was generated without debug witnesses")
    violations = []
    total = 0
    for key, wit in db.witnesses.items():
        total += len(wit)
        systems = {rs for rs, _ in wit}
        base = min(systems)
        if not systems <= {base, invert_rs(base)}:
            violations.append(f"{key.hex()}: {len(systems)} distinct rotation systems")
        A = db.entries[key].atgraph()
        for rs in systems:
            for quad in itertools.combinations(range(db.k), 4):
                entry = k4_entry(rs, quad)
                pairs = {p for p in A.crossings if set(p[0]) | set(p[1]) == set(quad)}
                want = set() if entry.status == "planar" else {entry.pair}
                if entry.status == "unrealizable" or pairs != want:
                    violations.append(f"{key.hex()}: K4 {quad} disagrees with the K4 table")
    return UniquenessReport(db.k, len(db.entries), total, violations)


def heredity_violations(db: Database, smaller: Database) -> list[tuple[bytes, tuple[int, ...]]]:
    """Entries of ``db`` with a (k-1)-vertex induced subgraph missing from ``smaller``."""
    bad = []
    for key, e in db.entries.items():
        A = e.atgraph()
        for U in itertools.combinations(range(db.k), db.k - 1):
            if induced_subgraph(A, U) not in smaller:
                bad.append((key, U))
    return bad
