"""Command-line interface.

Exit status: 0 realizable or success, 1 not realizable (a witness is
printed), 2 usage or input error.  Diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .core import ATGraph, ATGraphError, parse_atgraph
from .database import DB_DIR_ENV, DB_SIZES, Database, DatabaseError, db_path, generate_database, load_database
from .hanging import NailError, build_g, format_word, remove_nail, check_nail_removal
from .rotation import ExtendedRotationSystem
from .simple import Obstruction, check_simple, compute_rotation_system
from .z2 import EvenK5, Z2ClearingError, Z2Witness, check_z2, check_z2_algebraic, petersen_analysis, realize_z2_constructive

EXIT_OK, EXIT_NO, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read_graph(path: str) -> ATGraph:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as err:
        raise UsageError(f"cannot read {path}: {err}") from err
    try:
        return parse_atgraph(text)
    except ATGraphError as err:
        raise UsageError(f"{path}: {err}") from err


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _z2_witness_json(w: Z2Witness) -> dict:
    if isinstance(w, EvenK5):
        return {"type": "evenK5", "vertices": list(w.vertices), "text": str(w)}
    return {"type": "odd2K3", "first": list(w.first), "second": list(w.second), "text": str(w)}


def _rotation_lines(x: ExtendedRotationSystem) -> list[str]:
    lines = [f"rot {v}: " + " ".join(map(str, r)) for v, r in enumerate(x.rs)]
    for p in sorted(x.crossings):
        (a, b), (c, d) = p
        lines.append(f"cross {a}{b} {c}{d}: " + " ".join(map(str, x.crossing_rotations[p])))
    for (a, b), seq in sorted(x.orders.items()):
        if seq:
            lines.append(f"order {a}{b}: " + " ".join(f"{c}{d}" for c, d in seq))
    return lines


def _rotation_json(x: ExtendedRotationSystem) -> dict:
    return {
        "rotations": [list(r) for r in x.rs],
        "crossing_rotations": [
            {"pair": [list(p[0]), list(p[1])], "rotation": list(x.crossing_rotations[p])} for p in sorted(x.crossings)
        ],
        "orders": [{"edge": list(e), "sequence": [list(f) for f in seq]} for e, seq in sorted(x.orders.items()) if seq],
    }


def _databases(args) -> tuple[Database, Database]:
    try:
        return load_database(5, args.db), load_database(6, args.db)
    except DatabaseError as err:
        raise UsageError(str(err)) from err


# -- subcommands ------------------------------------------------------------------


def cmd_check_simple(args) -> int:
    A = _read_graph(args.input)
    if A.n < 5:
        try:
            v = check_simple(A, db4=load_database(4, args.db))
        except DatabaseError as err:
            raise UsageError(str(err)) from err
    else:
        db5, db6 = _databases(args)
        v = check_simple(A, db5, db6, witness_all=args.witness_all, want_rotation=args.rotation, jobs=args.jobs)
    lines = ["realizable" if v.realizable else "not realizable"]
    payload: dict = {"realizable": v.realizable, "witness": list(v.witness) if v.witness else None}
    if not v.realizable:
        shown = v.all_witnesses if args.witness_all else (v.witness,)
        lines += ["witness " + " ".join(map(str, w)) for w in shown]
        if args.witness_all:
            payload["all_witnesses"] = [list(w) for w in v.all_witnesses]
    elif v.rotation_system is not None:
        lines += _rotation_lines(v.rotation_system)
        payload["rotation_system"] = _rotation_json(v.rotation_system)
    _emit(args, payload, lines)
    return EXIT_OK if v.realizable else EXIT_NO


def cmd_check_z2(args) -> int:
    A = _read_graph(args.input)
    v = check_z2_algebraic(A) if args.algebraic else check_z2(A, all_witnesses=args.witness_all)
    lines = ["realizable" if v.realizable else "not realizable"]
    payload: dict = {"realizable": v.realizable, "witness": None if v.witness is None else _z2_witness_json(v.witness)}
    if not v.realizable:
        shown = v.all_witnesses if args.witness_all and v.all_witnesses else (v.witness,)
        lines += [f"witness {w}" for w in shown]
        if args.witness_all:
            payload["all_witnesses"] = [_z2_witness_json(w) for w in shown]
    _emit(args, payload, lines)
    return EXIT_OK if v.realizable else EXIT_NO


def cmd_realize_z2(args) -> int:
    A = _read_graph(args.input)
    verdict = check_z2(A)
    if not verdict.realizable:
        _emit(
            args,
            {"realizable": False, "witness": _z2_witness_json(verdict.witness), "moves": None},
            ["not realizable", f"witness {verdict.witness}"],
        )
        return EXIT_NO
    try:
        moves = realize_z2_constructive(A)
    except Z2ClearingError as err:  # the scan accepted, so this is a bug
        print(f"error: clearing failed on a realizable input: {err}", file=sys.stderr)
        return EXIT_USAGE
    _emit(
        args,
        {"realizable": True, "witness": None, "moves": [{"edge": list(s.e), "vertex": s.v} for s in moves]},
        ["realizable", f"moves {len(moves)}"] + [str(s) for s in moves],
    )
    return EXIT_OK


def cmd_rotsys(args) -> int:
    A = _read_graph(args.input)
    if A.n < 5:
        raise UsageError("rotsys needs at least five vertices")
    db5, _ = _databases(args)
    x = compute_rotation_system(A, db5)
    if isinstance(x, Obstruction):
        _emit(
            args,
            {"realizable": False, "witness": list(x.vertices), "reason": x.reason},
            ["not realizable", str(x)],
        )
        return EXIT_NO
    _emit(args, {"realizable": True, "witness": None, "rotation_system": _rotation_json(x)}, _rotation_lines(x))
    return EXIT_OK


def cmd_gen_db(args) -> int:
    if args.k not in DB_SIZES:
        raise UsageError(f"--k must be one of {DB_SIZES}")
    prev = None
    if args.k == 6:
        try:
            prev = load_database(5, args.db)
        except DatabaseError as err:
            raise UsageError(f"DB5 is required to generate DB6: {err}") from err
    started = time.perf_counter()
    db = generate_database(args.k, jobs=args.jobs, db_prev=prev)
    elapsed = time.perf_counter() - started
    text = db.dumps()
    target = Path(args.out) if args.out else db_path(args.k, args.db)
    if args.verify:
        if not target.exists():
            raise UsageError(f"{target} does not exist")
        same = target.read_text() == text
        _emit(
            args,
            {"k": args.k, "entries": len(db), "path": str(target), "identical": same, "seconds": round(elapsed, 3)},
            [f"DB{args.k}: {len(db)} entries, {'identical to' if same else 'DIFFERS from'} {target}"],
        )
        return EXIT_OK if same else EXIT_NO
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(text)
    _emit(
        args,
        {"k": args.k, "entries": len(db), "path": str(target), "seconds": round(elapsed, 3)},
        [f"DB{args.k}: {len(db)} entries written to {target} in {elapsed:.1f}s"],
    )
    return EXIT_OK


def cmd_hanging(args) -> int:
    if args.stats is not None:
        try:
            rows = check_nail_removal(args.stats)
        except ValueError as err:
            raise UsageError(str(err)) from err
        _emit(
            args,
            {"rows": [{"k": r.k, "nail": r.nail, "length": r.length, "reduced_length": r.reduced_length} for r in rows]},
            [f"k={r.k} remove {r.nail}: {r.length} -> {r.reduced_length}" for r in rows],
        )
        return EXIT_OK
    if args.k is None or args.k < 2:
        raise UsageError("hanging needs --k >= 2 (or --stats KMAX)")
    if args.k > 20:
        raise UsageError("--k above 20 is out of reach")
    g = build_g(args.k)
    try:
        w = remove_nail(g, args.remove) if args.remove else g
    except NailError as err:
        raise UsageError(str(err)) from err
    _emit(args, {"k": args.k, "removed": args.remove, "length": len(w), "word": format_word(w)}, [format_word(w)])
    return EXIT_OK


def cmd_petersen(args) -> int:
    r = petersen_analysis()
    payload = {
        "cycle_space_dim": r.cycle_space_dim,
        "even_dim": r.even_dim,
        "even_types": r.even_types,
        "odd_types": r.odd_types,
        "odd_total": r.odd_total,
        "drawing_vectors_are_odd_cycles": r.drawing_vectors_are_odd_cycles,
    }
    _emit(args, payload, r.lines())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")

    dbopt = argparse.ArgumentParser(add_help=False)
    dbopt.add_argument("--db", metavar="DIR", help=f"database directory (default: ${DB_DIR_ENV} or the bundled copy)")

    jobs = argparse.ArgumentParser(add_help=False)
    jobs.add_argument("--jobs", type=int, default=1, metavar="N")

    p = argparse.ArgumentParser(prog="atgraph", description="Drawing-existence checks for AT-graphs on complete graphs.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check-simple", parents=[common, dbopt, jobs], help="decide simple realizability")
    s.add_argument("input", help="AT-graph file, or - for stdin")
    s.add_argument("--witness-all", action="store_true", help="list every minimal violating subset")
    s.add_argument("--rotation", action="store_true", help="also print a rotation system when realizable")
    s.set_defaults(func=cmd_check_simple)

    s = sub.add_parser("check-z2", parents=[common], help="decide independent Z2-realizability")
    s.add_argument("input")
    s.add_argument("--witness-all", action="store_true", help="list every even K5 and odd 2K3")
    s.add_argument("--algebraic", action="store_true", help="decide by solving the GF(2) system")
    s.set_defaults(func=cmd_check_z2)

    s = sub.add_parser("realize-z2", parents=[common], help="switch moves from the convex drawing to a Z2-realization")
    s.add_argument("input")
    s.set_defaults(func=cmd_realize_z2)

    s = sub.add_parser("rotsys", parents=[common, dbopt], help="rotation system of a simple realization")
    s.add_argument("input")
    s.set_defaults(func=cmd_rotsys)

    s = sub.add_parser("gen-db", parents=[common, dbopt, jobs], help="generate a database of realizable AT-graphs")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--out", metavar="PATH", help="output file (default: db<k>.atdb in the database directory)")
    s.add_argument("--verify", action="store_true", help="regenerate and compare with the existing file")
    s.set_defaults(func=cmd_gen_db)

    s = sub.add_parser("hanging", parents=[common], help="picture-hanging words")
    s.add_argument("--k", type=int, help="number of nails")
    s.add_argument("--remove", metavar="NAIL", help="nail to remove: z, y or x<i>")
    s.add_argument("--stats", type=int, metavar="KMAX", help="check nail removal for all k <= KMAX")
    s.set_defaults(func=cmd_hanging)

    s = sub.add_parser("petersen", parents=[common], help="K6 drawing vectors as Petersen-graph cycles")
    s.set_defaults(func=cmd_petersen)
    return p


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr)
    if getattr(args, "jobs", 1) < 1:
        print("error: --jobs must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
