import json
import subprocess
import sys

import pytest

from atgraph.cli import run
from atgraph.core import ATGraph, serialize_atgraph, counterexample_k6, three_crossing_k6
from atgraph.database import PACKAGE_DB_DIR
from atgraph.geometry import convex_atgraph
from atgraph.z2 import SwitchMove, apply_moves, convex_drawing_vector


@pytest.fixture
def write(tmp_path):
    def _write(A, name="g.at"):
        p = tmp_path / name
        p.write_text(serialize_atgraph(A))
        return str(p)

    return _write


def _run(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_z2_k5(capsys, write):
    code, out, _ = _run(capsys, "check-z2", write(ATGraph(5, frozenset())))
    assert code == 1
    assert out.splitlines() == ["not realizable", "witness evenK5 0 1 2 3 4"]


def test_check_z2_three_crossing(capsys, write):
    code, out, _ = _run(capsys, "check-z2", write(three_crossing_k6()))
    assert code == 1
    assert out.splitlines() == ["not realizable", "witness odd2K3 0 1 4 | 2 3 5"]


def test_check_z2_algebraic_and_realizable(capsys, write):
    path = write(convex_atgraph(7))
    assert _run(capsys, "check-z2", path)[:2] == (0, "realizable\n")
    assert _run(capsys, "check-z2", "--algebraic", path)[0] == 0


def test_check_simple_counterexample(capsys, write):
    code, out, _ = _run(capsys, "check-simple", write(counterexample_k6()), "--db", str(PACKAGE_DB_DIR))
    assert code == 1
    assert out.splitlines() == ["not realizable", "witness 0 1 2 3 4 5"]


def test_check_simple_rotation(capsys, write):
    code, out, _ = _run(capsys, "check-simple", "--rotation", write(convex_atgraph(6)))
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "realizable"
    assert sum(line.startswith("rot ") for line in lines) == 6
    assert any(line.startswith("cross ") for line in lines)


def test_check_simple_small(capsys, write):
    assert _run(capsys, "check-simple", write(ATGraph(4, frozenset())))[0] == 0
    assert _run(capsys, "check-simple", write(ATGraph(3, frozenset())))[0] == 0


def test_check_simple_witness_all(capsys, write):
    code, out, _ = _run(capsys, "check-simple", "--witness-all", write(ATGraph(6, frozenset())))
    assert code == 1
    assert sum(line.startswith("witness ") for line in out.splitlines()) == 6


def test_stdin(capsys, monkeypatch):
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO(serialize_atgraph(ATGraph(5, frozenset()))))
    assert _run(capsys, "check-z2", "-")[0] == 1


def test_hanging(capsys):
    code, out, _ = _run(capsys, "hanging", "--k", "4", "--remove", "x1")
    assert code == 0 and out == "1\n"
    code, out, _ = _run(capsys, "hanging", "--k", "3")
    assert out == "z y^-1 z^-1 x1^-1 z y z^-1\n"
    code, out, _ = _run(capsys, "hanging", "--stats", "5")
    assert code == 0 and "k=4 remove x1: 19 -> 0" in out


def test_rotsys(capsys, write):
    code, out, _ = _run(capsys, "rotsys", write(convex_atgraph(5)))
    assert code == 0 and out.startswith("rot 0: ")
    code, out, _ = _run(capsys, "rotsys", write(counterexample_k6()))
    assert code == 1 and "witness 0 1 2 3 4 5" in out


def test_realize_z2(capsys, write):
    code, out, _ = _run(capsys, "realize-z2", write(ATGraph(5, frozenset())))
    assert code == 1 and out.splitlines()[1] == "witness evenK5 0 1 2 3 4"
    code, out, _ = _run(capsys, "realize-z2", write(convex_atgraph(6)))
    assert code == 0 and out.splitlines()[1] == "moves 0"
    moves = [SwitchMove((0, 1), 3), SwitchMove((2, 5), 4)]
    A = ATGraph.from_mask(6, apply_moves(6, convex_drawing_vector(6), moves).bits)
    code, raw, _ = _run(capsys, "realize-z2", write(A), "--format", "json")
    got = [SwitchMove(tuple(m["edge"]), m["vertex"]) for m in json.loads(raw)["moves"]]
    assert code == 0 and apply_moves(6, convex_drawing_vector(6), got).bits == A.mask


def test_petersen(capsys):
    code, out, _ = _run(capsys, "petersen")
    assert code == 0 and "odd cycles 32" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["check-z2"],
        ["check-z2", "/nonexistent/file"],
        ["gen-db", "--k", "3"],
        ["hanging", "--k", "1"],
        ["hanging", "--k", "4", "--remove", "w"],
        ["check-simple", "--jobs", "0", "x"],
        ["no-such-command"],
    ],
)
def test_usage_errors(capsys, argv):
    code, out, err = _run(capsys, *argv)
    assert code == 2 and out == "" and err


def test_malformed_input(capsys, tmp_path):
    p = tmp_path / "bad.at"
    p.write_text("n 5\ncross 01 01\n")
    code, out, err = _run(capsys, "check-z2", str(p))
    assert code == 2 and "error" in err


def test_missing_database(capsys, write, tmp_path, monkeypatch):
    empty = tmp_path / "empty"
    empty.mkdir()
    path = write(convex_atgraph(6))
    assert _run(capsys, "check-simple", "--db", str(empty), path)[0] == 2
    monkeypatch.setenv("ATGRAPH_DB_DIR", str(empty))
    code, _, err = _run(capsys, "check-simple", path)
    assert code == 2 and "gen-db" in err


def test_gen_db_and_env(capsys, tmp_path, monkeypatch, write):
    code, out, _ = _run(capsys, "gen-db", "--k", "4", "--db", str(tmp_path))
    assert code == 0 and (tmp_path / "db4.atdb").read_text() == (PACKAGE_DB_DIR / "db4.atdb").read_text()
    assert _run(capsys, "gen-db", "--k", "6", "--db", str(tmp_path))[0] == 2  # DB5 missing
    assert _run(capsys, "gen-db", "--k", "5", "--db", str(tmp_path))[0] == 0
    monkeypatch.setenv("ATGRAPH_DB_DIR", str(tmp_path))
    code, out, _ = _run(capsys, "gen-db", "--k", "5", "--verify")
    assert code == 0 and "identical" in out
    (tmp_path / "db5.atdb").write_text((tmp_path / "db5.atdb").read_text() + "\n")
    assert _run(capsys, "gen-db", "--k", "5", "--verify")[0] == 1


def test_gen_db_verify_bundled(capsys):
    for k in (4, 5, 6):
        code, out, _ = _run(capsys, "gen-db", "--k", str(k), "--verify", "--db", str(PACKAGE_DB_DIR), "--format", "json")
        rec = json.loads(out)
        assert code == 0 and rec["identical"] and rec["k"] == k


CASES = [
    ("check-z2", ATGraph(5, frozenset())),
    ("check-z2", three_crossing_k6()),
    ("check-z2", convex_atgraph(6)),
    ("check-simple", counterexample_k6()),
    ("check-simple", convex_atgraph(7)),
    ("check-simple", ATGraph(5, frozenset())),
    ("rotsys", convex_atgraph(6)),
    ("rotsys", counterexample_k6()),
    ("realize-z2", convex_atgraph(6)),
    ("realize-z2", ATGraph(5, frozenset())),
]


@pytest.mark.parametrize("cmd,A", CASES)
def test_json_text_parity(capsys, write, cmd, A):
    path = write(A)
    code_t, text, _ = _run(capsys, cmd, path)
    code_j, raw, _ = _run(capsys, cmd, path, "--format", "json")
    rec = json.loads(raw)
    assert code_t == code_j == (0 if rec["realizable"] else 1)
    lines = text.splitlines()
    if cmd != "rotsys":
        assert lines[0] == ("realizable" if rec["realizable"] else "not realizable")
    w = rec["witness"]
    if w is None:
        assert not any(line.startswith("witness") for line in lines)
    else:
        shown = w["text"] if isinstance(w, dict) else " ".join(map(str, w))
        assert f"witness {shown}" in lines
    if "rotation_system" in rec:
        rs = rec["rotation_system"]
        rot_lines = [line for line in lines if line.startswith("rot ")]
        assert rot_lines == [f"rot {v}: " + " ".join(map(str, r)) for v, r in enumerate(rs["rotations"])]
        assert sum(line.startswith("cross ") for line in lines) == len(rs["crossing_rotations"])
        assert sum(line.startswith("order ") for line in lines) == len(rs["orders"])
    if "moves" in rec and rec["moves"] is not None:
        assert lines[1] == f"moves {len(rec['moves'])}"


def test_hanging_json(capsys):
    code, raw, _ = _run(capsys, "hanging", "--k", "4", "--remove", "x1", "--format", "json")
    rec = json.loads(raw)
    assert code == 0 and rec["length"] == 0 and rec["word"] == "1"


def test_module_entry_point(tmp_path):
    p = tmp_path / "k5.at"
    p.write_text(serialize_atgraph(ATGraph(5, frozenset())))
    r = subprocess.run([sys.executable, "-m", "atgraph", "check-z2", str(p)], capture_output=True, text=True)
    assert r.returncode == 1 and "witness evenK5 0 1 2 3 4" in r.stdout
