import json
import subprocess
import sys

import pytest

from bimatch import cli
from bimatch.cli import main
from bimatch.graph import Bigraph, to_json
from bimatch.matching import MatchCount


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write_graph(tmp_path, G, name="g.json"):
    p = tmp_path / name
    p.write_text(to_json(G))
    return str(p)


def test_construct_then_count(capsys, tmp_path):
    code, out, err = run(capsys, "construct", "--family", "G6")
    assert code == 0
    assert json.loads(err)["predicted_phi"] == "5"
    p = tmp_path / "g6.json"
    p.write_text(out)
    code, out, _ = run(capsys, "count", "--input", str(p))
    assert code == 0
    assert json.loads(out) == {"agreement": True, "alpha": 3, "engine": "permanent", "phi": "5"}


def test_construct_writes_sidecar(capsys, tmp_path):
    out = tmp_path / "c.json"
    code, _, _ = run(capsys, "construct", "--family", "C", "--params", "n=4,t=1,b=0", "--out", str(out))
    assert code == 0
    side = json.loads((tmp_path / "c.predicted.json").read_text())
    assert side["predicted_phi"] == "10" and side["params"] == {"n": 4, "t": 1, "b": 0}
    code, text, _ = run(capsys, "bounds", "--input", str(out))
    assert code == 0
    row = next(line for line in text.splitlines() if line.startswith("| leafmain "))
    assert row == "| leafmain | yes | 10 | 10 | 0 | yes |"


def test_construct_list_params(capsys):
    code, out, err = run(capsys, "construct", "--family", "k33_minus_edge", "--params", "mults=2:1:1:1")
    assert code == 0 and json.loads(err)["predicted_phi"] == "5"


def test_count_empty_graph(capsys, tmp_path):
    code, out, _ = run(capsys, "count", "--input", write_graph(tmp_path, Bigraph([[0]])))
    assert code == 0
    d = json.loads(out)
    assert d["alpha"] == 0 and d["phi"] == "1"


def test_count_accepts_terse_text(capsys, tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("# 4-cycle\n2 2\n0 0 1\n0 1 1\n1 0 1\n1 1 1\n")
    code, out, _ = run(capsys, "count", "--input", str(p))
    assert code == 0 and json.loads(out)["phi"] == "2"


def test_count_disagreement_exits_nonzero(capsys, tmp_path, monkeypatch):
    monkeypatch.setattr(cli, "count_max_matchings_oracle", lambda G: MatchCount(2, 99))
    code, out, _ = run(capsys, "count", "--input", write_graph(tmp_path, Bigraph([[1, 1], [1, 1]])))
    d = json.loads(out)
    assert code == 2 and d["agreement"] is False and d["oracle_phi"] == "99" and d["phi"] == "2"


def test_output_is_byte_stable(capsys, tmp_path):
    g = write_graph(tmp_path, Bigraph([[2, 1, 0], [0, 1, 1], [1, 0, 3]]))
    first = run(capsys, "analyze", "--input", g)[1]
    second = run(capsys, "analyze", "--input", g)[1]
    assert first == second
    assert json.loads(first)["hall"] is True


def test_bounds_formats(capsys, tmp_path):
    g = write_graph(tmp_path, Bigraph([[1, 1], [1, 1]]))
    code, out, _ = run(capsys, "bounds", "--input", g, "--format", "csv")
    assert code == 0 and out.splitlines()[0].startswith("theorem,")
    code, out, _ = run(capsys, "bounds", "--input", g, "--format", "json")
    assert json.loads(out)["phi"] == "2"


def test_decompose(capsys, tmp_path):
    code, out, _ = run(capsys, "decompose", "--input", write_graph(tmp_path, Bigraph([[1, 1], [1, 1]])))
    d = json.loads(out)
    assert code == 0 and d["valid"] is True
    code, _, err = run(capsys, "decompose", "--input", write_graph(tmp_path, Bigraph([[1, 1], [0, 1]])))
    assert code == 1 and "not elementary" in err


def test_normalize(capsys, tmp_path):
    g = write_graph(tmp_path, Bigraph([[1, 1, 1], [1, 1, 1], [1, 1, 1]]))
    code, out, _ = run(capsys, "normalize", "--input", g, "--k", "3", "--r", "2")
    d = json.loads(out)
    assert code == 0 and d["steps"]
    assert int(d["phi_after"]) <= int(d["phi_before"]) == 6


def test_verify_small(capsys, tmp_path):
    out = tmp_path / "rep.json"
    code, text, err = run(
        capsys, "verify", "--theorem", "main,y2", "--nx-max", "2", "--ny-max", "3", "--mult-max", "2", "--out", str(out)
    )
    assert code == 0
    assert text.splitlines()[0].startswith("| theorem | instances")
    assert "swept in" in err
    reps = json.loads(out.read_text())
    assert [r["theorem_id"] for r in reps] == ["main", "y2"]
    assert all(r["violations"] == [] for r in reps)
    assert "runtime_s" not in reps[0]


def test_verify_json_is_deterministic(capsys):
    argv = ["verify", "--theorem", "leafmain", "--nx-max", "2", "--ny-max", "3", "--mult-max", "2", "--format", "json"]
    first = run(capsys, *argv)[1]
    assert run(capsys, *argv)[1] == first


def test_search(capsys):
    code, out, _ = run(
        capsys, "search", "--nx-min", "3", "--nx-max", "3", "--ny-min", "3", "--ny-max", "3", "--mult-max", "3",
        "--hall", "--k-min", "3", "--deltaY-min", "2", "--format", "json",
    )
    d = json.loads(out)
    assert code == 0 and d["min_phi"] == "5" and d["witnesses"] == [[[0, 1, 2], [1, 0, 2], [1, 1, 1]]]


@pytest.mark.parametrize(
    "argv",
    [
        ["construct", "--family", "nope"],
        ["construct", "--family", "F", "--params", "k"],
        ["construct", "--family", "F", "--params", "q=3"],
        ["construct", "--family", "F", "--params", "k=1"],
        ["verify", "--theorem", "nope"],
        ["verify", "--nx-max", "6", "--ny-max", "6", "--budget", "100"],
        ["bogus"],
        [],
    ],
)
def test_errors_exit_one(capsys, argv):
    assert main(argv) == 1


def test_malformed_input_exits_one(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    assert main(["count", "--input", str(p)]) == 1
    assert main(["count", "--input", str(tmp_path / "missing.json")]) == 1


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "bimatch", "construct", "--family", "F", "--params", "k=4"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stderr)["predicted_phi"] == "6"
