import io
import json
import subprocess
import sys

from autdel.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_construct_verify_roundtrip(capsys, tmp_path):
    prefix = tmp_path / "w"
    code, out, _ = run(capsys, "construct", "--g1", "Z2", "--g2", "Z3", "--out", str(prefix))
    assert code == 0 and out.strip()
    assert (tmp_path / "w.g6").exists()
    code, out, _ = run(capsys, "verify", str(tmp_path / "w.json"))
    assert code == 0
    assert json.loads(out)["status"] == "pass"


def test_construct_formats(capsys):
    code, out, _ = run(capsys, "construct", "--g1", "I", "--g2", "I", "--format", "dot")
    assert code == 0 and out.startswith("graph G {")
    code, out, _ = run(capsys, "construct", "--g1", "I", "--g2", "I", "--format", "json")
    assert json.loads(out)["target"] == {"vertex": 10}


def test_construct_edge_subdivide(capsys, tmp_path):
    code, _, _ = run(capsys, "construct", "--relation", "edge", "--g1", "Z2", "--g2", "Z3",
                     "--subdivide", "--out", str(tmp_path / "s"))
    assert code == 0
    assert "vertex" in json.loads((tmp_path / "s.json").read_text())["target"]
    assert run(capsys, "verify", str(tmp_path / "s.json"))[0] == 0


def test_unsupported_edge_to_trivial(capsys):
    code, _, err = run(capsys, "construct", "--relation", "edge", "--g1", "Z2", "--g2", "I")
    assert code == 2 and "error" in err


def test_bad_group_spec(capsys):
    code, _, err = run(capsys, "construct", "--g1", "Q8", "--g2", "I")
    assert code == 2 and "position 0" in err


def test_verify_tampered_sidecar(capsys, tmp_path):
    run(capsys, "construct", "--g1", "Z2", "--g2", "Z2", "--out", str(tmp_path / "w"))
    obj = json.loads((tmp_path / "w.json").read_text())
    obj["gamma2"] = "Z3"
    (tmp_path / "bad.json").write_text(json.dumps(obj))
    code, out, err = run(capsys, "verify", str(tmp_path / "bad.json"))
    assert code == 1
    assert json.loads(out)["status"] == "fail" and "mismatch" in err


def test_aut(capsys, tmp_path):
    (tmp_path / "k4.g6").write_text("C~\n")
    code, out, _ = run(capsys, "aut", str(tmp_path / "k4.g6"))
    assert code == 0 and "order 24" in out
    code, out, _ = run(capsys, "aut", "--json", str(tmp_path / "k4.g6"))
    obj = json.loads(out)
    assert obj["order"] == 24 and obj["orbits"] == [[0, 1, 2, 3]]


def test_aut_stdin(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.TextIOWrapper(io.BytesIO(b"Bw\n")))
    code, out, _ = run(capsys, "aut", "-")
    assert code == 0 and "order 6" in out


def test_aut_errors(capsys, tmp_path):
    (tmp_path / "empty.g6").write_text("")
    assert run(capsys, "aut", str(tmp_path / "empty.g6"))[0] == 2
    (tmp_path / "bad.g6").write_text("C~~\n")
    code, _, err = run(capsys, "aut", str(tmp_path / "bad.g6"))
    assert code == 2 and "byte offset 2" in err
    assert run(capsys, "aut", str(tmp_path / "missing.g6"))[0] == 2


def test_search(capsys, tmp_path):
    code, out, _ = run(capsys, "search", "--g1", "Z2", "--g2", "Z2", "--max-n", "4",
                       "--out", str(tmp_path / "m"))
    assert code == 0
    obj = json.loads(out)
    assert obj["order"] == 3 and obj["exhausted_up_to"] == 2
    assert (tmp_path / "m.json").exists()


def test_search_limits(capsys):
    assert run(capsys, "search", "--g1", "Z2", "--g2", "Z3", "--max-n", "99")[0] == 2
    assert run(capsys, "search", "--relation", "edge", "--g1", "Z2", "--g2", "Z3",
               "--max-n", "11")[0] == 2


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "4")
    assert code == 0 and len(out.split()) == 11
    assert run(capsys, "enumerate", "11")[0] == 2


def test_usage_error(capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "construct", "--g1", "I")[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "autdel", "enumerate", "3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and len(proc.stdout.split()) == 4
