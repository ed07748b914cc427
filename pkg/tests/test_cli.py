import json
import math
import subprocess
import sys

import pytest

from bgph.cli import main
from conftest import EXAMPLE_GRAPH, geodesic


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, rows in {"x1": [(0, 0), (2, 0), (0, 4)], "x2": [(0, 0), (2, 0), (1, math.sqrt(15))],
                       "x1d": [(0, 0), (2, 0), (0, 4), (0, 0)], "big": [(float(k), 0) for k in range(8)]}.items():
        f = tmp_path / f"{name}.csv"
        f.write_text("".join(",".join(repr(float(v)) for v in r) + "\n" for r in rows))
        paths[name] = str(f)
    g = tmp_path / "graph.csv"
    g.write_text("".join(",".join(str(v) for v in row) + "\n" for row in geodesic(7, EXAMPLE_GRAPH)))
    paths["graph"] = str(g)
    paths["dir"] = tmp_path
    return paths


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out.strip()


def test_barcode_and_distance(files, capsys):
    a, b = str(files["dir"] / "a.json"), str(files["dir"] / "b.json")
    svg = str(files["dir"] / "a.svg")
    assert run(capsys, "barcode", "--input", files["x1"], "--mode", "phz", "--out", a, "--svg", svg)[0] == 0
    assert run(capsys, "barcode", "--input", files["x2"], "--mode", "phz", "--out", b)[0] == 0
    doc = json.load(open(a))
    assert doc["grading"] == "bigraded" and doc["provenance"]["mode"] == "phz"
    assert open(svg).read().startswith("<svg")
    code, out = run(capsys, "distance", "--a", a, "--b", b)
    assert code == 0 and float(out) == pytest.approx(2 * math.sqrt(5) - 4, abs=1e-12)
    assert float(run(capsys, "distance", "--a", a, "--b", a, "--kind", "interleaving")[1]) == 0


def test_ph_documents_coincide(files, capsys):
    a, b = str(files["dir"] / "p1.json"), str(files["dir"] / "p2.json")
    run(capsys, "barcode", "--input", files["x1"], "--mode", "ph", "--out", a)
    run(capsys, "barcode", "--input", files["x2"], "--mode", "ph", "--out", b)
    doc = json.load(open(a))
    assert [(r["degree"], r["birth"], r["death"]) for r in doc["bars"]] == [(0, 0.0, 2.0), (0, 0.0, 4.0)]
    assert float(run(capsys, "distance", "--a", a, "--b", b)[1]) == 0
    c = str(files["dir"] / "z.json")
    run(capsys, "barcode", "--input", files["x1"], "--mode", "phz", "--out", c)
    assert run(capsys, "distance", "--a", a, "--b", c)[0] == 1


def test_graph_matrix(files, capsys):
    code, out = run(capsys, "barcode", "--input", files["graph"], "--matrix", "--mode", "phhz")
    bars = [(r["i"], r["j"], r["birth"], r["death"]) for r in json.loads(out)["bars"]]
    assert code == 0 and bars == [(0, 0, 0.0, None), (1, 2, 0.0, 4.0)]


def test_deterministic_output(files, capsys):
    first = run(capsys, "barcode", "--input", files["x1"], "--mode", "phhz")[1]
    assert run(capsys, "barcode", "--input", files["x1"], "--mode", "phhz")[1] == first


def test_gh(files, capsys):
    assert float(run(capsys, "gh", "--a", files["x1"], "--b", files["x1"])[1]) == 0
    assert float(run(capsys, "gh", "--a", files["x1"], "--b", files["x1d"])[1]) == 0
    assert float(run(capsys, "gh", "--a", files["x1"], "--b", files["x2"], "--mode", "bijective")[1]) > 0
    assert run(capsys, "gh", "--a", files["x1"], "--b", files["x1d"], "--mode", "bijective")[0] == 1
    assert run(capsys, "gh", "--a", files["big"], "--b", files["big"])[0] == 2


def test_stability(files, capsys):
    code, out = run(capsys, "stability", "--a", files["x1"], "--b", files["x2"], "--mode", "phhz")
    assert code == 0 and out.startswith("PASS")
    code, out = run(capsys, "stability", "--a", files["x1"], "--b", files["x1d"], "--mode", "phhz")
    assert code == 0 and "= 0.0 <=" in out
    assert run(capsys, "stability", "--a", files["x1"], "--b", files["x1"], "--mode", "phz")[0] == 0
    assert run(capsys, "stability", "--a", files["x1"], "--b", files["x1d"], "--mode", "phz")[0] == 1


def test_betti_csv(files, capsys):
    code, out = run(capsys, "betti", "--input", files["x1"], "--t", "0")
    assert code == 0 and out.splitlines()[2] == "-1,0,0,3,0"


def test_errors(files, capsys, tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("0,x\n")
    assert run(capsys, "barcode", "--input", str(bad), "--mode", "ph")[0] == 1
    assert run(capsys, "barcode", "--input", str(tmp_path / "missing.csv"), "--mode", "ph")[0] == 1
    assert run(capsys, "barcode", "--input", files["big"], "--mode", "phz", "--cap", "5")[0] == 2
    assert run(capsys, "barcode", "--input", files["x1"], "--mode", "ph", "--field", "4")[0] == 1
    with pytest.raises(SystemExit) as exc:
        main(["barcode", "--mode", "nope"])
    assert exc.value.code == 1


def test_selftest_and_module_entry(capsys):
    code, out = run(capsys, "selftest", "--seed", "3", "--trials", "2", "--checks", "surgery,nilpotency")
    assert code == 0 and out.splitlines() == ["PASS nilpotency: 2/2", "PASS surgery: 2/2"]
    assert run(capsys, "selftest", "--checks", "bogus")[0] == 1
    res = subprocess.run([sys.executable, "-m", "bgph", "--version"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith("bgph")


def test_threads_env(files, capsys, monkeypatch):
    monkeypatch.setenv("BGPH_THREADS", "3")
    assert run(capsys, "barcode", "--input", files["x1"], "--mode", "phz")[0] == 0
    monkeypatch.setenv("BGPH_THREADS", "many")
    assert run(capsys, "barcode", "--input", files["x1"], "--mode", "phz")[0] == 1
