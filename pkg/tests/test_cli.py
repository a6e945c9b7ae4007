import json
import os
import shutil
import subprocess
import sys

import numpy as np
import pytest

from gaussgraph.cli import main
from gaussgraph.fixtures import SIX_MODE_REVEALED_EDGES
from gaussgraph.graphs import ComplexGraph, graph_from_state, real_edges, state_from_graph
from gaussgraph.io import read_glus, read_state, state_to_dict, write_json
from gaussgraph.sampling import random_glus
from gaussgraph.states import apply_glus

from conftest import data_path


@pytest.fixture
def work(tmp_path):
    def copy(name):
        dst = tmp_path / name
        shutil.copy(data_path(name), dst)
        return str(dst)
    return copy


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_build_squeeze(capsys):
    code, out, _ = run(capsys, "build", data_path("circuit_squeeze1.json"))
    assert code == 0
    d = json.loads(out)
    assert d["ordering"] == "mode"
    assert d["sigma"][0][0] == pytest.approx(0.5 * np.exp(2.0))


def test_build_matches_fixture(capsys):
    code, out, _ = run(capsys, "build", data_path("circuit_six_mode.json"))
    assert code == 0
    assert np.allclose(json.loads(out)["sigma"], read_state(data_path("state_six_mode.json")).sigma, atol=1e-12)


def test_build_empty_circuit_gives_vacuum(capsys, tmp_path):
    out = tmp_path / "v.json"
    assert run(capsys, "build", data_path("circuit_empty2.json"), "--out", out)[0] == 0
    assert np.array_equal(read_state(str(out)).sigma, 0.5 * np.eye(4))


def test_build_db_flag(capsys, tmp_path):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"modes": 1, "ops": [{"kind": "squeeze", "mode": 1, "r": 20}]}))
    code, out, _ = run(capsys, "build", p, "--db")
    assert code == 0
    assert json.loads(out)["sigma"][1][1] == pytest.approx(0.005)


def test_build_non_symplectic_local(capsys, tmp_path):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"modes": 1, "ops": [{"kind": "local", "mode": 1, "matrix": [[1, 0], [0, 2]]}]}))
    code, _, err = run(capsys, "build", p)
    assert code == 3 and "symplectic" in err


def test_parse_error_exit(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"n": 1,\n')
    code, _, err = run(capsys, "graph", p)
    assert code == 2 and "line" in err
    code, _, _ = run(capsys, "graph", tmp_path / "missing.json")
    assert code == 1


def test_impure_exit(capsys, tmp_path):
    p = tmp_path / "mixed.json"
    p.write_text(json.dumps({"n": 1, "ordering": "mode", "sigma": [[1, 0], [0, 1]]}))
    for cmd in ("graph", "diagnose", "reduce"):
        code, _, err = run(capsys, cmd, p)
        assert code == 4 and "deviation" in err


def test_graph_formats(capsys):
    code, out, _ = run(capsys, "graph", data_path("state_six_mode.json"))
    assert code == 0 and out.startswith("graph G {")
    assert "1 -- 3 [style=solid" in out
    code, out, _ = run(capsys, "graph", data_path("state_cluster.json"), "--format", "json")
    assert json.loads(out)["n"] == 2


def test_diagnose_b0(capsys):
    code, out, _ = run(capsys, "diagnose", data_path("state_b0.json"))
    assert code == 0
    d = json.loads(out)
    assert d["diagnostics"]["verdict"]["flagged"] is False
    assert d["diagnostics"]["pptMinEigenvalue"]["1"] == pytest.approx(0.2610, abs=1e-4)
    assert d["input"]["file"] == "state_b0.json" and len(d["input"]["sha256"]) == 64


def test_diagnose_vacuum_and_flagged(capsys):
    code, out, _ = run(capsys, "diagnose", data_path("state_vacuum2.json"))
    assert code == 0
    assert json.loads(out)["diagnostics"]["pptMinEigenvalue"]["1"] == pytest.approx(0.5)
    code, out, _ = run(capsys, "diagnose", data_path("state_flagged4.json"))
    assert code == 0
    v = json.loads(out)["diagnostics"]["verdict"]
    assert v["flagged"] and v["witnesses"][0]["j"] == 1 and v["witnesses"][0]["k"] == 4


def test_diagnose_jobs_matches_serial(capsys):
    files = [data_path(f) for f in ("state_b0.json", "state_epr.json", "state_six_mode.json")]
    _, serial, _ = run(capsys, "diagnose", *files)
    _, parallel, _ = run(capsys, "diagnose", "--jobs", "3", *files)
    assert serial == parallel
    assert len(json.loads(serial)) == 3
    assert run(capsys, "diagnose", "--jobs", "0", files[0])[0] == 1


def test_reduce_six_mode(capsys, work):
    path = work("state_six_mode.json")
    code, out, _ = run(capsys, "reduce", path)
    assert code == 0
    rep = json.loads(out)
    assert rep["reduction"]["outcome"] == "success"
    assert rep["reduction"]["detDrift"] < 1e-9
    reduced = read_state(path.replace(".json", ".reduced.json"))
    assert real_edges(graph_from_state(reduced)) == SIX_MODE_REVEALED_EDGES
    glus = read_glus(path.replace(".json", ".glus.json"))
    assert np.allclose(apply_glus(read_state(path), glus).sigma, reduced.sigma, atol=1e-9)
    assert run(capsys, "verify", path, path.replace(".json", ".glus.json"))[0] == 0


def test_reduce_outputs_and_flags(capsys, work, tmp_path):
    path = work("state_b0.json")
    so, go = tmp_path / "s.json", tmp_path / "g.json"
    code, out, _ = run(capsys, "reduce", path, "--state-out", so, "--glus-out", go, "--tol", "1e-9", "--max-branches", "8")
    assert code == 0 and so.exists() and go.exists()
    rep = json.loads(out)
    assert rep["config"] == {"tol": 1e-9, "threshold": 1e-10, "maxBranches": 8}


def test_reduce_flagged(capsys, work):
    path = work("state_flagged4.json")
    code, out, _ = run(capsys, "reduce", path)
    assert code == 10
    assert json.loads(out)["reduction"]["outcome"] == "irreducible"
    assert not os.path.exists(path.replace(".json", ".reduced.json"))


def test_reduce_failed_exit(capsys, tmp_path):
    rng = np.random.default_rng(7)
    V = np.triu(rng.normal(size=(4, 4)), 1)
    state = apply_glus(state_from_graph(ComplexGraph(V + V.T, np.eye(4))), random_glus(4, rng))
    path = tmp_path / "s.json"
    write_json(path, state_to_dict(state))
    code, out, _ = run(capsys, "reduce", path, "--max-branches", "0")
    assert code == 11
    assert json.loads(out)["reduction"]["outcome"] == "failed"


def test_verify(capsys):
    state = data_path("state_six_mode.json")
    assert run(capsys, "verify", state, data_path("glus_six_mode.json"))[0] == 0
    code, out, err = run(capsys, "verify", state, data_path("glus_identity6.json"))
    assert code == 12 and "diagonal-U" in err
    assert json.loads(out)["firstFailure"] == "diagonal-U"
    assert run(capsys, "verify", data_path("state_b0.json"), data_path("glus_balancing_b0.json"))[0] == 0
    code, _, err = run(capsys, "verify", data_path("state_b0.json"), state.replace("state_six_mode", "glus_six_mode"))
    assert code == 12 and "dimension" in err


def test_tolerance_env(capsys, monkeypatch, work):
    path = work("state_b0.json")
    monkeypatch.setenv("GAUSSGRAPH_TOL", "1e-6")
    _, out, _ = run(capsys, "reduce", path)
    assert json.loads(out)["config"]["tol"] == 1e-6
    _, out, _ = run(capsys, "reduce", path, "--tol", "1e-7")
    assert json.loads(out)["config"]["tol"] == 1e-7
    monkeypatch.setenv("GAUSSGRAPH_TOL", "loose")
    assert run(capsys, "reduce", path)[0] == 1
    monkeypatch.delenv("GAUSSGRAPH_TOL")
    assert run(capsys, "reduce", path, "--tol", "-1")[0] == 1


def test_reports_are_deterministic(capsys, work):
    path = work("state_cluster.json")
    first = run(capsys, "reduce", path)
    second = run(capsys, "reduce", path)
    assert first == second


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gaussgraph", "diagnose", data_path("state_epr.json")],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["n"] == 2
    proc = subprocess.run([sys.executable, "-m", "gaussgraph"], capture_output=True, text=True, check=False)
    assert proc.returncode == 1


def test_reduce_b0_trace_matches_balancing_squeeze(capsys, work):
    from gaussgraph.fixtures import balancing_squeeze_glus
    path = work("state_b0.json")
    code, out, _ = run(capsys, "reduce", path)
    assert code == 0
    rep = json.loads(out)["reduction"]
    ref = graph_from_state(apply_glus(read_state(path), balancing_squeeze_glus(2.30, 1.65)))
    assert np.trace(rep["U"]) == pytest.approx(np.trace(ref.U), rel=1e-9)
    assert rep["metadata"]["normalization"] == "local blocks proportional to identity"
