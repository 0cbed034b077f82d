import json
import subprocess
import sys

import jsonschema
import pytest

from ramsey_lb.cli import THREADS_ENV, default_threads, parse_family, parse_forbidden, run
from ramsey_lb.budget import Budget
from ramsey_lb.formats import from_graph6
from ramsey_lb.graphs import named_graph
from ramsey_lb.reports import TIMESTAMP_KEY, schema_for, strip_timestamp


def invoke(tmp_path, *argv, name="out.json"):
    out = tmp_path / name
    code = run([*argv, "--out", str(out)])
    report = json.loads(out.read_text()) if out.exists() else None
    return code, report, out


def validate(report):
    jsonschema.validate(report, schema_for(report["kind"]))


COMMANDS = [
    ("geometry", ["--family", "quadrangle", "--q", "2"]),
    ("geometry", ["--family", "hermitian", "--q", "2"]),
    ("lfamily", ["--forbid", "C5"]),
    ("checkfree", ["--geometry", "hexagon:q=2", "--forbid", "C5"]),
    ("witness", ["--geometry", "quadrangle:q=2", "--forbid", "C3", "--p", "1", "--audit-size", "5", "--audit-trials", "50"]),
    ("zarankiewicz", ["--m", "3", "--n", "3", "--family", "c4"]),
    ("predict", ["--theorem", "3", "--l", "2", "--alpha", "3", "--beta", "3/5"]),
    ("predict", ["--theorem", "5", "--l", "3", "--alpha", "2", "--alpha-max", "100"]),
    ("predict", ["--theorem", "1", "--geometry", "hexagon:q=2"]),
    ("predict", ["--theorem", "count", "--n", "63", "--r", "3", "--R", "20", "--t", "10", "--delta", "0.1"]),
    ("audit", ["--geometry", "quadrangle:q=2", "--set-size", "6", "--trials", "100", "--container"]),
    ("selftest", []),
]


@pytest.mark.parametrize("cmd,args", COMMANDS, ids=[f"{c}-{i}" for i, (c, _) in enumerate(COMMANDS)])
def test_reports_validate(tmp_path, cmd, args):
    code, report, _ = invoke(tmp_path, cmd, *args)
    assert code == 0
    assert report["kind"] == cmd and report["schema_version"] == 1 and report["tool"] == "ramsey-lb"
    assert report["run_config"]["command"] == cmd
    validate(report)


def test_predict_values(tmp_path):
    _, r, _ = invoke(tmp_path, "predict", "--theorem", "3", "--l", "2", "--alpha", "3", "--beta", "3/5")
    assert (r["result"]["t_exponent"], r["result"]["log_exponent"]) == ("10/7", "13/7")
    _, r, _ = invoke(tmp_path, "predict", "--theorem", "3", "--l", "3", "--alpha", "2", "--beta", "4/7")
    assert (r["result"]["t_exponent"], r["result"]["log_exponent"]) == ("5/4", "3/2")


def test_zarankiewicz_small_values(tmp_path):
    _, r, _ = invoke(tmp_path, "zarankiewicz", "--m", "2", "--n", "2", "--family", "c4")
    assert r["result"]["value"] == 3 and r["result"]["status"] == "exact"
    _, r, _ = invoke(tmp_path, "zarankiewicz", "--m", "3", "--n", "3", "--family", "c4")
    assert r["result"]["value"] == 6


def test_domain_error_exit_1(tmp_path, capsys):
    code, report, _ = invoke(tmp_path, "geometry", "--family", "plane", "--q", "6")
    assert code == 1 and report is None
    err = capsys.readouterr().err
    assert "not a prime power" in err
    body = json.loads(err[err.index("{"):])
    validate(body)
    assert body["kind"] == "error"


def test_witness_not_free_reports_embedding(tmp_path, capsys):
    code, _, _ = invoke(tmp_path, "witness", "--geometry", "plane:q=2", "--forbid", "C3")
    assert code == 1
    err = capsys.readouterr().err
    body = json.loads(err[err.index("{"):])
    assert body["result"]["witness"]["free"] is False


@pytest.mark.parametrize(
    "argv",
    [
        ["geometry", "--family", "plane"],
        ["nope"],
        ["predict", "--theorem", "3", "--l", "2"],
        ["geometry", "--family", "plane", "--q", "2", "--threads", "0"],
        ["geometry", "--family", "plane", "--q", "2", "--budget", "soon"],
        ["witness", "--geometry", "plane:q=2", "--forbid", "C3", "--p", "1.5"],
    ],
)
def test_usage_error_exit_2(argv, capsys):
    assert run(argv) == 2
    assert capsys.readouterr().err


def test_threads_env(monkeypatch, tmp_path):
    monkeypatch.setenv(THREADS_ENV, "3")
    assert default_threads() == 3
    _, r, _ = invoke(tmp_path, "geometry", "--family", "plane", "--q", "2")
    assert r["run_config"]["threads"] == 3
    _, r, _ = invoke(tmp_path, "geometry", "--family", "plane", "--q", "2", "--threads", "2")
    assert r["run_config"]["threads"] == 2
    monkeypatch.setenv(THREADS_ENV, "many")
    assert default_threads() >= 1


def test_json_stdout_matches_file(tmp_path, capsys):
    out = tmp_path / "g.json"
    assert run(["geometry", "--family", "plane", "--q", "2", "--out", str(out), "--json"]) == 0
    printed = capsys.readouterr().out
    a, b = json.loads(printed), json.loads(out.read_text())
    assert strip_timestamp(a) == strip_timestamp(b)


@pytest.mark.parametrize(
    "argv",
    [
        ["witness", "--geometry", "hexagon:q=2", "--forbid", "C5", "--seed", "42", "--p", "1", "--audit-size", "20"],
        ["audit", "--geometry", "quadrangle:q=2", "--set-size", "6", "--seed", "3", "--container"],
        ["zarankiewicz", "--m", "4", "--n", "4", "--family", "lfamily:P3", "--both-orientations"],
        ["lfamily", "--forbid", "K4"],
    ],
)
def test_byte_identical_reruns(tmp_path, argv):
    out = tmp_path / "r.json"
    texts = []
    for _ in range(2):
        assert run([*argv, "--out", str(out)]) == 0
        texts.append(out.read_text())
    stripped = [json.dumps(strip_timestamp(json.loads(t)), sort_keys=True) for t in texts]
    assert stripped[0] == stripped[1]
    lines = [[ln for ln in t.splitlines() if TIMESTAMP_KEY not in ln] for t in texts]
    assert lines[0] == lines[1]


def test_figures_written_and_stable(tmp_path):
    argv = ["witness", "--geometry", "quadrangle:q=2", "--forbid", "C3", "--p", "1", "--audit-size", "6", "--figures"]
    _, _, out = invoke(tmp_path, *argv)
    adj = tmp_path / "out_witness.png"
    hist = tmp_path / "out_audit.png"
    assert adj.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n" and hist.exists()
    first = adj.read_bytes()
    invoke(tmp_path, *argv)
    assert adj.read_bytes() == first


@pytest.mark.parametrize(
    "argv,suffix",
    [
        (["zarankiewicz", "--m", "3", "--n", "4", "--family", "c4"], "zmatrix"),
        (["predict", "--theorem", "3", "--l", "2", "--alpha", "3"], "exponents"),
        (["predict", "--theorem", "5", "--l", "2"], "exponents"),
        (["audit", "--geometry", "plane:q=2", "--set-size", "3", "--trials", "20"], "audit"),
    ],
)
def test_other_figures(tmp_path, argv, suffix):
    invoke(tmp_path, *argv, "--figures")
    assert (tmp_path / f"out_{suffix}.png").stat().st_size > 0


def test_lfamily_file_round_trip(tmp_path):
    _, rep, out = invoke(tmp_path, "lfamily", "--forbid", "C5")
    _, via_name, _ = invoke(tmp_path, "zarankiewicz", "--m", "4", "--n", "4", "--family", "lfamily:C5", name="a.json")
    _, via_file, _ = invoke(tmp_path, "zarankiewicz", "--m", "4", "--n", "4", "--family", f"file:{out}", name="b.json")
    assert via_name["result"]["value"] == via_file["result"]["value"]
    assert via_file["result"]["family_size"] == rep["result"]["size"]


def test_emit_witness_feeds_checkfree(tmp_path):
    w = tmp_path / "w.json"
    code, rep, _ = invoke(tmp_path, "zarankiewicz", "--m", "3", "--n", "3", "--family", "c4", "--emit-witness", str(w))
    assert code == 0 and rep["result"]["value"] == 6
    code, chk, _ = invoke(tmp_path, "checkfree", "--geometry", f"file:{w}", "--forbid", "C3", name="c.json")
    # the emitted matrix is the incidence graph of a hexagon: girth 6 is too short for C3
    assert code == 0 and not chk["result"]["free"]
    assert chk["result"]["pattern"] == [[1, 1, 0], [1, 0, 1], [0, 1, 1]]


def test_emitted_irregular_witness_is_rejected(tmp_path, capsys):
    w = tmp_path / "w.json"
    code, rep, _ = invoke(tmp_path, "zarankiewicz", "--m", "4", "--n", "4", "--family", "c4", "--emit-witness", str(w))
    assert code == 0 and rep["result"]["value"] == 9
    code, _, _ = invoke(tmp_path, "checkfree", "--geometry", f"file:{w}", "--forbid", "C3", name="c.json")
    assert code == 1 and "biregular" in capsys.readouterr().err


def test_geometry_report_loads_as_file(tmp_path):
    _, _, out = invoke(tmp_path, "geometry", "--family", "quadrangle", "--q", "2")
    code, rep, _ = invoke(tmp_path, "checkfree", "--geometry", f"file:{out}", "--forbid", "C3", name="c.json")
    assert code == 0 and rep["result"]["free"]


def test_parse_forbidden(tmp_path):
    g6 = tmp_path / "f.g6"
    g6.write_text("Dhc\n")
    assert parse_forbidden(str(g6))[0] == from_graph6("Dhc")
    assert parse_forbidden("C5.g6") == (named_graph("C5"), "C5")
    assert parse_forbidden("Bw")[0] == from_graph6("Bw")


def test_parse_family_c4():
    assert len(parse_family("c4", Budget())) == 1


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ramsey_lb", "predict", "--theorem", "5", "--l", "2"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0 and "exponent" in proc.stdout
