import io
import json
import subprocess
import sys
from fractions import Fraction

import jsonschema
import pytest

from blockspec import cli
from blockspec.graph import parse_edgelist_json, parse_graph6
from blockspec.lab import ConjectureReport
from blockspec.schemas import load_schema


def run(capsys, monkeypatch, argv, stdin=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def analysis_schema():
    return load_schema("analysis_report")


def test_analyze_triangle(capsys, monkeypatch, analysis_schema):
    code, out, _ = run(capsys, monkeypatch, ["analyze"], stdin="Bw\n")
    assert code == 0
    report = json.loads(out)
    jsonschema.validate(report, analysis_schema)
    assert report["determinant"] == "2/1" and report["nullity"] == 0
    assert report["tags"] == ["B31-nonsingular"]
    assert report["engines_used"] == ["det_exact", "det_block_formula", "reduction"]
    assert report["agreement"]["all"]


def test_analyze_nmk_fixture(capsys, monkeypatch, analysis_schema):
    code, out, _ = run(capsys, monkeypatch, ["analyze", "--fixture", "nmk_4_4_2"])
    report = json.loads(out)
    jsonschema.validate(report, analysis_schema)
    assert code == 0
    assert report["determinant"] == "0/1" and report["nullity"] >= 1
    assert "NMK-criterion-singular" in report["tags"]
    assert report["rank"] + report["nullity"] == report["n"] == 28


def test_analyze_cycle(capsys, monkeypatch, analysis_schema):
    code, out, _ = run(capsys, monkeypatch, ["analyze"], stdin="Dhc\n")
    report = json.loads(out)
    jsonschema.validate(report, analysis_schema)
    assert report["n"] == 5 and report["flags"]["is_block_graph"] is False
    assert report["engines_used"] == ["det_exact"] and report["certificate"] is None
    assert report["tags"] == []


def test_analyze_weighted_edgelist(tmp_path, capsys, monkeypatch, analysis_schema):
    path = tmp_path / "g.json"
    path.write_text(json.dumps({"n": 3, "edges": [[0, 1], [1, 2], [0, 2]], "loops": {"0": "1/2"}}))
    code, out, _ = run(capsys, monkeypatch, ["analyze", str(path), "--format", "edgelist-json"])
    report = json.loads(out)
    jsonschema.validate(report, analysis_schema)
    # det [[1/2,1,1],[1,0,1],[1,1,0]] = 1/2 * -1 - 1 * -1 + 1 * 1
    assert code == 0 and report["determinant"] == "3/2"
    assert "det_block_formula" not in report["engines_used"]


def test_analyze_many_graph6_lines(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["analyze"], stdin="A_\nBw\n")
    reports = json.loads(out)
    assert code == 0 and [r["determinant"] for r in reports] == ["-1/1", "2/1"]


@pytest.mark.parametrize("stdin", ["Bx\n", "", "~~~\n"])
def test_analyze_parse_errors(capsys, monkeypatch, stdin):
    code, out, err = run(capsys, monkeypatch, ["analyze"], stdin=stdin)
    assert code == 2 and out == "" and err.startswith("error:")


def test_analyze_missing_file_and_fixture(capsys, monkeypatch):
    assert run(capsys, monkeypatch, ["analyze", "/nonexistent/file"])[0] == 2
    assert run(capsys, monkeypatch, ["analyze", "--fixture", "nope"])[0] == 2


def test_reduce(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["reduce", "--fixture", "nmk_4_4_2"])
    doc = json.loads(out)
    assert code == 0 and doc["consistent"] and doc["rank_exact"] == 27
    kinds = {s["kind"] for s in doc["certificate"]["steps"]}
    assert kinds == {"PendantBlock"}


def test_generate(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["generate", '{"family": "NMK", "n": 4, "m": 4, "k": 2}'])
    assert code == 0 and parse_graph6(out.strip()).n == 28
    code, out, _ = run(capsys, monkeypatch, ["generate", '{"family": "GeneralizedStar", "n": 2, "attachments": [[3], [3]]}'])
    assert parse_graph6(out.strip()).n == 6
    krn = '{"family": "KrN", "n": 2, "r": 1, "weights": ["1/2"]}'
    code, out, err = run(capsys, monkeypatch, ["generate", krn])
    assert code == 2 and "loop" in err
    code, out, _ = run(capsys, monkeypatch, ["generate", krn, "--format", "edgelist-json"])
    assert code == 0 and parse_edgelist_json(out).loop(0) == Fraction(1, 2)
    code, out, _ = run(capsys, monkeypatch, ["generate", "-", "--format", "dot"], stdin='{"kind": "complete", "n": 2}')
    assert code == 0 and out.count("--") == 1


@pytest.mark.parametrize("spec", ['{"family": "NMK", "n": 4, "m": 2, "k": 2}', "{not json", '{"family": "Unknown"}'])
def test_generate_invalid(capsys, monkeypatch, spec):
    assert run(capsys, monkeypatch, ["generate", spec])[0] == 2


def test_generate_is_deterministic(capsys, monkeypatch):
    spec = '{"family": "NMK", "n": 3, "m": 4, "k": 2}'
    assert run(capsys, monkeypatch, ["generate", spec])[1] == run(capsys, monkeypatch, ["generate", spec])[1]


def test_enumerate(tmp_path, capsys, monkeypatch):
    assert run(capsys, monkeypatch, ["enumerate", "3", "--k2-forbidden"])[1] == "Bw\n"
    code, out, _ = run(capsys, monkeypatch, ["enumerate", "3"])
    assert code == 0 and len(out.splitlines()) == 4
    assert run(capsys, monkeypatch, ["enumerate", "0"])[:2] == (0, "")
    dest = tmp_path / "g.g6"
    assert run(capsys, monkeypatch, ["enumerate", "6", "--out", str(dest)])[0] == 0
    assert len(dest.read_text().splitlines()) == 1 + 1 + 2 + 4 + 9 + 22


def test_enumerate_respects_env_jobs(capsys, monkeypatch):
    monkeypatch.setenv("BLOCKSPEC_JOBS", "2")
    code, out, _ = run(capsys, monkeypatch, ["enumerate", "7"])
    monkeypatch.setenv("BLOCKSPEC_JOBS", "1")
    assert out == run(capsys, monkeypatch, ["enumerate", "7"])[1]


def test_conjecture_commands(tmp_path, capsys, monkeypatch):
    code, out, err = run(capsys, monkeypatch, ["conjecture", "1", "--n-max", "5"])
    report = json.loads(out)
    jsonschema.validate(report, load_schema("conjecture_report"))
    assert code == 0 and report["complete"] and report["counterexamples"] == []
    assert "elapsed" in err
    code, out, _ = run(capsys, monkeypatch, ["conjecture", "2", "--parts", "3"])
    assert code == 0 and json.loads(out)["complete"]
    assert run(capsys, monkeypatch, ["conjecture", "3"])[0] == 2
    assert run(capsys, monkeypatch, ["conjecture", "1", "--n-max", "2"])[0] == 2
    assert run(capsys, monkeypatch, ["conjecture", "1", "--resume"])[0] == 2


def test_conjecture_out_and_resume(tmp_path, capsys, monkeypatch):
    out = tmp_path / "c1.json"
    code, _, _ = run(capsys, monkeypatch, ["conjecture", "1", "--n-max", "9", "--out", str(out), "--stop-after", "6"])
    assert code == 0 and not json.loads(out.read_text())["complete"]
    assert (tmp_path / "c1.json.checkpoint.json").exists()
    code, _, _ = run(capsys, monkeypatch, ["conjecture", "1", "--n-max", "9", "--out", str(out), "--resume"])
    resumed = out.read_text()
    assert code == 0 and json.loads(resumed)["complete"]
    fresh = tmp_path / "fresh.json"
    run(capsys, monkeypatch, ["conjecture", "1", "--n-max", "9", "--out", str(fresh)])
    assert fresh.read_text() == resumed
    assert (tmp_path / "c1.counterexamples.g6").read_text() == ""


def test_conjecture_counterexample_exit_code(capsys, monkeypatch):
    fake = ConjectureReport(1, 5, [], [{"graph6": "Bw", "nullity": 2}], True)
    monkeypatch.setattr(cli, "test_conjecture_1", lambda *a, **k: fake)
    code, _, err = run(capsys, monkeypatch, ["conjecture", "1", "--n-max", "5"])
    assert code == 1 and "COUNTEREXAMPLE Bw" in err


def test_usage_errors(capsys, monkeypatch):
    assert run(capsys, monkeypatch, [])[0] == 2
    assert run(capsys, monkeypatch, ["frobnicate"])[0] == 2
    assert run(capsys, monkeypatch, ["--help"])[0] == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "blockspec", "enumerate", "3"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.splitlines() == ["@", "A_", "BW", "Bw"]
