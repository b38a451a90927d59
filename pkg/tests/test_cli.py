import io
import json
from contextlib import redirect_stdout
from pathlib import Path

import pytest

from contextuality.cli import main

DATA = Path(__file__).parent / "data"


def run_cli(*argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(list(argv))
    return code, buf.getvalue()


@pytest.fixture()
def files(tmp_path):
    code, _ = run_cli("catalog", "get", "ks18", "-o", str(tmp_path / "ks18.json"))
    assert code == 0
    code, _ = run_cli("catalog", "get", "triangle", "-o", str(tmp_path / "tri.json"))
    assert code == 0
    code, _ = run_cli(
        "catalog", "get", "bell222", "-o", str(tmp_path / "b222.json"), "--models"
    )
    assert code == 0
    return tmp_path


def test_validate(files):
    code, out = run_cli("validate", str(files / "tri.json"))
    assert code == 0
    report = json.loads(out)
    assert report["result"]["vertices"] == 3
    assert report["tool_version"]


def test_validate_garbage(tmp_path):
    bad = tmp_path / "garbage.json"
    bad.write_text("{this is not json")
    code, _ = run_cli("validate", str(bad))
    assert code == 2


def test_missing_file_is_error():
    code, _ = run_cli("validate", "/nonexistent/file.json")
    assert code == 2


def test_decide_ks18_negative(files):
    code, out = run_cli("decide", "allows-classical", str(files / "ks18.json"))
    assert code == 1
    report = json.loads(out)
    assert report["certificate"]["kind"] == "exhausted_search"
    assert report["result"]["answer"] is False


def test_decide_idempotent(files):
    _, out1 = run_cli("decide", "allows-general", str(files / "tri.json"))
    _, out2 = run_cli("decide", "allows-general", str(files / "tri.json"))
    assert out1 == out2


def test_membership_ce1_pr(files):
    code, out = run_cli(
        "membership", "--set", "CE1",
        str(files / "b222.json"), str(files / "b222.pr.json"),
    )
    assert code == 0
    assert json.loads(out)["result"]["answer"] is True


def test_membership_cen_pr_level2(files):
    code, out = run_cli(
        "membership", "--set", "CEn", "--level", "2",
        str(files / "b222.json"), str(files / "b222.pr.json"),
    )
    assert code == 1
    report = json.loads(out)
    assert report["certificate"]["kind"] == "independent_set"


def test_membership_q1_pr(files):
    code, out = run_cli(
        "membership", "--set", "Q1",
        str(files / "b222.json"), str(files / "b222.pr.json"),
    )
    assert code == 1
    assert json.loads(out)["result"]["answer"] == "out"


def test_membership_q1_tsirelson_default_tolerance(files):
    # the theta route's widened default tolerance must apply when --tol is
    # omitted, so the rational surrogate of the boundary box stays inside
    code, out = run_cli(
        "membership", "--set", "Q1",
        str(files / "b222.json"), str(files / "b222.tsirelson.json"),
    )
    assert code == 0
    assert json.loads(out)["result"]["answer"] == "in"


def test_membership_classical(files):
    code, out = run_cli(
        "membership", "--set", "C",
        str(files / "b222.json"), str(files / "b222.det_00.json"),
    )
    assert code == 0


def test_verify_roundtrip(files, tmp_path):
    code, out = run_cli("decide", "allows-classical", str(files / "ks18.json"))
    report_path = tmp_path / "report.json"
    report_path.write_text(out)
    code, out2 = run_cli("verify", str(report_path))
    assert code == 0
    assert json.loads(out2)["result"]["verified"] is True


def test_verify_membership_certificate(files, tmp_path):
    _, out = run_cli(
        "membership", "--set", "CEn", "--level", "2",
        str(files / "b222.json"), str(files / "b222.pr.json"),
    )
    report_path = tmp_path / "ce.json"
    report_path.write_text(out)
    code, out2 = run_cli("verify", str(report_path))
    assert code == 0
    assert json.loads(out2)["result"]["verified"] is True


def test_no_graph_dot(files, tmp_path):
    code, out = run_cli("no-graph", str(files / "tri.json"), "--dot")
    assert code == 0
    assert out.startswith("graph no {")


def test_product_command(files, tmp_path):
    out_path = tmp_path / "prod.json"
    code, _ = run_cli(
        "product", "--kind", "fr",
        str(files / "tri.json"), str(files / "tri.json"),
        "-o", str(out_path),
    )
    assert code == 0
    data = json.loads(out_path.read_text())
    assert len(data["vertices"]) == 9


def test_invariant_alpha(files, tmp_path):
    _, gout = run_cli("no-graph", str(files / "tri.json"))
    gpath = tmp_path / "graph.json"
    gpath.write_text(gout)
    code, out = run_cli("invariant", "alpha", str(gpath))
    assert code == 0
    assert json.loads(out)["result"]["value"] == "3/1"


def test_equivalence_command(tmp_path):
    run_cli("catalog", "get", "cycle5", "-o", str(tmp_path / "c5.json"))
    code, out = run_cli(
        "equivalence", str(tmp_path / "c5.json"), str(tmp_path / "c5.json")
    )
    assert code == 0
    assert json.loads(out)["result"]["verdict"] == "equivalent"


def test_extremals_command(tmp_path):
    run_cli("catalog", "get", "circular4", "-o", str(tmp_path / "c4.json"))
    code, out = run_cli("extremals", str(tmp_path / "c4.json"))
    assert code == 0
    report = json.loads(out)
    assert report["result"]["count"] == report["result"]["deterministic"]


def test_catalog_list():
    code, out = run_cli("catalog", "list")
    assert code == 0
    assert "ks18" in json.loads(out)
