import json

import pytest
from click.testing import CliRunner

from commacat.cli import main
from tests.test_document import sample_document


@pytest.fixture()
def runner():
    return CliRunner()


def test_run_requires_source(runner):
    result = runner.invoke(main, ["run"])
    assert result.exit_code == 2


def test_hom_table_a2_json(runner):
    result = runner.invoke(main, ["run", "--fixture", "a2", "--task", "hom-table"])
    assert result.exit_code == 0
    report = json.loads(result.output)
    task = report["tasks"][0]
    assert task["labels"] == ["0", "S_R", "S_S", "P", "N"]
    assert task["table"] == [
        [0, 0, 0, 0, 0],
        [0, 1, 0, 0, 1],
        [0, 0, 1, 1, 1],
        [0, 1, 0, 1, 1],
        [0, 1, 1, 1, 2],
    ]


def test_verify_all_deterministic(runner):
    first = runner.invoke(main, ["run", "--fixture", "a2", "--task", "verify-all"])
    second = runner.invoke(main, ["run", "--fixture", "a2", "--task", "verify-all"])
    assert first.exit_code == 0 and second.exit_code == 0
    assert first.output == second.output
    report = json.loads(first.output)
    claims = [v["claim"] for v in report["tasks"][0]["verdicts"]]
    assert "hom-formula-1" in claims
    assert any(c.startswith("torsion-transfer-mono") for c in claims)


def test_verify_all_text_format(runner):
    result = runner.invoke(main, ["run", "--fixture", "a2", "--task", "verify-all", "--format", "text"])
    assert result.exit_code == 0
    assert "[PASS] hom-formula-1" in result.output
    assert "[FAIL]" in result.output  # the refuted transfer instances


def test_unknown_task_exits_3(runner):
    result = runner.invoke(main, ["run", "--fixture", "a2", "--task", "bogus"])
    assert result.exit_code == 3


def test_run_document(runner, tmp_path):
    doc_path = tmp_path / "doc.json"
    doc_path.write_text(json.dumps(sample_document()))
    result = runner.invoke(main, ["run", str(doc_path)])
    assert result.exit_code == 0, result.output
    report = json.loads(result.output)
    by_name = {t["name"]: t for t in report["tasks"]}
    assert by_name["homs"]["table"][1][1] == 1
    assert by_name["tp"]["verdicts"][0]["result"] == "holds"
    assert by_name["silt"]["holds"] is False  # k is not silting for sigma = (.x)
    assert by_name["dsm"]["member"] is False
    assert by_name["gm"]["member"] is True


def test_run_document_task_filter(runner, tmp_path):
    doc_path = tmp_path / "doc.json"
    doc_path.write_text(json.dumps(sample_document()))
    result = runner.invoke(main, ["run", str(doc_path), "--task", "homs"])
    assert result.exit_code == 0
    report = json.loads(result.output)
    assert [t["name"] for t in report["tasks"]] == ["homs"]


def test_run_invalid_document_exit_2(runner, tmp_path):
    data = sample_document()
    data["comma_objects"]["bad"] = {"bimodule": "U", "A": "missing", "B": "Sk", "phi": [[0]]}
    doc_path = tmp_path / "bad.json"
    doc_path.write_text(json.dumps(data))
    result = runner.invoke(main, ["run", str(doc_path)])
    assert result.exit_code == 2


def test_validate_pristine(runner, tmp_path):
    doc_path = tmp_path / "doc.json"
    doc_path.write_text(json.dumps(sample_document()))
    result = runner.invoke(main, ["validate", str(doc_path)])
    assert result.exit_code == 0
    assert "valid" in result.output


def test_validate_broken_algebra(runner, tmp_path):
    data = sample_document()
    data["algebras"]["R"]["mul"][1][0][1] = 0
    doc_path = tmp_path / "doc.json"
    doc_path.write_text(json.dumps(data))
    result = runner.invoke(main, ["validate", str(doc_path)])
    assert result.exit_code == 2
    assert "INVALID algebras.R" in result.output


def test_validate_broken_phi(runner, tmp_path):
    data = sample_document()
    data["comma_objects"]["bad_phi"] = {
        "bimodule": "U",
        "A": "RR",
        "B": "Sk",
        "phi": [[1, 1]],
    }
    doc_path = tmp_path / "doc.json"
    doc_path.write_text(json.dumps(data))
    result = runner.invoke(main, ["validate", str(doc_path)])
    assert result.exit_code == 2
    assert "bad_phi" in result.output


def test_certificate_replay_roundtrip(runner, tmp_path):
    result = runner.invoke(main, ["run", "--fixture", "a2", "--task", "verify-all"])
    assert result.exit_code == 0
    report_path = tmp_path / "report.json"
    report_path.write_text(result.output)
    replay = runner.invoke(main, ["validate", "--certificate", str(report_path)])
    assert replay.exit_code == 0, replay.output
    assert "all certificates replayed" in replay.output


def test_max_dim_env_var(runner, tmp_path, monkeypatch):
    monkeypatch.setenv("COMMACAT_MAX_DIM", "2")
    result = runner.invoke(main, ["run", "--fixture", "dual-numbers", "--task", "hom-table"])
    assert result.exit_code == 0
    report = json.loads(result.output)
    # a cap of 2 shrinks the built comma universe
    assert len(report["tasks"][0]["labels"]) < 19
