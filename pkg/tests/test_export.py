"""Tests for report rendering and batch runs."""

import csv
import json
import shutil
from pathlib import Path

import pytest
from maslov_analysis import SpectralAnalyzer, analyze_problem
from maslov_analysis.export import SUMMARY_FIELDS, BatchRunner, ReportExporter
from maslov_analysis.problem import ProblemFile, ProblemLoader

DATA_DIR = Path(__file__).parent.parent / "data"


@pytest.fixture
def harmonic_problem():
    return ProblemFile.from_dict(
        {"kind": "second_order", "name": "harmonic", "horizon": 7, "payload": {"g": [[1]], "A": [[-1]]}}
    )


def test_json_is_deterministic(harmonic_problem):
    """Test that two runs render identical JSON."""
    first = ReportExporter.to_json(harmonic_problem, analyze_problem(harmonic_problem))
    second = ReportExporter.to_json(harmonic_problem, analyze_problem(harmonic_problem))

    assert first == second
    assert first.endswith("\n")


def test_json_document_layout(harmonic_problem):
    """Test the top-level fields and integer typing of indices."""
    document = json.loads(ReportExporter.to_json(harmonic_problem, analyze_problem(harmonic_problem)))

    assert list(document) == ["schema_version", "kind", "echo", "all_agree", "report"]
    assert document["echo"]["payload"] == {"g": [[1]], "A": [[-1]]}
    maslov = document["report"]["maslov"]
    assert maslov["total"] == 2 and isinstance(maslov["total"], int)
    assert isinstance(document["report"]["conjugate_count"], int)
    assert document["report"]["conjugate_instants"][0]["t"] == pytest.approx(3.141592653589793)


def test_echo_reloads(harmonic_problem):
    """Test that the echoed problem is a valid problem file."""
    document = ReportExporter.document(harmonic_problem, analyze_problem(harmonic_problem))

    assert ProblemFile.from_dict(document["echo"]) == harmonic_problem


def test_text_report_table(harmonic_problem):
    """Test the text report's instant table and index lines."""
    text = ReportExporter.to_text(harmonic_problem, analyze_problem(harmonic_problem))

    assert text.startswith("harmonic (second_order, T = 7)")
    for column in ("t", "contributors", "multiplicity", "degenerate", "contribution"):
        assert column in text
    assert "3.1415926535897931" in text
    assert "maslov index: 2" in text
    assert "conley-zehnder index: -4" in text
    assert "timing" not in text


def test_text_report_timing(harmonic_problem):
    """Test that timing appears only when recorded."""
    report = analyze_problem(harmonic_problem, record_timing=True)

    assert "timing (s):" in ReportExporter.to_text(harmonic_problem, report)
    assert "timing" in json.loads(ReportExporter.to_json(harmonic_problem, report))["report"]


def test_geodesic_text_report():
    """Test the text rendering of a Lie algebra problem."""
    problem = ProblemLoader.from_json(DATA_DIR / "fixtures" / "lie_so3.json")
    text = ReportExporter.to_text(problem, analyze_problem(problem))

    assert "not injective" in text
    assert "quadratic identities hold: True" in text


def test_summary_csv(tmp_path):
    """Test writing the batch summary."""
    rows = [{"file": "a.json", "kind": "second_order", "status": "ok", "exit_code": 0, "maslov": 2}]
    ReportExporter.summary_to_csv(rows, tmp_path / "summary.csv")

    with open(tmp_path / "summary.csv", newline="", encoding="utf-8") as f:
        reader = csv.DictReader(f)
        assert reader.fieldnames == SUMMARY_FIELDS
        loaded = list(reader)
    assert loaded[0]["maslov"] == "2"
    assert loaded[0]["cz"] == ""


def test_batch_runner_initialization():
    """Test batch runner defaults."""
    runner = BatchRunner()
    assert runner.max_workers == 4
    assert runner.output_format == "json"
    assert runner.run_oracle


def test_batch_run_writes_reports(tmp_path):
    """Test a small batch with one report per file and a summary."""
    source = tmp_path / "problems"
    source.mkdir()
    for name in ("harmonic.json", "riemannian.json", "lie_so3.json"):
        shutil.copy(DATA_DIR / "fixtures" / name, source / name)
    out = tmp_path / "reports"

    summary = BatchRunner(max_workers=2).run(source, out)

    assert summary.exit_code == 0
    assert [r["file"] for r in summary.rows] == ["harmonic.json", "lie_so3.json", "riemannian.json"]
    assert (out / "harmonic.report.json").exists()
    assert (out / "summary.csv").exists()


def test_batch_run_text_format(tmp_path):
    """Test text reports in a batch."""
    source = tmp_path / "problems"
    source.mkdir()
    shutil.copy(DATA_DIR / "fixtures" / "hyperbolic.json", source / "hyperbolic.json")

    BatchRunner(output_format="text", run_oracle=False).run(source, tmp_path / "out")

    assert (tmp_path / "out" / "hyperbolic.report.txt").exists()


def test_batch_run_records_failures(tmp_path):
    """Test that corrupted and invalid files become failed rows."""
    (tmp_path / "broken.json").write_text("{", encoding="utf-8")
    shutil.copy(DATA_DIR / "invalid" / "degenerate_continuum.json", tmp_path / "continuum.json")

    summary = BatchRunner().run(tmp_path)

    assert summary.exit_code == 1
    rows = {r["file"]: r for r in summary.rows}
    assert rows["broken.json"]["exit_code"] == 2
    assert rows["broken.json"]["invariant"] == "json_syntax"
    assert rows["continuum.json"]["exit_code"] == 3
    assert rows["continuum.json"]["invariant"] == "degenerate_continuum"


def test_batch_run_empty_directory(tmp_path, capsys):
    """Test that an empty directory succeeds."""
    summary = BatchRunner().run(tmp_path)

    assert summary.rows == []
    assert summary.exit_code == 0
    assert "Analyzing 0 problem files" in capsys.readouterr().out


def test_disagreement_marks_row(tmp_path, monkeypatch):
    """Test that an oracle disagreement fails the file."""
    shutil.copy(DATA_DIR / "fixtures" / "harmonic.json", tmp_path / "harmonic.json")
    monkeypatch.setattr("maslov_analysis.analysis.maslov_definitional", lambda *args, **kwargs: 99)

    summary = BatchRunner().run(tmp_path)

    assert summary.exit_code == 1
    assert summary.rows[0]["status"] == "disagree"
    assert summary.rows[0]["message"] == "oracle disagreement"
