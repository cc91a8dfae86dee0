"""Export functionality for analysis reports and batch runs."""

import csv
import json
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np

from .analysis import Report, analyze_problem
from .errors import MaslovAnalysisError
from .liegroup.models import GeodesicReport
from .models import SpectralReport, SymplecticReport
from .problem import SCHEMA_VERSION, ProblemFile, ProblemLoader

SUMMARY_FIELDS = [
    "file",
    "kind",
    "status",
    "exit_code",
    "maslov",
    "cz",
    "all_agree",
    "invariant",
    "message",
]


def _jsonable(value: Any) -> Any:
    """Replace numpy scalars and arrays by plain Python values."""
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return _jsonable(value.tolist())
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value


def _g(value: Optional[float]) -> str:
    return "-" if value is None else format(float(value), ".17g")


def _table(header: List[str], rows: List[List[str]]) -> List[str]:
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(header)]
    lines = ["  " + "  ".join(h.ljust(w) for h, w in zip(header, widths))]
    lines.extend("  " + "  ".join(c.ljust(w) for c, w in zip(row, widths)) for row in rows)
    return lines


class ReportExporter:
    """Render reports as JSON or text."""

    @staticmethod
    def document(problem: ProblemFile, report: Report) -> Dict[str, Any]:
        """Report document: schema version, the echoed problem and the results."""
        return _jsonable(
            {
                "schema_version": SCHEMA_VERSION,
                "kind": problem.kind,
                "echo": problem.to_dict(),
                "all_agree": report.all_agree,
                "report": report.to_dict(),
            }
        )

    @staticmethod
    def to_json(problem: ProblemFile, report: Report) -> str:
        """JSON with fixed key order and shortest round-trip floats."""
        return json.dumps(ReportExporter.document(problem, report), indent=2, allow_nan=False) + "\n"

    @staticmethod
    def to_text(problem: ProblemFile, report: Report) -> str:
        """Human-readable report; floats at 17 significant digits."""
        title = problem.name or problem.kind
        lines = [f"{title} ({problem.kind}, T = {_g(problem.horizon)})"]
        if isinstance(report, SpectralReport):
            lines.extend(ReportExporter._spectral_lines(report))
        elif isinstance(report, SymplecticReport):
            lines.append(f"classification: {report.classification}")
            if report.reduced is not None:
                lines.append("reduced second order system:")
                lines.extend(ReportExporter._spectral_lines(report.reduced))
                lines.extend(ReportExporter._oracle_lines(report.reduced))
        elif isinstance(report, GeodesicReport):
            lines.extend(ReportExporter._geodesic_lines(report))
        lines.extend(ReportExporter._oracle_lines(report))
        if report.timing:
            lines.append("timing (s): " + ", ".join(f"{k}={v:.3f}" for k, v in report.timing.items()))
        return "\n".join(lines) + "\n"

    @staticmethod
    def _spectral_lines(report: SpectralReport) -> List[str]:
        lines = ["spectrum:"]
        for record in report.decomposition.spectrum:
            value = record.value
            shown = _g(value) if record.is_real else f"{_g(value.real)} + {_g(value.imag)}i"
            lines.append(
                f"  {shown}  alg={record.algebraic_multiplicity} geo={record.geometric_multiplicity}"
            )
        lines.append("canonical blocks (lambda, size, epsilon):")
        lines.extend(
            f"  ({_g(b.eigenvalue)}, {b.size}, {b.epsilon:+d})" for b in report.decomposition.real_blocks
        )
        lines.append("jordan signatures (lambda: varsigma, varrho, tau):")
        lines.extend(f"  {_g(s.eigenvalue)}: {s.varsigma}, {s.varrho}, {s.tau}" for s in report.signatures)

        if report.maslov is not None:
            pairs = [(c.instant, str(c.contribution)) for c in report.maslov.per_instant]
        else:
            pairs = [(i, "-") for i in report.instants]
        rows = [
            [
                _g(i.t),
                "; ".join(f"{_g(c.eigenvalue)}#{c.k}" for c in i.contributors),
                str(i.multiplicity),
                "yes" if i.degenerate else "no",
                contribution + (" (final)" if i.is_final else ""),
            ]
            for i, contribution in pairs
        ]
        lines.append(f"conjugate instants ({report.count} counted with multiplicity):")
        lines.extend(_table(["t", "contributors", "multiplicity", "degenerate", "contribution"], rows))
        if report.maslov is not None:
            lines.append(
                f"maslov index: {report.maslov.total} "
                f"(initial {report.maslov.initial_correction}, RS {report.maslov.rs_value:g})"
            )
        if report.cz is not None:
            lines.append(
                f"conley-zehnder index: {report.cz.total} "
                f"(initial {report.cz.initial_contribution}, final {report.cz.final_contribution}, "
                f"kernel correction {report.cz.kernel_correction})"
            )
        lines.append(f"riemannian: {report.riemannian}")
        lines.append(f"no accumulation margin: {_g(report.no_accumulation_margin)}")
        return lines

    @staticmethod
    def _geodesic_lines(report: GeodesicReport) -> List[str]:
        lines = ["direction: [" + ", ".join(_g(x) for x in report.direction) + "]"]
        rows = [
            [
                _g(i.t),
                str(i.multiplicity),
                "yes" if i.degenerate else "no",
                str(i.contribution),
                "yes" if i.local_injectivity_broken else "no",
            ]
            for i in report.instants
        ]
        lines.append("conjugate instants:")
        lines.extend(_table(["t", "multiplicity", "degenerate", "contribution", "not injective"], rows))
        lines.append(f"maslov index: {report.maslov.total}")
        if report.identities_hold is not None:
            lines.append(f"quadratic identities hold: {report.identities_hold}")
        if report.char_poly is not None:
            lines.append("characteristic polynomial: [" + ", ".join(_g(c) for c in report.char_poly) + "]")
        return lines

    @staticmethod
    def _oracle_lines(report: Report) -> List[str]:
        if report.oracle is None:
            return []
        values = ", ".join(f"{k}={v}" for k, v in report.oracle.items() if k != "crossings")
        lines = [f"oracle: {len(report.oracle['crossings'])} crossings" + (f", {values}" if values else "")]
        for name, flag in (report.agreement or {}).items():
            lines.append(f"  {name}: {flag}")
        return lines

    @staticmethod
    def summary_to_csv(rows: List[Dict[str, Any]], output_path: Union[str, Path]) -> None:
        """Write one summary row per problem file."""
        with open(output_path, "w", newline="", encoding="utf-8") as f:
            writer = csv.DictWriter(f, fieldnames=SUMMARY_FIELDS)
            writer.writeheader()
            for row in rows:
                writer.writerow({k: row.get(k, "") for k in SUMMARY_FIELDS})


def _indices(report: Report) -> Dict[str, Any]:
    if isinstance(report, SymplecticReport):
        report = report.reduced if report.reduced is not None else report
    maslov = getattr(report, "maslov", None)
    cz = getattr(report, "cz", None)
    return {
        "maslov": maslov.total if maslov is not None else "",
        "cz": cz.total if cz is not None else "",
    }


@dataclass
class BatchSummary:
    rows: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def failed(self) -> List[Dict[str, Any]]:
        return [r for r in self.rows if r["exit_code"] != 0]

    @property
    def exit_code(self) -> int:
        return 1 if self.failed else 0


class BatchRunner:
    """Analyze every problem file of a directory concurrently."""

    def __init__(
        self,
        overrides: Optional[Dict[str, Any]] = None,
        run_oracle: bool = True,
        output_format: str = "json",
        max_workers: int = 4,
        record_timing: bool = False,
        verbose: bool = False,
    ):
        """Initialize the batch runner.

        Args:
            overrides: Tolerance overrides applied on top of each file's options
            run_oracle: Whether to run the oracle cross-checks
            output_format: "json" or "text"
            max_workers: Max concurrent files
            record_timing: Attach timing to every report
            verbose: Print per-stage lines for every file
        """
        self.overrides = dict(overrides or {})
        self.run_oracle = run_oracle
        self.output_format = output_format
        self.max_workers = max_workers
        self.record_timing = record_timing
        self.verbose = verbose

    def render(self, problem: ProblemFile, report: Report) -> str:
        if self.output_format == "text":
            return ReportExporter.to_text(problem, report)
        return ReportExporter.to_json(problem, report)

    def run_file(self, path: Path, output_dir: Optional[Path] = None) -> Dict[str, Any]:
        """Analyze one file; errors are turned into a failed summary row."""
        row: Dict[str, Any] = {"file": path.name, "kind": "", "invariant": "", "message": ""}
        try:
            problem = ProblemLoader.from_json(path)
            row["kind"] = problem.kind
            report = analyze_problem(
                problem, self.overrides, self.run_oracle, self.verbose, self.record_timing
            )
        except MaslovAnalysisError as e:
            row.update(status="error", exit_code=e.exit_code, invariant=e.invariant, message=e.message)
            return row
        except (ArithmeticError, np.linalg.LinAlgError) as e:
            row.update(status="error", exit_code=4, invariant="numeric", message=str(e))
            return row

        row.update(_indices(report))
        row["all_agree"] = report.all_agree
        row["status"] = "ok" if report.all_agree else "disagree"
        if not report.all_agree:
            row["message"] = "oracle disagreement"
        row["exit_code"] = 0 if report.all_agree else 1
        if output_dir is not None:
            suffix = ".txt" if self.output_format == "text" else ".json"
            (output_dir / f"{path.stem}.report{suffix}").write_text(
                self.render(problem, report), encoding="utf-8"
            )
        return row

    def run(self, directory: Union[str, Path], output_dir: Optional[Union[str, Path]] = None) -> BatchSummary:
        """Analyze every ``*.json`` file of ``directory``.

        Reports go to ``output_dir`` (one per input, plus summary.csv) when given.
        """
        paths = ProblemLoader.list_directory(directory)
        out = Path(output_dir) if output_dir is not None else None
        if out is not None:
            out.mkdir(parents=True, exist_ok=True)
        print(f"\nAnalyzing {len(paths)} problem files (max {self.max_workers} concurrent)")

        rows: List[Optional[Dict[str, Any]]] = [None] * len(paths)
        with ThreadPoolExecutor(max_workers=self.max_workers) as executor:
            future_to_idx = {executor.submit(self.run_file, p, out): i for i, p in enumerate(paths)}
            completed = 0
            for future in as_completed(future_to_idx):
                idx = future_to_idx[future]
                rows[idx] = future.result()
                completed += 1
                if completed % 10 == 0 or completed == len(paths):
                    print(f"  Progress: {completed}/{len(paths)}")

        summary = BatchSummary(rows=[r for r in rows if r is not None])
        failed = summary.failed
        print(f"  Passed: {len(summary.rows) - len(failed)} | Failed: {len(failed)}")
        for row in failed:
            print(f"  FAILED {row['file']}: [{row['invariant'] or row['status']}] {row['message']}")
        if out is not None:
            ReportExporter.summary_to_csv(summary.rows, out / "summary.csv")
        return summary
