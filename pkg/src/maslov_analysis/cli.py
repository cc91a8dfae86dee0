"""Command line interface: ``maslov-analysis analyze|batch|schema``.

Exit codes: 0 success, 1 oracle disagreement (or any failed file in a batch),
2 schema error, 3 validation error, 4 numeric error.
"""

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np

from .analysis import analyze_problem
from .errors import MaslovAnalysisError
from .export import BatchRunner, ReportExporter
from .problem import PROBLEM_SCHEMA, ProblemLoader

EXIT_OK = 0
EXIT_DISAGREEMENT = 1


def _common_options() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--tol-eig", type=float, help="Relative eigenvalue clustering radius")
    parent.add_argument("--tol-rank", type=float, help="Relative singular value cutoff")
    parent.add_argument("--grid", type=int, help="Oracle grid intervals on [0, T]")
    parent.add_argument("--no-oracle", action="store_true", help="Skip the definitional oracle")
    parent.add_argument("--format", choices=["json", "text"], default="json", dest="output_format")
    parent.add_argument("--out", type=Path, help="Output file (analyze) or directory (batch)")
    parent.add_argument("--timing", action="store_true", help="Attach per-stage timing to reports")
    parent.add_argument("--verbose", action="store_true", help="Print one line per stage")
    return parent


def _parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog="maslov-analysis",
        description="Conjugate points, Maslov and Conley-Zehnder indices of constant symplectic systems.",
    )
    commands = parser.add_subparsers(dest="command", required=True)
    common = _common_options()

    analyze = commands.add_parser("analyze", parents=[common], help="Analyze one problem file")
    analyze.add_argument("path", type=Path)

    batch = commands.add_parser("batch", parents=[common], help="Analyze every *.json in a directory")
    batch.add_argument("directory", type=Path)
    batch.add_argument("--workers", type=int, default=4, help="Max concurrent files")

    commands.add_parser("schema", help="Print the problem file schema")
    return parser.parse_args(argv)


def _overrides(args: argparse.Namespace) -> Dict[str, Any]:
    return {"tol_eig": args.tol_eig, "tol_rank": args.tol_rank, "grid": args.grid}


def _report_error(error: Exception) -> int:
    if isinstance(error, MaslovAnalysisError):
        print(f"error [{error.invariant}]: {error.message}", file=sys.stderr)
        return error.exit_code
    print(f"error [numeric]: {error}", file=sys.stderr)
    return 4


def run_analyze(args: argparse.Namespace) -> int:
    """Analyze one file and write the report to --out or stdout."""
    try:
        problem = ProblemLoader.from_json(args.path)
        report = analyze_problem(
            problem,
            _overrides(args),
            run_oracle=not args.no_oracle,
            verbose=args.verbose,
            record_timing=args.timing,
        )
    except (MaslovAnalysisError, ArithmeticError, np.linalg.LinAlgError) as e:
        return _report_error(e)

    if args.output_format == "text":
        rendered = ReportExporter.to_text(problem, report)
    else:
        rendered = ReportExporter.to_json(problem, report)
    if args.out is not None:
        args.out.write_text(rendered, encoding="utf-8")
    else:
        sys.stdout.write(rendered)
    return EXIT_OK if report.all_agree else EXIT_DISAGREEMENT


def run_batch(args: argparse.Namespace) -> int:
    """Analyze a directory; nonzero exit if any file failed or disagreed."""
    runner = BatchRunner(
        overrides=_overrides(args),
        run_oracle=not args.no_oracle,
        output_format=args.output_format,
        max_workers=args.workers,
        record_timing=args.timing,
        verbose=args.verbose,
    )
    try:
        summary = runner.run(args.directory, args.out)
    except MaslovAnalysisError as e:
        return _report_error(e)
    return summary.exit_code


def main(argv: Optional[List[str]] = None) -> int:
    args = _parse_args(argv)
    if args.command == "schema":
        print(json.dumps(PROBLEM_SCHEMA, indent=2))
        return EXIT_OK
    if args.command == "analyze":
        return run_analyze(args)
    return run_batch(args)


if __name__ == "__main__":
    sys.exit(main())
