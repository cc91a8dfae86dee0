"""
Template script for running the spectral analysis on your problem files.

INSTRUCTIONS:
1. Put your problem files (see docs/FILE_FORMAT.md) in one directory
2. Update the configuration section below
3. Run: python run_analysis_template.py
"""

from pathlib import Path

from maslov_analysis import BatchRunner

# ============================================================================
# CONFIGURATION - Update these paths for your data
# ============================================================================

# Directory containing problem files (*.json)
PROBLEMS_DIR = "data/fixtures/"

# Output directory for reports
RESULTS_DIR = "results/"

# Report format: "json" or "text"
OUTPUT_FORMAT = "json"

# Analysis options
RUN_ORACLE = True  # Set to False to skip the definitional cross-checks
RECORD_TIMING = False  # Timing makes reports differ between runs
MAX_WORKERS = 4

# Tolerance sweep: one batch run per entry (None keeps the defaults)
SWEEP = {
    "default": {},
    "fine_grid": {"grid": 4096},
    "loose_eig": {"tol_eig": 1e-7},
}

# ============================================================================
# Main Processing
# ============================================================================

def main():
    """Run the batch analysis once per tolerance configuration."""

    Path(RESULTS_DIR).mkdir(parents=True, exist_ok=True)

    print("Initializing Maslov analysis...")
    print(f"\nConfiguration:")
    print(f"  Problems directory: {PROBLEMS_DIR}")
    print(f"  Results directory: {RESULTS_DIR}")
    print(f"  Output format: {OUTPUT_FORMAT}")
    print(f"  Oracle: {RUN_ORACLE}")
    print(f"  Configurations: {', '.join(SWEEP)}")
    print()

    outcomes = {}
    for label, overrides in SWEEP.items():
        print("=" * 70)
        print(f"Configuration: {label} {overrides or ''}")
        print("=" * 70)

        runner = BatchRunner(
            overrides=overrides,
            run_oracle=RUN_ORACLE,
            output_format=OUTPUT_FORMAT,
            max_workers=MAX_WORKERS,
            record_timing=RECORD_TIMING,
        )
        output_dir = Path(RESULTS_DIR) / label
        summary = runner.run(PROBLEMS_DIR, output_dir)
        outcomes[label] = summary
        print(f"\n✓ Reports written to: {output_dir}")
        print()

    # Overall summary
    print("=" * 70)
    print("Overall Comparison")
    print("=" * 70)
    print(f"\n{'Configuration':<20} {'Files':<8} {'Passed':<8} {'Failed':<8}")
    print("-" * 70)
    for label, summary in outcomes.items():
        failed = len(summary.failed)
        print(f"{label:<20} {len(summary.rows):<8} {len(summary.rows) - failed:<8} {failed:<8}")

    # Indices that change with the tolerances point at an ill-conditioned problem
    baseline = {r["file"]: (r.get("maslov"), r.get("cz")) for r in next(iter(outcomes.values())).rows}
    unstable = set()
    for summary in outcomes.values():
        for row in summary.rows:
            if baseline.get(row["file"]) != (row.get("maslov"), row.get("cz")):
                unstable.add(row["file"])
    if unstable:
        print(f"\n⚠️  Indices depend on the tolerances for: {', '.join(sorted(unstable))}")
    else:
        print("\n✓ Indices are stable across all configurations")


if __name__ == "__main__":
    main()
