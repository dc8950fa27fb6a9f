"""Command line front end: CSV ingestion, analysis, and fuzz verification.

Exit codes: 0 on success, 2 when a supplied classifier violates the
overlap rule, 1 for any input or configuration error (including bad
flags). The fuzz subcommand exits 0 only when no check failed.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from collections.abc import Sequence
from pathlib import Path

from .classifiers import TieBreak, classifier_from_text
from .core import Attribute, DecisionSystem, decision_partition, partition_by_attributes
from .errors import CsvFormatError, OverlapViolationError, RoughAnalysisError
from .oracle import FuzzSummary, run_fuzz_trials
from .report import AnalysisReport, analyze_decision_system, render_text, report_to_json

__all__ = ["ingest_csv", "run_analyze", "run_fuzz", "main"]


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors; that status is reserved
    # for overlap-rule violations, so downgrade flag problems to 1.
    def error(self, message: str) -> None:
        self.exit(1, f"{self.prog}: error: {message}\n")


def ingest_csv(path: str | Path, decision_column: str | None = None) -> DecisionSystem:
    """Read a decision table: one header row, one object per data row.

    Objects are numbered 1..n in row order. `decision_column` names the
    decision attribute (default: the last column); every other column
    becomes a condition attribute. Cells are opaque tokens; empty cells,
    ragged rows, and duplicate or empty header names are rejected.
    """
    with open(path, newline="", encoding="utf-8-sig") as handle:
        records = list(csv.reader(handle))
    if not records:
        raise CsvFormatError(f"{path}: empty file")
    header, *rows = records
    if len(header) < 2:
        raise CsvFormatError(
            f"{path}: need at least two columns (conditions plus decision), "
            f"got {len(header)}"
        )
    if any(not name for name in header):
        raise CsvFormatError(f"{path}: header has an empty column name")
    duplicates = sorted({name for name in header if header.count(name) > 1})
    if duplicates:
        raise CsvFormatError(
            f"{path}: duplicate column name(s): {', '.join(duplicates)}"
        )
    if not rows:
        raise CsvFormatError(f"{path}: no data rows")
    for number, row in enumerate(rows, start=1):
        if len(row) != len(header):
            raise CsvFormatError(
                f"{path}: row {number} has {len(row)} cells, expected {len(header)}"
            )
        for name, cell in zip(header, row):
            if cell == "":
                raise CsvFormatError(
                    f"{path}: row {number}, column {name!r} is empty"
                )
    if decision_column is None:
        decision_column = header[-1]
    if decision_column not in header:
        raise CsvFormatError(f"{path}: unknown decision column {decision_column!r}")
    ids = tuple(range(1, len(rows) + 1))
    columns: dict[str, dict[int, str]] = {}
    for position, name in enumerate(header):
        columns[name] = {i: row[position] for i, row in zip(ids, rows)}
    conditions = tuple(
        Attribute(name, columns[name]) for name in header if name != decision_column
    )
    return DecisionSystem(ids, conditions, Attribute(decision_column, columns[decision_column]))


def run_analyze(args: argparse.Namespace) -> AnalysisReport:
    """Ingest the table and produce the full analysis report."""
    ds = ingest_csv(args.input, args.decision)
    attributes: tuple[str, ...] | None = None
    if args.attributes is not None:
        attributes = tuple(args.attributes.split(","))
        if attributes == ("",):
            raise ValueError("the attribute list must name at least one attribute")
    if args.classifier == "mrc":
        classifier = None
    else:
        granules = partition_by_attributes(ds, attributes or ds.condition_names)
        decisions = decision_partition(ds)
        text = Path(args.classifier).read_text(encoding="utf-8")
        classifier = classifier_from_text(
            text, len(granules.blocks), len(decisions.blocks)
        )
    return analyze_decision_system(
        ds,
        attributes=attributes,
        classifier=classifier,
        tie_break=TieBreak(args.tie_break),
        seed=args.seed,
        source=str(args.input),
    )


def run_fuzz(args: argparse.Namespace) -> FuzzSummary:
    """Run the randomized theorem verification with both classifier kinds."""
    return run_fuzz_trials(
        trials=args.trials,
        base_seed=args.seed,
        max_objects=args.max_objects,
        max_classes=args.max_classes,
    )


def _fuzz_to_dict(summary: FuzzSummary) -> dict[str, object]:
    first = None
    if summary.first_failure is not None:
        failure = summary.first_failure
        first = {
            "trial": failure.trial,
            "classifier_kind": failure.classifier_kind,
            "config": {
                "n_objects": failure.config.n_objects,
                "n_attributes": failure.config.n_attributes,
                "values_per_attribute": failure.config.values_per_attribute,
                "n_decision_values": failure.config.n_decision_values,
                "seed": failure.config.seed,
            },
            "attributes": list(failure.attributes),
            "failed_checks": list(failure.failed_checks),
        }
    return {
        "trials": summary.trials,
        "checks": summary.checks,
        "failures": summary.failures,
        "result": "pass" if summary.failures == 0 else "fail",
        "base_seed": summary.base_seed,
        "max_objects": summary.max_objects,
        "max_classes": summary.max_classes,
        "classifier_kinds": list(summary.classifier_kinds),
        "generator": summary.generator,
        "first_failure": first,
    }


def _render_fuzz(summary: FuzzSummary, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(_fuzz_to_dict(summary), indent=2) + "\n"
    result = "pass" if summary.failures == 0 else "fail"
    lines = [
        "fuzz summary",
        f"  trials: {summary.trials}   checks: {summary.checks}"
        f"   failures: {summary.failures}   result: {result}",
        f"  base seed: {summary.base_seed}   max objects: {summary.max_objects}"
        f"   max classes: {summary.max_classes}",
        f"  classifier kinds: {', '.join(summary.classifier_kinds)}",
        f"  generator: {summary.generator}",
    ]
    if summary.first_failure is not None:
        failure = summary.first_failure
        cfg = failure.config
        lines.append(
            f"  first failure: trial {failure.trial} ({failure.classifier_kind})"
        )
        lines.append(
            f"    config: n_objects={cfg.n_objects} n_attributes={cfg.n_attributes}"
            f" values_per_attribute={cfg.values_per_attribute}"
            f" n_decision_values={cfg.n_decision_values} seed={cfg.seed}"
        )
        lines.append(f"    attributes: {', '.join(failure.attributes)}")
        lines.append(f"    failed checks: {', '.join(failure.failed_checks)}")
    return "\n".join(lines) + "\n"


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="roughcm",
        description=(
            "Granule-level classifier evaluation on decision tables: rough "
            "approximations, confusion matrices, and exact quality indices."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="analyze a decision-table CSV")
    analyze.add_argument("--input", required=True, help="decision table CSV path")
    analyze.add_argument(
        "--decision", default=None, help="decision column name (default: last column)"
    )
    analyze.add_argument(
        "--attributes",
        default=None,
        help="comma-separated condition attributes (default: all)",
    )
    analyze.add_argument(
        "--classifier",
        default="mrc",
        help="'mrc' or the path of a granule-to-class mapping file",
    )
    analyze.add_argument(
        "--tie-break",
        choices=[policy.value for policy in TieBreak],
        default=TieBreak.LOWEST.value,
        dest="tie_break",
        help="tie handling for the maximal row classifier",
    )
    analyze.add_argument("--seed", type=int, default=0, help="seed for random ties")
    analyze.add_argument("--format", choices=["json", "text"], default="json")

    fuzz = sub.add_parser("fuzz", help="randomized verification of the bound theorems")
    fuzz.add_argument("--trials", type=int, default=1000)
    fuzz.add_argument("--seed", type=int, default=0)
    fuzz.add_argument("--max-objects", type=int, default=30, dest="max_objects")
    fuzz.add_argument("--max-classes", type=int, default=5, dest="max_classes")
    fuzz.add_argument("--format", choices=["json", "text"], default="json")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "analyze":
            report = run_analyze(args)
            if args.format == "json":
                sys.stdout.write(report_to_json(report))
            else:
                sys.stdout.write(render_text(report))
            return 0
        summary = run_fuzz(args)
        sys.stdout.write(_render_fuzz(summary, args.format))
        return 0 if summary.failures == 0 else 1
    except OverlapViolationError as exc:
        print(f"roughcm: {exc}", file=sys.stderr)
        return 2
    except (RoughAnalysisError, OSError, UnicodeDecodeError, ValueError) as exc:
        print(f"roughcm: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
