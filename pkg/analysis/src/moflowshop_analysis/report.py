"""End-to-end report generation over the harness's runs/consolidated tables."""

from __future__ import annotations

import warnings
from pathlib import Path

from .figures import render_fronts
from .stats import ComparisonRow, select_test_and_summarize
from .tables import (
    CONSOLIDATED_REQUIRED,
    RUNS_REQUIRED,
    load_front_rows,
    read_table,
    safe_name,
    summary_csv,
    summary_markdown,
)

# metric name -> True when larger values are better
METRIC_DIRECTIONS = {"rhv": True, "spread": False}


def _ordered_unique(items) -> list[str]:
    seen: dict[str, None] = {}
    for item in items:
        seen.setdefault(item, None)
    return list(seen)


def collect_samples(rows: list[dict], metric: str) -> dict[str, dict[str, list[float]]]:
    """instance -> algorithm -> replicate values, in first-appearance order."""
    table: dict[str, dict[str, list[float]]] = {}
    for row in rows:
        if row["status"] != "ok" or not row[metric]:
            continue
        per_algo = table.setdefault(row["instance"], {})
        per_algo.setdefault(row["algorithm"], []).append(float(row[metric]))
    return table


def build_comparisons(rows: list[dict], metric: str) -> list[ComparisonRow]:
    comparisons = []
    for instance, per_algo in collect_samples(rows, metric).items():
        usable = {}
        for algo, values in per_algo.items():
            if len(values) < 3:
                warnings.warn(
                    f"{instance}/{algo}: only {len(values)} usable replicates,"
                    f" dropped from the {metric} table",
                    stacklevel=2,
                )
                continue
            usable[algo] = values
        if len(usable) < 2:
            warnings.warn(
                f"{instance}: fewer than two algorithms with enough replicates,"
                f" skipped in the {metric} table",
                stacklevel=2,
            )
            continue
        comparisons.append(
            select_test_and_summarize(
                instance, metric, usable,
                higher_is_better=METRIC_DIRECTIONS[metric],
            )
        )
    return comparisons


def _level_key(position: int, label: str):
    text = label.rstrip("%")
    try:
        return (0, float(text), "")
    except ValueError:
        return (1, float(position), label)


def family_groups(consolidated_rows: list[dict], base_dir: Path) -> dict[str, dict]:
    """family -> {level label -> reference front rows} from consolidated.csv."""
    reference_by_instance: dict[str, str] = {}
    for row in consolidated_rows:
        reference_by_instance.setdefault(row["instance"], row["reference_file"])

    families: dict[str, list[tuple[str, str]]] = {}
    for instance, ref_file in reference_by_instance.items():
        family, _, level = instance.rpartition("-")
        if not family:
            family, level = instance, "all"
        families.setdefault(family, []).append((level, ref_file))

    groups: dict[str, dict] = {}
    for family, levels in families.items():
        ordered = sorted(
            enumerate(levels), key=lambda item: _level_key(item[0], item[1][0])
        )
        groups[family] = {
            level: load_front_rows(base_dir / ref_file)
            for _, (level, ref_file) in ordered
        }
    return groups


def analyze(runs_csv, out_dir) -> dict:
    """Produce metric summary tables and per-family front figures.

    Reads runs.csv (and consolidated.csv next to it, when present) and
    writes summary_rhv/summary_spread as CSV plus markdown, and one figure
    per instance family. Reruns over the same inputs regenerate identical
    bytes.
    """
    runs_csv = Path(runs_csv)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rows = read_table(runs_csv, RUNS_REQUIRED)
    algorithms = _ordered_unique(row["algorithm"] for row in rows)

    written: dict = {"summaries": [], "figures": []}
    for metric, higher in METRIC_DIRECTIONS.items():
        comparisons = build_comparisons(rows, metric)
        csv_path = out / f"summary_{metric}.csv"
        csv_path.write_text(summary_csv(comparisons, algorithms), encoding="utf-8")
        md_path = out / f"summary_{metric}.md"
        md_path.write_text(
            summary_markdown(comparisons, algorithms, metric, higher),
            encoding="utf-8",
        )
        written["summaries"] += [str(csv_path), str(md_path)]

    consolidated = runs_csv.parent / "consolidated.csv"
    if consolidated.exists():
        fig_dir = out / "figures"
        fig_dir.mkdir(exist_ok=True)
        table = read_table(consolidated, CONSOLIDATED_REQUIRED)
        for family, groups in family_groups(table, runs_csv.parent).items():
            target = fig_dir / f"fronts_{safe_name(family)}.png"
            written["figures"].append(render_fronts(groups, target, title=family))
    else:
        warnings.warn(
            f"{consolidated} not found; skipping front figures", stacklevel=2
        )
    return written
