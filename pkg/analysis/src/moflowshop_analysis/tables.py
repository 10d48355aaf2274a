"""Readers for the harness's CSV artifacts and writers for summary tables."""

from __future__ import annotations

import csv
import io
import re
from pathlib import Path

import numpy as np

from .stats import ComparisonRow

FRONT_COLUMNS = ("makespan", "wtct", "tardiness", "permutation")
RUNS_REQUIRED = ("instance", "algorithm", "replication", "status", "rhv", "spread")
CONSOLIDATED_REQUIRED = ("instance", "algorithm", "front_file", "reference_file")

_UNSAFE = re.compile(r"[^A-Za-z0-9._-]")


def safe_name(name: str) -> str:
    return _UNSAFE.sub("_", name.replace("%", "pct"))


def read_table(path, required) -> list[dict]:
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames is None:
            raise ValueError(f"{path}: empty table")
        missing = [c for c in required if c not in reader.fieldnames]
        if missing:
            raise ValueError(f"{path}: missing columns {missing}")
        return list(reader)


def load_front_rows(path) -> np.ndarray:
    """(N, 3) objective rows from a front CSV; the permutation column is ignored."""
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None or tuple(header) != FRONT_COLUMNS:
            raise ValueError(f"{path}: unexpected front header {header}")
        rows = [(int(r[0]), int(r[1]), int(r[2])) for r in reader if r]
    return np.asarray(rows, dtype=np.int64).reshape(-1, 3)


def _fmt_p(p_value) -> str:
    return "" if p_value is None else format(p_value, ".6g")


def _fmt_val(value: float) -> str:
    return format(value, ".6g")


def summary_csv(rows: list[ComparisonRow], algorithms: list[str]) -> str:
    columns = ["instance", "test", "p_value", "significant", "best"]
    for algo in algorithms:
        columns += [f"{algo}_center", f"{algo}_dispersion", f"{algo}_n"]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        by_name = {g.algorithm: g for g in row.groups}
        record = [row.instance, row.test, _fmt_p(row.p_value),
                  str(row.significant).lower(), row.best]
        for algo in algorithms:
            g = by_name.get(algo)
            record += ["", "", ""] if g is None else [
                _fmt_val(g.center), _fmt_val(g.dispersion), g.count]
        writer.writerow(record)
    return buf.getvalue()


def summary_markdown(rows: list[ComparisonRow], algorithms: list[str],
                     metric: str, higher_is_better: bool) -> str:
    """Per-instance table, one MOEA per column, cells as center (dispersion).

    The omnibus test (ANOVA or Kruskal-Wallis, chosen by the Shapiro-Wilk
    gate) is reported per instance; bold marks the best central value and a
    trailing '*' on the p-value marks a significant omnibus difference.
    """
    direction = "higher is better" if higher_is_better else "lower is better"
    lines = [
        f"# {metric} summary",
        "",
        f"Central tendency and dispersion per algorithm ({direction}).",
        "Test column: ANOVA with mean (std) when every sample passes",
        "Shapiro-Wilk at alpha = 0.05, otherwise Kruskal-Wallis (K-W) with",
        "median (IQR). Significance is the omnibus test only; the best",
        "algorithm is flagged in bold, '*' marks p < 0.05.",
        "",
        "| instance | test | p | " + " | ".join(algorithms) + " |",
        "|" + "---|" * (3 + len(algorithms)),
    ]
    labels = {"anova": "A", "kruskal-wallis": "K-W", "degenerate": "-"}
    for row in rows:
        by_name = {g.algorithm: g for g in row.groups}
        p_text = _fmt_p(row.p_value) + ("*" if row.significant else "")
        cells = []
        for algo in algorithms:
            g = by_name.get(algo)
            if g is None:
                cells.append("")
                continue
            text = f"{g.center:.4f} ({g.dispersion:.4f})"
            cells.append(f"**{text}**" if algo == row.best else text)
        lines.append(
            f"| {row.instance} | {labels[row.test]} | {p_text or '-'} | "
            + " | ".join(cells) + " |"
        )
    return "\n".join(lines) + "\n"
