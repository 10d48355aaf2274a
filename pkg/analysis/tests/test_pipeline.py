"""End-to-end analyze runs over a synthetic harness output tree."""

import csv
import io
from pathlib import Path

import numpy as np
import pytest
from scipy import stats as sps

from moflowshop_analysis import analyze, friedman_rank, select_test_and_summarize
from moflowshop_analysis.cli import main

RUNS_COLUMNS = (
    "instance", "algorithm", "replication", "seed", "status",
    "rhv", "spread", "evaluations", "wall_time_s", "front_file",
)
CONSOLIDATED_COLUMNS = (
    "instance", "algorithm", "points", "rhv", "spread", "front_file", "reference_file",
)

FRONTS = {
    "6Jx2M-0%": [(60, 800, 30), (70, 700, 40), (80, 650, 20)],
    "6Jx2M-20%": [(50, 640, 24), (56, 560, 32), (64, 520, 16)],
}


def front_text(points) -> str:
    lines = ["makespan,wtct,tardiness,permutation"]
    lines += [f"{a},{b},{c},0-1-2-3-4-5" for a, b, c in points]
    return "\n".join(lines) + "\n"


def write_experiment(base: Path, error_row=False) -> Path:
    """Two instances x two algorithms x five replicates of fake metrics."""
    rng = np.random.default_rng(42)
    (base / "fronts").mkdir(parents=True)
    (base / "reference").mkdir()
    runs = []
    consolidated = []
    for inst, points in FRONTS.items():
        safe = inst.replace("%", "pct")
        ref_file = f"reference/{safe}.csv"
        (base / ref_file).write_text(front_text(points), encoding="utf-8")
        for algo, rhv_mu, spread_mu in (("nsga2", 0.9, 0.6), ("moead", 0.7, 0.3)):
            front_file = f"fronts/{safe}_{algo}.csv"
            (base / front_file).write_text(front_text(points[:2]), encoding="utf-8")
            consolidated.append(
                [inst, algo, 2, "0.9", "0.5", front_file, ref_file]
            )
            for rep in range(5):
                rhv = min(1.0, rng.normal(rhv_mu, 0.01))
                spr = max(0.0, rng.normal(spread_mu, 0.01))
                runs.append(
                    [inst, algo, rep, 1000 + rep, "ok",
                     f"{rhv:.6f}", f"{spr:.6f}", 5000, "0.5", front_file]
                )
    if error_row:
        runs.append(["6Jx2M-0%", "nsga2", 5, 1, "RuntimeError: boom",
                     "", "", "", "", ""])

    def dump(path, columns, rows):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        writer.writerows(rows)
        path.write_text(buf.getvalue(), encoding="utf-8")

    dump(base / "runs.csv", RUNS_COLUMNS, runs)
    dump(base / "consolidated.csv", CONSOLIDATED_COLUMNS, consolidated)
    return base / "runs.csv"


def read_summary(path):
    with open(path, newline="", encoding="utf-8") as handle:
        return list(csv.DictReader(handle))


def test_analyze_writes_tables_and_figures(tmp_path):
    runs = write_experiment(tmp_path / "exp")
    out = tmp_path / "report"
    written = analyze(runs, out)

    rhv_rows = read_summary(out / "summary_rhv.csv")
    assert [r["instance"] for r in rhv_rows] == list(FRONTS)
    for row in rhv_rows:
        assert row["best"] == "nsga2"
        assert row["significant"] == "true"
        assert float(row["nsga2_center"]) > float(row["moead_center"])
        assert row["nsga2_n"] == "5"

    spread_rows = read_summary(out / "summary_spread.csv")
    for row in spread_rows:
        assert row["best"] == "moead"  # smaller spread wins

    markdown = (out / "summary_rhv.md").read_text(encoding="utf-8")
    assert "| instance | test | p | nsga2 | moead |" in markdown
    assert "**" in markdown  # best cell is bolded
    assert "alpha = 0.05" in markdown

    figure = out / "figures" / "fronts_6Jx2M.png"
    assert figure.exists() and figure.stat().st_size > 0
    assert written["figures"] == [str(figure)]
    assert len(written["summaries"]) == 4


def test_failed_runs_are_ignored(tmp_path):
    runs = write_experiment(tmp_path / "exp", error_row=True)
    out = tmp_path / "report"
    analyze(runs, out)
    rows = read_summary(out / "summary_rhv.csv")
    assert rows[0]["nsga2_n"] == "5"  # the error row adds nothing


def test_rerun_regenerates_identical_bytes(tmp_path):
    runs = write_experiment(tmp_path / "exp")
    first = tmp_path / "r1"
    second = tmp_path / "r2"
    analyze(runs, first)
    analyze(runs, second)
    names = sorted(p.relative_to(first) for p in first.rglob("*") if p.is_file())
    assert names == sorted(p.relative_to(second) for p in second.rglob("*") if p.is_file())
    for name in names:
        assert (first / name).read_bytes() == (second / name).read_bytes(), name


def test_missing_consolidated_warns_but_summarizes(tmp_path):
    runs = write_experiment(tmp_path / "exp")
    (tmp_path / "exp" / "consolidated.csv").unlink()
    with pytest.warns(UserWarning, match="skipping front figures"):
        written = analyze(runs, tmp_path / "report")
    assert written["figures"] == []
    assert (tmp_path / "report" / "summary_rhv.csv").exists()


def test_malformed_runs_table_rejected(tmp_path):
    bad = tmp_path / "runs.csv"
    bad.write_text("instance,algorithm\nx,y\n", encoding="utf-8")
    with pytest.raises(ValueError, match="missing columns"):
        analyze(bad, tmp_path / "report")


def test_cli_round_trip(tmp_path, capsys):
    runs = write_experiment(tmp_path / "exp")
    out = tmp_path / "report"
    assert main(["--runs", str(runs), "--out", str(out)]) == 0
    printed = capsys.readouterr().out
    assert str(out / "summary_rhv.csv") in printed
    assert (out / "summary_spread.md").exists()


def test_cli_configuration_errors(tmp_path, capsys):
    assert main(["--runs", str(tmp_path / "nope.csv"), "--out", str(tmp_path)]) == 1
    assert main(["--out", str(tmp_path)]) == 1
    capsys.readouterr()


def test_acceptance_criterion_8(tmp_path):
    """Statistical pipeline on fixtures with known distributions."""
    rng = np.random.default_rng(2024)
    normal = {
        "a": rng.normal(0.7, 0.01, size=30),
        "b": rng.normal(0.5, 0.01, size=30),
    }
    picked_anova = select_test_and_summarize("x", "rhv", normal)
    assert picked_anova.test == "anova" and picked_anova.significant

    skewed = {
        "a": rng.exponential(1.0, size=30),
        "b": rng.exponential(1.0, size=30),
    }
    picked_kw = select_test_and_summarize("x", "rhv", skewed)
    assert picked_kw.test == "kruskal-wallis"

    table = [[3.0] * 10, [2.0] * 10, [1.0] * 10]
    fr = friedman_rank(table)
    assert fr.statistic == pytest.approx(20.0)  # 12*10/12*14 - 120, by hand
    assert fr.average_ranks == (1.0, 2.0, 3.0)
    assert fr.p_value == pytest.approx(float(sps.chi2.sf(20.0, df=2)))

    runs = write_experiment(tmp_path / "exp")
    a, b = tmp_path / "a", tmp_path / "b"
    analyze(runs, a)
    analyze(runs, b)
    files = sorted(p.relative_to(a) for p in a.rglob("*") if p.is_file())
    assert files, "pipeline produced no files"
    identical = all((a / f).read_bytes() == (b / f).read_bytes() for f in files)
    assert identical
    print("criterion 8 statistical pipeline (gate, Friedman, regeneration): PASS")
