"""Statistical tables and front figures for flowshop experiment outputs."""

from .figures import front_panels, padded_limits, render_fronts
from .report import analyze, build_comparisons, collect_samples, family_groups
from .stats import (
    ALPHA,
    ComparisonRow,
    FriedmanResult,
    GroupSummary,
    friedman_rank,
    select_test_and_summarize,
)
from .tables import load_front_rows, read_table, summary_csv, summary_markdown

__version__ = "0.1.0"

__all__ = [
    "ALPHA",
    "ComparisonRow",
    "FriedmanResult",
    "GroupSummary",
    "analyze",
    "build_comparisons",
    "collect_samples",
    "family_groups",
    "friedman_rank",
    "front_panels",
    "load_front_rows",
    "padded_limits",
    "read_table",
    "render_fronts",
    "select_test_and_summarize",
    "summary_csv",
    "summary_markdown",
]
