"""Front scatter figures: one 3D view plus three 2D objective cuts."""

from __future__ import annotations

import warnings

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

OBJECTIVE_NAMES = ("makespan", "wtct", "tardiness")
# 2D cuts: wtct/makespan, tardiness/makespan, wtct/tardiness
PROJECTIONS = ((0, 1), (0, 2), (2, 1))
_PNG_METADATA = {"Software": "moflowshop-analysis"}


def padded_limits(lo: float, hi: float) -> tuple[float, float]:
    span = hi - lo
    pad = 0.05 * span if span > 0 else 1.0
    return lo - pad, hi + pad


def front_panels(groups, title: str = ""):
    """Build the four-panel figure for {label: (N, 3) objective rows}.

    Labels are plotted in insertion order with one color each. Empty groups
    raise a warning and leave an annotation instead of points. Axis ranges
    cover the plotted data with a 5 percent margin on every side.
    """
    data = {
        str(label): np.asarray(rows, dtype=float).reshape(-1, 3)
        for label, rows in groups.items()
    }
    fig = plt.figure(figsize=(11.0, 8.5))
    ax3d = fig.add_subplot(2, 2, 1, projection="3d")
    flats = [fig.add_subplot(2, 2, 2 + k) for k in range(3)]

    colors = plt.get_cmap("tab10").colors
    plotted = False
    for k, (label, rows) in enumerate(data.items()):
        if len(rows) == 0:
            warnings.warn(f"empty front for {label!r}", stacklevel=2)
            continue
        plotted = True
        color = colors[k % len(colors)]
        ax3d.scatter(
            rows[:, 0], rows[:, 1], rows[:, 2],
            s=14, color=color, label=label, depthshade=False,
        )
        for ax, (i, j) in zip(flats, PROJECTIONS):
            ax.scatter(rows[:, i], rows[:, j], s=12, color=color, label=label)

    empties = [label for label, rows in data.items() if len(rows) == 0]
    if empties:
        ax3d.text2D(
            0.5, 0.5, "empty front: " + ", ".join(empties),
            transform=ax3d.transAxes, ha="center", va="center", color="crimson",
        )

    if plotted:
        stacked = np.vstack([rows for rows in data.values() if len(rows)])
        limits = [
            padded_limits(float(stacked[:, k].min()), float(stacked[:, k].max()))
            for k in range(3)
        ]
        ax3d.set_xlim(*limits[0])
        ax3d.set_ylim(*limits[1])
        ax3d.set_zlim(*limits[2])
        for ax, (i, j) in zip(flats, PROJECTIONS):
            ax.set_xlim(*limits[i])
            ax.set_ylim(*limits[j])
        ax3d.legend(loc="upper left", fontsize=8)

    ax3d.set_xlabel(OBJECTIVE_NAMES[0])
    ax3d.set_ylabel(OBJECTIVE_NAMES[1])
    ax3d.set_zlabel(OBJECTIVE_NAMES[2])
    for ax, (i, j) in zip(flats, PROJECTIONS):
        ax.set_xlabel(OBJECTIVE_NAMES[i])
        ax.set_ylabel(OBJECTIVE_NAMES[j])
        ax.grid(True, alpha=0.3)

    if title:
        fig.suptitle(title)
    fig.subplots_adjust(
        left=0.07, right=0.97, bottom=0.07, top=0.93, wspace=0.25, hspace=0.3
    )
    return fig, (ax3d, *flats)


def render_fronts(groups, out_file, title: str = "") -> str:
    """Write the panel figure for one instance family; returns the file path."""
    fig, _ = front_panels(groups, title)
    fig.savefig(out_file, dpi=110, metadata=_PNG_METADATA)
    plt.close(fig)
    return str(out_file)
