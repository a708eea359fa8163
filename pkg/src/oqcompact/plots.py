"""PNG figures for dimension tables and suite timings."""

from __future__ import annotations

import os
from typing import Dict, List, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def _save(fig, directory: str, name: str) -> str:
    os.makedirs(directory, exist_ok=True)
    path = os.path.join(directory, name)
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return path


def dims_figure(directory: str, series: Dict[str, Sequence[int]], expected: Sequence[int] | None = None,
                name: str = "dims.png", title: str = "filtration dimensions") -> str:
    """Grouped bars of level dimensions, one group per degree, optional PBW markers."""
    fig, ax = plt.subplots(figsize=(7, 4))
    labels = list(series)
    width = 0.8 / max(1, len(labels))
    for i, lab in enumerate(labels):
        vals = list(series[lab])
        xs = [d - 0.4 + width * (i + 0.5) for d in range(len(vals))]
        ax.bar(xs, vals, width=width, label=lab)
    if expected is not None:
        ax.plot(range(len(expected)), list(expected), "k_", markersize=18, mew=2, label="PBW count")
    ax.set_yscale("log")
    ax.set_xlabel("degree bound d")
    ax.set_ylabel("dimension of level d")
    ax.set_title(title)
    ax.legend(fontsize=8)
    return _save(fig, directory, name)


def timing_figure(directory: str, names: List[str], millis: List[int], statuses: List[str],
                  name: str = "suite_timings.png") -> str:
    colors = {"pass": "tab:green", "fail": "tab:red"}
    fig, ax = plt.subplots(figsize=(7, 0.3 * len(names) + 1))
    ys = range(len(names))
    ax.barh(list(ys), millis, color=[colors.get(s, "tab:gray") for s in statuses])
    ax.set_yticks(list(ys))
    ax.set_yticklabels(names, fontsize=8)
    ax.invert_yaxis()
    ax.set_xlabel("milliseconds (including builds not yet cached)")
    return _save(fig, directory, name)
