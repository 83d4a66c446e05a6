"""Figure rendering for the report path (matplotlib, file output only)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .stats import HistogramSpec


def render_histogram(
    spec: HistogramSpec,
    path: str | Path,
    title: str = "Distribution of normalized maturity scores",
    xlabel: str = "Normalized maturity score",
) -> Path:
    """Draw the binned score distribution as a bar chart and save it."""
    path = Path(path)
    edges = spec.edges()
    widths = [edges[i + 1] - edges[i] for i in range(spec.bin_count)]

    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.bar(
        edges[:-1],
        spec.counts,
        width=widths,
        align="edge",
        edgecolor="black",
        linewidth=0.7,
        color="#4878a8",
    )
    ax.set_xlabel(xlabel)
    ax.set_ylabel("Number of protocols")
    ax.set_title(title)
    ax.set_xlim(spec.lo, spec.hi)
    ax.yaxis.get_major_locator().set_params(integer=True)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
