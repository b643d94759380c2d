"""Figure rendering for spectrum and partition reports.

Figures go straight to files (Agg backend); the CLI writes them next to
the delimited exports when asked.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .catalog import CatalogEntry
from .partitions import PartitionTable

_GUIDES = [
    (5 / 8, "5/8"),
    (1 / 2, "1/2"),
    (1 / 4, "1/4"),
    (1 / 12, "1/12"),
]


def save_spectrum_plot(entries: Iterable[CatalogEntry], path: str | Path) -> None:
    """Scatter of cp against group order, abelian and non-abelian apart."""
    entries = list(entries)
    fig, ax = plt.subplots(figsize=(8, 5))
    for abelian, marker, label, color in (
        (True, "o", "abelian", "tab:blue"),
        (False, "x", "non-abelian", "tab:red"),
    ):
        xs = [e.order for e in entries if e.abelian == abelian]
        ys = [float(e.cp) for e in entries if e.abelian == abelian]
        if xs:
            ax.scatter(xs, ys, marker=marker, s=18, label=label, color=color, alpha=0.7)
    for y, label in _GUIDES:
        ax.axhline(y, linestyle="--", linewidth=0.7, color="grey")
        ax.annotate(label, xy=(1.02, y), xycoords=("axes fraction", "data"), fontsize=8)
    ax.set_xscale("log")
    ax.set_xlabel("group order")
    ax.set_ylabel("commuting probability")
    ax.set_title(f"cp spectrum over the catalog ({len(entries)} groups)")
    ax.legend(loc="upper right")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_partition_plot(table: PartitionTable, path: str | Path) -> None:
    """Growth of the four partition counts on a log scale."""
    ns = list(range(table.max_n + 1))
    fig, ax = plt.subplots(figsize=(8, 5))
    for series, label in ((table.p, "p"), (table.r, "r"), (table.s, "s"), (table.q, "q")):
        ax.plot(ns, [float(v) for v in series], label=f"{label}(n)")
    ax.set_yscale("symlog")
    ax.set_xlabel("n")
    ax.set_ylabel("count")
    ax.set_title(f"partition counts up to n = {table.max_n}")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
