"""Verification report: tab-separated tables plus summary figures."""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .series import PLOT_TYPES, POINT_COUNTS  # noqa: E402

PNG_METADATA = {"Software": None}


def write_tables(report, out_dir) -> list:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    summary = out_dir / "report.tsv"
    with open(summary, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, delimiter="\t", lineterminator="\n")
        w.writerow(["invariant", "violations"])
        for name, count in report.counts.items():
            w.writerow([name, count])
        w.writerow(["records_checked", report.checked])
        for t in PLOT_TYPES:
            w.writerow([f"count_{t}", report.type_counts.get(t, 0)])
    detail = out_dir / "violations.tsv"
    with open(detail, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, delimiter="\t", lineterminator="\n")
        w.writerow(["id", "invariant", "detail"])
        for v in report.violations:
            w.writerow([v.id, v.invariant, v.detail])
    return [summary, detail]


def composition_figure(report, path):
    fig, ax = plt.subplots(figsize=(5, 3.2))
    counts = [report.type_counts.get(t, 0) for t in PLOT_TYPES]
    ax.bar(PLOT_TYPES, counts, color="#4c72b0")
    for i, c in enumerate(counts):
        ax.annotate(str(c), (i, c), ha="center", va="bottom", fontsize=8)
    ax.set_ylabel("charts")
    ax.set_title("Corpus composition")
    fig.tight_layout()
    fig.savefig(path, dpi=100, metadata=PNG_METADATA)
    plt.close(fig)


def point_count_figure(report, path):
    fig, axes = plt.subplots(1, len(PLOT_TYPES), figsize=(12, 2.8), sharey=False)
    for ax, t in zip(axes, PLOT_TYPES):
        lo, hi, _ = POINT_COUNTS[t]
        ax.hist(report.point_counts.get(t, []), bins=range(lo, hi + 2), color="#55a868", align="left")
        ax.set_title(t, fontsize=9)
        ax.set_xlabel("points", fontsize=8)
        ax.tick_params(labelsize=7)
    axes[0].set_ylabel("charts")
    fig.tight_layout()
    fig.savefig(path, dpi=100, metadata=PNG_METADATA)
    plt.close(fig)


def write_report(report, out_dir) -> list:
    """Write report.tsv, violations.tsv, composition.png and point_counts.png."""
    out_dir = Path(out_dir)
    paths = write_tables(report, out_dir)
    for name, draw in (("composition.png", composition_figure), ("point_counts.png", point_count_figure)):
        draw(report, out_dir / name)
        paths.append(out_dir / name)
    return paths
