"""Figures and delimited tables for sweep and search reports."""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Any

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

STATUS_COLOURS = {
    "pass": "#4c956c",
    "fail": "#d62828",
    "not-applicable": "#adb5bd",
    "error": "#f4a261",
}


def setup_figure_pars() -> None:
    plt.rcParams.update({
        "axes.labelsize": 11,
        "axes.titlesize": 12,
        "font.size": 10,
        "legend.fontsize": 9,
        "xtick.labelsize": 9,
        "ytick.labelsize": 9,
        "axes.spines.top": False,
        "axes.spines.right": False,
        "savefig.dpi": 150,
        # keeps PNG bytes stable between runs
        "svg.hashsalt": "kegraphs",
    })


def write_check_table(report: dict[str, Any], path: Path, delimiter: str = "\t") -> Path:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, delimiter=delimiter, lineterminator="\n")
        writer.writerow(["check", "status", "pass", "fail", "not-applicable", "error"])
        for row in report["checks"]:
            counts = row.get("counts", {})
            writer.writerow([row["id"], row["status"]] + [
                counts.get(k, 0) for k in ("pass", "fail", "not-applicable", "error")
            ])
    return path


def plot_check_outcomes(report: dict[str, Any], path: Path) -> Path:
    rows = [r for r in report["checks"] if "counts" in r and "pass" in r["counts"]]
    labels = [r["id"] for r in rows]
    fig, ax = plt.subplots(figsize=(7, 0.45 * len(rows) + 1.2))
    left = [0] * len(rows)
    for status, colour in STATUS_COLOURS.items():
        widths = [r["counts"].get(status, 0) for r in rows]
        ax.barh(labels, widths, left=left, color=colour, label=status)
        left = [a + b for a, b in zip(left, widths)]
    ax.invert_yaxis()
    ax.set_xlabel("graphs")
    ax.set_title(f"check outcomes ({report['summary'].get('instances', 0)} graphs)")
    ax.legend(loc="upper center", bbox_to_anchor=(0.5, -0.18), ncol=4, frameon=False)
    fig.tight_layout()
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)
    return path


def plot_det_histogram(report: dict[str, Any], path: Path) -> Path:
    hist = report["summary"].get("det_histogram", {})
    values = sorted(hist, key=int)
    fig, ax = plt.subplots(figsize=(7, 3.5))
    ax.bar(range(len(values)), [hist[v] for v in values], color="#3a6ea5")
    ax.set_xticks(range(len(values)))
    ax.set_xticklabels(values, rotation=90 if len(values) > 15 else 0)
    ax.set_yscale("log")
    ax.set_xlabel("det A(G)")
    ax.set_ylabel("graphs")
    ax.set_title("adjacency determinants")
    fig.tight_layout()
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)
    return path


def render_report_figures(report: dict[str, Any], outdir: str | Path) -> list[Path]:
    """Write the per-check table and figures for a sweep report into ``outdir``."""
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    setup_figure_pars()
    written = [write_check_table(report, out / "checks.tsv")]
    if any("pass" in r.get("counts", {}) for r in report["checks"]):
        written.append(plot_check_outcomes(report, out / "check_outcomes.png"))
    if report["summary"].get("det_histogram"):
        written.append(plot_det_histogram(report, out / "det_histogram.png"))
    return written
