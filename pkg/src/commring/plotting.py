"""Figures for verification reports, rendered off-screen to files."""

from __future__ import annotations

from pathlib import Path
from typing import Iterable

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.ticker import MaxNLocator  # noqa: E402

from commring.harness import FAIL, PASS, VACUOUS, CheckReport, summarize  # noqa: E402

_COLORS = {PASS: "#4c9a2a", FAIL: "#c0392b", VACUOUS: "#9e9e9e"}


def status_chart(records: Iterable[CheckReport], path) -> Path:
    """Stacked horizontal bars: share of records per status for each check
    id, with the record count printed at the end of each bar."""
    summary = summarize(records)
    ids = sorted(summary)
    totals = [sum(summary[c].values()) for c in ids]
    fig, ax = plt.subplots(figsize=(7, max(3, 0.22 * len(ids) + 1)))
    left = [0.0] * len(ids)
    for status in (PASS, FAIL, VACUOUS):
        vals = [summary[c][status] / t for c, t in zip(ids, totals)]
        ax.barh(ids, vals, left=left, color=_COLORS[status], label=status)
        left = [a + b for a, b in zip(left, vals)]
    for y, t in enumerate(totals):
        ax.text(1.01, y, str(t), va="center", fontsize=6)
    ax.invert_yaxis()
    ax.set_xlim(0, 1.08)
    ax.set_xlabel("share of records")
    ax.tick_params(axis="y", labelsize=7)
    ax.legend(loc="lower center", bbox_to_anchor=(0.5, 1.0), ncol=3, fontsize=8, frameon=False)
    fig.tight_layout()
    return _save(fig, path)


def gamma_scatter(records: Iterable[CheckReport], path) -> Path:
    """gamma of the commuting graph against gamma of its complement, per
    ring, with the line gamma + gamma_bar = n for reference."""
    pts = []
    for r in records:
        if r.check == "ThmA.i":
            e = r.evidence
            pts.append((e["gamma"], e["gamma_complement"], e["n"], r.status))
    fig, ax = plt.subplots(figsize=(5, 4))
    for status in (PASS, FAIL):
        xs = [p[0] for p in pts if p[3] == status]
        ys = [p[1] for p in pts if p[3] == status]
        if xs:
            ax.scatter(xs, ys, c=_COLORS[status], label=status, alpha=0.7)
    for x, y, n, _ in pts:
        ax.annotate(str(n), (x, y), fontsize=6, xytext=(2, 2), textcoords="offset points")
    ax.xaxis.set_major_locator(MaxNLocator(integer=True))
    ax.yaxis.set_major_locator(MaxNLocator(integer=True))
    ax.set_xlabel("gamma(G)")
    ax.set_ylabel("gamma(complement)")
    ax.set_title("zero-center rings (labels: n)", fontsize=9)
    if pts:
        ax.legend(fontsize=8)
    fig.tight_layout()
    return _save(fig, path)


def _save(fig, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    # fixed metadata keeps repeated renders byte-identical
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)
    return path


def render_figures(records: list[CheckReport], directory) -> list[Path]:
    directory = Path(directory)
    return [status_chart(records, directory / "status.png"),
            gamma_scatter(records, directory / "gamma_scatter.png")]
