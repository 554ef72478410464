"""Figure rendering for the command line reports.

matplotlib is imported lazily and pinned to the Agg backend, so library users
who never ask for a figure do not pay the import cost and headless
environments work unchanged.
"""

from __future__ import annotations

from collections import Counter


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def exception_window_figure(report, title: str, path: str) -> str:
    """Bar chart of unrepresented counts per dyadic window, low n on the
    left. Returns the path written."""
    plt = _pyplot()
    rows = list(reversed(report.window_counts))
    labels = [f"({lo}, {hi}]" for lo, hi, _ in rows]
    counts = [cnt for _, _, cnt in rows]
    fig, ax = plt.subplots(figsize=(max(6.0, 0.55 * len(rows)), 4.0))
    ax.bar(range(len(counts)), counts, color="#4878a8")
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels, rotation=60, ha="right", fontsize=8)
    ax.set_ylabel("unrepresented n")
    ax.set_xlabel("dyadic window")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def scan_summary_figure(records, path: str) -> str:
    """Stacked bar chart of scan records: tuples per case, split by verdict.
    Returns the path written."""
    plt = _pyplot()
    pairs = Counter(
        (rec.get("case") or "none", rec["verdict"]) for rec in records
    )
    cases = sorted({case for case, _ in pairs})
    verdicts = sorted({verdict for _, verdict in pairs})
    fig, ax = plt.subplots(figsize=(max(6.0, 1.2 * len(cases)), 4.0))
    bottoms = [0] * len(cases)
    for verdict in verdicts:
        heights = [pairs.get((case, verdict), 0) for case in cases]
        ax.bar(cases, heights, bottom=bottoms, label=verdict)
        bottoms = [b + h for b, h in zip(bottoms, heights)]
    ax.set_ylabel("tuples")
    ax.set_xlabel("case")
    ax.set_title(f"scan of {len(records)} tuples")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
