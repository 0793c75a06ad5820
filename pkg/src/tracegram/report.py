"""Chart rendering for mining and evaluation runs.

Figures are written next to the delimited outputs: rule counts per pipeline
stage for mining, accepted/rejected length histograms for evaluations.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def stage_figure(stage_rule_counts: dict, path):
    names = list(stage_rule_counts)
    counts = [stage_rule_counts[n] for n in names]
    fig, ax = plt.subplots(figsize=(6, 3.2))
    bars = ax.bar(names, counts, color="#4878a8")
    ax.bar_label(bars, fontsize=8)
    ax.set_ylabel("rules")
    ax.set_title("grammar size per pipeline stage")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def eval_figure(accepted_lengths, rejected_lengths, metric_name, pct, path):
    fig, ax = plt.subplots(figsize=(6, 3.2))
    bins = 24
    all_lengths = list(accepted_lengths) + list(rejected_lengths)
    rng = (0, max(all_lengths) + 1 if all_lengths else 1)
    ax.hist(
        [list(accepted_lengths), list(rejected_lengths)],
        bins=bins,
        range=rng,
        stacked=True,
        color=["#58a066", "#c45850"],
        label=["accepted", "rejected"],
    )
    ax.set_xlabel("string length")
    ax.set_ylabel("count")
    ax.set_title(f"{metric_name}: {pct:.1f}%")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
