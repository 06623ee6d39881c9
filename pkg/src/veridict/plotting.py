"""Report figures. Rendered off-screen to PNG files."""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

STYLE = {
    "font.size": 9,
    "axes.titlesize": 10,
    "axes.labelsize": 9,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "legend.fontsize": 8,
    "legend.frameon": False,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "savefig.dpi": 120,
}

FAKE_COLOR = "#c0392b"
REAL_COLOR = "#2e86c1"


def _save(fig, path):
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def plot_accuracies(stats, best_fit, path):
    """Bar chart of per-model test accuracy with mean and median lines."""
    with plt.rc_context(STYLE):
        names = [a.value for a in stats.per_model]
        accs = list(stats.per_model.values())
        fig, ax = plt.subplots(figsize=(4.5, 3.0))
        colors = ["#555555" if a != best_fit.value else REAL_COLOR for a in names]
        bars = ax.bar(names, accs, color=colors, width=0.6)
        ax.axhline(stats.mean, color="k", lw=0.8, ls="--", label=f"mean {stats.mean:.3f}")
        ax.axhline(stats.median, color="k", lw=0.8, ls=":", label=f"median {stats.median:.3f}")
        for bar, acc in zip(bars, accs):
            ax.annotate(f"{acc:.3f}", (bar.get_x() + bar.get_width() / 2, acc),
                        ha="center", va="bottom", fontsize=7)
        ax.set_ylim(0, 1.05)
        ax.set_ylabel("test accuracy")
        ax.set_title(f"model accuracies (best fit: {best_fit.value})")
        ax.legend(loc="lower right")
        return _save(fig, path)


def plot_confusion(report, path):
    with plt.rc_context(STYLE):
        cm = np.array(report.confusion_matrix)
        fig, ax = plt.subplots(figsize=(3.0, 2.8))
        ax.imshow(cm, cmap="Blues")
        for (i, j), v in np.ndenumerate(cm):
            ax.text(j, i, str(v), ha="center", va="center",
                    color="white" if v > cm.max() / 2 else "black")
        ax.set_xticks([0, 1], ["FAKE", "REAL"])
        ax.set_yticks([0, 1], ["FAKE", "REAL"])
        ax.set_xlabel("predicted")
        ax.set_ylabel("true")
        ax.set_title(f"{report.algorithm.value} confusion")
        return _save(fig, path)


def plot_outlet(report, bounds, path):
    """Fake/real split of a scanned outlet against the verdict bands."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(4.5, 1.8))
        ax.barh([0], [report.fake_fraction], color=FAKE_COLOR, label="FAKE")
        ax.barh([0], [report.real_fraction], left=[report.fake_fraction], color=REAL_COLOR, label="REAL")
        # score is the real fraction, read from the right-hand edge
        for b in (bounds.low, bounds.high):
            ax.axvline(1.0 - b, color="k", lw=0.8, ls="--")
        ax.set_xlim(0, 1)
        ax.set_yticks([])
        ax.set_xlabel("share of articles")
        ax.set_title(f"{report.verdict.value}: S = {report.score:.3f}, n = {report.n_articles}")
        ax.legend(loc="upper center", bbox_to_anchor=(0.5, -0.45), ncol=2)
        return _save(fig, path)
