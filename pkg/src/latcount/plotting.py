"""Figures for the ``bench`` subcommand."""

from __future__ import annotations

from collections import defaultdict
from pathlib import Path
from typing import Dict, List, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

SWEEP_METHODS = ("plain", "partite", "matching", "matching-uniform")

RC = {
    "font.size": 9,
    "axes.labelsize": 9,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
}


def plot_bench(rows: Sequence[Dict], path) -> Path:
    """Runtime per instance and method, and runtime against outer sweep size.

    ``rows`` are the records printed by ``bench``; rows without a runtime
    (skipped methods) are ignored.
    """
    rows = [r for r in rows if r.get("seconds") is not None]
    instances = list(dict.fromkeys(r["instance"] for r in rows))
    methods = list(dict.fromkeys(r["method"] for r in rows))
    secs = {(r["instance"], r["method"]): r["seconds"] for r in rows}

    with plt.rc_context(RC):
        fig, (ax0, ax1) = plt.subplots(1, 2, figsize=(10, 3.8))
        width = 0.8 / max(len(methods), 1)
        for i, meth in enumerate(methods):
            xs = [k + (i - (len(methods) - 1) / 2) * width for k in range(len(instances))]
            ys = [secs.get((inst, meth), 0.0) for inst in instances]
            ax0.bar(xs, ys, width=width, label=meth)
        ax0.set_xticks(range(len(instances)))
        ax0.set_xticklabels(instances, rotation=30, ha="right")
        ax0.set_yscale("log")
        ax0.set_ylabel("seconds (best of repeats)")
        ax0.legend(frameon=False)

        by_method: Dict[str, List] = defaultdict(list)
        for r in rows:
            if r["method"] in SWEEP_METHODS and r.get("sweep_terms"):
                by_method[r["method"]].append((r["sweep_terms"], r["seconds"]))
        for meth, pts in by_method.items():
            pts.sort()
            ax1.loglog([p[0] for p in pts], [p[1] for p in pts], "o", ms=4, label=meth)
        ax1.set_xlabel("outer sweep terms")
        ax1.set_ylabel("seconds")
        if by_method:
            ax1.legend(frameon=False)
        fig.tight_layout()
        out = Path(path)
        fig.savefig(out, dpi=150)
        plt.close(fig)
    return out
