"""Static figure for ``bench`` runs."""

from __future__ import annotations

from typing import Sequence


def plot_bench(rows: Sequence[dict], path: str) -> None:
    """Realized bag stability against n, with the theoretical bound for reference."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    rows = sorted(rows, key=lambda r: r["n"])
    ns = [r["n"] for r in rows]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(ns, [r["realized_alpha"] for r in rows], "o", label="realized bag alpha")
    ax.plot(ns, [r["cut_alpha"] for r in rows], "x", label="max oracle cut alpha")
    ax.plot(ns, [r["bound"] for r in rows], "-", color="grey", label="165 C(d) log2(n)^2")
    ax.set_yscale("log")
    ax.set_xlabel("n")
    ax.set_ylabel("stability number")
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
