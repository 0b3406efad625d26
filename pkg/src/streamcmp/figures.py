"""Figure rendering for comparison reports.

All figures are written straight to PNG files through the Agg backend so
rendering works headless and never opens a window. Inputs come from an
assembled ComparisonReport; nothing here recomputes statistics.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

_DPI = 100


def _save(fig, path: Path) -> Path:
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return path


def fig_timeline(series, path: Path) -> Path | None:
    if not series.starts:
        return None
    fig, ax = plt.subplots(figsize=(9, 4))
    xs = series.starts
    for label in sorted(series.counts):
        ax.plot(xs, series.counts[label], label=label, linewidth=1.2)
    ax.set_xlabel("time (UTC)")
    ax.set_ylabel(f"records per {int(series.bin_width.total_seconds())} s")
    ax.legend(loc="upper right")
    fig.autofmt_xdate()
    fig.tight_layout()
    return _save(fig, path)


def fig_rank_scatter(cmp, path: Path) -> Path | None:
    if not cmp.pairs:
        return None
    ra = [p[1] for p in cmp.pairs]
    rb = [p[2] for p in cmp.pairs]
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.scatter(ra, rb, s=8, alpha=0.5, edgecolors="none")
    lim = max(max(ra), max(rb))
    ax.plot([1, lim], [1, lim], color="grey", linewidth=0.8)
    ax.set_xlabel(f"rank in {cmp.label_a}")
    ax.set_ylabel(f"rank in {cmp.label_b}")
    tau = "-" if cmp.kendall_tau is None else f"{cmp.kendall_tau:.3f}"
    ax.set_title(f"{cmp.kind} {cmp.measure} (tau {tau})")
    fig.tight_layout()
    return _save(fig, path)


def fig_coefficients(rank_cmps, path: Path) -> Path | None:
    rows = [r for r in rank_cmps if r.defined]
    if not rows:
        return None
    names = [f"{r.kind}\n{r.measure}" for r in rows]
    taus = [r.kendall_tau for r in rows]
    rhos = [r.spearman_rho for r in rows]
    xs = range(len(rows))
    width = 0.38
    fig, ax = plt.subplots(figsize=(max(6, 1.2 * len(rows)), 4))
    ax.bar([x - width / 2 for x in xs], taus, width, label="Kendall tau")
    ax.bar([x + width / 2 for x in xs], rhos, width, label="Spearman rho")
    ax.set_xticks(list(xs))
    ax.set_xticklabels(names, fontsize=8)
    ax.set_ylim(-1.05, 1.05)
    ax.axhline(0.0, color="grey", linewidth=0.8)
    ax.set_ylabel("rank correlation")
    ax.legend(loc="lower right")
    fig.tight_layout()
    return _save(fig, path)


def fig_cluster_sizes(pcmp, path: Path) -> Path | None:
    if not pcmp.top_sizes_a and not pcmp.top_sizes_b:
        return None
    fig, ax = plt.subplots(figsize=(7, 4))
    width = 0.38
    na, nb = len(pcmp.top_sizes_a), len(pcmp.top_sizes_b)
    ax.bar([i - width / 2 for i in range(na)], pcmp.top_sizes_a, width,
           label=pcmp.label_a)
    ax.bar([i + width / 2 for i in range(nb)], pcmp.top_sizes_b, width,
           label=pcmp.label_b)
    ax.set_xlabel("cluster rank")
    ax.set_ylabel("cluster size")
    ax.set_title(f"{pcmp.kind} cluster sizes")
    ax.legend(loc="upper right")
    fig.tight_layout()
    return _save(fig, path)


def fig_balance(rows, path: Path) -> Path | None:
    rows = [r for r in rows if r.ratio is not None]
    if not rows:
        return None
    names = [f"{r.kind}:{r.stat}" for r in rows]
    vals = [r.ratio for r in rows]
    fig, ax = plt.subplots(figsize=(7, max(3, 0.28 * len(rows))))
    ax.barh(range(len(rows)), vals)
    ax.set_yticks(range(len(rows)))
    ax.set_yticklabels(names, fontsize=7)
    ax.axvline(1.0, color="grey", linewidth=0.8)
    ax.set_xlabel(f"{rows[0].label_b} / {rows[0].label_a}")
    ax.invert_yaxis()
    fig.tight_layout()
    return _save(fig, path)


def render_figures(report, fig_dir: str | Path) -> list[Path]:
    fig_dir = Path(fig_dir)
    fig_dir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    def keep(p: Path | None) -> None:
        if p is not None:
            written.append(p)

    keep(fig_timeline(report.timeline, fig_dir / "timeline.png"))
    for r in report.rank_comparisons:
        name = f"scatter_{r.kind}_{r.measure}_{r.label_a}_vs_{r.label_b}.png"
        keep(fig_rank_scatter(r, fig_dir / name))

    pairs = sorted({(r.label_a, r.label_b) for r in report.balance})
    for a, b in pairs:
        cmps = [r for r in report.rank_comparisons
                if (r.label_a, r.label_b) == (a, b)]
        keep(fig_coefficients(cmps, fig_dir / f"coefficients_{a}_vs_{b}.png"))
        bal = [r for r in report.balance if (r.label_a, r.label_b) == (a, b)]
        keep(fig_balance(bal, fig_dir / f"balance_{a}_vs_{b}.png"))
    for p in report.partition_comparisons:
        name = f"clusters_{p.kind}_{p.label_a}_vs_{p.label_b}.png"
        keep(fig_cluster_sizes(p, fig_dir / name))
    return written
