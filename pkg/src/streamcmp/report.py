"""Comparison pipeline: corpora in, report artifacts out.

build_report is the pure core: given parallel corpora it assembles every
section (overlap, per-corpus stats, per-kind network stats with balance
ratios, centrality rank agreement for mention/reply, cluster agreement,
timeline). run_compare wraps it with file input and writes Markdown, one
CSV per table, a single JSON document, and, when enabled, PNG figures.
Outputs carry no timestamps and are byte-identical on re-run.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from datetime import timedelta
from pathlib import Path

from . import __version__
from .centrality import (MEASURES, RankComparison, all_centralities,
                         compare_rankings, write_scatter_csv)
from .corpus_stats import (CorpusStats, OverlapStats, TimelineSeries,
                           corpus_stats, overlap, timeline)
from .louvain import Partition, louvain
from .metrics import NetworkStats, network_stats
from .networks import (CENTRALITY_KINDS, KINDS, InteractionNetwork,
                       build_mention_network, build_reply_network,
                       build_retweet_network)
from .partitions import PartitionComparison, compare_partitions
from .records import (Corpus, TEXT_FIELDS, filter_by_keywords, filter_by_lang,
                      read_corpus)

_BALANCE_STATS = (
    "nodes", "edges", "average_degree", "density", "mean_edge_weight",
    "components", "largest_component_size", "largest_component_diameter",
    "clusters", "largest_cluster_size", "reciprocity", "transitivity",
    "max_k_core",
)


@dataclass(frozen=True)
class BalanceRow:
    kind: str
    label_a: str
    label_b: str
    stat: str
    value_a: float
    value_b: float
    ratio: float | None  # None marks division by zero


@dataclass(frozen=True)
class ComparisonReport:
    metadata: dict
    corpus_stats: tuple[CorpusStats, ...]
    overlaps: tuple[OverlapStats, ...]
    network_stats: tuple[NetworkStats, ...]
    balance: tuple[BalanceRow, ...]
    rank_comparisons: tuple[RankComparison, ...]
    partition_comparisons: tuple[PartitionComparison, ...]
    timeline: TimelineSeries
    skipped: tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class ReportConfig:
    inputs: tuple[str, ...]
    out_dir: str
    labels: tuple[str, ...] | None = None
    top_k: int = 1000
    louvain_seed: int = 42
    lang: tuple[str, ...] | None = None
    keywords: tuple[str, ...] | None = None
    scope: str = TEXT_FIELDS
    bin_width: timedelta = timedelta(minutes=15)
    figures: bool = True
    include_quotes: bool = False
    include_retweet_mentions: bool = True


def build_report(corpora: list[Corpus], top_k: int = 1000,
                 louvain_seed: int = 42,
                 bin_width: timedelta = timedelta(minutes=15),
                 include_quotes: bool = False,
                 include_retweet_mentions: bool = True,
                 metadata: dict | None = None) -> ComparisonReport:
    if len(corpora) < 2:
        raise ValueError("need at least 2 corpora to compare")
    labels = [c.label for c in corpora]
    if len(set(labels)) != len(labels):
        raise ValueError(f"corpus labels must be distinct, got {labels}")

    skipped: list[tuple[str, str]] = []
    stats = tuple(corpus_stats(c) for c in corpora)
    pairs = [(a, b) for i, a in enumerate(corpora) for b in corpora[i + 1:]]
    overlaps = tuple(overlap(a, b) for a, b in pairs)
    series = timeline(corpora, bin_width)

    nets: dict[tuple[str, str], InteractionNetwork] = {}
    parts: dict[tuple[str, str], Partition] = {}
    netstats: list[NetworkStats] = []
    for c in corpora:
        built = {
            "mention": build_mention_network(
                c, include_retweet_mentions=include_retweet_mentions),
            "reply": build_reply_network(c),
            "retweet": build_retweet_network(c, include_quotes=include_quotes),
        }
        for kind in KINDS:
            net = built[kind]
            nets[(c.label, kind)] = net
            part = louvain(net, louvain_seed)
            parts[(c.label, kind)] = part
            netstats.append(network_stats(net, louvain_seed, partition=part))

    by_key = {(s.provenance, s.kind): s for s in netstats}
    balance: list[BalanceRow] = []
    for a, b in pairs:
        for kind in KINDS:
            sa, sb = by_key[(a.label, kind)], by_key[(b.label, kind)]
            for stat in _BALANCE_STATS:
                va, vb = getattr(sa, stat), getattr(sb, stat)
                ratio = (vb / va) if va else None
                balance.append(BalanceRow(kind=kind, label_a=a.label,
                                          label_b=b.label, stat=stat,
                                          value_a=float(va), value_b=float(vb),
                                          ratio=ratio))

    rank_cmps: list[RankComparison] = []
    for a, b in pairs:
        for kind in CENTRALITY_KINDS:
            net_a, net_b = nets[(a.label, kind)], nets[(b.label, kind)]
            if net_a.node_count == 0 or net_b.node_count == 0:
                empty = a.label if net_a.node_count == 0 else b.label
                skipped.append((f"centrality/{kind}/{a.label}-vs-{b.label}",
                                f"empty {kind} network in {empty}"))
                continue
            cent_a = all_centralities(net_a)
            cent_b = all_centralities(net_b)
            for measure in MEASURES:
                rank_cmps.append(compare_rankings(cent_a[measure],
                                                  cent_b[measure], k=top_k))

    part_cmps: list[PartitionComparison] = []
    for a, b in pairs:
        for kind in KINDS:
            pa, pb = parts[(a.label, kind)], parts[(b.label, kind)]
            if not pa.assignment or not pb.assignment:
                empty = a.label if not pa.assignment else b.label
                skipped.append((f"clusters/{kind}/{a.label}-vs-{b.label}",
                                f"empty {kind} network in {empty}"))
                continue
            part_cmps.append(compare_partitions(pa, pb, kind=kind,
                                                label_a=a.label,
                                                label_b=b.label))

    meta = dict(metadata or {})
    meta.setdefault("labels", list(labels))
    meta.update(top_k=top_k, louvain_seed=louvain_seed,
                bin_seconds=int(bin_width.total_seconds()),
                version=__version__)
    return ComparisonReport(
        metadata=meta,
        corpus_stats=stats,
        overlaps=overlaps,
        network_stats=tuple(netstats),
        balance=tuple(balance),
        rank_comparisons=tuple(rank_cmps),
        partition_comparisons=tuple(part_cmps),
        timeline=series,
        skipped=tuple(skipped),
    )


def load_corpora(config: ReportConfig) -> list[Corpus]:
    labels = config.labels
    if labels is not None and len(labels) != len(config.inputs):
        raise ValueError("need one label per input")
    corpora = []
    for i, path in enumerate(config.inputs):
        label = labels[i] if labels else None
        c = read_corpus(path, label=label)
        wanted = c.label
        if config.lang:
            c = filter_by_lang(c, config.lang)
        if config.keywords:
            c = filter_by_keywords(c, config.keywords, config.scope)
        if c.label != wanted:
            # filters suffix the label for provenance; report sections keep
            # the name the caller asked for (filters are recorded in metadata)
            c = Corpus(label=wanted, records=c.records,
                       ingest_stats=c.ingest_stats)
        corpora.append(c)
    return corpora


def run_compare(config: ReportConfig) -> ComparisonReport:
    corpora = load_corpora(config)
    meta = {
        "inputs": [str(p) for p in config.inputs],
        "labels": [c.label for c in corpora],
        "lang": list(config.lang) if config.lang else None,
        "keywords": list(config.keywords) if config.keywords else None,
        "scope": config.scope if config.keywords else None,
        "figures": config.figures,
    }
    report = build_report(
        corpora, top_k=config.top_k, louvain_seed=config.louvain_seed,
        bin_width=config.bin_width, include_quotes=config.include_quotes,
        include_retweet_mentions=config.include_retweet_mentions,
        metadata=meta)
    write_report(report, config.out_dir, figures=config.figures)
    return report


# ---------------------------------------------------------------------------
# serialization helpers

def _f(x: float | None, places: int = 3) -> str:
    return "div0" if x is None else f"{x:.{places}f}"


def _pair_or_none(t):
    return list(t) if t is not None else None


def report_to_dict(report: ComparisonReport) -> dict:
    tl = report.timeline
    return {
        "metadata": report.metadata,
        "corpus_stats": [{
            "label": s.label, "tweets": s.tweets, "accounts": s.accounts,
            "retweets": s.retweets, "retweet_share": s.retweet_share,
            "quotes": s.quotes, "replies": s.replies,
            "tweets_with_hashtags": s.tweets_with_hashtags,
            "tweets_with_urls": s.tweets_with_urls,
            "tweets_with_mentions": s.tweets_with_mentions,
            "hashtag_uses": s.hashtag_uses, "unique_hashtags": s.unique_hashtags,
            "url_uses": s.url_uses, "unique_urls": s.unique_urls,
            "mention_uses": s.mention_uses,
            "unique_mentioned_accounts": s.unique_mentioned_accounts,
            "top_account": _pair_or_none(s.top_account),
            "top_mentioned": _pair_or_none(s.top_mentioned),
            "top_retweeted": _pair_or_none(s.top_retweeted),
            "top_replied": _pair_or_none(s.top_replied),
            "top_hashtags": [list(t) for t in s.top_hashtags],
            "top_url": _pair_or_none(s.top_url),
        } for s in report.corpus_stats],
        "overlaps": [vars(o).copy() for o in report.overlaps],
        "network_stats": [{
            "kind": s.kind, "label": s.provenance, "nodes": s.nodes,
            "edges": s.edges, "average_degree": s.average_degree,
            "density": s.density, "mean_edge_weight": s.mean_edge_weight,
            "components": s.components,
            "largest_component_size": s.largest_component_size,
            "largest_component_diameter": s.largest_component_diameter,
            "clusters": s.clusters,
            "largest_cluster_size": s.largest_cluster_size,
            "reciprocity": s.reciprocity, "transitivity": s.transitivity,
            "max_k_core": s.max_k_core, "louvain_seed": s.louvain_seed,
            "empty": s.empty,
        } for s in report.network_stats],
        "balance": [{
            "kind": r.kind, "label_a": r.label_a, "label_b": r.label_b,
            "stat": r.stat, "value_a": r.value_a, "value_b": r.value_b,
            "ratio": r.ratio,
        } for r in report.balance],
        "rank_comparisons": [{
            "kind": r.kind, "measure": r.measure, "label_a": r.label_a,
            "label_b": r.label_b, "k": r.k, "common_nodes": r.common_nodes,
            "kendall_tau": r.kendall_tau, "spearman_rho": r.spearman_rho,
            "strength_band_tau": r.strength_band_tau,
            "strength_band_rho": r.strength_band_rho,
            "defined": r.defined, "note": r.note,
            "pairs": [[n, ra, rb] for n, ra, rb in r.pairs],
        } for r in report.rank_comparisons],
        "partition_comparisons": [{
            "kind": p.kind, "label_a": p.label_a, "label_b": p.label_b,
            "common_node_count": p.common_node_count,
            "rand_index": p.rand_index, "ari": p.ari,
            "top_sizes_a": list(p.top_sizes_a),
            "top_sizes_b": list(p.top_sizes_b),
            "defined": p.defined, "note": p.note,
        } for p in report.partition_comparisons],
        "timeline": {
            "bin_seconds": int(tl.bin_width.total_seconds()),
            "starts": [dt.strftime("%Y-%m-%dT%H:%M:%S+00:00") for dt in tl.starts],
            "counts": {label: list(row) for label, row in sorted(tl.counts.items())},
        },
        "skipped": [{"section": s, "reason": r} for s, r in report.skipped],
    }


def _tpl(v):
    return tuple(v) if v is not None else None


def report_from_dict(data: dict) -> ComparisonReport:
    """Inverse of report_to_dict, so saved JSON can be re-rendered."""
    from datetime import datetime

    stats = tuple(CorpusStats(
        label=d["label"], tweets=d["tweets"], accounts=d["accounts"],
        retweets=d["retweets"], retweet_share=d["retweet_share"],
        quotes=d["quotes"], replies=d["replies"],
        tweets_with_hashtags=d["tweets_with_hashtags"],
        tweets_with_urls=d["tweets_with_urls"],
        tweets_with_mentions=d["tweets_with_mentions"],
        hashtag_uses=d["hashtag_uses"], unique_hashtags=d["unique_hashtags"],
        url_uses=d["url_uses"], unique_urls=d["unique_urls"],
        mention_uses=d["mention_uses"],
        unique_mentioned_accounts=d["unique_mentioned_accounts"],
        top_account=_tpl(d["top_account"]),
        top_mentioned=_tpl(d["top_mentioned"]),
        top_retweeted=_tpl(d["top_retweeted"]),
        top_replied=_tpl(d["top_replied"]),
        top_hashtags=tuple(tuple(t) for t in d["top_hashtags"]),
        top_url=_tpl(d["top_url"]),
    ) for d in data["corpus_stats"])
    overlaps = tuple(OverlapStats(**d) for d in data["overlaps"])
    netstats = tuple(NetworkStats(
        kind=d["kind"], provenance=d["label"], nodes=d["nodes"],
        edges=d["edges"], average_degree=d["average_degree"],
        density=d["density"], mean_edge_weight=d["mean_edge_weight"],
        components=d["components"],
        largest_component_size=d["largest_component_size"],
        largest_component_diameter=d["largest_component_diameter"],
        clusters=d["clusters"], largest_cluster_size=d["largest_cluster_size"],
        reciprocity=d["reciprocity"], transitivity=d["transitivity"],
        max_k_core=d["max_k_core"], louvain_seed=d["louvain_seed"],
        empty=d["empty"],
    ) for d in data["network_stats"])
    balance = tuple(BalanceRow(**d) for d in data["balance"])
    rank_cmps = tuple(RankComparison(
        measure=d["measure"], kind=d["kind"], label_a=d["label_a"],
        label_b=d["label_b"], k=d["k"], common_nodes=d["common_nodes"],
        pairs=tuple((n, ra, rb) for n, ra, rb in d["pairs"]),
        kendall_tau=d["kendall_tau"], spearman_rho=d["spearman_rho"],
        strength_band_tau=d["strength_band_tau"],
        strength_band_rho=d["strength_band_rho"],
        defined=d["defined"], note=d["note"],
    ) for d in data["rank_comparisons"])
    part_cmps = tuple(PartitionComparison(
        kind=d["kind"], label_a=d["label_a"], label_b=d["label_b"],
        common_node_count=d["common_node_count"],
        rand_index=d["rand_index"], ari=d["ari"],
        top_sizes_a=tuple(d["top_sizes_a"]),
        top_sizes_b=tuple(d["top_sizes_b"]),
        defined=d["defined"], note=d["note"],
    ) for d in data["partition_comparisons"])
    tl = data["timeline"]
    series = TimelineSeries(
        bin_width=timedelta(seconds=tl["bin_seconds"]),
        starts=tuple(datetime.fromisoformat(s) for s in tl["starts"]),
        counts={label: tuple(row) for label, row in tl["counts"].items()},
    )
    return ComparisonReport(
        metadata=data["metadata"],
        corpus_stats=stats,
        overlaps=overlaps,
        network_stats=netstats,
        balance=balance,
        rank_comparisons=rank_cmps,
        partition_comparisons=part_cmps,
        timeline=series,
        skipped=tuple((s["section"], s["reason"]) for s in data["skipped"]),
    )


def write_json(report: ComparisonReport, path: Path) -> None:
    with io.open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(report_to_dict(report), fh, indent=2, sort_keys=True,
                  ensure_ascii=False)
        fh.write("\n")


_CORPUS_ROWS = (
    ("tweets", "Tweets"), ("accounts", "Accounts"),
    ("retweets", "Retweets"), ("retweet_share", "Retweet share"),
    ("quotes", "Quotes"), ("replies", "Replies"),
    ("tweets_with_hashtags", "Tweets with hashtags"),
    ("tweets_with_urls", "Tweets with URLs"),
    ("tweets_with_mentions", "Tweets with mentions"),
    ("hashtag_uses", "Hashtag uses"), ("unique_hashtags", "Unique hashtags"),
    ("url_uses", "URL uses"), ("unique_urls", "Unique URLs"),
    ("mention_uses", "Mention uses"),
    ("unique_mentioned_accounts", "Unique mentioned accounts"),
    ("top_account", "Most active account"),
    ("top_mentioned", "Most mentioned account"),
    ("top_retweeted", "Most retweeted post"),
    ("top_replied", "Most replied-to post"),
    ("top_url", "Most used URL"),
)


def _fmt_stat(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, float):
        return f"{value:.3f}"
    if isinstance(value, tuple):
        return f"{value[0]} ({value[1]})"
    return str(value)


def write_csvs(report: ComparisonReport, csv_dir: Path) -> None:
    csv_dir.mkdir(parents=True, exist_ok=True)

    def open_csv(name: str):
        return io.open(csv_dir / name, "w", encoding="utf-8", newline="")

    with open_csv("corpus_stats.csv") as fh:
        w = csv.writer(fh, lineterminator="\n")
        labels = [s.label for s in report.corpus_stats]
        w.writerow(["property"] + labels)
        for attr, title in _CORPUS_ROWS:
            row = [title]
            for s in report.corpus_stats:
                v = getattr(s, attr)
                if isinstance(v, tuple) and v is not None:
                    row.append(f"{v[0]}:{v[1]}")
                elif isinstance(v, float):
                    row.append(f"{v:.6f}")
                else:
                    row.append("" if v is None else str(v))
            w.writerow(row)

    with open_csv("overlap.csv") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["label_a", "label_b", "total_a", "total_b", "shared",
                    "unique_a", "unique_a_pct", "unique_b", "unique_b_pct",
                    "accounts_a", "accounts_b", "shared_accounts",
                    "unique_accounts_a", "unique_accounts_a_pct",
                    "unique_accounts_b", "unique_accounts_b_pct"])
        for o in report.overlaps:
            w.writerow([o.label_a, o.label_b, o.total_a, o.total_b, o.shared,
                        o.unique_a, f"{o.unique_a_pct:.1f}",
                        o.unique_b, f"{o.unique_b_pct:.1f}",
                        o.accounts_a, o.accounts_b, o.shared_accounts,
                        o.unique_accounts_a, f"{o.unique_accounts_a_pct:.1f}",
                        o.unique_accounts_b, f"{o.unique_accounts_b_pct:.1f}"])

    with open_csv("network_stats.csv") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["kind", "label", "nodes", "edges", "average_degree",
                    "density", "mean_edge_weight", "components",
                    "largest_component_size", "largest_component_diameter",
                    "clusters", "largest_cluster_size", "reciprocity",
                    "transitivity", "max_k_core", "louvain_seed", "empty"])
        for s in report.network_stats:
            w.writerow([s.kind, s.provenance, s.nodes, s.edges,
                        f"{s.average_degree:.3f}", f"{s.density:.3f}",
                        f"{s.mean_edge_weight:.3f}", s.components,
                        s.largest_component_size, s.largest_component_diameter,
                        s.clusters, s.largest_cluster_size,
                        f"{s.reciprocity:.3f}", f"{s.transitivity:.3f}",
                        s.max_k_core, s.louvain_seed, s.empty])

    with open_csv("balance.csv") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["kind", "label_a", "label_b", "stat", "value_a", "value_b",
                    "ratio"])
        for r in report.balance:
            w.writerow([r.kind, r.label_a, r.label_b, r.stat,
                        f"{r.value_a:.6f}", f"{r.value_b:.6f}", _f(r.ratio)])

    with open_csv("rank_comparison.csv") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["kind", "measure", "label_a", "label_b", "k",
                    "common_nodes", "kendall_tau", "band_tau", "spearman_rho",
                    "band_rho", "defined", "note"])
        for r in report.rank_comparisons:
            w.writerow([r.kind, r.measure, r.label_a, r.label_b, r.k,
                        r.common_nodes,
                        "" if r.kendall_tau is None else f"{r.kendall_tau:.3f}",
                        r.strength_band_tau or "",
                        "" if r.spearman_rho is None else f"{r.spearman_rho:.3f}",
                        r.strength_band_rho or "", r.defined, r.note])

    with open_csv("partition_comparison.csv") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["kind", "label_a", "label_b", "common_nodes", "rand_index",
                    "ari", "defined", "note", "top_sizes_a", "top_sizes_b"])
        for p in report.partition_comparisons:
            w.writerow([p.kind, p.label_a, p.label_b, p.common_node_count,
                        "" if p.rand_index is None else f"{p.rand_index:.3f}",
                        "" if p.ari is None else f"{p.ari:.3f}",
                        p.defined, p.note,
                        ";".join(map(str, p.top_sizes_a)),
                        ";".join(map(str, p.top_sizes_b))])

    with open_csv("timeline.csv") as fh:
        w = csv.writer(fh, lineterminator="\n")
        tl = report.timeline
        labels = sorted(tl.counts)
        w.writerow(["bin_start"] + labels)
        for i, start in enumerate(tl.starts):
            w.writerow([start.strftime("%Y-%m-%dT%H:%M:%S+00:00")]
                       + [tl.counts[l][i] for l in labels])

    for r in report.rank_comparisons:
        name = f"scatter_{r.kind}_{r.measure}_{r.label_a}_vs_{r.label_b}.csv"
        write_scatter_csv(r, csv_dir / name)


def write_markdown(report: ComparisonReport, path: Path) -> None:
    md: list[str] = []
    meta = report.metadata
    md.append("# Stream comparison report")
    md.append("")
    md.append(f"Corpora: {', '.join(meta['labels'])}. "
              f"Rank lists cut at top {meta['top_k']}; "
              f"cluster seed {meta['louvain_seed']}; "
              f"timeline bin {meta['bin_seconds']} s.")
    if meta.get("lang"):
        md.append(f"Language filter: {', '.join(meta['lang'])}.")
    if meta.get("keywords"):
        md.append(f"Keyword filter ({meta.get('scope')}): "
                  f"{', '.join(meta['keywords'])}.")
    md.append("")

    md.append("## Corpus overlap")
    md.append("")
    md.append("| pair | total A | total B | shared | unique A | unique B "
              "| unique accounts A | unique accounts B |")
    md.append("|---|---|---|---|---|---|---|---|")
    for o in report.overlaps:
        md.append(
            f"| {o.label_a} vs {o.label_b} | {o.total_a} | {o.total_b} "
            f"| {o.shared} | {o.unique_a} ({o.unique_a_pct:.1f}%) "
            f"| {o.unique_b} ({o.unique_b_pct:.1f}%) "
            f"| {o.unique_accounts_a} ({o.unique_accounts_a_pct:.1f}%) "
            f"| {o.unique_accounts_b} ({o.unique_accounts_b_pct:.1f}%) |")
    md.append("")

    md.append("## Corpus statistics")
    md.append("")
    labels = [s.label for s in report.corpus_stats]
    md.append("| property | " + " | ".join(labels) + " |")
    md.append("|---" * (len(labels) + 1) + "|")
    for attr, title in _CORPUS_ROWS:
        cells = [_fmt_stat(getattr(s, attr)) for s in report.corpus_stats]
        md.append(f"| {title} | " + " | ".join(cells) + " |")
    md.append("")
    for s in report.corpus_stats:
        tags = ", ".join(f"{t} ({n})" for t, n in s.top_hashtags) or "-"
        md.append(f"Top hashtags for {s.label}: {tags}")
    md.append("")

    md.append("## Network statistics")
    for kind in ("mention", "reply", "retweet"):
        rows = [s for s in report.network_stats if s.kind == kind]
        if not rows:
            continue
        md.append("")
        md.append(f"### {kind} networks")
        md.append("")
        md.append("| stat | " + " | ".join(s.provenance for s in rows) + " |")
        md.append("|---" * (len(rows) + 1) + "|")
        for stat in _BALANCE_STATS:
            cells = [_fmt_stat(getattr(s, stat)) for s in rows]
            md.append(f"| {stat} | " + " | ".join(cells) + " |")
        if any(s.empty for s in rows):
            empties = ", ".join(s.provenance for s in rows if s.empty)
            md.append("")
            md.append(f"Empty networks: {empties}.")
    md.append("")

    md.append("## Proportional balance (B / A)")
    md.append("")
    md.append("| kind | pair | stat | A | B | B/A |")
    md.append("|---|---|---|---|---|---|")
    for r in report.balance:
        md.append(f"| {r.kind} | {r.label_a} vs {r.label_b} | {r.stat} "
                  f"| {r.value_a:.3f} | {r.value_b:.3f} | {_f(r.ratio)} |")
    md.append("")

    md.append("## Centrality rank agreement")
    md.append("")
    if report.rank_comparisons:
        md.append("| kind | measure | pair | common | tau | band | rho | band |")
        md.append("|---|---|---|---|---|---|---|---|")
        for r in report.rank_comparisons:
            tau = "-" if r.kendall_tau is None else f"{r.kendall_tau:.3f}"
            rho = "-" if r.spearman_rho is None else f"{r.spearman_rho:.3f}"
            md.append(f"| {r.kind} | {r.measure} | {r.label_a} vs {r.label_b} "
                      f"| {r.common_nodes} | {tau} | {r.strength_band_tau or '-'} "
                      f"| {rho} | {r.strength_band_rho or '-'} |")
    else:
        md.append("No centrality comparisons were possible.")
    md.append("")

    md.append("## Cluster agreement")
    md.append("")
    if report.partition_comparisons:
        md.append("| kind | pair | common | Rand | ARI | top sizes A | top sizes B |")
        md.append("|---|---|---|---|---|---|---|")
        for p in report.partition_comparisons:
            ri = "-" if p.rand_index is None else f"{p.rand_index:.3f}"
            ari = "-" if p.ari is None else f"{p.ari:.3f}"
            sa = ",".join(map(str, p.top_sizes_a[:10]))
            sb = ",".join(map(str, p.top_sizes_b[:10]))
            md.append(f"| {p.kind} | {p.label_a} vs {p.label_b} "
                      f"| {p.common_node_count} | {ri} | {ari} | {sa} | {sb} |")
    else:
        md.append("No cluster comparisons were possible.")
    md.append("")

    tl = report.timeline
    md.append("## Timeline")
    md.append("")
    if tl.starts:
        first = tl.starts[0].strftime("%Y-%m-%dT%H:%M:%S+00:00")
        md.append(f"{len(tl.starts)} bins of {int(tl.bin_width.total_seconds())} s "
                  f"starting {first}; totals: "
                  + ", ".join(f"{label}={sum(row)}"
                              for label, row in sorted(tl.counts.items()))
                  + ". Full series in csv/timeline.csv.")
    else:
        md.append("No records; timeline empty.")
    md.append("")

    if report.skipped:
        md.append("## Skipped sections")
        md.append("")
        for section, reason in report.skipped:
            md.append(f"- {section}: {reason}")
        md.append("")

    with io.open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(md))
        fh.write("\n")


def write_report(report: ComparisonReport, out_dir: str | Path,
                 figures: bool = True) -> None:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_json(report, out / "report.json")
    write_markdown(report, out / "report.md")
    write_csvs(report, out / "csv")
    if figures:
        from . import figures as figmod
        figmod.render_figures(report, out / "figures")
