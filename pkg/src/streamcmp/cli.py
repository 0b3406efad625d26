"""Command-line entry point.

Subcommands: simulate, ingest, stats, build-net, netstats, centrality,
clusters, compare, report. Options may also come from a flat key=value
config file (--config); explicit flags win over config values. Exit codes:
0 success, 1 usage or config problem, 2 unreadable or missing input data.
"""

from __future__ import annotations

import argparse
import io
import json
import re
import sys
from dataclasses import fields as dc_fields
from datetime import timedelta
from pathlib import Path

from .centrality import MEASURES, centrality, ranked_nodes
from .corpus_stats import corpus_stats
from .louvain import louvain
from .metrics import network_stats
from .networks import (CENTRALITY_KINDS, KINDS, build_mention_network,
                       build_reply_network, build_retweet_network,
                       write_edges_csv, write_nodes_csv)
from .records import (MATCH_SCOPES, TEXT_FIELDS, Corpus, corpus_from_records,
                      ingest_lines, ingest_v11_lines, read_corpus,
                      write_corpus)
from .report import ReportConfig, report_from_dict, run_compare, write_report
from .simulate import SCENARIOS, scenario, write_scenario


class UsageError(Exception):
    """Bad flags or config; exits with status 1."""


class InputError(Exception):
    """Missing or unreadable input data; exits with status 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse default exits 2; we want 1
        raise UsageError(f"{self.prog}: {message}")


_DURATION_RE = re.compile(r"^(\d+)\s*(s|m|h|d)$")
_DURATION_UNITS = {"s": 1, "m": 60, "h": 3600, "d": 86400}


def parse_duration(text: str) -> timedelta:
    """Parse durations like 90s, 15m, 6h, 1d."""
    m = _DURATION_RE.match(text.strip().lower())
    if not m:
        raise UsageError(f"bad duration {text!r}, expected forms like 15m or 6h")
    return timedelta(seconds=int(m.group(1)) * _DURATION_UNITS[m.group(2)])


def read_config(path: str) -> dict[str, str]:
    """Flat key=value file; # starts a comment; blank lines ignored."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    out: dict[str, str] = {}
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{ln}: expected key=value, got {raw!r}")
        key, value = line.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def _load_corpus(path: str, label: str | None = None,
                 fmt: str = "plx") -> Corpus:
    p = Path(path)
    if not p.is_file():
        raise InputError(f"input file not found: {path}")
    try:
        if fmt == "plx":
            return read_corpus(p, label=label)
        with io.open(p, "r", encoding="utf-8") as fh:
            return ingest_v11_lines(fh, label or p.stem)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


_BUILDERS = {
    "mention": lambda c, args: build_mention_network(
        c, include_retweet_mentions=not args.no_retweet_mentions),
    "reply": lambda c, args: build_reply_network(c),
    "retweet": lambda c, args: build_retweet_network(
        c, include_quotes=args.include_quotes),
}


def _add_net_flags(p: _Parser) -> None:
    p.add_argument("--include-quotes", action="store_true",
                   help="count quotes as retweet edges")
    p.add_argument("--no-retweet-mentions", action="store_true",
                   help="drop mention edges implied by retweets")


def _csv_list(text: str) -> tuple[str, ...]:
    return tuple(s.strip() for s in text.split(",") if s.strip())


def cmd_simulate(args) -> int:
    run = scenario(args.scenario, seed=args.seed)
    out = Path(args.out)
    paths = write_scenario(run, out)
    print(f"scenario {run.name} seed {run.seed}")
    print(f"truth records {len(run.truth)}")
    for c in run.collected:
        print(f"collected {c.label}: {len(c)} records "
              f"(raw {len(run.raw_streams[c.label])})")
    for p in paths:
        print(f"wrote {p}")
    return 0


def cmd_ingest(args) -> int:
    records: list = []
    parsed = dups = malformed = 0
    for path in args.input:
        c = _load_corpus(path, fmt=args.format)
        records.extend(c.records)
        parsed += c.ingest_stats.parsed
        dups += c.ingest_stats.duplicates
        malformed += c.ingest_stats.malformed
    label = args.label or Path(args.input[0]).stem
    merged = corpus_from_records(records, label)
    dups += len(records) - len(merged)
    write_corpus(merged, args.out)
    print(f"parsed={parsed} duplicates={dups} malformed={malformed} "
          f"records={len(merged)}")
    print(f"wrote {args.out}")
    return 0


def cmd_stats(args) -> int:
    c = _load_corpus(args.input, label=args.label)
    s = corpus_stats(c)
    for f in dc_fields(s):
        v = getattr(s, f.name)
        if f.name == "top_hashtags":
            v = ",".join(f"{t}:{n}" for t, n in v)
        elif isinstance(v, tuple):
            v = f"{v[0]}:{v[1]}"
        elif isinstance(v, float):
            v = f"{v:.6f}"
        print(f"{f.name}={v}")
    return 0


def cmd_build_net(args) -> int:
    c = _load_corpus(args.input)
    net = _BUILDERS[args.kind](c, args)
    write_edges_csv(net, args.out)
    print(f"wrote {args.out} ({net.node_count} nodes, {net.edge_count} edges)")
    if args.nodes_out:
        write_nodes_csv(net, args.nodes_out)
        print(f"wrote {args.nodes_out}")
    return 0


def cmd_netstats(args) -> int:
    c = _load_corpus(args.input)
    net = _BUILDERS[args.kind](c, args)
    s = network_stats(net, args.louvain_seed)
    for f in dc_fields(s):
        v = getattr(s, f.name)
        print(f"{f.name}={v:.6f}" if isinstance(v, float) else f"{f.name}={v}")
    return 0


def cmd_centrality(args) -> int:
    c = _load_corpus(args.input)
    net = _BUILDERS[args.kind](c, args)
    if net.node_count == 0:
        raise InputError(f"empty {args.kind} network in {args.input}")
    vec = centrality(net, args.measure)
    ranked = ranked_nodes(vec)
    rows = ranked if args.top == 0 else ranked[:args.top]
    if args.out:
        with io.open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("node,score\n")
            for node in ranked:
                fh.write(f"{node},{vec.scores[node]:.10g}\n")
        print(f"wrote {args.out}")
    else:
        for node in rows:
            print(f"{node}\t{vec.scores[node]:.6f}")
    if not vec.converged:
        print("warning: eigenvector iteration did not converge",
              file=sys.stderr)
    return 0


def cmd_clusters(args) -> int:
    c = _load_corpus(args.input)
    net = _BUILDERS[args.kind](c, args)
    part = louvain(net, args.louvain_seed)
    if args.out:
        with io.open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("node,cluster\n")
            for node in sorted(part.assignment):
                fh.write(f"{node},{part.assignment[node]}\n")
        print(f"wrote {args.out}")
    sizes = sorted((len(v) for v in part.clusters().values()), reverse=True)
    print(f"clusters={part.cluster_count} modularity={part.modularity:.6f} "
          f"seed={part.seed}")
    print("top_sizes=" + ",".join(map(str, sizes[:20])))
    return 0


def _compare_config(args) -> ReportConfig:
    cfg = read_config(args.config) if args.config else {}

    def pick(flag, key, conv=lambda x: x):
        if flag is not None:
            return flag
        if key in cfg:
            return conv(cfg[key])
        return None

    inputs = args.input or (_csv_list(cfg["input"]) if "input" in cfg else ())
    if len(inputs) < 2:
        raise UsageError("compare needs at least two --input files")
    out = pick(args.out, "out")
    if not out:
        raise UsageError("compare needs --out DIR")
    labels = args.label or (_csv_list(cfg["labels"]) if "labels" in cfg else None)
    if labels is not None and len(labels) != len(inputs):
        raise UsageError("need exactly one --label per --input")
    scope = pick(args.scope, "scope") or TEXT_FIELDS
    if scope not in MATCH_SCOPES:
        raise UsageError(f"bad scope {scope!r}")
    try:
        top_k = int(pick(args.top_k, "top_k") or 1000)
        seed = int(pick(args.louvain_seed, "louvain_seed") or 42)
    except ValueError as exc:
        raise UsageError(f"bad numeric config value: {exc}") from exc
    bin_width = parse_duration(pick(args.bin, "bin") or "15m")
    figures = not args.no_figures
    if "figures" in cfg and not args.no_figures:
        figures = cfg["figures"].lower() not in ("0", "false", "no")
    lang = pick(args.lang, "lang", _csv_list)
    keywords = pick(args.keywords, "keywords", _csv_list)
    return ReportConfig(
        inputs=tuple(inputs), out_dir=out,
        labels=tuple(labels) if labels else None,
        top_k=top_k, louvain_seed=seed,
        lang=_csv_list(lang) if isinstance(lang, str) else lang,
        keywords=_csv_list(keywords) if isinstance(keywords, str) else keywords,
        scope=scope, bin_width=bin_width, figures=figures,
        include_quotes=args.include_quotes,
        include_retweet_mentions=not args.no_retweet_mentions)


def cmd_compare(args) -> int:
    config = _compare_config(args)
    for path in config.inputs:
        if not Path(path).is_file():
            raise InputError(f"input file not found: {path}")
    try:
        report = run_compare(config)
    except FileNotFoundError as exc:
        raise InputError(str(exc)) from exc
    print(f"wrote report to {config.out_dir}")
    for section, reason in report.skipped:
        print(f"skipped {section}: {reason}")
    return 0


def cmd_report(args) -> int:
    path = Path(args.json)
    if not path.is_file():
        raise InputError(f"report file not found: {args.json}")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
        report = report_from_dict(data)
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"cannot parse report {args.json}: {exc}") from exc
    write_report(report, args.out, figures=not args.no_figures)
    print(f"wrote report to {args.out}")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="streamcmp",
                     description="Compare parallel social media collections.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    p = sub.add_parser("simulate", help="generate a synthetic scenario")
    p.add_argument("--scenario", required=True,
                   choices=[s for s in SCENARIOS])
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("ingest", help="normalize raw streams into one corpus")
    p.add_argument("--input", action="append", required=True)
    p.add_argument("--format", choices=("plx", "v11"), default="plx")
    p.add_argument("--label", default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("stats", help="print corpus statistics")
    p.add_argument("--input", required=True)
    p.add_argument("--label", default=None)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("build-net", help="write a network edge list")
    p.add_argument("--input", required=True)
    p.add_argument("--kind", required=True, choices=KINDS)
    p.add_argument("--out", required=True)
    p.add_argument("--nodes-out", default=None)
    _add_net_flags(p)
    p.set_defaults(func=cmd_build_net)

    p = sub.add_parser("netstats", help="print network statistics")
    p.add_argument("--input", required=True)
    p.add_argument("--kind", required=True, choices=KINDS)
    p.add_argument("--louvain-seed", type=int, default=42)
    _add_net_flags(p)
    p.set_defaults(func=cmd_netstats)

    p = sub.add_parser("centrality", help="rank nodes by a centrality measure")
    p.add_argument("--input", required=True)
    p.add_argument("--kind", required=True, choices=CENTRALITY_KINDS)
    p.add_argument("--measure", required=True, choices=MEASURES)
    p.add_argument("--top", type=int, default=20,
                   help="rows to print; 0 means all")
    p.add_argument("--out", default=None, help="write full node,score CSV")
    _add_net_flags(p)
    p.set_defaults(func=cmd_centrality)

    p = sub.add_parser("clusters", help="cluster a network")
    p.add_argument("--input", required=True)
    p.add_argument("--kind", required=True, choices=KINDS)
    p.add_argument("--louvain-seed", type=int, default=42)
    p.add_argument("--out", default=None, help="write node,cluster CSV")
    _add_net_flags(p)
    p.set_defaults(func=cmd_clusters)

    p = sub.add_parser("compare", help="full comparison pipeline")
    p.add_argument("--input", action="append", default=None)
    p.add_argument("--label", action="append", default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--config", default=None, help="flat key=value file")
    p.add_argument("--top-k", type=int, default=None)
    p.add_argument("--louvain-seed", type=int, default=None)
    p.add_argument("--lang", default=None, help="comma separated allow list")
    p.add_argument("--keywords", default=None, help="comma separated")
    p.add_argument("--scope", choices=MATCH_SCOPES, default=None)
    p.add_argument("--bin", default=None, help="timeline bin width, e.g. 15m")
    p.add_argument("--no-figures", action="store_true")
    _add_net_flags(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("report", help="re-render artifacts from report.json")
    p.add_argument("--json", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--no-figures", action="store_true")
    p.set_defaults(func=cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "func", None):
            parser.print_help(sys.stderr)
            return 1
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
