"""Directed weighted interaction networks built from a corpus.

Three kinds are built, one per interaction: mention, reply, retweet. Nodes
are account ids; an edge (u, v) with weight w records that u directed w
interactions of that kind at v. Targets that never authored a post in the
corpus still become nodes.
"""

from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from .records import Corpus

MENTION = "mention"
REPLY = "reply"
RETWEET = "retweet"
KINDS = (MENTION, REPLY, RETWEET)

# Centrality comparison is defined for mention and reply networks only.
CENTRALITY_KINDS = (MENTION, REPLY)


@dataclass(frozen=True)
class InteractionNetwork:
    kind: str
    nodes: frozenset[str]
    edges: dict[tuple[str, str], int]
    provenance: str = ""
    unresolved: int = 0  # interactions whose target account id was unknown

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def total_weight(self) -> int:
        return sum(self.edges.values())

    def sorted_edges(self) -> list[tuple[str, str, int]]:
        return [(u, v, w) for (u, v), w in sorted(self.edges.items())]


def _network(kind: str, weights: Counter, provenance: str,
             unresolved: int) -> InteractionNetwork:
    nodes = frozenset(u for pair in weights for u in pair)
    return InteractionNetwork(kind=kind, nodes=nodes, edges=dict(weights),
                              provenance=provenance, unresolved=unresolved)


def build_mention_network(corpus: Corpus, include_retweet_mentions: bool = True,
                          count_per_tweet: bool = False,
                          allow_self_loops: bool = False) -> InteractionNetwork:
    """Edge (u, v) weighted by how many times u mentioned v.

    The platform's repost payload carries a mention of the reposted account,
    which makes mention and retweet structure overlap; include_retweet_mentions
    keeps or drops every mention riding on a native retweet. count_per_tweet
    collapses repeat mentions of one account within a single post to one.
    """
    weights: Counter = Counter()
    for rec in corpus.records:
        if rec.is_retweet and not include_retweet_mentions:
            continue
        targets = [m.account_id for m in rec.mentions]
        if count_per_tweet:
            targets = sorted(set(targets))
        for t in targets:
            if t == rec.author_id and not allow_self_loops:
                continue
            weights[(rec.author_id, t)] += 1
    return _network(MENTION, weights, corpus.label, 0)


def build_reply_network(corpus: Corpus,
                        allow_self_loops: bool = False) -> InteractionNetwork:
    """Edge (u, v) weighted by how many of u's posts reply to posts by v.

    Replies to posts outside the corpus still contribute when the target
    author id was recorded; replies without one are counted as unresolved.
    """
    weights: Counter = Counter()
    unresolved = 0
    for rec in corpus.records:
        if not rec.is_reply:
            continue
        target = rec.reply_to.author_id
        if not target:
            unresolved += 1
            continue
        if target == rec.author_id and not allow_self_loops:
            continue
        weights[(rec.author_id, target)] += 1
    return _network(REPLY, weights, corpus.label, unresolved)


def build_retweet_network(corpus: Corpus, include_quotes: bool = False,
                          allow_self_loops: bool = False) -> InteractionNetwork:
    """Edge (u, v) weighted by how many of v's posts u reposted."""
    weights: Counter = Counter()
    unresolved = 0
    for rec in corpus.records:
        if rec.is_retweet:
            ref = rec.retweet_of
        elif rec.is_quote and include_quotes:
            ref = rec.quote_of
        else:
            continue
        target = ref.author_id
        if not target:
            unresolved += 1
            continue
        if target == rec.author_id and not allow_self_loops:
            continue
        weights[(rec.author_id, target)] += 1
    return _network(RETWEET, weights, corpus.label, unresolved)


_BUILDERS = {
    MENTION: build_mention_network,
    REPLY: build_reply_network,
    RETWEET: build_retweet_network,
}


def build_network(corpus: Corpus, kind: str, **kwargs) -> InteractionNetwork:
    if kind not in _BUILDERS:
        raise ValueError(f"unknown network kind {kind!r}, expected one of {KINDS}")
    return _BUILDERS[kind](corpus, **kwargs)


def write_edges_csv(net: InteractionNetwork, path: str | Path) -> None:
    with io.open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["source", "target", "weight"])
        for u, v, w in net.sorted_edges():
            writer.writerow([u, v, w])


def write_nodes_csv(net: InteractionNetwork, path: str | Path) -> None:
    """Node roster; lets isolates survive the edge-list round trip."""
    with io.open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["node"])
        for node in sorted(net.nodes):
            writer.writerow([node])


def read_edges_csv(path: str | Path, kind: str = MENTION, provenance: str = "",
                   nodes_path: str | Path | None = None) -> InteractionNetwork:
    edges: dict[tuple[str, str], int] = {}
    with io.open(path, "r", encoding="utf-8", newline="") as fh:
        for row in csv.DictReader(fh):
            edges[(row["source"], row["target"])] = int(row["weight"])
    nodes = set(u for pair in edges for u in pair)
    if nodes_path is not None:
        with io.open(nodes_path, "r", encoding="utf-8", newline="") as fh:
            nodes.update(row["node"] for row in csv.DictReader(fh))
    return InteractionNetwork(kind=kind, nodes=frozenset(nodes), edges=edges,
                              provenance=provenance or Path(path).stem)
