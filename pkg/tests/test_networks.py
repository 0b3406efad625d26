from __future__ import annotations

import random

import pytest

import streamcmp as sc

from conftest import (mk_corpus, mk_record, rand_corpus,
                      star_chain_network)


def mention(tid, author, *targets, retweet_of=None):
    return mk_record(tid, author,
                     mentions=[(t, f"user_{t}") for t in targets],
                     retweet_of=retweet_of)


class TestMentionNetwork:
    def test_directed_weights(self):
        c = mk_corpus([mention("t1", "A", "B"), mention("t2", "A", "B"),
                       mention("t3", "B", "A")])
        net = sc.build_mention_network(c)
        assert net.edges == {("A", "B"): 2, ("B", "A"): 1}
        assert net.nodes == {"A", "B"}

    def test_no_mentions(self):
        net = sc.build_mention_network(mk_corpus([mk_record("t1")]))
        assert net.edges == {}
        assert net.node_count == 0

    def test_retweet_mention_flag(self):
        c = mk_corpus([
            mention("t1", "A", "B"),
            mention("t2", "C", "B", retweet_of=("t1", "A")),
        ])
        full = sc.build_mention_network(c, include_retweet_mentions=True)
        organic = sc.build_mention_network(c, include_retweet_mentions=False)
        assert full.edges == {("A", "B"): 1, ("C", "B"): 1}
        assert organic.edges == {("A", "B"): 1}

    def test_count_per_tweet_collapses_repeats(self):
        c = mk_corpus([mention("t1", "A", "B", "B", "C")])
        per_use = sc.build_mention_network(c)
        per_tweet = sc.build_mention_network(c, count_per_tweet=True)
        assert per_use.edges[("A", "B")] == 2
        assert per_tweet.edges[("A", "B")] == 1
        assert per_tweet.edges[("A", "C")] == 1

    def test_self_mention_skipped(self):
        c = mk_corpus([mention("t1", "A", "A", "B")])
        net = sc.build_mention_network(c)
        assert ("A", "A") not in net.edges
        assert net.edges == {("A", "B"): 1}
        loops = sc.build_mention_network(c, allow_self_loops=True)
        assert loops.edges[("A", "A")] == 1


class TestReplyNetwork:
    def test_weight_accumulates(self):
        recs = [mk_record("t0", "B")]
        recs += [mk_record(f"t{i}", "A", reply_to=("t0", "B"))
                 for i in (1, 2, 3)]
        net = sc.build_reply_network(mk_corpus(recs))
        assert net.edges == {("A", "B"): 3}

    def test_target_outside_corpus_is_node(self):
        c = mk_corpus([mk_record("t1", "A", reply_to=("x9", "C"))])
        net = sc.build_reply_network(c)
        assert net.edges == {("A", "C"): 1}
        assert "C" in net.nodes

    def test_self_reply_no_edge(self):
        c = mk_corpus([mk_record("t1", "A"),
                       mk_record("t2", "A", reply_to=("t1", "A"))])
        net = sc.build_reply_network(c)
        assert net.edges == {}
        assert net.unresolved == 0

    def test_unresolved_counted(self):
        c = mk_corpus([mk_record("t1", "A", reply_to=("x1", None)),
                       mk_record("t2", "A", reply_to=("x2", "B"))])
        net = sc.build_reply_network(c)
        assert net.unresolved == 1
        assert net.edges == {("A", "B"): 1}


class TestRetweetNetwork:
    def test_distinct_weight(self):
        c = mk_corpus([mk_record("t1", "B"),
                       mk_record("t2", "A", retweet_of=("t1", "B")),
                       mk_record("t3", "A", retweet_of=("t1", "B"))])
        net = sc.build_retweet_network(c)
        assert net.edges == {("A", "B"): 2}

    def test_quote_flag(self):
        c = mk_corpus([mk_record("t1", "B"),
                       mk_record("t2", "A", quote_of=("t1", "B"))])
        plain = sc.build_retweet_network(c)
        with_q = sc.build_retweet_network(c, include_quotes=True)
        assert plain.edges == {}
        assert with_q.edges == {("A", "B"): 1}

    def test_retweet_precedence_over_quote(self):
        # records carrying both refs count once, as a retweet
        c = mk_corpus([mk_record("t1", "B"), mk_record("t2", "C"),
                       mk_record("t3", "A", retweet_of=("t1", "B"),
                                 quote_of=("t2", "C"))])
        net = sc.build_retweet_network(c, include_quotes=True)
        assert net.edges == {("A", "B"): 1}

    def test_unresolved_author(self):
        c = mk_corpus([mk_record("t1", "A", retweet_of=("x1", None))])
        net = sc.build_retweet_network(c)
        assert net.unresolved == 1
        assert net.edges == {}


class TestBuildDispatchAndInvariants:
    def test_unknown_kind(self):
        with pytest.raises(ValueError, match="unknown network kind"):
            sc.build_network(mk_corpus([]), "follows")

    def test_dispatch_matches_direct(self):
        rng = random.Random(3)
        c = rand_corpus(rng)
        assert sc.build_network(c, "reply").edges == \
            sc.build_reply_network(c).edges

    def test_total_weight_matches_stats(self):
        rng = random.Random(4)
        c = rand_corpus(rng)
        s = sc.corpus_stats(c)
        mnet = sc.build_mention_network(c)
        assert mnet.total_weight == sum(
            1 for r in c for m in r.mentions if m.account_id != r.author_id)
        rnet = sc.build_retweet_network(c)
        self_rts = sum(1 for r in c if r.is_retweet
                       and r.retweet_of.author_id == r.author_id)
        assert rnet.total_weight + rnet.unresolved + self_rts == s.retweets

    def test_nodes_are_edge_endpoints(self):
        rng = random.Random(6)
        c = rand_corpus(rng)
        for kind in sc.KINDS:
            net = sc.build_network(c, kind)
            assert net.nodes == {u for e in net.edges for u in e}

    def test_deterministic(self):
        rng = random.Random(7)
        c = rand_corpus(rng)
        a = sc.build_mention_network(c)
        b = sc.build_mention_network(c)
        assert a == b

    def test_mention_net_covers_retweet_targets(self):
        # native retweets carry a mention of the reposted account, so with
        # retweet mentions included every retweet edge also appears there
        rng = random.Random(8)
        c = rand_corpus(rng)
        mnet = sc.build_mention_network(c, include_retweet_mentions=True)
        rnet = sc.build_retweet_network(c)
        assert set(rnet.edges) <= set(mnet.edges)


class TestEdgeCsvRoundTrip:
    def test_round_trip(self, tmp_path):
        rng = random.Random(9)
        c = rand_corpus(rng)
        net = sc.build_mention_network(c)
        epath, npath = tmp_path / "edges.csv", tmp_path / "nodes.csv"
        sc.write_edges_csv(net, epath)
        sc.write_nodes_csv(net, npath)
        back = sc.read_edges_csv(epath, kind="mention", provenance="rand",
                                 nodes_path=npath)
        assert back.edges == net.edges
        assert back.nodes == net.nodes

    def test_isolates_survive_via_nodes_file(self, tmp_path):
        net = sc.InteractionNetwork(kind="mention",
                                    nodes=frozenset({"A", "B", "loner"}),
                                    edges={("A", "B"): 2})
        sc.write_edges_csv(net, tmp_path / "e.csv")
        sc.write_nodes_csv(net, tmp_path / "n.csv")
        back = sc.read_edges_csv(tmp_path / "e.csv",
                                 nodes_path=tmp_path / "n.csv")
        assert "loner" in back.nodes
        bare = sc.read_edges_csv(tmp_path / "e.csv")
        assert bare.nodes == {"A", "B"}

    def test_header_and_order(self, tmp_path):
        net = sc.InteractionNetwork(
            kind="mention", nodes=frozenset({"b", "a", "c"}),
            edges={("c", "a"): 1, ("a", "b"): 2})
        sc.write_edges_csv(net, tmp_path / "e.csv")
        text = (tmp_path / "e.csv").read_text(encoding="utf-8")
        assert text == "source,target,weight\na,b,2\nc,a,1\n"


class TestScaleCorpus:
    def test_known_account_and_pair_totals(self):
        # one repost record per directed pair; each ref carries the target
        # author, so edges resolve without the original posts being present
        pairs = star_chain_network(3234, 7855).edges
        recs = [mk_record(f"t{i:05d}", src, minutes=float(i),
                          retweet_of=(f"orig-{dst}", dst))
                for i, (src, dst) in enumerate(sorted(pairs))]
        net = sc.build_retweet_network(mk_corpus(recs))
        assert net.node_count == 3234
        assert net.edge_count == 7855
        assert net.total_weight == 7855
        assert net.unresolved == 0
