from __future__ import annotations

import random
from datetime import datetime, timedelta, timezone

import pytest

from streamcmp import (Corpus, InteractionNetwork, Mention, TweetRecord,
                       TweetRef, corpus_from_records)

T0 = datetime(2021, 3, 6, 9, 0, 0, tzinfo=timezone.utc)


def mk_record(tweet_id: str, author: str = "a1", *, screen: str | None = None,
              minutes: float = 0.0, text: str = "hello world",
              lang: str = "en", hashtags=(), mentions=(), urls=(),
              retweet_of=None, quote_of=None, reply_to=None,
              raw_extra=()) -> TweetRecord:
    """Terse record factory; interaction targets given as (id, author) pairs."""
    def ref(v):
        if v is None:
            return None
        if isinstance(v, TweetRef):
            return v
        tid, author_id = v
        return TweetRef(tid, author_id)

    return TweetRecord(
        tweet_id=tweet_id,
        author_id=author,
        author_screen_name=screen if screen is not None else f"user_{author}",
        created_at=T0 + timedelta(minutes=minutes),
        text=text,
        lang=lang,
        hashtags=tuple(hashtags),
        mentions=tuple(Mention(*m) if not isinstance(m, Mention) else m
                       for m in mentions),
        urls=tuple(urls),
        retweet_of=ref(retweet_of),
        quote_of=ref(quote_of),
        reply_to=ref(reply_to),
        raw_extra=tuple(raw_extra),
    )


def mk_corpus(records, label: str = "test") -> Corpus:
    return corpus_from_records(list(records), label)


def mk_network(edges: dict, kind: str = "mention",
               provenance: str = "test") -> InteractionNetwork:
    nodes = frozenset(v for e in edges for v in e)
    return InteractionNetwork(kind=kind, nodes=nodes, edges=dict(edges),
                              provenance=provenance)


def star_chain_network(n: int, e: int, kind: str = "retweet",
                       provenance: str = "fixture") -> InteractionNetwork:
    """Network with exactly n nodes and e distinct directed edges.

    A hub star guarantees every node appears (and keeps the diameter at 2);
    offset chains pad the edge count without ever duplicating a pair.
    """
    assert n >= 2 and n - 1 <= e
    names = [f"v{i:05d}" for i in range(n)]
    edges = {}
    for i in range(1, n):
        edges[(names[0], names[i])] = 1
    k = 1
    while len(edges) < e:
        assert k < n, "edge count exceeds what offset chains can supply"
        for i in range(1, n - k):
            edges[(names[i], names[i + k])] = 1
            if len(edges) == e:
                break
        k += 1
    return InteractionNetwork(kind=kind, nodes=frozenset(names),
                              edges=edges, provenance=provenance)


def rand_network(rng: random.Random, n: int, p: float,
                 max_weight: int = 3) -> InteractionNetwork:
    """Random directed network; may be disconnected, never has self-loops."""
    names = [f"n{i:03d}" for i in range(n)]
    edges = {}
    for u in names:
        for v in names:
            if u != v and rng.random() < p:
                edges[(u, v)] = rng.randint(1, max_weight)
    keep = set(names[:max(1, n // 8)])  # a few guaranteed isolates-or-not
    nodes = frozenset(keep | {x for e in edges for x in e})
    return InteractionNetwork(kind="mention", nodes=nodes, edges=edges,
                              provenance="rand")


def rand_corpus(rng: random.Random, accounts: int = 12,
                size: int = 60) -> Corpus:
    """Random but internally consistent corpus with all interaction kinds."""
    records = []
    for i in range(size):
        author = f"a{rng.randrange(accounts)}"
        kind = rng.random()
        kwargs = {}
        if records and kind < 0.3:
            target = rng.choice(records)
            kwargs["retweet_of"] = (target.tweet_id, target.author_id)
            kwargs["mentions"] = [(target.author_id,
                                   f"user_{target.author_id}")]
        elif records and kind < 0.45:
            target = rng.choice(records)
            kwargs["reply_to"] = (target.tweet_id, target.author_id)
        elif records and kind < 0.55:
            target = rng.choice(records)
            kwargs["quote_of"] = (target.tweet_id, target.author_id)
        if rng.random() < 0.4:
            other = f"a{rng.randrange(accounts)}"
            kwargs.setdefault("mentions", [])
            kwargs["mentions"] = list(kwargs["mentions"]) + [
                (other, f"user_{other}")]
        if rng.random() < 0.35:
            kwargs["hashtags"] = [rng.choice(["tagx", "tagy", "tagz"])]
        if rng.random() < 0.25:
            kwargs["urls"] = [f"https://ex.example/{rng.randrange(9)}"]
        records.append(mk_record(
            f"t{i:04d}", author, minutes=i * 0.5 + rng.random() * 0.2,
            text=f"post number {i} {rng.choice(['alpha', 'beta', 'gamma'])}",
            lang=rng.choice(["en", "jp", "und"]),
            **kwargs))
    return mk_corpus(records, "rand")


@pytest.fixture(scope="session")
def qanda_run():
    import streamcmp
    return streamcmp.scenario("qanda-tracking")


@pytest.fixture(scope="session")
def election_run():
    import streamcmp
    return streamcmp.scenario("election-outage")


@pytest.fixture(scope="session")
def afl_langmix_run():
    import streamcmp
    return streamcmp.scenario("afl-langmix")


@pytest.fixture(scope="session")
def afl_identical_run():
    import streamcmp
    return streamcmp.scenario("afl-identical")
