"""Per-corpus descriptive statistics, pairwise overlap accounting, and
activity timelines.

These are the first comparison layer: raw counts and maxima for each corpus,
which records/accounts the corpora share, and posts-over-time series on a
shared bin grid.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone
from typing import Iterable, Sequence

from .records import Corpus


@dataclass(frozen=True)
class CorpusStats:
    label: str
    tweets: int
    accounts: int
    retweets: int
    retweet_share: float
    quotes: int
    replies: int
    tweets_with_hashtags: int
    tweets_with_urls: int
    tweets_with_mentions: int
    hashtag_uses: int
    unique_hashtags: int
    url_uses: int
    unique_urls: int
    mention_uses: int
    unique_mentioned_accounts: int
    top_account: tuple[str, int] | None
    top_mentioned: tuple[str, int] | None
    top_retweeted: tuple[str, int] | None
    top_replied: tuple[str, int] | None
    top_hashtags: tuple[tuple[str, int], ...]
    top_url: tuple[str, int] | None


def _top(counter: Counter) -> tuple[str, int] | None:
    # Ties break on the lexicographically smallest key so reports never
    # depend on insertion order.
    if not counter:
        return None
    item, count = min(counter.items(), key=lambda kv: (-kv[1], kv[0]))
    return item, count


def _ranked(counter: Counter, limit: int) -> tuple[tuple[str, int], ...]:
    ordered = sorted(counter.items(), key=lambda kv: (-kv[1], kv[0]))
    return tuple(ordered[:limit])


def corpus_stats(corpus: Corpus, top_hashtags_limit: int = 10) -> CorpusStats:
    """Count the descriptive battery for one corpus.

    accounts counts posting authors only; accounts that are merely mentioned
    do not contribute. uses-counts include every occurrence, so repeats
    within one record count multiply. Mentions riding on native retweets are
    counted exactly as present on the record.
    """
    by_author: Counter = Counter()
    mentions: Counter = Counter()
    retweeted: Counter = Counter()
    replied: Counter = Counter()
    hashtags: Counter = Counter()
    urls: Counter = Counter()
    retweets = quotes = replies = 0
    with_tags = with_urls = with_mentions = 0

    for rec in corpus.records:
        by_author[rec.author_id] += 1
        if rec.is_retweet:
            retweets += 1
            if rec.retweet_of.tweet_id:
                retweeted[rec.retweet_of.tweet_id] += 1
        elif rec.is_quote:
            quotes += 1
        if rec.is_reply:
            replies += 1
            replied[rec.reply_to.tweet_id] += 1
        if rec.hashtags:
            with_tags += 1
            hashtags.update(rec.hashtags)
        if rec.urls:
            with_urls += 1
            urls.update(rec.urls)
        if rec.mentions:
            with_mentions += 1
            mentions.update(m.account_id for m in rec.mentions)

    n = len(corpus.records)
    return CorpusStats(
        label=corpus.label,
        tweets=n,
        accounts=len(by_author),
        retweets=retweets,
        retweet_share=(retweets / n) if n else 0.0,
        quotes=quotes,
        replies=replies,
        tweets_with_hashtags=with_tags,
        tweets_with_urls=with_urls,
        tweets_with_mentions=with_mentions,
        hashtag_uses=sum(hashtags.values()),
        unique_hashtags=len(hashtags),
        url_uses=sum(urls.values()),
        unique_urls=len(urls),
        mention_uses=sum(mentions.values()),
        unique_mentioned_accounts=len(mentions),
        top_account=_top(by_author),
        top_mentioned=_top(mentions),
        top_retweeted=_top(retweeted),
        top_replied=_top(replied),
        top_hashtags=_ranked(hashtags, top_hashtags_limit),
        top_url=_top(urls),
    )


@dataclass(frozen=True)
class OverlapStats:
    """Which posts and posting accounts each corpus has that the other lacks."""

    label_a: str
    label_b: str
    total_a: int
    total_b: int
    shared: int
    unique_a: int
    unique_b: int
    unique_a_pct: float
    unique_b_pct: float
    accounts_a: int
    accounts_b: int
    shared_accounts: int
    unique_accounts_a: int
    unique_accounts_b: int
    unique_accounts_a_pct: float
    unique_accounts_b_pct: float


def _pct(part: int, whole: int) -> float:
    return (100.0 * part / whole) if whole else 0.0


def overlap(a: Corpus, b: Corpus) -> OverlapStats:
    ids_a, ids_b = a.ids(), b.ids()
    shared = len(ids_a & ids_b)
    acc_a = {r.author_id for r in a.records}
    acc_b = {r.author_id for r in b.records}
    shared_acc = len(acc_a & acc_b)
    return OverlapStats(
        label_a=a.label, label_b=b.label,
        total_a=len(ids_a), total_b=len(ids_b),
        shared=shared,
        unique_a=len(ids_a) - shared,
        unique_b=len(ids_b) - shared,
        unique_a_pct=_pct(len(ids_a) - shared, len(ids_a)),
        unique_b_pct=_pct(len(ids_b) - shared, len(ids_b)),
        accounts_a=len(acc_a), accounts_b=len(acc_b),
        shared_accounts=shared_acc,
        unique_accounts_a=len(acc_a) - shared_acc,
        unique_accounts_b=len(acc_b) - shared_acc,
        unique_accounts_a_pct=_pct(len(acc_a) - shared_acc, len(acc_a)),
        unique_accounts_b_pct=_pct(len(acc_b) - shared_acc, len(acc_b)),
    )


@dataclass(frozen=True)
class TimelineSeries:
    bin_width: timedelta
    starts: tuple[datetime, ...]
    counts: dict[str, tuple[int, ...]]  # label -> per-bin counts


def timeline(corpora: Sequence[Corpus], bin_width: timedelta) -> TimelineSeries:
    """Bin post counts onto one grid shared by every corpus.

    The grid is anchored at the earliest timestamp across all corpora,
    floored to a whole multiple of bin_width, and runs contiguously through
    the latest timestamp. Labels with no records get all-zero rows.
    """
    if bin_width <= timedelta(0):
        raise ValueError("bin_width must be positive")
    step = bin_width.total_seconds()

    stamps = [r.created_at for c in corpora for r in c.records]
    if not stamps:
        return TimelineSeries(bin_width=bin_width, starts=(),
                              counts={c.label: () for c in corpora})
    first = min(stamps).timestamp()
    last = max(stamps).timestamp()
    anchor = first - (first % step)
    nbins = int((last - anchor) // step) + 1
    starts = tuple(datetime.fromtimestamp(anchor + i * step, tz=timezone.utc)
                   for i in range(nbins))

    counts: dict[str, tuple[int, ...]] = {}
    for c in corpora:
        row = [0] * nbins
        for rec in c.records:
            row[int((rec.created_at.timestamp() - anchor) // step)] += 1
        counts[c.label] = tuple(row)
    return TimelineSeries(bin_width=bin_width, starts=starts, counts=counts)
