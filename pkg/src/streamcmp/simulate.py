"""Synthetic stream generator and collector behavior models.

generate_stream builds a ground-truth corpus: a Poisson event stream over a
power-law account pool, with originals, native retweets, quotes and replies
referencing earlier posts. The spec controls where the tracked keyword
appears (body text, URL only, or nowhere), which is what separates
text-field matchers from full-record matchers downstream.

apply_collector derives what one tool would have captured: keyword matching
at a scope, outage windows, per-minute rate limiting, sliding-window topic
tracking that grows the keyword set, and duplicate re-emission. Everything
is deterministic for fixed seeds.
"""

from __future__ import annotations

import io
import random
from bisect import bisect_left
from collections import deque
from dataclasses import dataclass, field
from datetime import datetime, timedelta, timezone
from itertools import accumulate
from pathlib import Path

from .records import (Corpus, Mention, TweetRecord, TweetRef, corpus_from_records,
                      record_matches_keywords, write_records, MATCH_SCOPES,
                      TEXT_FIELDS, FULL_RECORD)

EPOCH = datetime(2021, 3, 6, 9, 0, 0, tzinfo=timezone.utc)

_VOCAB = (
    "the", "a", "this", "that", "and", "but", "with", "about", "tonight",
    "show", "great", "really", "never", "always", "people", "team", "game",
    "season", "panel", "debate", "point", "agree", "watching", "looking",
    "thinking", "moment", "question", "answer", "still", "again", "every",
    "good", "better", "best", "wow", "huge", "hard", "call", "time", "year",
)
_TAG_COUNT_WEIGHTS = (45, 30, 17, 8)  # for 0..3 hashtags
_MENTION_PROB = 0.45
_EXTRA_URL_PROB = 0.2
_KW_TAG_PROB = 0.6
_RECENCY_SCALE = 200.0


@dataclass(frozen=True)
class Burst:
    start: timedelta
    duration: timedelta
    multiplier: float


def _check_probs(name: str, probs: dict[str, float], allowed: tuple[str, ...]):
    bad = set(probs) - set(allowed)
    if bad:
        raise ValueError(f"{name} has unknown keys {sorted(bad)}")
    if any(p < 0 for p in probs.values()):
        raise ValueError(f"{name} probabilities must be >= 0")
    if abs(sum(probs.values()) - 1.0) > 1e-9:
        raise ValueError(f"{name} probabilities must sum to 1")


@dataclass(frozen=True)
class StreamSpec:
    seed: int
    duration: timedelta
    accounts: int
    base_rate: float  # posts per minute
    mix: dict[str, float] = field(default_factory=lambda: {
        "original": 0.5, "retweet": 0.3, "quote": 0.05, "reply": 0.15})
    lang_mix: dict[str, float] = field(default_factory=lambda: {"en": 1.0})
    keyword: str = "topic"
    keyword_placement: dict[str, float] = field(default_factory=lambda: {
        "text": 1.0, "url": 0.0, "none": 0.0})
    activity_exponent: float = 2.0
    burst_profile: tuple[Burst, ...] = ()
    co_tags: tuple[str, ...] = ("news", "live", "watch", "update", "chat")
    label: str = "truth"
    start: datetime = EPOCH

    def __post_init__(self):
        if self.accounts < 1:
            raise ValueError("accounts must be >= 1")
        if self.base_rate <= 0:
            raise ValueError("base_rate must be > 0")
        if self.duration < timedelta(0):
            raise ValueError("duration must be >= 0")
        _check_probs("mix", self.mix, ("original", "retweet", "quote", "reply"))
        _check_probs("keyword_placement", self.keyword_placement,
                     ("text", "url", "none"))
        if not self.lang_mix:
            raise ValueError("lang_mix must be non-empty")
        if any(p < 0 for p in self.lang_mix.values()):
            raise ValueError("lang_mix probabilities must be >= 0")
        if abs(sum(self.lang_mix.values()) - 1.0) > 1e-9:
            raise ValueError("lang_mix probabilities must sum to 1")
        kw = self.keyword.casefold()
        if not kw:
            raise ValueError("keyword must be non-empty")
        # placement semantics rely on the keyword never leaking into filler
        # text, screen names, or co-occurring tags
        leaks = [w for w in _VOCAB + self.co_tags + ("user",) if kw in w]
        if leaks:
            raise ValueError(f"keyword {kw!r} collides with generator "
                             f"vocabulary: {leaks}")
        ends = 0.0
        for b in self.burst_profile:
            if b.multiplier <= 0 or b.duration <= timedelta(0):
                raise ValueError("burst windows need positive duration and multiplier")
            if b.start.total_seconds() < ends:
                raise ValueError("burst windows must be sorted and non-overlapping")
            ends = (b.start + b.duration).total_seconds()


@dataclass(frozen=True)
class TopicTracking:
    threshold: int
    window: timedelta

    def __post_init__(self):
        if self.threshold < 1:
            raise ValueError("tracking threshold must be >= 1")
        if self.window <= timedelta(0):
            raise ValueError("tracking window must be positive")


@dataclass(frozen=True)
class Outage:
    start: timedelta
    duration: timedelta

    def __post_init__(self):
        if self.duration <= timedelta(0):
            raise ValueError("outage duration must be positive")


@dataclass(frozen=True)
class CollectorProfile:
    name: str
    match_scope: str
    keywords: tuple[str, ...]
    rate_limit: int | None = None
    outages: tuple[Outage, ...] = ()
    topic_tracking: TopicTracking | None = None
    duplicate_rate: float = 0.0

    def __post_init__(self):
        if not self.name:
            raise ValueError("profile needs a name")
        if self.match_scope not in MATCH_SCOPES:
            raise ValueError(f"match_scope must be one of {MATCH_SCOPES}")
        if not self.keywords:
            raise ValueError("profile needs at least one keyword")
        if self.rate_limit is not None and self.rate_limit < 0:
            raise ValueError("rate_limit must be >= 0 or None")
        if not 0.0 <= self.duplicate_rate < 1.0:
            raise ValueError("duplicate_rate must be in [0, 1)")
        ends = None
        for o in sorted(self.outages, key=lambda o: o.start):
            if ends is not None and o.start < ends:
                raise ValueError("outages must not overlap")
            ends = o.start + o.duration


class _Weighted:
    """Deterministic weighted draw via a precomputed cumulative table."""

    def __init__(self, items, weights):
        self.items = list(items)
        self.cum = list(accumulate(weights))
        self.total = self.cum[-1]

    def draw(self, rng: random.Random):
        return self.items[bisect_left(self.cum, rng.random() * self.total)]


def _from_dict(probs: dict[str, float]) -> _Weighted:
    items = sorted(probs)
    return _Weighted(items, [probs[k] for k in items])


def _recent(pool: list, rng: random.Random):
    off = int(rng.expovariate(1.0 / _RECENCY_SCALE))
    if off >= len(pool):
        off = rng.randrange(len(pool))
    return pool[len(pool) - 1 - off]


def generate_stream(spec: StreamSpec) -> Corpus:
    rng = random.Random(spec.seed)
    acct_draw = _Weighted(range(spec.accounts),
                          [(i + 1) ** -spec.activity_exponent
                           for i in range(spec.accounts)])
    mix_draw = _from_dict(spec.mix)
    lang_draw = _from_dict(spec.lang_mix)
    place_draw = _from_dict(spec.keyword_placement)
    tag_count_draw = _Weighted((0, 1, 2, 3), _TAG_COUNT_WEIGHTS)
    tag_draw = (_Weighted(spec.co_tags, [1.0 / (i + 1) for i in range(len(spec.co_tags))])
                if spec.co_tags else None)
    kw = spec.keyword.casefold()

    def rate_multiplier(offset_s: float) -> float:
        m = 1.0
        for b in spec.burst_profile:
            s = b.start.total_seconds()
            if s <= offset_s < s + b.duration.total_seconds():
                m *= b.multiplier
        return m

    lam_base = spec.base_rate / 60.0
    lam_max = lam_base * max([1.0] + [b.multiplier for b in spec.burst_profile])

    records: list[TweetRecord] = []
    retweetable: list[TweetRecord] = []
    dur_s = spec.duration.total_seconds()
    t = 0.0
    seq = 0
    while True:
        t += rng.expovariate(lam_max)
        if t >= dur_s:
            break
        if rng.random() > (lam_base * rate_multiplier(t)) / lam_max:
            continue
        ts = spec.start + timedelta(seconds=int(t))
        seq += 1
        tid = f"t{seq:07d}"
        author = acct_draw.draw(rng)
        author_id = f"a{author:05d}"
        screen = f"user{author:05d}"

        kind = mix_draw.draw(rng)
        if kind in ("retweet", "quote") and not retweetable:
            kind = "original"
        if kind == "reply" and not records:
            kind = "original"

        if kind == "retweet":
            target = _recent(retweetable, rng)
            rec = TweetRecord(
                tweet_id=tid, author_id=author_id, author_screen_name=screen,
                created_at=ts,
                text=f"RT @{target.author_screen_name}: {target.text}"[:140],
                lang=target.lang,
                hashtags=target.hashtags,
                mentions=(Mention(target.author_id, target.author_screen_name),)
                         + target.mentions,
                urls=target.urls,
                retweet_of=TweetRef(target.tweet_id, target.author_id),
            )
            records.append(rec)
            continue

        placement = place_draw.draw(rng)
        lang = lang_draw.draw(rng)
        tags: list[str] = []
        if tag_draw is not None:
            for _ in range(tag_count_draw.draw(rng)):
                tag = tag_draw.draw(rng)
                if tag not in tags:
                    tags.append(tag)
        if placement == "text" and rng.random() < _KW_TAG_PROB:
            tags.append(kw)

        words = [ _VOCAB[rng.randrange(len(_VOCAB))] for _ in range(rng.randint(4, 9)) ]
        if placement == "text":
            words.insert(rng.randrange(len(words) + 1), kw)
        urls: list[str] = []
        if placement == "url":
            urls.append(f"https://{kw}-mall.example.jp/t/{seq}")
        elif rng.random() < _EXTRA_URL_PROB:
            urls.append(f"https://media.example.org/p/{seq}")

        mentions: list[Mention] = []
        reply_to = None
        quote_of = None
        if kind == "reply":
            target = _recent(records, rng)
            reply_to = TweetRef(target.tweet_id, target.author_id)
            mentions.append(Mention(target.author_id, target.author_screen_name))
            words.insert(0, f"@{target.author_screen_name}")
        elif kind == "quote":
            target = _recent(retweetable, rng)
            quote_of = TweetRef(target.tweet_id, target.author_id)
        if rng.random() < _MENTION_PROB:
            for _ in range(rng.randint(1, 2)):
                m = acct_draw.draw(rng)
                if m != author:
                    mentions.append(Mention(f"a{m:05d}", f"user{m:05d}"))

        text = " ".join(words)
        if tags:
            text += " " + " ".join("#" + tg for tg in tags)
        rec = TweetRecord(
            tweet_id=tid, author_id=author_id, author_screen_name=screen,
            created_at=ts, text=text, lang=lang, hashtags=tuple(tags),
            mentions=tuple(mentions), urls=tuple(urls),
            quote_of=quote_of, reply_to=reply_to,
        )
        records.append(rec)
        retweetable.append(rec)

    return corpus_from_records(records, spec.label)


# ---------------------------------------------------------------------------
# collector pipeline

def collect_stream(truth: Corpus, profile: CollectorProfile,
                   seed: int = 0) -> list[TweetRecord]:
    """One chronological pass; the returned list still contains duplicate
    re-emissions (deduplication is the ingest step's job)."""
    if not truth.records:
        return []
    rng = random.Random(seed)
    t0 = truth.records[0].created_at
    windows = [(t0 + o.start, t0 + o.start + o.duration)
               for o in profile.outages]
    active = [k.casefold() for k in profile.keywords]
    tracking = profile.topic_tracking
    pending: dict[str, deque] = {}
    out: list[TweetRecord] = []
    minute_key = None
    minute_count = 0

    for rec in truth.records:
        ts = rec.created_at
        if any(s <= ts < e for s, e in windows):
            continue
        if not record_matches_keywords(rec, active, profile.match_scope):
            continue
        if profile.rate_limit is not None:
            key = int(ts.timestamp() // 60)
            if key != minute_key:
                minute_key, minute_count = key, 0
            if minute_count >= profile.rate_limit:
                continue
            minute_count += 1
        out.append(rec)
        if tracking is not None:
            for tag in rec.hashtags:
                if any(k in tag for k in active):
                    continue  # already matched via an active term
                dq = pending.setdefault(tag, deque())
                dq.append(ts)
                while dq and dq[0] <= ts - tracking.window:
                    dq.popleft()
                if len(dq) >= tracking.threshold:
                    active.append(tag)
                    del pending[tag]
        if profile.duplicate_rate > 0 and rng.random() < profile.duplicate_rate:
            out.append(rec)
    return out


def apply_collector(truth: Corpus, profile: CollectorProfile,
                    seed: int = 0) -> Corpus:
    return corpus_from_records(collect_stream(truth, profile, seed),
                               label=profile.name)


# ---------------------------------------------------------------------------
# named scenarios

SCENARIOS = ("qanda-tracking", "afl-langmix", "afl-identical", "election-outage")


@dataclass(frozen=True)
class ScenarioRun:
    name: str
    seed: int
    spec: StreamSpec
    profiles: tuple[CollectorProfile, ...]
    truth: Corpus
    raw_streams: dict[str, list[TweetRecord]]
    collected: tuple[Corpus, ...]


def _run(name: str, spec: StreamSpec, profiles: tuple[CollectorProfile, ...],
         seed: int) -> ScenarioRun:
    truth = generate_stream(spec)
    raw = {}
    collected = []
    for i, prof in enumerate(profiles):
        stream = collect_stream(truth, prof, seed=seed * 1000 + i)
        raw[prof.name] = stream
        collected.append(corpus_from_records(stream, label=prof.name))
    return ScenarioRun(name=name, seed=seed, spec=spec, profiles=profiles,
                       truth=truth, raw_streams=raw,
                       collected=tuple(collected))


def scenario(name: str, seed: int | None = None) -> ScenarioRun:
    """Pre-calibrated stream + collector setups mirroring the case studies:
    keyword expansion, language/scope mismatch, near-identical twins, and
    outage windows."""
    if name == "qanda-tracking":
        seed = 11 if seed is None else seed
        spec = StreamSpec(
            seed=seed, duration=timedelta(minutes=120), accounts=400,
            base_rate=40.0,
            mix={"original": 0.45, "retweet": 0.30, "quote": 0.10, "reply": 0.15},
            lang_mix={"en": 0.9, "und": 0.1},
            keyword="qanda",
            keyword_placement={"text": 0.8, "url": 0.0, "none": 0.2},
            co_tags=("metoo", "news", "live", "watch"),
        )
        profiles = (
            CollectorProfile(name="tracker", match_scope=TEXT_FIELDS,
                             keywords=("qanda",),
                             topic_tracking=TopicTracking(5, timedelta(minutes=10))),
            CollectorProfile(name="plain", match_scope=TEXT_FIELDS,
                             keywords=("qanda",)),
            CollectorProfile(name="fullrec", match_scope=FULL_RECORD,
                             keywords=("qanda",)),
        )
    elif name == "afl-langmix":
        seed = 23 if seed is None else seed
        spec = StreamSpec(
            seed=seed, duration=timedelta(hours=8), accounts=900,
            base_rate=40.0,
            mix={"original": 0.5, "retweet": 0.3, "quote": 0.05, "reply": 0.15},
            lang_mix={"en": 0.52, "jp": 0.36, "und": 0.12},
            keyword="afl",
            keyword_placement={"text": 0.51, "url": 0.49, "none": 0.0},
        )
        profiles = (
            CollectorProfile(name="fullrec", match_scope=FULL_RECORD,
                             keywords=("afl",)),
            CollectorProfile(name="textonly", match_scope=TEXT_FIELDS,
                             keywords=("afl",)),
        )
    elif name == "afl-identical":
        seed = 29 if seed is None else seed
        spec = StreamSpec(
            seed=seed, duration=timedelta(hours=4), accounts=700,
            base_rate=50.0,
            mix={"original": 0.5, "retweet": 0.35, "quote": 0.05, "reply": 0.10},
            lang_mix={"en": 1.0},
            keyword="footy",
            keyword_placement={"text": 1.0, "url": 0.0, "none": 0.0},
        )
        # identical behavior; only the duplicate-noise RNG differs by seed
        profiles = (
            CollectorProfile(name="twin-a", match_scope=FULL_RECORD,
                             keywords=("footy",), duplicate_rate=0.02),
            CollectorProfile(name="twin-b", match_scope=FULL_RECORD,
                             keywords=("footy",), duplicate_rate=0.02),
        )
    elif name == "election-outage":
        seed = 37 if seed is None else seed
        spec = StreamSpec(
            seed=seed, duration=timedelta(hours=24), accounts=1200,
            base_rate=25.0,
            mix={"original": 0.40, "retweet": 0.30, "quote": 0.05, "reply": 0.25},
            lang_mix={"en": 0.95, "und": 0.05},
            keyword="ausvotes",
            keyword_placement={"text": 1.0, "url": 0.0, "none": 0.0},
        )
        profiles = (
            CollectorProfile(name="steady-a", match_scope=FULL_RECORD,
                             keywords=("ausvotes",)),
            CollectorProfile(name="steady-b", match_scope=TEXT_FIELDS,
                             keywords=("ausvotes",)),
            CollectorProfile(name="gappy", match_scope=TEXT_FIELDS,
                             keywords=("ausvotes",),
                             outages=(Outage(timedelta(hours=6),
                                             timedelta(minutes=110)),
                                      Outage(timedelta(hours=12, minutes=30),
                                             timedelta(minutes=96)))),
        )
    else:
        raise ValueError(f"unknown scenario {name!r}; valid names: "
                         + ", ".join(SCENARIOS))
    return _run(name, spec, profiles, seed)


# ---------------------------------------------------------------------------
# manifests and file output

def _fmt_td(td: timedelta) -> str:
    return f"{int(td.total_seconds())}s"


def _fmt_probs(probs: dict[str, float]) -> str:
    return ",".join(f"{k}:{probs[k]}" for k in sorted(probs))


def manifest_lines(run: ScenarioRun) -> list[str]:
    spec = run.spec
    lines = [
        f"scenario = {run.name}",
        f"seed = {run.seed}",
        f"spec.seed = {spec.seed}",
        f"spec.duration = {_fmt_td(spec.duration)}",
        f"spec.accounts = {spec.accounts}",
        f"spec.base_rate = {spec.base_rate}",
        f"spec.activity_exponent = {spec.activity_exponent}",
        f"spec.keyword = {spec.keyword}",
        f"spec.mix = {_fmt_probs(spec.mix)}",
        f"spec.lang_mix = {_fmt_probs(spec.lang_mix)}",
        f"spec.keyword_placement = {_fmt_probs(spec.keyword_placement)}",
        f"spec.co_tags = {','.join(spec.co_tags)}",
        f"spec.label = {spec.label}",
        f"spec.start = {spec.start.isoformat()}",
    ]
    for b in spec.burst_profile:
        lines.append(f"spec.burst = {_fmt_td(b.start)},{_fmt_td(b.duration)},{b.multiplier}")
    for p in run.profiles:
        pre = f"profile.{p.name}"
        lines.append(f"{pre}.match_scope = {p.match_scope}")
        lines.append(f"{pre}.keywords = {','.join(p.keywords)}")
        if p.rate_limit is not None:
            lines.append(f"{pre}.rate_limit = {p.rate_limit}")
        for o in p.outages:
            lines.append(f"{pre}.outage = {_fmt_td(o.start)},{_fmt_td(o.duration)}")
        if p.topic_tracking is not None:
            lines.append(f"{pre}.topic_tracking = "
                         f"{p.topic_tracking.threshold},{_fmt_td(p.topic_tracking.window)}")
        if p.duplicate_rate:
            lines.append(f"{pre}.duplicate_rate = {p.duplicate_rate}")
    return lines


def write_scenario(run: ScenarioRun, out_dir: str | Path) -> list[Path]:
    """Truth + one file per collector (raw streams, duplicates included),
    plus a key-value manifest."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    truth_path = out / "truth.plx"
    write_records(run.truth.records, truth_path)
    written.append(truth_path)
    for prof in run.profiles:
        path = out / f"{prof.name}.plx"
        write_records(run.raw_streams[prof.name], path)
        written.append(path)
    manifest = out / "manifest.txt"
    with io.open(manifest, "w", encoding="utf-8", newline="\n") as fh:
        for line in manifest_lines(run):
            fh.write(line + "\n")
    written.append(manifest)
    return written
