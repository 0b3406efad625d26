"""Post records, corpora, and the newline-delimited JSON interchange format.

A record is one post. A corpus is an immutable, chronologically sorted,
de-duplicated collection of records with a provenance label. Everything
downstream (stats, networks, comparisons) consumes corpora built here.
"""

from __future__ import annotations

import hashlib
import hmac
import io
import json
import re
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, Iterator

TEXT_FIELDS = "text-fields"
FULL_RECORD = "full-record"
MATCH_SCOPES = (TEXT_FIELDS, FULL_RECORD)

_PLX_REQUIRED = ("id", "author_id", "author_screen_name", "created_at", "text")
_PLX_KNOWN = _PLX_REQUIRED + (
    "lang", "hashtags", "mentions", "urls", "retweet_of", "quote_of", "reply_to",
)


class MalformedRecord(ValueError):
    """A line or payload that cannot be turned into a record."""


@dataclass(frozen=True)
class TweetRef:
    """Pointer to another post (and, when known, its author)."""

    tweet_id: str
    author_id: str | None = None


@dataclass(frozen=True)
class Mention:
    account_id: str
    screen_name: str


@dataclass(frozen=True)
class TweetRecord:
    tweet_id: str
    author_id: str
    author_screen_name: str
    created_at: datetime
    text: str
    lang: str = "und"
    hashtags: tuple[str, ...] = ()
    mentions: tuple[Mention, ...] = ()
    urls: tuple[str, ...] = ()
    retweet_of: TweetRef | None = None
    quote_of: TweetRef | None = None
    reply_to: TweetRef | None = None
    raw_extra: tuple[tuple[str, str], ...] = ()  # unknown input keys, (key, json) pairs

    def __post_init__(self):
        # Normalise at the edges so every consumer can rely on it: aware UTC
        # timestamps at second precision and case-folded hashtags.
        ts = self.created_at
        if ts.tzinfo is None:
            ts = ts.replace(tzinfo=timezone.utc)
        else:
            ts = ts.astimezone(timezone.utc)
        object.__setattr__(self, "created_at", ts.replace(microsecond=0))
        object.__setattr__(self, "hashtags", tuple(h.casefold() for h in self.hashtags))

    # Classification. A native repost takes precedence over a quote when a
    # platform payload carries both; replies are flagged even when the target
    # post is not itself in the corpus.
    @property
    def is_retweet(self) -> bool:
        return self.retweet_of is not None

    @property
    def is_quote(self) -> bool:
        return self.quote_of is not None and self.retweet_of is None

    @property
    def is_reply(self) -> bool:
        return self.reply_to is not None


@dataclass(frozen=True)
class IngestStats:
    parsed: int = 0
    duplicates: int = 0
    malformed: int = 0


@dataclass(frozen=True)
class Corpus:
    """Sorted, de-duplicated records plus the label they travel under."""

    label: str
    records: tuple[TweetRecord, ...]
    ingest_stats: IngestStats = IngestStats()

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[TweetRecord]:
        return iter(self.records)

    def ids(self) -> set[str]:
        return {r.tweet_id for r in self.records}


def corpus_from_records(records: Iterable[TweetRecord], label: str,
                        malformed: int = 0) -> Corpus:
    """Build a corpus: keep the first occurrence of each id, sort by time.

    Ties on the timestamp sort break on the post id so the order is total.
    """
    seen: dict[str, TweetRecord] = {}
    dupes = 0
    for rec in records:
        if rec.tweet_id in seen:
            dupes += 1
            continue
        seen[rec.tweet_id] = rec
    ordered = tuple(sorted(seen.values(), key=lambda r: (r.created_at, r.tweet_id)))
    stats = IngestStats(parsed=len(ordered) + dupes, duplicates=dupes,
                        malformed=malformed)
    return Corpus(label=label, records=ordered, ingest_stats=stats)


# ---------------------------------------------------------------------------
# interchange parsing / serialisation

def _parse_ts(value) -> datetime:
    if not isinstance(value, str):
        raise MalformedRecord(f"created_at must be a string, got {type(value).__name__}")
    try:
        dt = datetime.fromisoformat(value.replace("Z", "+00:00"))
    except ValueError as exc:
        raise MalformedRecord(f"bad created_at {value!r}") from exc
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return dt.astimezone(timezone.utc)


def _parse_ref(value, where: str) -> TweetRef | None:
    if value is None:
        return None
    if not isinstance(value, dict) or "id" not in value:
        raise MalformedRecord(f"{where} must be null or an object with an id")
    author = value.get("author_id")
    return TweetRef(tweet_id=str(value["id"]),
                    author_id=None if author is None else str(author))


def record_from_json(obj: dict | str) -> TweetRecord:
    """Turn one interchange object (parsed dict or raw line) into a record.

    Unknown keys are preserved in raw_extra and written back out verbatim.
    """
    if isinstance(obj, (str, bytes)):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise MalformedRecord(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise MalformedRecord("record must be a JSON object")
    for key in _PLX_REQUIRED:
        if key not in obj or obj[key] is None:
            raise MalformedRecord(f"missing required field {key!r}")
    mentions = []
    for m in obj.get("mentions") or ():
        if not isinstance(m, dict) or "id" not in m:
            raise MalformedRecord("mentions entries need an id")
        mentions.append(Mention(str(m["id"]), str(m.get("screen_name", ""))))
    extra = tuple(sorted(
        (k, json.dumps(v, sort_keys=True, ensure_ascii=False))
        for k, v in obj.items() if k not in _PLX_KNOWN
    ))
    return TweetRecord(
        tweet_id=str(obj["id"]),
        author_id=str(obj["author_id"]),
        author_screen_name=str(obj["author_screen_name"]),
        created_at=_parse_ts(obj["created_at"]),
        text=str(obj["text"]),
        lang=str(obj.get("lang") or "und"),
        hashtags=tuple(str(h) for h in obj.get("hashtags") or ()),
        mentions=tuple(mentions),
        urls=tuple(str(u) for u in obj.get("urls") or ()),
        retweet_of=_parse_ref(obj.get("retweet_of"), "retweet_of"),
        quote_of=_parse_ref(obj.get("quote_of"), "quote_of"),
        reply_to=_parse_ref(obj.get("reply_to"), "reply_to"),
        raw_extra=extra,
    )


def record_to_json(rec: TweetRecord) -> dict:
    def ref(r: TweetRef | None):
        if r is None:
            return None
        return {"id": r.tweet_id, "author_id": r.author_id}

    obj = {
        "id": rec.tweet_id,
        "author_id": rec.author_id,
        "author_screen_name": rec.author_screen_name,
        "created_at": rec.created_at.strftime("%Y-%m-%dT%H:%M:%S+00:00"),
        "text": rec.text,
        "lang": rec.lang,
        "hashtags": list(rec.hashtags),
        "mentions": [{"id": m.account_id, "screen_name": m.screen_name}
                     for m in rec.mentions],
        "urls": list(rec.urls),
        "retweet_of": ref(rec.retweet_of),
        "quote_of": ref(rec.quote_of),
        "reply_to": ref(rec.reply_to),
    }
    for key, raw in rec.raw_extra:
        obj[key] = json.loads(raw)
    return obj


def ingest_lines(lines: Iterable[str], label: str) -> Corpus:
    """Parse newline-delimited JSON. Malformed lines are counted and skipped;
    repeated ids keep their first occurrence."""
    records = []
    malformed = 0
    lineno = 0
    it = iter(lines)
    while True:
        try:
            line = next(it)
        except StopIteration:
            break
        except OSError as exc:
            raise OSError(f"I/O failure at line {lineno + 1}: {exc}") from exc
        lineno += 1
        line = line.strip()
        if not line:
            continue
        try:
            records.append(record_from_json(json.loads(line)))
        except (json.JSONDecodeError, MalformedRecord):
            malformed += 1
    return corpus_from_records(records, label, malformed=malformed)


def read_corpus(path: str | Path, label: str | None = None) -> Corpus:
    path = Path(path)
    if label is None:
        label = path.stem
    with io.open(path, "r", encoding="utf-8") as fh:
        return ingest_lines(fh, label)


def write_records(records: Iterable[TweetRecord], path: str | Path) -> None:
    with io.open(path, "w", encoding="utf-8", newline="\n") as fh:
        for rec in records:
            fh.write(json.dumps(record_to_json(rec), ensure_ascii=False,
                                separators=(",", ":")))
            fh.write("\n")


def write_corpus(corpus: Corpus, path: str | Path) -> None:
    write_records(corpus.records, path)


# ---------------------------------------------------------------------------
# platform v1.1 payload adapter

def record_from_v11(payload: dict) -> TweetRecord:
    """Map a platform v1.1 status payload onto the interchange model."""
    if not isinstance(payload, dict) or "id_str" not in payload:
        raise MalformedRecord("not a v1.1 status payload")
    user = payload.get("user") or {}
    try:
        created = datetime.strptime(payload["created_at"], "%a %b %d %H:%M:%S %z %Y")
    except (KeyError, ValueError) as exc:
        raise MalformedRecord("bad v1.1 created_at") from exc

    text = payload.get("full_text")
    if text is None:
        ext = payload.get("extended_tweet") or {}
        text = ext.get("full_text", payload.get("text", ""))
        entities = ext.get("entities") or payload.get("entities") or {}
    else:
        entities = payload.get("entities") or {}

    hashtags = tuple(h["text"] for h in entities.get("hashtags", ()) if "text" in h)
    mentions = tuple(
        Mention(str(m["id_str"]), str(m.get("screen_name", "")))
        for m in entities.get("user_mentions", ()) if "id_str" in m
    )
    urls = tuple(
        u.get("expanded_url") or u.get("url", "")
        for u in entities.get("urls", ())
    )

    retweet_of = None
    rt = payload.get("retweeted_status")
    if rt:
        retweet_of = TweetRef(str(rt["id_str"]),
                              str((rt.get("user") or {}).get("id_str") or "") or None)
    quote_of = None
    qt = payload.get("quoted_status")
    if qt:
        quote_of = TweetRef(str(qt["id_str"]),
                            str((qt.get("user") or {}).get("id_str") or "") or None)
    elif payload.get("quoted_status_id_str"):
        quote_of = TweetRef(str(payload["quoted_status_id_str"]))
    reply_to = None
    if payload.get("in_reply_to_status_id_str"):
        rep_author = payload.get("in_reply_to_user_id_str")
        reply_to = TweetRef(str(payload["in_reply_to_status_id_str"]),
                            str(rep_author) if rep_author else None)

    return TweetRecord(
        tweet_id=str(payload["id_str"]),
        author_id=str(user.get("id_str", "")),
        author_screen_name=str(user.get("screen_name", "")),
        created_at=created,
        text=str(text),
        lang=str(payload.get("lang") or "und"),
        hashtags=hashtags,
        mentions=mentions,
        urls=urls,
        retweet_of=retweet_of,
        quote_of=quote_of,
        reply_to=reply_to,
    )


def ingest_v11_lines(lines: Iterable[str], label: str) -> Corpus:
    records = []
    malformed = 0
    for line in lines:
        line = line.strip()
        if not line:
            continue
        try:
            records.append(record_from_v11(json.loads(line)))
        except (json.JSONDecodeError, MalformedRecord, KeyError):
            malformed += 1
    return corpus_from_records(records, label, malformed=malformed)


# ---------------------------------------------------------------------------
# corpus transforms

def filter_by_lang(corpus: Corpus, langs: Iterable[str]) -> Corpus:
    """Keep records whose language code is in the allow-list."""
    allowed = {l.strip().casefold() for l in langs if l.strip()}
    if not allowed:
        raise ValueError("language allow-list is empty")
    kept = tuple(r for r in corpus.records if r.lang.casefold() in allowed)
    return Corpus(label=corpus.label + "-lang", records=kept,
                  ingest_stats=corpus.ingest_stats)


def record_matches_keywords(rec: TweetRecord, keywords_lower: list[str],
                            scope: str) -> bool:
    """Case-insensitive substring match against the fields a scope covers.

    text-fields: the body text, the author screen name and the hashtags.
    full-record: those plus URLs, mentioned screen names, and any extra
    payload carried through from ingest.
    """
    hay = [rec.text, rec.author_screen_name]
    hay.extend(rec.hashtags)
    if scope == FULL_RECORD:
        hay.extend(rec.urls)
        hay.extend(m.screen_name for m in rec.mentions)
        hay.extend(raw for _, raw in rec.raw_extra)
    blob = "\n".join(hay).casefold()
    return any(kw in blob for kw in keywords_lower)


def filter_by_keywords(corpus: Corpus, keywords: Iterable[str],
                       scope: str = TEXT_FIELDS) -> Corpus:
    if scope not in MATCH_SCOPES:
        raise ValueError(f"scope must be one of {MATCH_SCOPES}, got {scope!r}")
    kws = [k.strip().casefold() for k in keywords if k.strip()]
    if not kws:
        raise ValueError("keyword list is empty")
    kept = tuple(r for r in corpus.records
                 if record_matches_keywords(r, kws, scope))
    return Corpus(label=corpus.label + "-kw", records=kept,
                  ingest_stats=corpus.ingest_stats)


_MENTION_RE = re.compile(r"@(\w+)")


def anonymize(corpus: Corpus, key: str) -> Corpus:
    """Replace account ids and screen names with keyed pseudonyms.

    The same key maps the same account to the same pseudonym in every corpus,
    so cross-corpus joins survive. @-handles inside the text are rewritten
    when the handle belongs to a known account in this corpus.
    """
    def pseudo(prefix: str, value: str) -> str:
        digest = hmac.new(key.encode(), f"{prefix}:{value}".encode(),
                          hashlib.sha256).hexdigest()
        return prefix + digest[:12]

    handle_map: dict[str, str] = {}
    for rec in corpus.records:
        handle_map[rec.author_screen_name.casefold()] = pseudo("u", rec.author_screen_name.casefold())
        for m in rec.mentions:
            if m.screen_name:
                handle_map[m.screen_name.casefold()] = pseudo("u", m.screen_name.casefold())

    def rewrite_text(text: str) -> str:
        def sub(match: re.Match) -> str:
            repl = handle_map.get(match.group(1).casefold())
            return "@" + repl if repl else match.group(0)
        return _MENTION_RE.sub(sub, text)

    def ref(r: TweetRef | None) -> TweetRef | None:
        if r is None:
            return None
        author = pseudo("a", r.author_id) if r.author_id else None
        return TweetRef(tweet_id=r.tweet_id, author_id=author)

    out = []
    for rec in corpus.records:
        out.append(TweetRecord(
            tweet_id=rec.tweet_id,
            author_id=pseudo("a", rec.author_id),
            author_screen_name=handle_map[rec.author_screen_name.casefold()],
            created_at=rec.created_at,
            text=rewrite_text(rec.text),
            lang=rec.lang,
            hashtags=rec.hashtags,
            mentions=tuple(Mention(pseudo("a", m.account_id),
                                   handle_map.get(m.screen_name.casefold(),
                                                  pseudo("u", m.screen_name.casefold())))
                           for m in rec.mentions),
            urls=rec.urls,
            retweet_of=ref(rec.retweet_of),
            quote_of=ref(rec.quote_of),
            reply_to=ref(rec.reply_to),
            raw_extra=rec.raw_extra,
        ))
    return Corpus(label=corpus.label, records=tuple(out),
                  ingest_stats=corpus.ingest_stats)
