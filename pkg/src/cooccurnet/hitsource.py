"""Uniform hit-count providers.

Three backends answer the same question, "how many documents match this
query": a local index, a recorded fixture file, and a live web search
API. Queries are canonicalized to strings first so that counts are
cacheable and symmetric in argument order, and so a web cache written by
one run can be replayed as a fixture by the next.

Fixture/cache file schema (one JSON object):

    {"total": int | null,
     "counts": {"<canonical query>": int, ...},
     "retrieved_at": {"<canonical query>": "<ISO-8601 UTC>", ...}}
"""

from __future__ import annotations

import json
import os
import tempfile
import threading
import time
from abc import ABC, abstractmethod
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from urllib.parse import quote

import requests

from cooccurnet import engine
from cooccurnet.engine import PHRASE, EventSpace, Term, as_term
from cooccurnet.errors import (
    ConfigError,
    DegeneratePairError,
    InvalidTermError,
    MissingFixtureError,
    ProtocolError,
    RateLimitError,
    RetryableSourceError,
    SourceError,
)


def _canonical_term(term: Term) -> str:
    text = term.text
    return f'"{text}"' if term.mode == PHRASE else text


@dataclass(frozen=True)
class Query:
    """One or two terms under a single match mode, with a canonical string form."""

    terms: tuple[Term, ...]
    mode: str

    @classmethod
    def of(cls, terms, mode: str = PHRASE) -> "Query":
        coerced = tuple(as_term(t, mode=mode).with_mode(mode) for t in terms)
        if not 1 <= len(coerced) <= 2:
            raise InvalidTermError(f"a query takes one or two terms, got {len(coerced)}")
        if len(coerced) == 2:
            if coerced[0] == coerced[1]:
                raise DegeneratePairError(
                    f"doubleton query needs two distinct terms, got {coerced[0].text!r} twice"
                )
            coerced = tuple(sorted(coerced, key=_canonical_term))
        return cls(terms=coerced, mode=mode)

    @property
    def canonical(self) -> str:
        return " AND ".join(_canonical_term(t) for t in self.terms)

    @property
    def is_doubleton(self) -> bool:
        return len(self.terms) == 2


def canonical_query(terms, mode: str = PHRASE) -> str:
    """Stable canonical string for one or two terms under a mode."""
    return Query.of(terms, mode=mode).canonical


class HitSource(ABC):
    """Provider of hit counts for singleton and doubleton queries."""

    @abstractmethod
    def count(self, query: Query) -> int:
        """Nonnegative hit count for the query."""

    @abstractmethod
    def total(self) -> int | None:
        """Total document count |corpus| when the backend knows it."""

    def count_term(self, term, mode: str | None = None) -> int:
        term = as_term(term)
        return self.count(Query.of((term,), mode=mode or term.mode))

    def count_pair(self, t_x, t_y, mode: str | None = None) -> int:
        t_x, t_y = as_term(t_x), as_term(t_y)
        return self.count(Query.of((t_x, t_y), mode=mode or t_x.mode))


class LocalSource(HitSource):
    """Hit counts answered by a local EventSpace."""

    def __init__(self, space: EventSpace):
        self.space = space

    def count(self, query: Query) -> int:
        if query.is_doubleton:
            return engine.doubleton_event(self.space, *query.terms).cardinality
        return engine.singleton_event(self.space, query.terms[0]).cardinality

    def total(self) -> int | None:
        return self.space.total_docs


def local_source(space: EventSpace) -> LocalSource:
    return LocalSource(space)


def _load_counts_file(path) -> tuple[int | None, dict[str, int], dict[str, str]]:
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise SourceError(f"cannot load counts file {path}: {exc}") from exc
    if not isinstance(payload, dict) or not isinstance(payload.get("counts", None), dict):
        raise SourceError(f'counts file {path} must be an object with a "counts" mapping')
    total = payload.get("total")
    if total is not None and (not isinstance(total, int) or total < 0):
        raise SourceError(f'counts file {path}: "total" must be null or a nonnegative integer')
    counts = {}
    for key, value in payload["counts"].items():
        if not isinstance(value, int) or value < 0:
            raise SourceError(f"counts file {path}: count for {key!r} must be a nonnegative integer")
        counts[key] = value
    retrieved = payload.get("retrieved_at", {})
    if not isinstance(retrieved, dict):
        raise SourceError(f'counts file {path}: "retrieved_at" must be a mapping')
    return total, counts, retrieved


class FixtureSource(HitSource):
    """Replay of recorded hit counts keyed by canonical query string.

    Unmapped queries raise instead of returning 0: a silent zero would
    fabricate disjoint clusters.
    """

    def __init__(self, path, total: int | None = None):
        self.path = Path(path)
        self._total, self._counts, self._retrieved_at = _load_counts_file(self.path)
        if total is not None:
            # Explicit |corpus| estimate supplied by the caller wins over
            # whatever the recording carries.
            self._total = total

    def count(self, query: Query) -> int:
        canonical = query.canonical
        try:
            return self._counts[canonical]
        except KeyError:
            raise MissingFixtureError(
                f"fixture {self.path} has no entry for query {canonical!r}"
            ) from None

    def total(self) -> int | None:
        return self._total


def fixture_source(path) -> FixtureSource:
    return FixtureSource(path)


def _walk_field_path(payload, field_path: str):
    node = payload
    for part in field_path.split("."):
        if isinstance(node, list):
            node = node[int(part)]
        elif isinstance(node, dict):
            node = node[part]
        else:
            raise KeyError(part)
    return node


class WebSource(HitSource):
    """Hit counts from an HTTP search endpoint, cached and rate limited.

    The endpoint contract is one GET per query: ``url_template`` carries a
    ``{query}`` placeholder (and optionally ``{key}``, filled from the
    environment variable named by ``api_key_env``), and the JSON response
    holds the count under the dotted ``count_field`` path.

    The persistent cache is consulted before any network traffic; cached
    counts are a snapshot and never expire unless ``max_age`` (seconds)
    is given. Outbound requests are serialized and spaced at least
    1/rate_limit seconds apart, so any one-second window sees at most
    ``rate_limit`` requests. Cache writes go to a temp file first and are
    renamed into place.
    """

    def __init__(
        self,
        url_template: str,
        count_field: str,
        cache_path=None,
        rate_limit: float = 1.0,
        api_key_env: str = "COOCCURNET_API_KEY",
        total: int | None = None,
        max_retries: int = 3,
        max_age: float | None = None,
        session=None,
        clock=time.monotonic,
        sleep=time.sleep,
        now=None,
    ):
        if "{query}" not in url_template:
            raise ConfigError("url_template must contain a {query} placeholder")
        if rate_limit <= 0:
            raise ConfigError(f"rate_limit must be positive, got {rate_limit}")
        self.url_template = url_template
        self.count_field = count_field
        self.cache_path = Path(cache_path) if cache_path else None
        self.rate_limit = rate_limit
        self.max_retries = max_retries
        self.max_age = max_age
        self._session = session if session is not None else requests.Session()
        self._clock = clock
        self._sleep = sleep
        self._now = now or (lambda: datetime.now(timezone.utc))
        self._last_request_at: float | None = None
        # Serializes outbound traffic so the rate limit holds across threads.
        self._lock = threading.Lock()
        self._api_key = None
        if "{key}" in url_template:
            self._api_key = os.environ.get(api_key_env)
            if not self._api_key:
                raise ConfigError(f"url_template needs an API key but ${api_key_env} is not set")
        self._total = total
        self._counts: dict[str, int] = {}
        self._retrieved_at: dict[str, str] = {}
        if self.cache_path and self.cache_path.exists():
            cached_total, self._counts, self._retrieved_at = _load_counts_file(self.cache_path)
            if self._total is None:
                self._total = cached_total

    def total(self) -> int | None:
        return self._total

    def count(self, query: Query) -> int:
        canonical = query.canonical
        with self._lock:
            cached = self._cached_count(canonical)
            if cached is not None:
                return cached
            count = self._fetch(canonical)
            self._counts[canonical] = count
            self._retrieved_at[canonical] = self._now().isoformat()
            self._persist()
            return count

    def _cached_count(self, canonical: str) -> int | None:
        if canonical not in self._counts:
            return None
        if self.max_age is not None:
            stamp = self._retrieved_at.get(canonical)
            if stamp is None:
                return None
            age = (self._now() - datetime.fromisoformat(stamp)).total_seconds()
            if age > self.max_age:
                return None
        return self._counts[canonical]

    def _wait_for_slot(self):
        # Pad the spacing by a nanosecond so float rounding can never pack
        # rate_limit+1 requests into a one-second window.
        interval = 1.0 / self.rate_limit + 1e-9
        if self._last_request_at is not None:
            elapsed = self._clock() - self._last_request_at
            if elapsed < interval:
                self._sleep(interval - elapsed)
        self._last_request_at = self._clock()

    def _fetch(self, canonical: str) -> int:
        url = self.url_template.replace("{query}", quote(canonical, safe=""))
        if self._api_key is not None:
            url = url.replace("{key}", quote(self._api_key, safe=""))
        failures = []
        for _ in range(self.max_retries):
            self._wait_for_slot()
            try:
                response = self._session.get(url, timeout=30)
            except requests.RequestException as exc:
                failures.append(str(exc))
                continue
            status = getattr(response, "status_code", 200)
            if status == 429:
                raise RateLimitError(f"endpoint rejected query {canonical!r} with HTTP 429")
            if status >= 500:
                failures.append(f"HTTP {status}")
                continue
            if status >= 400:
                raise ProtocolError(f"endpoint answered HTTP {status} for query {canonical!r}")
            return self._parse_count(response, canonical)
        raise RetryableSourceError(
            f"query {canonical!r} failed after {self.max_retries} attempts: {'; '.join(failures)}"
        )

    def _parse_count(self, response, canonical: str) -> int:
        try:
            payload = response.json()
        except ValueError as exc:
            raise ProtocolError(f"non-JSON response for query {canonical!r}: {exc}") from exc
        try:
            raw = _walk_field_path(payload, self.count_field)
        except (KeyError, IndexError, TypeError, ValueError):
            raise ProtocolError(
                f"response for query {canonical!r} has no field {self.count_field!r}"
            ) from None
        try:
            count = int(str(raw).replace(",", ""))
        except ValueError:
            raise ProtocolError(
                f"count field for query {canonical!r} is not numeric: {raw!r}"
            ) from None
        if count < 0:
            raise ProtocolError(f"negative count for query {canonical!r}: {count}")
        return count

    def _persist(self):
        if not self.cache_path:
            return
        payload = {
            "total": self._total,
            "counts": dict(sorted(self._counts.items())),
            "retrieved_at": dict(sorted(self._retrieved_at.items())),
        }
        text = json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
        self.cache_path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.cache_path.parent, prefix=".cache-", suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as handle:
                handle.write(text)
            os.replace(tmp, self.cache_path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise


def web_source(url_template, count_field, **kwargs) -> WebSource:
    return WebSource(url_template, count_field, **kwargs)
