"""Search-engine model over a corpus: index, events, probabilities.

A term queried against the index yields an event: the set of documents
relevant to it. Two distinct terms yield the intersection event. Document
counts divided by the corpus size give the event probabilities.

Two match modes exist because quoted and unquoted queries behave
differently on real engines: ``phrase`` requires the tokens contiguously
in order, ``conjunctive`` requires each token somewhere in the document.
"""

from __future__ import annotations

import json
from array import array
from dataclasses import dataclass, field
from pathlib import Path

from cooccurnet import kernels
from cooccurnet.corpus import Corpus, Document, tokenize
from cooccurnet.errors import (
    DegeneratePairError,
    EmptySpaceError,
    IngestError,
    InvalidTermError,
)

PHRASE = "phrase"
CONJUNCTIVE = "conjunctive"
MODES = (PHRASE, CONJUNCTIVE)


@dataclass(frozen=True)
class Term:
    """A search term: normalized token sequence plus match mode.

    Identity (equality, hashing) is on (tokens, mode) only; the raw
    source string is kept for display. Same tokens under different modes
    are different terms.
    """

    tokens: tuple[str, ...]
    mode: str = PHRASE
    raw: str = field(default="", compare=False)

    def __post_init__(self):
        if not self.tokens:
            raise InvalidTermError(f"term {self.raw!r} has no tokens")
        if self.mode not in MODES:
            raise InvalidTermError(f"unknown term mode {self.mode!r}")

    @classmethod
    def parse(cls, raw: str, mode: str = PHRASE) -> "Term":
        return cls(tokens=tuple(tokenize(raw)), mode=mode, raw=raw)

    @property
    def size(self) -> int:
        return len(self.tokens)

    @property
    def text(self) -> str:
        return " ".join(self.tokens)

    def with_mode(self, mode: str) -> "Term":
        if mode == self.mode:
            return self
        return Term(tokens=self.tokens, mode=mode, raw=self.raw)


def as_term(value, mode: str = PHRASE) -> Term:
    """Coerce a Term, raw string, or token sequence into a Term."""
    if isinstance(value, Term):
        return value
    if isinstance(value, str):
        return Term.parse(value, mode=mode)
    try:
        tokens = tuple(value)
    except TypeError:
        raise InvalidTermError(f"cannot interpret {value!r} as a term")
    return Term(tokens=tokens, mode=mode, raw=" ".join(tokens))


class EventSpace:
    """Positional inverted index plus the total document count.

    Immutable once built; repeated queries return identical results.
    Posting lists are kept as int64 doc-index arrays (sorted, which is
    also doc_id order) with parallel per-document position arrays, so
    the intersection kernels can run on them directly.
    """

    def __init__(self, doc_ids, docs_by_token, positions_by_token, source=""):
        self.doc_ids: tuple[str, ...] = tuple(doc_ids)
        self.total_docs: int = len(self.doc_ids)
        self.source = source
        self._docs = docs_by_token
        self._positions = positions_by_token
        self._empty = array("q")

    @property
    def vocabulary(self) -> frozenset[str]:
        return frozenset(self._docs)

    def doc_array(self, token: str):
        return self._docs.get(token, self._empty)

    def position_arrays(self, token: str):
        return self._positions.get(token, ())

    def postings(self, token: str) -> list[tuple[str, tuple[int, ...]]]:
        """Posting list for one token as (doc_id, positions) pairs."""
        docs = self._docs.get(token)
        if docs is None:
            return []
        pos = self._positions[token]
        return [(self.doc_ids[d], tuple(p)) for d, p in zip(docs, pos)]

    def all_postings(self) -> dict[str, list[tuple[str, tuple[int, ...]]]]:
        return {token: self.postings(token) for token in sorted(self._docs)}

    def __repr__(self):
        return f"EventSpace(total_docs={self.total_docs}, vocabulary={len(self._docs)})"


@dataclass(frozen=True)
class EventSet:
    """Result of a singleton or doubleton query: the matching documents."""

    terms: tuple[Term, ...]
    doc_ids: tuple[str, ...]

    @property
    def cardinality(self) -> int:
        return len(self.doc_ids)


def build_index(corpus: Corpus) -> EventSpace:
    """Index a corpus: token -> sorted doc indices with sorted positions."""
    docs_by_token: dict[str, array] = {}
    positions_by_token: dict[str, list] = {}
    for doc_index, doc in enumerate(corpus):
        for pos, token in enumerate(doc.tokens):
            docs = docs_by_token.get(token)
            if docs is None:
                docs_by_token[token] = array("q", [doc_index])
                positions_by_token[token] = [array("q", [pos])]
            elif docs[-1] != doc_index:
                docs.append(doc_index)
                positions_by_token[token].append(array("q", [pos]))
            else:
                positions_by_token[token][-1].append(pos)
    return EventSpace(
        doc_ids=(d.doc_id for d in corpus),
        docs_by_token=docs_by_token,
        positions_by_token=positions_by_token,
        source=corpus.source,
    )


def relevance(doc: Document, term: Term) -> bool:
    """Per-document predicate: is this document relevant to the term?

    Works directly on the token stream, independent of any index.
    """
    tokens = doc.tokens
    if term.mode == CONJUNCTIVE:
        present = set(tokens)
        return all(t in present for t in term.tokens)
    k = term.size
    want = term.tokens
    return any(tokens[i : i + k] == want for i in range(len(tokens) - k + 1))


def _singleton_doc_array(space: EventSpace, term: Term):
    """Sorted doc-index array of the documents matching one term."""
    token_docs = [space.doc_array(t) for t in term.tokens]
    if any(len(d) == 0 for d in token_docs):
        return array("q")
    # Intersect doc arrays, cheapest lists first.
    order = sorted(range(len(token_docs)), key=lambda i: len(token_docs[i]))
    docs = token_docs[order[0]]
    for i in order[1:]:
        docs = kernels.intersect_sorted(docs, token_docs[i])
        if not docs:
            return docs
    if term.mode == CONJUNCTIVE or term.size == 1:
        return docs
    # Phrase mode: keep candidates whose positions line up contiguously.
    per_token_positions = []
    for t in term.tokens:
        tok_docs = space.doc_array(t)
        lookup = {d: p for d, p in zip(tok_docs, space.position_arrays(t))}
        per_token_positions.append(lookup)
    matched = array("q")
    for d in docs:
        run = per_token_positions[0][d]
        for i in range(1, term.size):
            run = kernels.offset_intersect(run, per_token_positions[i][d], i)
            if not run:
                break
        if run:
            matched.append(d)
    return matched


def singleton_event(space: EventSpace, term: Term) -> EventSet:
    """Documents relevant to one term; equals a full relevance scan."""
    if not isinstance(term, Term):
        term = as_term(term)
    docs = _singleton_doc_array(space, term)
    return EventSet(terms=(term,), doc_ids=tuple(space.doc_ids[d] for d in docs))


def doubleton_event(space: EventSpace, t_x: Term, t_y: Term) -> EventSet:
    """Documents relevant to both of two distinct terms; symmetric."""
    t_x, t_y = as_term(t_x), as_term(t_y)
    if t_x == t_y:
        raise DegeneratePairError(f"doubleton needs two distinct terms, got {t_x.text!r} twice")
    docs = kernels.intersect_sorted(
        _singleton_doc_array(space, t_x), _singleton_doc_array(space, t_y)
    )
    first, second = sorted((t_x, t_y), key=lambda t: (t.tokens, t.mode))
    return EventSet(terms=(first, second), doc_ids=tuple(space.doc_ids[d] for d in docs))


def probability_singleton(space: EventSpace, term: Term) -> float:
    """Share of indexed documents relevant to the term."""
    if space.total_docs == 0:
        raise EmptySpaceError("probability undefined over an empty document space")
    return singleton_event(space, term).cardinality / space.total_docs


def probability_doubleton(space: EventSpace, t_x: Term, t_y: Term) -> float:
    """Share of indexed documents relevant to both terms."""
    if space.total_docs == 0:
        raise EmptySpaceError("probability undefined over an empty document space")
    return doubleton_event(space, t_x, t_y).cardinality / space.total_docs


def clusters_disjoint(space: EventSpace, t_x: Term, t_y: Term) -> bool:
    """True iff the two terms share no documents.

    Distinct terms may or may not overlap, so this is a runtime check,
    not an assumption.
    """
    return doubleton_event(space, t_x, t_y).cardinality == 0


def save_index(space: EventSpace, path) -> None:
    """Persist the index as a JSON snapshot (deterministic layout)."""
    snapshot = {
        "total_docs": space.total_docs,
        "source": space.source,
        "doc_ids": list(space.doc_ids),
        "postings": {
            token: [[doc_id, list(positions)] for doc_id, positions in plist]
            for token, plist in space.all_postings().items()
        },
    }
    Path(path).write_text(
        json.dumps(snapshot, indent=2, sort_keys=True, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )


def load_index(path) -> EventSpace:
    """Rebuild an EventSpace from a snapshot written by save_index."""
    try:
        snapshot = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise IngestError(f"cannot load index snapshot {path}: {exc}") from exc
    try:
        doc_ids = list(snapshot["doc_ids"])
        index = {doc_id: i for i, doc_id in enumerate(doc_ids)}
        docs_by_token = {}
        positions_by_token = {}
        for token, plist in snapshot["postings"].items():
            docs_by_token[token] = array("q", (index[doc_id] for doc_id, _ in plist))
            positions_by_token[token] = [array("q", positions) for _, positions in plist]
        space = EventSpace(
            doc_ids=doc_ids,
            docs_by_token=docs_by_token,
            positions_by_token=positions_by_token,
            source=snapshot.get("source", ""),
        )
        if space.total_docs != snapshot["total_docs"]:
            raise IngestError(f"snapshot {path} is inconsistent: total_docs mismatch")
    except (KeyError, TypeError, ValueError) as exc:
        raise IngestError(f"snapshot {path} is malformed: {exc}") from exc
    return space
