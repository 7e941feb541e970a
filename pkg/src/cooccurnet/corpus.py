"""Document ingestion and tokenization.

Everything downstream counts over the token streams produced here, so the
rules are deliberately rigid: lowercase, NFC-normalize, then split on any
non-alphanumeric character. No stemming and no stopword removal, because
actor name tokens must survive verbatim.
"""

from __future__ import annotations

import json
import re
import unicodedata
from dataclasses import dataclass
from pathlib import Path

from cooccurnet.errors import IngestError

# Runs of Unicode letters/digits; underscore is treated as punctuation.
_TOKEN_RE = re.compile(r"[^\W_]+")


def tokenize(text: str) -> list[str]:
    """Split text into normalized tokens.

    The token at list index i has position i. Normalization is
    lowercase followed by NFC (composition must happen before the split
    so combining marks do not sever a token).
    """
    if not isinstance(text, str):
        raise IngestError(f"expected text as str, got {type(text).__name__}")
    normalized = unicodedata.normalize("NFC", text.lower())
    return _TOKEN_RE.findall(normalized)


@dataclass(frozen=True)
class Document:
    """One indexed text unit: identifier plus normalized token stream."""

    doc_id: str
    text: str
    tokens: tuple[str, ...]

    @classmethod
    def from_text(cls, doc_id: str, text: str) -> "Document":
        return cls(doc_id=doc_id, text=text, tokens=tuple(tokenize(text)))


@dataclass(frozen=True)
class Corpus:
    """Immutable collection of documents, iterated in doc_id order."""

    documents: tuple[Document, ...]
    source: str = ""

    def __post_init__(self):
        ordered = tuple(sorted(self.documents, key=lambda d: d.doc_id))
        ids = [d.doc_id for d in ordered]
        if len(set(ids)) != len(ids):
            dup = next(i for n, i in enumerate(ids) if i in ids[:n])
            raise IngestError(f"duplicate doc_id {dup!r} in corpus")
        object.__setattr__(self, "documents", ordered)

    def __len__(self) -> int:
        return len(self.documents)

    def __iter__(self):
        return iter(self.documents)

    def get(self, doc_id: str) -> Document | None:
        for doc in self.documents:
            if doc.doc_id == doc_id:
                return doc
        return None


def corpus_from_texts(texts: dict[str, str], source: str = "") -> Corpus:
    """Build a corpus from a doc_id -> text mapping."""
    docs = tuple(Document.from_text(doc_id, text) for doc_id, text in texts.items())
    return Corpus(documents=docs, source=source)


def ingest_directory(path) -> Corpus:
    """One document per *.txt file under path; doc_id is the file stem.

    Files must be UTF-8. Zero files is an empty corpus, not an error.
    """
    root = Path(path)
    if not root.is_dir():
        raise IngestError(f"not a readable directory: {root}")
    docs = []
    for txt in sorted(root.glob("*.txt")):
        try:
            text = txt.read_text(encoding="utf-8")
        except UnicodeDecodeError as exc:
            raise IngestError(f"file {txt} is not valid UTF-8: {exc}") from exc
        except OSError as exc:
            raise IngestError(f"cannot read file {txt}: {exc}") from exc
        docs.append(Document.from_text(txt.stem, text))
    return Corpus(documents=tuple(docs), source=str(root))


def ingest_jsonl(path) -> Corpus:
    """One document per JSONL line; each line needs "id" and "text" fields."""
    src = Path(path)
    docs = []
    seen = set()
    try:
        lines = src.read_text(encoding="utf-8").splitlines()
    except UnicodeDecodeError as exc:
        raise IngestError(f"file {src} is not valid UTF-8: {exc}") from exc
    except OSError as exc:
        raise IngestError(f"cannot read file {src}: {exc}") from exc
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise IngestError(f"{src}:{lineno}: malformed JSON: {exc}") from exc
        if not isinstance(obj, dict) or "id" not in obj or "text" not in obj:
            raise IngestError(f'{src}:{lineno}: line must be an object with "id" and "text"')
        doc_id = obj["id"]
        if not isinstance(doc_id, str) or not isinstance(obj["text"], str):
            raise IngestError(f'{src}:{lineno}: "id" and "text" must be strings')
        if doc_id in seen:
            raise IngestError(f"{src}:{lineno}: duplicate id {doc_id!r}")
        seen.add(doc_id)
        docs.append(Document.from_text(doc_id, obj["text"]))
    return Corpus(documents=tuple(docs), source=str(src))
