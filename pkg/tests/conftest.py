import json
from pathlib import Path

import pytest

from cooccurnet.corpus import corpus_from_texts
from cooccurnet.engine import build_index

# Five tiny documents, small enough for exhaustive hand verification.
FIX5_TEXTS = {
    "d1": "alice works with bob",
    "d2": "alice and carol study networks",
    "d3": "bob and carol write papers",
    "d4": "alice bob carol meet",
    "d5": "unrelated text here",
}

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def fix5_corpus():
    return corpus_from_texts(FIX5_TEXTS, source="fix5")


@pytest.fixture(scope="session")
def fix5_space(fix5_corpus):
    return build_index(fix5_corpus)


@pytest.fixture
def fix5_dir(tmp_path):
    root = tmp_path / "fix5"
    root.mkdir()
    for doc_id, text in FIX5_TEXTS.items():
        (root / f"{doc_id}.txt").write_text(text, encoding="utf-8")
    return root


@pytest.fixture(scope="session")
def recorded_hits_path():
    """Recorded 2016 web hit counts for two researcher names."""
    return DATA_DIR / "recorded_hits.json"


class FakeClock:
    """Deterministic clock whose sleep() advances time instead of waiting."""

    def __init__(self, start=0.0):
        self.now = start

    def __call__(self):
        return self.now

    def sleep(self, seconds):
        self.now += seconds


class StubResponse:
    def __init__(self, payload=None, status_code=200, text=""):
        self._payload = payload
        self.status_code = status_code
        self.text = text

    def json(self):
        if self._payload is None:
            raise ValueError("no JSON payload")
        return self._payload


class StubSession:
    """Canned HTTP session recording every GET it serves.

    ``script`` is a list whose entries are StubResponse objects or
    exceptions to raise; the last entry repeats once exhausted.
    """

    def __init__(self, script):
        self.script = list(script)
        self.calls = []

    def get(self, url, timeout=None):
        self.calls.append(url)
        step = self.script.pop(0) if len(self.script) > 1 else self.script[0]
        if isinstance(step, Exception):
            raise step
        return step


@pytest.fixture
def fake_clock():
    return FakeClock()
