"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines as
they go by.
"""

import json
import math
import random
import time
from contextlib import contextmanager

import pytest

from _oracles import brute_force_rules
from conftest import FIX5_TEXTS, FakeClock, StubResponse, StubSession
from cooccurnet.behavior import Transaction, mine_rules
from cooccurnet.corpus import corpus_from_texts, ingest_directory
from cooccurnet.engine import (
    CONJUNCTIVE,
    PHRASE,
    Term,
    build_index,
    doubleton_event,
    load_index,
    probability_doubleton,
    probability_singleton,
    save_index,
    singleton_event,
)
from cooccurnet.errors import MissingFixtureError
from cooccurnet.hitsource import FixtureSource, LocalSource, WebSource
from cooccurnet.measures import CountTriple, MeasureKind, cosine, dice, jaccard, overlap, pmi
from cooccurnet.network import Actor, build_network, export_graph, relation_strength


@contextmanager
def criterion(line):
    try:
        yield
    except BaseException:
        print(f"FAIL {line}")
        raise
    print(f"PASS {line}")


# --- randomized corpus sweep shared by criteria 2 and 3 --------------------

VOCAB = [f"t{i:02d}" for i in range(50)]


def _oracle_singleton(docs, tokens, mode):
    """Naive full scan: per-document predicate, no index involved."""
    matched = set()
    k = len(tokens)
    for doc_id, doc_tokens, token_set in docs:
        if mode == CONJUNCTIVE or k == 1:
            ok = all(tok in token_set for tok in tokens)
        else:
            n = len(doc_tokens)
            ok = any(doc_tokens[i : i + k] == tokens for i in range(n - k + 1))
        if ok:
            matched.add(doc_id)
    return matched


def _random_term_tokens(rng):
    k = rng.randint(1, 3)
    tokens = [rng.choice(VOCAB) for _ in range(k)]
    if rng.random() < 0.08:
        tokens[rng.randrange(k)] = "zz9"  # out-of-vocabulary token
    return tuple(tokens)


@pytest.fixture(scope="module")
def corpus_sweep():
    rng = random.Random(0xC0FFEE)
    stats = {
        "corpora": 0,
        "queries": 0,
        "cardinality_mismatches": 0,
        "probability_violations": 0,
        "mode_violations": 0,
    }
    started = time.perf_counter()
    for _ in range(1000):
        n_docs = rng.randint(1, 200) if rng.random() < 0.15 else rng.randint(1, 40)
        texts = {}
        for i in range(n_docs):
            length = rng.randint(0, 20)
            texts[f"d{i:03d}"] = " ".join(rng.choice(VOCAB) for _ in range(length))
        corpus = corpus_from_texts(texts)
        space = build_index(corpus)
        docs = [(d.doc_id, d.tokens, frozenset(d.tokens)) for d in corpus]
        total = space.total_docs
        stats["corpora"] += 1

        oracle_cache = {}

        def oracle(tokens, mode):
            key = (tokens, mode)
            if key not in oracle_cache:
                oracle_cache[key] = _oracle_singleton(docs, tokens, mode)
            return oracle_cache[key]

        terms = [_random_term_tokens(rng) for _ in range(3)]
        cards = {}
        for tokens in terms:
            for mode in (PHRASE, CONJUNCTIVE):
                term = Term(tokens=tokens, mode=mode)
                event = singleton_event(space, term)
                stats["queries"] += 1
                if set(event.doc_ids) != oracle(tokens, mode):
                    stats["cardinality_mismatches"] += 1
                cards[(tokens, mode)] = event.cardinality
                p = probability_singleton(space, term)
                if not 0.0 <= p <= 1.0:
                    stats["probability_violations"] += 1
            if cards[(tokens, PHRASE)] > cards[(tokens, CONJUNCTIVE)]:
                stats["mode_violations"] += 1

        t_x, t_y = terms[0], terms[1]
        if t_x != t_y:
            for mode in (PHRASE, CONJUNCTIVE):
                event = doubleton_event(
                    space, Term(tokens=t_x, mode=mode), Term(tokens=t_y, mode=mode)
                )
                stats["queries"] += 1
                if set(event.doc_ids) != oracle(t_x, mode) & oracle(t_y, mode):
                    stats["cardinality_mismatches"] += 1
                p_pair = probability_doubleton(
                    space, Term(tokens=t_x, mode=mode), Term(tokens=t_y, mode=mode)
                )
                p_x = cards[(t_x, mode)] / total
                p_y = cards[(t_y, mode)] / total
                if not 0.0 <= p_pair <= 1.0 or p_pair > min(p_x, p_y) + 1e-15:
                    stats["probability_violations"] += 1
    stats["elapsed"] = time.perf_counter() - started
    return stats


def test_criterion_1_fixture_exact_jaccard(recorded_hits_path):
    started = time.perf_counter()
    source = FixtureSource(recorded_hits_path)
    shahrul = Actor.from_strings("shahrul", "Shahrul Azman Noah")
    opim = Actor.from_strings("opim", "Opim Salim Sitompul")
    quoted = relation_strength(source, shahrul, opim, kind=MeasureKind.JACCARD, mode=PHRASE)
    unquoted = relation_strength(source, shahrul, opim, kind=MeasureKind.JACCARD, mode=CONJUNCTIVE)
    elapsed = time.perf_counter() - started
    with criterion(
        f"criterion 1: fixture-exact jaccard 61/8269 and 218/22782 within 1e-12 ({elapsed:.3f}s)"
    ):
        assert quoted.r_p == pytest.approx(61 / 8269, abs=1e-12)
        assert {quoted.counts.n_x, quoted.counts.n_y} == {2680, 5650}
        assert quoted.counts.n_xy == 61
        assert unquoted.r_p == pytest.approx(218 / 22782, abs=1e-12)
        assert {unquoted.counts.n_x, unquoted.counts.n_y} == {20000, 3000}
        assert unquoted.counts.n_xy == 218
        assert elapsed < 1.0


def test_criterion_2_oracle_equivalence(corpus_sweep):
    with criterion(
        "criterion 2: {corpora} corpora / {queries} queries match the full-scan oracle "
        "({elapsed:.1f}s)".format(**corpus_sweep)
    ):
        assert corpus_sweep["corpora"] >= 1000
        assert corpus_sweep["cardinality_mismatches"] == 0
        assert corpus_sweep["elapsed"] < 60.0


def test_criterion_3_probability_bounds(corpus_sweep):
    with criterion(
        "criterion 3: probability bounds and phrase<=conjunctive over the sweep"
    ):
        assert corpus_sweep["probability_violations"] == 0
        assert corpus_sweep["mode_violations"] == 0


def test_criterion_4_measure_properties():
    rng = random.Random(424242)
    checked = 0
    for _ in range(10_000):
        n_x = rng.randint(0, 1000)
        n_y = rng.randint(0, 1000)
        n_xy = rng.randint(0, min(n_x, n_y))
        c = CountTriple(n_x=n_x, n_y=n_y, n_xy=n_xy)
        swapped = c.swapped()
        for fn in (jaccard, dice, overlap, cosine):
            value = fn(c)
            assert 0.0 <= value <= 1.0
            assert abs(value - fn(swapped)) <= 1e-12
        assert overlap(c) >= dice(c) - 1e-12
        assert dice(c) >= jaccard(c) - 1e-12
        if n_xy < min(n_x, n_y):
            bumped = CountTriple(n_x=n_x, n_y=n_y, n_xy=n_xy + 1)
            for fn in (jaccard, dice, overlap, cosine):
                assert fn(bumped) >= fn(c) - 1e-12
        checked += 1
    with criterion(f"criterion 4: measure properties over {checked} random triples + spot values"):
        assert checked >= 10_000
        assert jaccard(CountTriple(3, 3, 2)) == 0.5
        assert dice(CountTriple(3, 3, 2)) == pytest.approx(2 / 3, abs=1e-12)
        assert pmi(CountTriple(3, 3, 2, total=5)) == pytest.approx(math.log2(10 / 9), abs=1e-9)


def _oracle_jaccard(names, texts, x, y):
    """Independent r_p: scan texts for single-token names, apply the formula."""
    docs_x = {d for d, text in texts.items() if x in text.split()}
    docs_y = {d for d, text in texts.items() if y in text.split()}
    inter = len(docs_x & docs_y)
    denom = len(docs_x) + len(docs_y) - inter
    return inter / denom if denom else 0.0


def test_criterion_5_network_invariants(fix5_space):
    rng = random.Random(555)
    cases = 0
    for _ in range(30):
        n_actors = rng.randint(1, 12)
        names = [f"p{i:02d}" for i in range(n_actors)]
        n_docs = rng.randint(1, 60)
        texts = {}
        for i in range(n_docs):
            members = [n for n in names if rng.random() < 0.25]
            filler = [rng.choice(VOCAB) for _ in range(rng.randint(0, 5))]
            texts[f"d{i:03d}"] = " ".join(members + filler)
        space = build_index(corpus_from_texts(texts))
        source = LocalSource(space)
        actors = [Actor.from_strings(n, n) for n in names]
        theta1, theta2 = sorted((rng.choice([0.0, 0.1, 0.3]), rng.choice([0.0, 0.2, 0.5])))
        net1 = build_network(actors, source, kind=MeasureKind.JACCARD, threshold=theta1)
        net2 = build_network(actors, source, kind=MeasureKind.JACCARD, threshold=theta2)

        # gamma1 bijective
        assert len(net1.vertices) == n_actors
        assert len(set(net1.gamma1.values())) == n_actors
        assert {v.actor_id for v in net1.vertices} == set(names)

        # edges are exactly the dyads whose independently recomputed
        # strength clears the threshold
        for net, theta in ((net1, theta1), (net2, theta2)):
            expected = set()
            for i, x in enumerate(names):
                for y in names[i + 1 :]:
                    r_p = _oracle_jaccard(names, texts, x, y)
                    if r_p > theta:
                        key = tuple(sorted((net.gamma1[x], net.gamma1[y])))
                        expected.add((key, round(r_p, 12)))
            got = {((e.source, e.target), round(e.weight, 12)) for e in net.edges}
            assert got == expected

        # threshold monotonicity
        edges1 = {(e.source, e.target) for e in net1.edges}
        edges2 = {(e.source, e.target) for e in net2.edges}
        assert edges2 <= edges1
        cases += 1

    fix5 = LocalSource(fix5_space)
    actors = [
        Actor.from_strings("a", "alice"),
        Actor.from_strings("b", "bob"),
        Actor.from_strings("c", "carol"),
    ]
    net_zero = build_network(actors, fix5, kind=MeasureKind.JACCARD, threshold=0.0)
    net_tight = build_network(actors, fix5, kind=MeasureKind.JACCARD, threshold=0.55)
    with criterion(f"criterion 5: network invariants over {cases} random actor sets + FIX5"):
        assert cases == 30
        assert len(net_zero.edges) == 3
        assert all(e.weight == pytest.approx(0.5, abs=1e-12) for e in net_zero.edges)
        assert len(net_tight.edges) == 0


def test_criterion_6_association_rules(fix5_space):
    rng = random.Random(666)
    items = ["b0", "b1", "b2", "b3", "b4", "b5"]
    cases = 0
    for _ in range(220):
        universe = items[: rng.randint(1, 6)]
        n_tx = rng.randint(1, 32)
        transactions = [
            Transaction(f"d{i}", frozenset(b for b in universe if rng.random() < 0.4))
            for i in range(n_tx)
        ]
        minsup = rng.choice([0.0, 0.1, 0.3, 0.6])
        minconf = rng.choice([0.0, 0.5, 0.9])
        cap = rng.randint(1, 3)
        mined = {
            (r.antecedent, r.consequent, r.support, r.confidence, r.holds)
            for r in mine_rules(transactions, minsup=minsup, minconf=minconf, max_itemset_size=cap)
        }
        expected = set(brute_force_rules(transactions, minsup, minconf, cap))
        assert mined == expected
        cases += 1

    from cooccurnet.behavior import transactions_from_corpus

    fix5_tx = transactions_from_corpus(
        fix5_space,
        [Term.parse(n, mode=CONJUNCTIVE) for n in ("alice", "bob", "carol")],
    )
    rules = mine_rules(fix5_tx, minsup=0.1, minconf=0.5)
    rule = next(
        r
        for r in rules
        if r.antecedent == frozenset({"alice"}) and r.consequent == frozenset({"bob"})
    )
    with criterion(f"criterion 6: mine_rules equals brute force on {cases} cases + FIX5 rule"):
        assert cases >= 200
        assert rule.support == pytest.approx(0.4, abs=1e-12)
        assert rule.confidence == pytest.approx(2 / 3, abs=1e-12)


def test_criterion_7_end_to_end_determinism(tmp_path):
    fix5 = tmp_path / "fix5"
    fix5.mkdir()
    for doc_id, text in FIX5_TEXTS.items():
        (fix5 / f"{doc_id}.txt").write_text(text, encoding="utf-8")
    actors = [
        Actor.from_strings("a", "alice", mode=CONJUNCTIVE),
        Actor.from_strings("b", "bob", mode=CONJUNCTIVE),
        Actor.from_strings("c", "carol", mode=CONJUNCTIVE),
    ]

    outputs = []
    for run in ("one", "two"):
        corpus = ingest_directory(fix5)
        space = build_index(corpus)
        net = build_network(actors, LocalSource(space), mode=CONJUNCTIVE)
        out = tmp_path / f"net-{run}.json"
        export_graph(net, "json", out)
        outputs.append(out.read_bytes())

    corpus = ingest_directory(fix5)
    space = build_index(corpus)
    snap = tmp_path / "index.json"
    save_index(space, snap)
    loaded = load_index(snap)
    tokens = sorted(space.vocabulary)
    preserved = True
    for tok in tokens:
        for mode in (PHRASE, CONJUNCTIVE):
            t = Term.parse(tok, mode=mode)
            if singleton_event(space, t) != singleton_event(loaded, t):
                preserved = False
    for t_x, t_y in zip(tokens, tokens[1:]):
        pair = (Term.parse(t_x, mode=CONJUNCTIVE), Term.parse(t_y, mode=CONJUNCTIVE))
        if doubleton_event(space, *pair) != doubleton_event(loaded, *pair):
            preserved = False

    with criterion("criterion 7: byte-identical exports and lossless snapshot round trip"):
        assert outputs[0] == outputs[1]
        assert preserved


def test_criterion_8_web_client_contract(tmp_path, recorded_hits_path):
    cache = tmp_path / "cache.json"
    clock = FakeClock()
    session = StubSession([StubResponse({"hits": 218})])
    source = WebSource(
        url_template="https://search.example/api?q={query}",
        count_field="hits",
        cache_path=cache,
        rate_limit=4.0,
        session=session,
        clock=clock,
        sleep=clock.sleep,
    )
    assert source.count_term("alice", mode=PHRASE) == 218
    calls_after_fill = len(session.calls)

    # cache hit: a fresh client over the same cache file issues no requests
    session2 = StubSession([StubResponse({"hits": 999})])
    clock2 = FakeClock()
    source2 = WebSource(
        url_template="https://search.example/api?q={query}",
        count_field="hits",
        cache_path=cache,
        rate_limit=4.0,
        session=session2,
        clock=clock2,
        sleep=clock2.sleep,
    )
    cached_value = source2.count_term("alice", mode=PHRASE)

    # rate limit: 12 distinct queries through a stubbed clock
    stamps = []
    original_get = session2.get

    def stamped_get(url, timeout=None):
        stamps.append(clock2())
        return original_get(url, timeout=timeout)

    session2.get = stamped_get
    for i in range(12):
        source2.count_term(f"name{i}", mode=PHRASE)
    max_in_window = max(
        sum(1 for s in stamps if start <= s < start + 1.0) for start in stamps
    )

    fixture = FixtureSource(recorded_hits_path)
    with criterion("criterion 8: cache hit without requests, rate cap, unmapped fixture errors"):
        assert calls_after_fill == 1
        assert cached_value == 218
        assert len(session2.calls) == 0 + 12  # only the 12 misses, no call for the hit
        assert max_in_window <= 4
        with pytest.raises(MissingFixtureError):
            fixture.count_term("someone never recorded", mode=PHRASE)
