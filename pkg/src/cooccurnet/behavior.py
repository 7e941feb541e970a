"""Behavior reports over clusters and dyads, plus association rule mining.

A cluster's behavior is its statistics vector: cardinality, probability,
the quoted/unquoted count contrast, and the top co-occurring terms from a
candidate set. A dyad's behavior is one consistent count triple with all
five similarity measures computed from it. Association rules run over
per-document transactions of attribute terms.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from cooccurnet import engine, measures
from cooccurnet.engine import CONJUNCTIVE, PHRASE, EventSpace, Term, as_term
from cooccurnet.errors import ConfigError, EmptySpaceError, InvalidTermError
from cooccurnet.hitsource import HitSource, LocalSource, Query
from cooccurnet.measures import CountTriple, MeasureKind


@dataclass(frozen=True)
class ClusterBehavior:
    """Distribution statistics of one term's document cluster."""

    term: Term
    mode: str
    cardinality: int
    probability: float
    quoted_count: int
    conjunctive_count: int
    quoted_ratio: float | None
    top_cooccurring: tuple[tuple[str, int], ...]

    def to_json_obj(self) -> dict:
        return {
            "term": self.term.text,
            "mode": self.mode,
            "cardinality": self.cardinality,
            "probability": self.probability,
            "quoted_count": self.quoted_count,
            "conjunctive_count": self.conjunctive_count,
            "quoted_ratio": self.quoted_ratio,
            "top_cooccurring": [[text, count] for text, count in self.top_cooccurring],
        }


@dataclass(frozen=True)
class PairBehavior:
    """One consistent count snapshot of a dyad with all five measures."""

    term_x: Term
    term_y: Term
    counts: CountTriple
    strengths: tuple[tuple[MeasureKind, float | None], ...]

    @property
    def strengths_map(self) -> dict[MeasureKind, float | None]:
        return dict(self.strengths)

    def to_json_obj(self) -> dict:
        return {
            "terms": [self.term_x.text, self.term_y.text],
            "counts": {
                "nx": self.counts.n_x,
                "ny": self.counts.n_y,
                "nxy": self.counts.n_xy,
                "total": self.counts.total,
            },
            "measures": {kind.value: value for kind, value in self.strengths},
        }


@dataclass(frozen=True)
class ModeContrast:
    """Counts of the same tokens under unquoted and quoted querying."""

    tokens: tuple[str, ...]
    conjunctive_count: int
    phrase_count: int
    ratio: float | None

    def to_json_obj(self) -> dict:
        return {
            "term": " ".join(self.tokens),
            "conjunctive_count": self.conjunctive_count,
            "phrase_count": self.phrase_count,
            "ratio": self.ratio,
        }


def cluster_behavior(space: EventSpace, term, candidates=()) -> ClusterBehavior:
    """Statistics of one term's cluster, ranked against candidate co-terms.

    Candidates equal to the term itself are skipped; candidates that
    never co-occur are omitted from the ranking.
    """
    if space.total_docs == 0:
        raise EmptySpaceError("cluster behavior undefined over an empty document space")
    term = as_term(term)
    event = engine.singleton_event(space, term)
    quoted = engine.singleton_event(space, term.with_mode(PHRASE)).cardinality
    conjunctive = engine.singleton_event(space, term.with_mode(CONJUNCTIVE)).cardinality
    ranked = []
    for candidate in (as_term(c) for c in candidates):
        if candidate == term:
            continue
        n_xy = engine.doubleton_event(space, term, candidate).cardinality
        if n_xy > 0:
            ranked.append((candidate.text, n_xy))
    ranked.sort(key=lambda item: (-item[1], item[0]))
    return ClusterBehavior(
        term=term,
        mode=term.mode,
        cardinality=event.cardinality,
        probability=event.cardinality / space.total_docs,
        quoted_count=quoted,
        conjunctive_count=conjunctive,
        quoted_ratio=(quoted / conjunctive) if conjunctive else None,
        top_cooccurring=tuple(ranked),
    )


def pair_behavior_from_source(source: HitSource, x, y, mode: str | None = None) -> PairBehavior:
    """Dyad behavior from any hit source; one snapshot feeds all measures."""
    t_x = as_term(getattr(x, "name", x))
    t_y = as_term(getattr(y, "name", y))
    if mode is None:
        mode = t_x.mode
    query = Query.of((t_x, t_y), mode=mode)
    first, second = query.terms
    counts = CountTriple(
        n_x=source.count_term(first),
        n_y=source.count_term(second),
        n_xy=source.count(query),
        total=source.total(),
    )
    return PairBehavior(
        term_x=first,
        term_y=second,
        counts=counts,
        strengths=tuple(measures.all_strengths(counts).items()),
    )


def pair_behavior(space: EventSpace, a_k, a_l, mode: str | None = None) -> PairBehavior:
    """Dyad behavior over a local index (actors or terms accepted)."""
    return pair_behavior_from_source(LocalSource(space), a_k, a_l, mode=mode)


def mode_contrast(source: HitSource, name) -> ModeContrast:
    """Counts for the same name under both query modes on one source."""
    term = as_term(name)
    conjunctive = source.count_term(term, mode=CONJUNCTIVE)
    phrase = source.count_term(term, mode=PHRASE)
    return ModeContrast(
        tokens=term.tokens,
        conjunctive_count=conjunctive,
        phrase_count=phrase,
        ratio=(phrase / conjunctive) if conjunctive else None,
    )


@dataclass(frozen=True)
class Transaction:
    """Per-document itemset: the attribute labels relevant in that document."""

    doc_id: str
    items: frozenset[str]


@dataclass(frozen=True)
class AssociationRule:
    """Implication between disjoint attribute sets, scored on transactions."""

    antecedent: frozenset[str]
    consequent: frozenset[str]
    support: float
    confidence: float
    holds: bool

    def to_json_obj(self) -> dict:
        return {
            "antecedent": sorted(self.antecedent),
            "consequent": sorted(self.consequent),
            "support": self.support,
            "confidence": self.confidence,
            "holds": self.holds,
        }


def transactions_from_corpus(space: EventSpace, attributes) -> list[Transaction]:
    """One transaction per indexed document over the attribute terms.

    Attribute labels are the terms' token texts; duplicate terms or
    colliding labels are rejected because items must name attributes
    unambiguously.
    """
    terms = [as_term(a) for a in attributes]
    seen_terms = set()
    labels = {}
    for term in terms:
        if term in seen_terms:
            raise ConfigError(f"duplicate attribute term {term.text!r}")
        seen_terms.add(term)
        if term.text in labels:
            raise ConfigError(f"attribute label {term.text!r} is ambiguous across modes")
        labels[term.text] = term
    matching = {
        label: set(engine.singleton_event(space, term).doc_ids)
        for label, term in labels.items()
    }
    return [
        Transaction(
            doc_id=doc_id,
            items=frozenset(label for label, docs in matching.items() if doc_id in docs),
        )
        for doc_id in space.doc_ids
    ]


def _itemsets(universe: tuple[str, ...], max_size: int):
    for size in range(1, min(max_size, len(universe)) + 1):
        yield from combinations(universe, size)


def mine_rules(
    transactions,
    minsup: float = 0.1,
    minconf: float = 0.5,
    max_itemset_size: int = 2,
) -> list[AssociationRule]:
    """Enumerate scored rules between disjoint itemsets.

    support(X=>Y) is the fraction of transactions containing X and Y;
    confidence is support(X and Y)/support(X). Rules whose antecedent
    never occurs are omitted (confidence undefined). Output is sorted by
    confidence then support, descending, with a lexicographic tiebreak.
    """
    transactions = list(transactions)
    if not transactions:
        raise EmptySpaceError("cannot mine rules over zero transactions")
    for bound, name in ((minsup, "minsup"), (minconf, "minconf")):
        if not 0.0 <= bound <= 1.0:
            raise ConfigError(f"{name} must be within [0, 1], got {bound}")
    if max_itemset_size < 1:
        raise ConfigError(f"max_itemset_size must be at least 1, got {max_itemset_size}")

    total = len(transactions)
    universe = tuple(sorted(set().union(*(t.items for t in transactions))))
    hits_cache: dict[frozenset, int] = {}

    def hits_of(itemset: frozenset) -> int:
        cached = hits_cache.get(itemset)
        if cached is None:
            cached = hits_cache[itemset] = sum(1 for t in transactions if itemset <= t.items)
        return cached

    rules = []
    for antecedent in _itemsets(universe, max_itemset_size):
        x = frozenset(antecedent)
        hits_x = hits_of(x)
        if hits_x == 0:
            continue
        remaining = tuple(item for item in universe if item not in x)
        for consequent in _itemsets(remaining, max_itemset_size):
            y = frozenset(consequent)
            hits_xy = hits_of(x | y)
            support = hits_xy / total
            confidence = hits_xy / hits_x
            rules.append(
                AssociationRule(
                    antecedent=x,
                    consequent=y,
                    support=support,
                    confidence=confidence,
                    holds=(support >= minsup and confidence >= minconf),
                )
            )
    rules.sort(
        key=lambda r: (
            -r.confidence,
            -r.support,
            sorted(r.antecedent),
            sorted(r.consequent),
        )
    )
    return rules
