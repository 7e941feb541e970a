"""Social network extraction from occurrence/co-occurrence hit counts.

Pipeline: ingest a corpus, index it into an event space, ask a hit
source (local index, recorded fixture, or web search API) for singleton
and doubleton counts, turn the counts into similarity strengths, and
materialize the thresholded graph with exportable vertex/edge mappings.
"""

from cooccurnet.corpus import Corpus, Document, corpus_from_texts, ingest_directory, ingest_jsonl, tokenize
from cooccurnet.engine import (
    CONJUNCTIVE,
    PHRASE,
    EventSet,
    EventSpace,
    Term,
    build_index,
    clusters_disjoint,
    doubleton_event,
    load_index,
    probability_doubleton,
    probability_singleton,
    relevance,
    save_index,
    singleton_event,
)
from cooccurnet.measures import CountTriple, MeasureKind, all_strengths, strength
from cooccurnet.network import Actor, Relation, SocialNetwork, build_network, export_graph
from cooccurnet.hitsource import (
    FixtureSource,
    HitSource,
    LocalSource,
    Query,
    WebSource,
    canonical_query,
)
from cooccurnet.behavior import (
    AssociationRule,
    ClusterBehavior,
    PairBehavior,
    Transaction,
    cluster_behavior,
    mine_rules,
    mode_contrast,
    pair_behavior,
    transactions_from_corpus,
)

__version__ = "0.1.0"
