"""Build and export the extracted social network.

Actors come in with name terms and optional attribute terms. Every
unordered pair of actors gets a relation: the three hit counts, the full
strength vector, and the chosen strength r_p. Vertices map one-to-one
from actors; an edge appears exactly when r_p exceeds the threshold.
"""

from __future__ import annotations

import json
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from pathlib import Path

from cooccurnet import engine, measures
from cooccurnet.engine import PHRASE, EventSpace, Term, as_term
from cooccurnet.errors import ConfigError, DegeneratePairError, IngestError
from cooccurnet.hitsource import HitSource
from cooccurnet.measures import CountTriple, MeasureKind

GRAPH_FORMATS = ("json", "graphml", "dot")


@dataclass(frozen=True)
class Actor:
    """A social actor: unique id, name term, optional attribute terms."""

    actor_id: str
    name: Term
    attributes: tuple[Term, ...] = ()

    @classmethod
    def from_strings(cls, actor_id, name, attributes=(), mode=PHRASE) -> "Actor":
        return cls(
            actor_id=actor_id,
            name=as_term(name, mode=mode),
            attributes=tuple(as_term(a, mode=mode) for a in attributes),
        )


@dataclass(frozen=True)
class Relation:
    """Weighted dyad between two actors, canonically ordered by actor_id."""

    actor_a: str
    actor_b: str
    counts: CountTriple
    strengths: tuple[tuple[MeasureKind, float | None], ...]
    r_p: float
    shared_attributes: frozenset[Term] = frozenset()

    @property
    def pair(self) -> tuple[str, str]:
        return (self.actor_a, self.actor_b)

    @property
    def strengths_map(self) -> dict[MeasureKind, float | None]:
        return dict(self.strengths)

    def strength_of(self, kind: MeasureKind) -> float | None:
        return self.strengths_map[MeasureKind(kind)]


@dataclass(frozen=True)
class Vertex:
    vertex_id: str
    actor_id: str
    hit_count: int
    probability: float | None


@dataclass(frozen=True)
class Edge:
    source: str
    target: str
    weight: float
    counts: CountTriple


@dataclass(frozen=True)
class NetworkConfig:
    measure: MeasureKind
    threshold: float
    mode: str


@dataclass(eq=False)
class SocialNetwork:
    """Vertices, edges, and the actor/relation mappings behind them.

    gamma1 maps actor_id to vertex_id bijectively; gamma2 maps each
    retained relation (dyad of actor ids) to its edge (pair of vertex
    ids). Equality compares the exportable core (config, vertices,
    edges), which is exactly what the JSON round trip preserves.
    """

    config: NetworkConfig
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]
    gamma1: dict[str, str]
    gamma2: dict[tuple[str, str], tuple[str, str]]
    actors: tuple[Actor, ...] = ()
    relations: tuple[Relation, ...] = ()

    def __eq__(self, other):
        if not isinstance(other, SocialNetwork):
            return NotImplemented
        return (
            self.config == other.config
            and self.vertices == other.vertices
            and self.edges == other.edges
        )

    def vertex_for_actor(self, actor_id: str) -> str:
        return self.gamma1[actor_id]


def relation_strength(
    source: HitSource,
    a_k: Actor,
    a_l: Actor,
    kind: MeasureKind = MeasureKind.JACCARD,
    mode: str = PHRASE,
) -> Relation:
    """Compute the weighted dyad between two actors from a hit source.

    Symmetric in the two actors. PMI is carried in the strength vector
    but cannot be the chosen edge measure (it is unbounded and may be
    undefined, which breaks the [0,1] edge weight contract).
    """
    kind = MeasureKind(kind)
    if a_k.actor_id == a_l.actor_id:
        raise DegeneratePairError(f"dyad needs two distinct actors, got {a_k.actor_id!r} twice")
    if kind == MeasureKind.PMI:
        raise ConfigError("pmi cannot be the edge measure; it is reported as a statistic only")
    first, second = sorted((a_k, a_l), key=lambda a: a.actor_id)
    n_x = source.count_term(first.name, mode=mode)
    n_y = source.count_term(second.name, mode=mode)
    n_xy = source.count_pair(first.name, second.name, mode=mode)
    counts = CountTriple(n_x=n_x, n_y=n_y, n_xy=n_xy, total=source.total())
    strengths = measures.all_strengths(counts)
    return Relation(
        actor_a=first.actor_id,
        actor_b=second.actor_id,
        counts=counts,
        strengths=tuple(strengths.items()),
        r_p=strengths[kind],
    )


def shared_attributes(space: EventSpace, a_k: Actor, a_l: Actor) -> frozenset[Term]:
    """Attribute terms held by both actors and co-occurring with both names.

    An attribute counts as shared only if some document contains it
    together with each actor's name (an actor's own name may appear as
    one of its attributes; then co-occurrence degenerates to occurrence).
    """
    common = set(a_k.attributes) & set(a_l.attributes)
    kept = set()
    for attribute in common:
        if _cooccurs(space, attribute, a_k.name) and _cooccurs(space, attribute, a_l.name):
            kept.add(attribute)
    return frozenset(kept)


def _cooccurs(space: EventSpace, attribute: Term, name: Term) -> bool:
    if attribute == name:
        return engine.singleton_event(space, name).cardinality > 0
    return engine.doubleton_event(space, attribute, name).cardinality > 0


def build_network(
    actors,
    source: HitSource,
    kind: MeasureKind = MeasureKind.JACCARD,
    threshold: float = 0.0,
    mode: str = PHRASE,
) -> SocialNetwork:
    """Assemble the extracted network over all actor dyads.

    One vertex per actor (bijective), one candidate relation per
    unordered pair, and an edge exactly when r_p > threshold. When the
    source wraps a local index, shared attributes are resolved against
    it; count-only sources leave them empty.
    """
    kind = MeasureKind(kind)
    if kind == MeasureKind.PMI:
        raise ConfigError("pmi cannot be the edge measure; it is reported as a statistic only")
    if threshold < 0:
        raise ConfigError(f"threshold must be nonnegative, got {threshold}")
    actors = tuple(actors)
    if not actors:
        raise ConfigError("network needs at least one actor")
    seen = set()
    for actor in actors:
        if actor.actor_id in seen:
            raise ConfigError(f"duplicate actor_id {actor.actor_id!r}")
        seen.add(actor.actor_id)

    ordered = tuple(sorted(actors, key=lambda a: a.actor_id))
    width = max(4, len(str(len(ordered))))
    gamma1 = {a.actor_id: f"v{str(i + 1).zfill(width)}" for i, a in enumerate(ordered)}

    total = source.total()
    space = getattr(source, "space", None)
    if space is not None and not isinstance(space, EventSpace):
        space = None
    vertices = []
    for a in ordered:
        hits = source.count_term(a.name, mode=mode)
        vertices.append(
            Vertex(
                vertex_id=gamma1[a.actor_id],
                actor_id=a.actor_id,
                hit_count=hits,
                probability=(hits / total if total else None),
            )
        )

    relations = []
    edges = []
    gamma2 = {}
    for i, a_k in enumerate(ordered):
        for a_l in ordered[i + 1 :]:
            relation = relation_strength(source, a_k, a_l, kind=kind, mode=mode)
            if space is not None:
                relation = Relation(
                    actor_a=relation.actor_a,
                    actor_b=relation.actor_b,
                    counts=relation.counts,
                    strengths=relation.strengths,
                    r_p=relation.r_p,
                    shared_attributes=shared_attributes(space, a_k, a_l),
                )
            relations.append(relation)
            if relation.r_p > threshold:
                endpoint_pair = tuple(sorted((gamma1[a_k.actor_id], gamma1[a_l.actor_id])))
                # Edges carry only the counts the JSON schema exports, so a
                # save/load round trip compares equal.
                edge_counts = CountTriple(
                    n_x=relation.counts.n_x, n_y=relation.counts.n_y, n_xy=relation.counts.n_xy
                )
                edges.append(
                    Edge(
                        source=endpoint_pair[0],
                        target=endpoint_pair[1],
                        weight=relation.r_p,
                        counts=edge_counts,
                    )
                )
                gamma2[relation.pair] = endpoint_pair

    return SocialNetwork(
        config=NetworkConfig(measure=kind, threshold=threshold, mode=mode),
        vertices=tuple(vertices),
        edges=tuple(sorted(edges, key=lambda e: (e.source, e.target))),
        gamma1=gamma1,
        gamma2=gamma2,
        actors=ordered,
        relations=tuple(relations),
    )


def to_json_obj(net: SocialNetwork) -> dict:
    """Plain-dict form of the network, canonically ordered for stable dumps."""
    return {
        "config": {
            "measure": net.config.measure.value,
            "threshold": net.config.threshold,
            "mode": net.config.mode,
        },
        "vertices": [
            {
                "id": v.vertex_id,
                "actor_id": v.actor_id,
                "hit_count": v.hit_count,
                "probability": v.probability,
            }
            for v in sorted(net.vertices, key=lambda v: v.vertex_id)
        ],
        "edges": [
            {
                "source": e.source,
                "target": e.target,
                "weight": e.weight,
                "counts": {"nx": e.counts.n_x, "ny": e.counts.n_y, "nxy": e.counts.n_xy},
            }
            for e in sorted(net.edges, key=lambda e: (e.source, e.target))
        ],
    }


def _json_text(net: SocialNetwork) -> str:
    return json.dumps(to_json_obj(net), indent=2, ensure_ascii=False) + "\n"


def _graphml_text(net: SocialNetwork) -> str:
    root = ET.Element("graphml", xmlns="http://graphml.graphdrawing.org/xmlns")
    keys = [
        ("d_actor", "node", "actor_id", "string"),
        ("d_hits", "node", "hit_count", "long"),
        ("d_prob", "node", "probability", "double"),
        ("d_weight", "edge", "weight", "double"),
    ]
    for key_id, domain, name, kind in keys:
        ET.SubElement(root, "key", id=key_id, **{"for": domain, "attr.name": name, "attr.type": kind})
    graph = ET.SubElement(root, "graph", id="extracted", edgedefault="undirected")
    for v in sorted(net.vertices, key=lambda v: v.vertex_id):
        node = ET.SubElement(graph, "node", id=v.vertex_id)
        ET.SubElement(node, "data", key="d_actor").text = v.actor_id
        ET.SubElement(node, "data", key="d_hits").text = str(v.hit_count)
        if v.probability is not None:
            ET.SubElement(node, "data", key="d_prob").text = repr(v.probability)
    for e in sorted(net.edges, key=lambda e: (e.source, e.target)):
        edge = ET.SubElement(graph, "edge", source=e.source, target=e.target)
        ET.SubElement(edge, "data", key="d_weight").text = repr(e.weight)
    ET.indent(root)
    return ET.tostring(root, encoding="unicode", xml_declaration=True) + "\n"


def _dot_text(net: SocialNetwork) -> str:
    lines = ["graph extracted {"]
    for v in sorted(net.vertices, key=lambda v: v.vertex_id):
        lines.append(f'  "{v.vertex_id}" [label="{v.actor_id}"];')
    for e in sorted(net.edges, key=lambda e: (e.source, e.target)):
        lines.append(f'  "{e.source}" -- "{e.target}" [label="{e.weight:.6f}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


_WRITERS = {"json": _json_text, "graphml": _graphml_text, "dot": _dot_text}


def export_graph(net: SocialNetwork, fmt: str, path) -> Path:
    """Write the network to path in one of json, graphml, dot."""
    if fmt not in _WRITERS:
        raise ConfigError(f"unknown graph format {fmt!r}; expected one of {GRAPH_FORMATS}")
    target = Path(path)
    try:
        target.write_text(_WRITERS[fmt](net), encoding="utf-8")
    except OSError as exc:
        raise IngestError(f"cannot write graph file {target}: {exc}") from exc
    return target


def import_graph_json(path) -> SocialNetwork:
    """Rebuild a network from its JSON export (the exportable core only)."""
    try:
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise IngestError(f"cannot read graph file {path}: {exc}") from exc
    try:
        config = NetworkConfig(
            measure=MeasureKind(obj["config"]["measure"]),
            threshold=obj["config"]["threshold"],
            mode=obj["config"]["mode"],
        )
        vertices = tuple(
            Vertex(
                vertex_id=v["id"],
                actor_id=v["actor_id"],
                hit_count=v["hit_count"],
                probability=v["probability"],
            )
            for v in obj["vertices"]
        )
        edges = tuple(
            Edge(
                source=e["source"],
                target=e["target"],
                weight=e["weight"],
                counts=CountTriple(
                    n_x=e["counts"]["nx"], n_y=e["counts"]["ny"], n_xy=e["counts"]["nxy"]
                ),
            )
            for e in obj["edges"]
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise IngestError(f"graph file {path} is malformed: {exc}") from exc
    gamma1 = {v.actor_id: v.vertex_id for v in vertices}
    actor_of = {v.vertex_id: v.actor_id for v in vertices}
    gamma2 = {
        tuple(sorted((actor_of[e.source], actor_of[e.target]))): (e.source, e.target)
        for e in edges
    }
    return SocialNetwork(
        config=config, vertices=vertices, edges=edges, gamma1=gamma1, gamma2=gamma2
    )
