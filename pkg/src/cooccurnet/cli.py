"""Command-line surface: index, query, network, behavior, rules."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from cooccurnet import behavior as behavior_mod
from cooccurnet import engine, network
from cooccurnet.corpus import ingest_directory, ingest_jsonl
from cooccurnet.engine import CONJUNCTIVE, PHRASE, Term
from cooccurnet.errors import ConfigError, CooccurnetError
from cooccurnet.hitsource import FixtureSource, LocalSource, Query, WebSource
from cooccurnet.measures import MeasureKind


def _fmt(value) -> str:
    return "n/a" if value is None else f"{value:.6f}"


def _load_corpus(path: str):
    p = Path(path)
    if p.is_dir():
        return ingest_directory(p)
    if p.suffix == ".jsonl":
        return ingest_jsonl(p)
    raise ConfigError(f"--corpus must be a directory of .txt files or a .jsonl file, got {p}")


def _resolve_source(args) -> "LocalSource | FixtureSource | WebSource":
    if args.source == "local":
        if args.index:
            space = engine.load_index(args.index)
        elif args.corpus:
            space = engine.build_index(_load_corpus(args.corpus))
        else:
            raise ConfigError("local source needs --corpus or --index")
        return LocalSource(space)
    if args.source == "fixture":
        if not args.fixture:
            raise ConfigError("fixture source needs --fixture")
        return FixtureSource(args.fixture, total=args.total)
    if not args.web_url or not args.web_count_field:
        raise ConfigError("web source needs --web-url and --web-count-field")
    return WebSource(
        url_template=args.web_url,
        count_field=args.web_count_field,
        cache_path=args.web_cache,
        rate_limit=args.web_rps,
        api_key_env=args.api_key_env,
        total=args.total,
    )


def _add_source_options(parser: argparse.ArgumentParser):
    group = parser.add_argument_group("hit-count source")
    group.add_argument("--source", choices=("local", "fixture", "web"), default="local")
    group.add_argument("--corpus", help="directory of .txt files or a .jsonl file")
    group.add_argument("--index", help="index snapshot written by the index command")
    group.add_argument("--fixture", help="JSON file of recorded hit counts")
    group.add_argument("--web-url", help="endpoint URL template with a {query} placeholder")
    group.add_argument("--web-count-field", help="dotted path to the count in the JSON response")
    group.add_argument("--web-cache", help="persistent cache file for web hit counts")
    group.add_argument("--web-rps", type=float, default=1.0, help="max requests per second")
    group.add_argument(
        "--api-key-env",
        default="COOCCURNET_API_KEY",
        help="environment variable holding the API key for a {key} placeholder",
    )
    group.add_argument("--total", type=int, help="document-space size estimate |N|")
    group.add_argument("--mode", choices=(PHRASE, CONJUNCTIVE), default=PHRASE)


def cmd_index(args) -> int:
    corpus = _load_corpus(args.corpus)
    space = engine.build_index(corpus)
    engine.save_index(space, args.out)
    print(f"indexed {space.total_docs} documents, vocabulary {len(space.vocabulary)} -> {args.out}")
    return 0


def cmd_query(args) -> int:
    if len(args.terms) > 2:
        raise ConfigError(f"query takes one or two terms, got {len(args.terms)}")
    source = _resolve_source(args)
    terms = [Term.parse(t, mode=args.mode) for t in args.terms]
    query = Query.of(terms, mode=args.mode)
    count = source.count(query)
    print(f"query: {query.canonical}")
    print(f"count: {count}")
    total = source.total()
    if total:
        print(f"probability: {_fmt(count / total)}")
    return 0


def _load_actors(path, mode) -> list[network.Actor]:
    try:
        entries = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read actors file {path}: {exc}") from exc
    if not isinstance(entries, list):
        raise ConfigError(f"actors file {path} must hold a JSON array")
    actors = []
    for entry in entries:
        try:
            actors.append(
                network.Actor.from_strings(
                    actor_id=entry["id"],
                    name=entry["name"],
                    attributes=entry.get("attributes", ()),
                    mode=mode,
                )
            )
        except (KeyError, TypeError) as exc:
            raise ConfigError(f'actors file {path}: each entry needs "id" and "name"') from exc
    return actors


def cmd_network(args) -> int:
    source = _resolve_source(args)
    actors = _load_actors(args.actors, args.mode)
    net = network.build_network(
        actors,
        source,
        kind=MeasureKind(args.measure),
        threshold=args.threshold,
        mode=args.mode,
    )
    network.export_graph(net, args.format, args.out)
    print(
        f"vertices={len(net.vertices)} edges={len(net.edges)} "
        f"measure={net.config.measure.value} threshold={_fmt(net.config.threshold)} -> {args.out}"
    )
    return 0


def cmd_behavior(args) -> int:
    source = _resolve_source(args)
    if args.name2 is not None:
        report = behavior_mod.pair_behavior_from_source(
            source, Term.parse(args.name, mode=args.mode), Term.parse(args.name2, mode=args.mode)
        )
        if args.format == "json":
            print(json.dumps(report.to_json_obj(), indent=2, sort_keys=True))
            return 0
        print(f"pair: {report.term_x.text} | {report.term_y.text}")
        c = report.counts
        total = "unknown" if c.total is None else c.total
        print(f"counts: nx={c.n_x} ny={c.n_y} nxy={c.n_xy} total={total}")
        for kind, value in report.strengths:
            print(f"{kind.value}: {_fmt(value)}")
        return 0
    if isinstance(source, LocalSource):
        report = behavior_mod.cluster_behavior(
            source.space,
            Term.parse(args.name, mode=args.mode),
            [Term.parse(c, mode=args.mode) for c in args.candidates],
        )
        if args.format == "json":
            print(json.dumps(report.to_json_obj(), indent=2, sort_keys=True))
            return 0
        print(f"term: {report.term.text}")
        print(f"mode: {report.mode}")
        print(f"cardinality: {report.cardinality}")
        print(f"probability: {_fmt(report.probability)}")
        print(f"quoted_count: {report.quoted_count}")
        print(f"conjunctive_count: {report.conjunctive_count}")
        print(f"quoted_ratio: {_fmt(report.quoted_ratio)}")
        print("top_cooccurring:")
        for text, n_xy in report.top_cooccurring:
            print(f"  {text} {n_xy}")
        return 0
    # Count-only sources cannot rank co-occurring candidates; report the
    # two-mode contrast instead.
    report = behavior_mod.mode_contrast(source, Term.parse(args.name, mode=args.mode))
    if args.format == "json":
        print(json.dumps(report.to_json_obj(), indent=2, sort_keys=True))
        return 0
    print(f"term: {' '.join(report.tokens)}")
    print(f"conjunctive_count: {report.conjunctive_count}")
    print(f"phrase_count: {report.phrase_count}")
    print(f"ratio: {_fmt(report.ratio)}")
    return 0


def cmd_rules(args) -> int:
    source = _resolve_source(args)
    if not isinstance(source, LocalSource):
        raise ConfigError("rules need a local corpus (transactions come from documents)")
    try:
        raw = json.loads(Path(args.attributes).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read attributes file {args.attributes}: {exc}") from exc
    if not isinstance(raw, list) or not all(isinstance(a, str) for a in raw):
        raise ConfigError(f"attributes file {args.attributes} must hold a JSON array of strings")
    attributes = [Term.parse(a, mode=args.mode) for a in raw]
    transactions = behavior_mod.transactions_from_corpus(source.space, attributes)
    rules = behavior_mod.mine_rules(
        transactions,
        minsup=args.minsup,
        minconf=args.minconf,
        max_itemset_size=args.max_itemset_size,
    )
    if args.format == "json":
        print(json.dumps([r.to_json_obj() for r in rules], indent=2, sort_keys=True))
        return 0
    print(f"transactions: {len(transactions)}  rules: {len(rules)}")
    for rule in rules:
        x = "{" + ",".join(sorted(rule.antecedent)) + "}"
        y = "{" + ",".join(sorted(rule.consequent)) + "}"
        print(
            f"{x} => {y}  support={_fmt(rule.support)} "
            f"confidence={_fmt(rule.confidence)} holds={'yes' if rule.holds else 'no'}"
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cooccurnet",
        description="Extract social networks from corpus or search-engine hit counts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_index = sub.add_parser("index", help="build and persist an index snapshot")
    p_index.add_argument("--corpus", required=True)
    p_index.add_argument("--out", required=True)
    p_index.set_defaults(fn=cmd_index)

    p_query = sub.add_parser("query", help="hit count (and probability) for one or two terms")
    p_query.add_argument("terms", nargs="+", metavar="TERM")
    _add_source_options(p_query)
    p_query.set_defaults(fn=cmd_query)

    p_net = sub.add_parser("network", help="build and export the extracted social network")
    p_net.add_argument("--actors", required=True, help="JSON array of {id, name, attributes}")
    p_net.add_argument("--out", required=True)
    p_net.add_argument(
        "--measure",
        choices=[k.value for k in MeasureKind],
        default=MeasureKind.JACCARD.value,
    )
    p_net.add_argument("--threshold", type=float, default=0.0)
    p_net.add_argument("--format", choices=network.GRAPH_FORMATS, default="json")
    _add_source_options(p_net)
    p_net.set_defaults(fn=cmd_network)

    p_beh = sub.add_parser("behavior", help="cluster or dyad statistics report")
    p_beh.add_argument("name", metavar="NAME")
    p_beh.add_argument("name2", nargs="?", metavar="NAME2")
    p_beh.add_argument("--candidates", nargs="*", default=(), metavar="TERM")
    p_beh.add_argument("--format", choices=("text", "json"), default="text")
    _add_source_options(p_beh)
    p_beh.set_defaults(fn=cmd_behavior)

    p_rules = sub.add_parser("rules", help="mine association rules over attribute transactions")
    p_rules.add_argument("--attributes", required=True, help="JSON array of attribute terms")
    p_rules.add_argument("--minsup", type=float, default=0.1)
    p_rules.add_argument("--minconf", type=float, default=0.5)
    p_rules.add_argument("--max-itemset-size", type=int, default=2)
    p_rules.add_argument("--format", choices=("text", "json"), default="text")
    _add_source_options(p_rules)
    p_rules.set_defaults(fn=cmd_rules)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.fn(args)
    except CooccurnetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
