"""Command-line entry point wiring all pipeline stages.

Data goes to stdout, diagnostics to stderr; every subcommand exits 0 on
success and 1 with a message on failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .errors import AmusedError
from .fetchers import build_registry, fetch_all
from .ingest import ParserProfile, SourceManifest, ingest_manifest
from .labeling import LabelMapping, dedupe, label_all
from .langid import detect_store_languages, load_profiles
from .links import extract_all
from .pipeline import PipelineConfig, run_pipeline
from .reporting import (
    class_distribution,
    export_jsonl,
    format_rows,
    link_coverage,
    platform_summary,
    timeline,
)
from .service import serve
from .store import open_store
from .urls import Platform, load_patterns
from .verification import sample_for_review


def _emit(payload):
    print(json.dumps(payload, indent=2, ensure_ascii=False, default=str))


def cmd_ingest(args) -> int:
    store = open_store(args.store)
    manifest = SourceManifest.load(args.manifest)
    profile = ParserProfile.load(args.profile) if args.profile else None
    report = ingest_manifest(manifest, store, profile=profile, live=args.live)
    _emit(report)
    return 0


def cmd_langdetect(args) -> int:
    store = open_store(args.store)
    profiles = load_profiles(args.profiles) if args.profiles else load_profiles()
    _emit(detect_store_languages(store, profiles))
    return 0


def cmd_extract(args) -> int:
    from .urls import resolve_redirects
    store = open_store(args.store)
    patterns = load_patterns(args.patterns) if args.patterns else None
    resolver = resolve_redirects if args.resolve_redirects else None
    _emit(extract_all(store, patterns, resolver=resolver))
    return 0


def cmd_fetch(args) -> int:
    store = open_store(args.store)
    live = tuple(Platform(p.strip()) for p in args.live.split(",")) if args.live else ()
    registry = build_registry(args.fixtures, live_platforms=live,
                              concurrency=args.concurrency)
    _emit(fetch_all(store, registry, refresh=args.refresh))
    return 0


def cmd_label(args) -> int:
    store = open_store(args.store)
    mapping = LabelMapping.load(args.mapping) if args.mapping else LabelMapping()
    _emit(label_all(store, mapping))
    return 0


def cmd_dedupe(args) -> int:
    store = open_store(args.store)
    _emit(dedupe(store))
    return 0


def cmd_sample(args) -> int:
    store = open_store(args.store)
    tasks = sample_for_review(store, rate=args.rate, seed=args.seed)
    _emit({"tasks_created": len(tasks),
           "task_ids": [t.task_id for t in tasks]})
    return 0


def cmd_serve(args) -> int:
    store = open_store(args.store)
    server = serve(store, args.port, static_dir=args.static, host=args.host)
    print(f"review service on http://{args.host}:{server.port}/", file=sys.stderr)
    server.serve_forever()
    return 0


def cmd_report(args) -> int:
    store = open_store(args.store)
    if args.kind == "platform":
        rows = platform_summary(store)
    elif args.kind == "class":
        rows = class_distribution(store)
    elif args.kind == "timeline":
        rows = timeline(store, min_posts=args.min_posts)
    else:  # coverage
        print(json.dumps({"link_coverage": link_coverage(store)}))
        return 0
    print(format_rows(rows, args.format))
    return 0


def cmd_export(args) -> int:
    store = open_store(args.store)
    count = export_jsonl(store, args.out, confirmed_only=args.confirmed_only)
    _emit({"records_written": count, "path": args.out})
    return 0


def cmd_run(args) -> int:
    _emit(run_pipeline(args.config, live=args.live))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="amused",
        description="Harvest social posts from fact-check articles, propagate "
                    "verdicts as labels, and verify a sample by hand.")
    parser.add_argument("-v", "--verbose", action="store_true",
                        help="debug logging (per-anchor extraction decisions)")
    parser.add_argument("-q", "--quiet", action="store_true", help="errors only")
    # accept -v/-q after the subcommand too; SUPPRESS keeps the child from
    # clobbering a flag given before it
    flags = argparse.ArgumentParser(add_help=False)
    flags.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)
    flags.add_argument("-q", "--quiet", action="store_true", default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=lambda **kw: argparse.ArgumentParser(
                                    parents=[flags], **kw))

    p = sub.add_parser("ingest", help="parse manifest articles into the store")
    p.add_argument("--manifest", required=True)
    p.add_argument("--store", required=True)
    p.add_argument("--live", action="store_true", help="fetch entry URLs over HTTP")
    p.add_argument("--profile", help="parser profile JSON (default: <profile>.json next to manifest)")
    p.set_defaults(fn=cmd_ingest)

    p = sub.add_parser("langdetect", help="fill missing article languages")
    p.add_argument("--store", required=True)
    p.add_argument("--profiles", help="directory of language profile JSON files")
    p.set_defaults(fn=cmd_langdetect)

    p = sub.add_parser("extract", help="harvest social links from stored articles")
    p.add_argument("--store", required=True)
    p.add_argument("--patterns", help="platform pattern table JSON override")
    p.add_argument("--resolve-redirects", action="store_true",
                   help="follow shortener redirects over HTTP (up to 3 hops)")
    p.set_defaults(fn=cmd_extract)

    p = sub.add_parser("fetch", help="fetch post content for stored links")
    p.add_argument("--store", required=True)
    p.add_argument("--fixtures", required=True)
    p.add_argument("--concurrency", type=int, default=4)
    p.add_argument("--refresh", action="store_true", help="refetch existing posts")
    p.add_argument("--live", help="comma-separated platforms to fetch live")
    p.set_defaults(fn=cmd_fetch)

    p = sub.add_parser("label", help="propagate article verdicts onto posts")
    p.add_argument("--store", required=True)
    p.add_argument("--mapping", help="label mapping JSON override")
    p.set_defaults(fn=cmd_label)

    p = sub.add_parser("dedupe", help="collapse duplicate posts across articles")
    p.add_argument("--store", required=True)
    p.set_defaults(fn=cmd_dedupe)

    p = sub.add_parser("sample", help="draw the per-platform review sample")
    p.add_argument("--store", required=True)
    p.add_argument("--rate", default="0.1")
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(fn=cmd_sample)

    p = sub.add_parser("serve", help="run the review HTTP service")
    p.add_argument("--store", required=True)
    p.add_argument("--port", type=int, default=8080)
    p.add_argument("--static", help="directory of review UI assets")
    p.add_argument("--host", default="127.0.0.1")
    p.set_defaults(fn=cmd_serve)

    p = sub.add_parser("report", help="summary views over the corpus")
    p.add_argument("--store", required=True)
    p.add_argument("--kind", required=True,
                   choices=["platform", "class", "timeline", "coverage"])
    p.add_argument("--format", default="table", choices=["table", "csv", "json"])
    p.add_argument("--min-posts", type=int, default=25)
    p.set_defaults(fn=cmd_report)

    p = sub.add_parser("export", help="write the labeled dataset as JSONL")
    p.add_argument("--store", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--confirmed-only", action="store_true")
    p.set_defaults(fn=cmd_export)

    p = sub.add_parser("run", help="run ingest through dedupe from a config file")
    p.add_argument("--config", required=True)
    p.add_argument("--live", action="store_true")
    p.set_defaults(fn=cmd_run)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.DEBUG if args.verbose else logging.ERROR if args.quiet else logging.INFO
    logging.basicConfig(level=level, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.fn(args)
    except AmusedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except KeyboardInterrupt:
        return 130


if __name__ == "__main__":
    sys.exit(main())
