"""Command-line interface.

Subcommands: index, retrieve, reformulate, classify, explain, eval,
sweep. Primary output is line-delimited JSON records on stdout (or the
--out path); --pretty renders human-readable tables. Commands are
deterministic: identical invocations over read-only inputs produce
identical output, and no payload carries timestamps.

The remote-provider auth token is read from the QZERO_AUTH_TOKEN
environment variable, never from a flag.
"""

from __future__ import annotations

import argparse
import functools
import json
import os
import sys
from pathlib import Path

from .analysis import AnalysisConfig
from .bpe import ByteLevelBPETokenizer, WhitespaceTokenizer
from .classify import (
    ClassificationResult,
    LabelSet,
    classify_contextual,
    classify_static_baseline_avg,
    run_pipeline,
)
from .corpus import ingest
from .embeddings import (
    RemoteEmbedderConfig,
    embed_texts_remote,
    load_static_vectors,
)
from .evalharness import (
    DEFAULT_RUNS,
    DEFAULT_SWEEP_KS,
    evaluate,
    load_dataset,
    sweep_k,
    write_report,
    write_sweep_flat,
)
from .reformulate import (
    DEFAULT_TOKEN_BUDGET,
    ExtractorConfig,
    RawQuery,
    make_keyword_query,
    make_sentence_query,
    retrieve_categories,
)
from .retrieval import (
    DEFAULT_TOP_K,
    BM25Params,
    BM25Retriever,
    build_index,
    save_index,
)

AUTH_TOKEN_ENV = "QZERO_AUTH_TOKEN"


class CliError(RuntimeError):
    pass


def _emit(args, record: dict) -> None:
    line = json.dumps(record, ensure_ascii=False, sort_keys=True)
    if args.out:
        with open(args.out, "a", encoding="utf-8") as f:
            f.write(line + "\n")
    else:
        print(line)


def _emit_pretty(args, text: str) -> None:
    if args.out:
        with open(args.out, "a", encoding="utf-8") as f:
            f.write(text + "\n")
    else:
        print(text)


def _analysis_from_args(args) -> AnalysisConfig:
    return AnalysisConfig(
        remove_stopwords=not args.no_stopwords,
        stem=args.stem,
    )


def _tokenizer_from_args(args):
    if args.whitespace_tokenizer:
        return WhitespaceTokenizer()
    if not args.tokenizer_vocab or not args.tokenizer_merges:
        raise CliError(
            "sentence mode needs --tokenizer-vocab and --tokenizer-merges "
            "(or --whitespace-tokenizer, which is not token-count faithful)"
        )
    return ByteLevelBPETokenizer.from_files(args.tokenizer_vocab, args.tokenizer_merges)


def _extractor_from_args(args) -> ExtractorConfig:
    if args.extractor == "external":
        if not args.extractor_command:
            raise CliError("--extractor external requires --extractor-command")
        return ExtractorConfig(
            strategy="external", external_command=tuple(args.extractor_command.split())
        )
    return ExtractorConfig(strategy=args.extractor)


def _parse_provider(spec: str):
    """Parse 'static:<path>' or 'remote:<url>,<model>'."""
    kind, _, rest = spec.partition(":")
    if kind == "static" and rest:
        return ("static", rest)
    if kind == "remote" and rest:
        url, _, model = rest.partition(",")
        if url and model:
            return ("remote", url, model)
    raise CliError(f"bad provider spec {spec!r}; use static:<path> or remote:<url>,<model>")


def _build_components(args):
    """Assemble retriever / store / embedder / tokenizer per the flags."""
    retriever = BM25Retriever.open(args.index)
    provider = _parse_provider(args.provider)
    store = None
    embedder = None
    tokenizer = None
    if args.mode == "keywords":
        if provider[0] != "static":
            raise CliError("keywords mode requires a static provider")
        store = load_static_vectors(provider[1])
    else:
        if provider[0] != "remote":
            raise CliError("sentence mode requires a remote provider")
        config = RemoteEmbedderConfig(
            base_url=provider[1],
            model_name=provider[2],
            auth_token=os.environ.get(AUTH_TOKEN_ENV),
        )
        embedder = functools.partial(embed_texts_remote, config)
        tokenizer = _tokenizer_from_args(args)
    return retriever, store, embedder, tokenizer


def _classify_fn(args, retriever, store, embedder, tokenizer, labels, k, explain=False):
    def classify_one(text: str) -> ClassificationResult:
        if args.baseline:
            if args.mode == "keywords":
                return classify_static_baseline_avg(text, labels, store)
            return classify_contextual(text, labels, embedder, mode="baseline-contextual")
        return run_pipeline(
            RawQuery(text=text),
            labels,
            args.mode,
            retriever,
            store=store,
            embedder=embedder,
            extractor=_extractor_from_args(args) if args.mode == "keywords" else None,
            tokenizer=tokenizer,
            budget=args.budget,
            k=k,
            explain=explain,
        )

    return classify_one


def _result_record(query: str, result: ClassificationResult) -> dict:
    rec = {
        "query": query,
        "predicted": result.predicted,
        "mode": result.mode,
        "scores": {y: s for y, s in result.table.scores.items()},
        "margin": result.table.margin,
    }
    if result.oov_keywords:
        rec["oov_keywords"] = list(result.oov_keywords)
    if result.explain is not None:
        rec["categories"] = list(result.explain.categories)
        rec["keywords"] = [[kw, n] for kw, n in result.explain.keywords]
    return rec


def cmd_index(args) -> int:
    source = sys.stdin if args.corpus == "-" else open(args.corpus, encoding="utf-8")
    try:
        docs, stats = ingest(source)
        index = build_index(
            docs,
            analysis=_analysis_from_args(args),
            params=BM25Params(k1=args.k1, b=args.b),
        )
        save_index(index, args.index)
    finally:
        if source is not sys.stdin:
            source.close()
    _emit(args, {"index": str(args.index), "stats": stats.as_dict()})
    return 0


def cmd_retrieve(args) -> int:
    retriever = BM25Retriever.open(args.index)
    hits = retrieve_categories(RawQuery(text=args.query), retriever, args.k)
    if args.pretty:
        for hit in hits:
            _emit_pretty(
                args,
                f"{hit.rank:>3}  {hit.score:.6f}  {hit.doc_id}  {'; '.join(hit.categories)}",
            )
    else:
        for hit in hits:
            _emit(args, {
                "rank": hit.rank,
                "doc_id": hit.doc_id,
                "score": hit.score,
                "categories": list(hit.categories),
            })
    return 0


def cmd_reformulate(args) -> int:
    retriever = BM25Retriever.open(args.index)
    articles = retrieve_categories(RawQuery(text=args.query), retriever, args.k)
    if args.mode == "sentence":
        tokenizer = _tokenizer_from_args(args)
        sq = make_sentence_query(articles, tokenizer, args.budget)
        _emit(args, {
            "mode": "sentence",
            "text": sq.text,
            "token_count": sq.token_count,
            "source_ranks": [[cat, rank] for cat, rank in sq.source_ranks],
        })
    else:
        kq = make_keyword_query(articles, _extractor_from_args(args))
        if args.pretty:
            for kw, w in kq.entries:
                _emit_pretty(args, f"{w:>6}  {kw}")
        else:
            _emit(args, {
                "mode": "keywords",
                "entries": [[kw, w] for kw, w in kq.entries],
            })
    return 0


def cmd_classify(args, explain: bool = False) -> int:
    retriever, store, embedder, tokenizer = _build_components(args)
    labels = LabelSet.from_file(args.labels)
    classify_one = _classify_fn(
        args, retriever, store, embedder, tokenizer, labels, args.k, explain=explain
    )
    result = classify_one(args.query)
    rec = _result_record(args.query, result)
    if args.pretty:
        _emit_pretty(args, f"query:     {args.query}")
        _emit_pretty(args, f"predicted: {result.predicted}  ({result.mode})")
        for y in labels:
            _emit_pretty(args, f"  {result.table.scores[y]:>12.6f}  {y}")
        if explain and result.explain is not None:
            _emit_pretty(args, "categories: " + "; ".join(result.explain.categories))
            _emit_pretty(
                args,
                "keywords:   "
                + ", ".join(f"({kw}, {n})" for kw, n in result.explain.keywords),
            )
    else:
        _emit(args, rec)
    return 0


def cmd_explain(args) -> int:
    return cmd_classify(args, explain=True)


def cmd_eval(args) -> int:
    retriever, store, embedder, tokenizer = _build_components(args)
    labels = LabelSet.from_file(args.labels)
    examples = load_dataset(args.dataset, labels)
    classify_one = _classify_fn(args, retriever, store, embedder, tokenizer, labels, args.k)
    settings = {
        "index": str(args.index),
        "dataset": str(args.dataset),
        "mode": args.mode,
        "baseline": args.baseline,
        "provider": args.provider,
        "k": args.k,
        "budget": args.budget,
        "extractor": args.extractor,
    }
    report = evaluate(
        examples,
        labels,
        classify_one,
        runs=args.runs,
        dataset_name=Path(args.dataset).name,
        mode=("baseline-" if args.baseline else "") + args.mode,
        settings=settings,
        deterministic=not args.provider.startswith("remote:"),
        jobs=args.jobs,
    )
    if args.report:
        write_report(report, args.report)
    _emit(args, report.as_dict())
    return 0


def cmd_sweep(args) -> int:
    retriever, store, embedder, tokenizer = _build_components(args)
    labels = LabelSet.from_file(args.labels)
    examples = load_dataset(args.dataset, labels)
    ks = [int(x) for x in args.ks.split(",")] if args.ks else list(DEFAULT_SWEEP_KS)
    settings = {
        "index": str(args.index),
        "dataset": str(args.dataset),
        "mode": args.mode,
        "provider": args.provider,
        "budget": args.budget,
        "extractor": args.extractor,
    }
    report = sweep_k(
        examples,
        labels,
        lambda k: _classify_fn(args, retriever, store, embedder, tokenizer, labels, k),
        ks,
        settings=settings,
        jobs=args.jobs,
    )
    if args.report:
        write_report(report, args.report)
    if args.flat:
        write_sweep_flat(report, args.flat)
    _emit(args, report.as_dict())
    return 0


def _add_common_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", help="write records here instead of stdout")
    p.add_argument("--pretty", action="store_true", help="human-readable output")


def _add_pipeline_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--index", required=True, help="index directory")
    p.add_argument("--mode", choices=["sentence", "keywords"], required=True)
    p.add_argument("--provider", required=True,
                   help="static:<vectors path> or remote:<base url>,<model>")
    p.add_argument("--labels", required=True, help="label file, one label per line")
    p.add_argument("--k", type=int, default=DEFAULT_TOP_K,
                   help="articles to retrieve (default %(default)s)")
    p.add_argument("--budget", type=int, default=DEFAULT_TOKEN_BUDGET,
                   help="token budget for sentence mode (default %(default)s)")
    p.add_argument("--baseline", action="store_true",
                   help="classify the raw input, skipping retrieval")
    p.add_argument("--jobs", type=int, default=1, help="worker parallelism bound")
    _add_extractor_flags(p)
    _add_tokenizer_flags(p)


def _add_extractor_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--extractor", choices=["capitalization", "nounlite", "external"],
                   default="nounlite")
    p.add_argument("--extractor-command",
                   help="command for --extractor external (reads categories on "
                        "stdin, writes keyword<TAB>count lines)")


def _add_tokenizer_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tokenizer-vocab", help="BPE vocab.json path")
    p.add_argument("--tokenizer-merges", help="BPE merges.txt path")
    p.add_argument("--whitespace-tokenizer", action="store_true",
                   help="count whitespace words instead of BPE tokens "
                        "(NOT faithful to the 512-token budget)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qzero",
        description="Retrieval-augmented query reformulation for zero-shot "
                    "text classification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("index", help="build a BM25 index from a corpus file")
    p.add_argument("--corpus", required=True, help="corpus JSONL path, or - for stdin")
    p.add_argument("--index", required=True, help="output index directory")
    p.add_argument("--no-stopwords", action="store_true", help="keep stopwords")
    p.add_argument("--stem", action="store_true", help="Porter-stem tokens")
    p.add_argument("--k1", type=float, default=1.2)
    p.add_argument("--b", type=float, default=0.75)
    _add_common_output(p)
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("retrieve", help="query the index")
    p.add_argument("--index", required=True)
    p.add_argument("--query", required=True)
    p.add_argument("--k", type=int, default=DEFAULT_TOP_K)
    _add_common_output(p)
    p.set_defaults(func=cmd_retrieve)

    p = sub.add_parser("reformulate", help="show the reformulated query")
    p.add_argument("--index", required=True)
    p.add_argument("--query", required=True)
    p.add_argument("--mode", choices=["sentence", "keywords"], required=True)
    p.add_argument("--k", type=int, default=DEFAULT_TOP_K)
    p.add_argument("--budget", type=int, default=DEFAULT_TOKEN_BUDGET)
    _add_extractor_flags(p)
    _add_tokenizer_flags(p)
    _add_common_output(p)
    p.set_defaults(func=cmd_reformulate)

    p = sub.add_parser("classify", help="classify one query")
    _add_pipeline_flags(p)
    p.add_argument("--query", required=True)
    _add_common_output(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("explain", help="classify with categories and keywords shown")
    _add_pipeline_flags(p)
    p.add_argument("--query", required=True)
    _add_common_output(p)
    p.set_defaults(func=cmd_explain)

    p = sub.add_parser("eval", help="evaluate accuracy on a labeled dataset")
    _add_pipeline_flags(p)
    p.add_argument("--dataset", required=True, help="TSV: text<TAB>gold_label")
    p.add_argument("--runs", type=int, default=DEFAULT_RUNS)
    p.add_argument("--report", help="write the report JSON here")
    _add_common_output(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sweep", help="evaluate across retrieved-document counts")
    _add_pipeline_flags(p)
    p.add_argument("--dataset", required=True)
    p.add_argument("--ks", help="comma-separated counts (default 5,10,25,50,100)")
    p.add_argument("--report", help="write the report JSON here")
    p.add_argument("--flat", help="write k<TAB>accuracy lines here")
    _add_common_output(p)
    p.set_defaults(func=cmd_sweep)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "out", None):
        open(args.out, "w").close()  # fresh file per invocation; _emit appends
    try:
        return args.func(args)
    except Exception as e:
        print(f"qzero {args.command}: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
