"""Acceptance suite: one test per exit criterion, each printing a PASS line.

Run with `pytest tests/test_acceptance.py -v -s` to see one line per
criterion. Everything here is deterministic (seeded RNGs, fixed
fixtures); tolerances are stated inline.
"""

import json
import math
import random
import re
from collections import Counter

import numpy as np
import pytest

from qzero.analysis import ENGLISH_STOPWORDS
from qzero.classify import (
    LabelSet,
    classify_static,
    classify_static_baseline_avg,
    run_pipeline,
)
from qzero.cli import main as cli_main
from qzero.corpus import Document
from qzero.embeddings import (
    RemoteEmbedderConfig,
    StaticVectorStore,
    cosine,
    embed_texts_remote,
    load_static_vectors,
)
from qzero.evalharness import evaluate, load_dataset, sweep_k
from qzero.reformulate import (
    ExtractorConfig,
    NoKeywordsError,
    RawQuery,
    WeightedKeywordQuery,
    make_keyword_query,
    make_sentence_query,
)
from qzero.retrieval import BM25Retriever, RankedArticle, build_index, search

# ------------------------------------------------------------------ helpers

_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


def independent_tokens(text: str) -> list[str]:
    return [t for t in _TOKEN_RE.findall(text.lower()) if t not in ENGLISH_STOPWORDS]


class ExhaustiveScorer:
    """Scores every document directly from raw text; no inverted index."""

    def __init__(self, docs: list[Document], k1=1.2, b=0.75):
        self.tokens = {d.doc_id: independent_tokens(d.content) for d in docs}
        self.counts = {d: Counter(t) for d, t in self.tokens.items()}
        self.n = len(docs)
        self.avgdl = sum(len(t) for t in self.tokens.values()) / self.n
        self.k1, self.b = k1, b
        self._df: dict[str, int] = {}

    def df(self, term: str) -> int:
        if term not in self._df:
            self._df[term] = sum(1 for c in self.counts.values() if term in c)
        return self._df[term]

    def rank(self, query: str, k: int) -> list[tuple[str, float]]:
        query_tokens = independent_tokens(query)
        out = []
        for doc_id, counts in self.counts.items():
            dl = len(self.tokens[doc_id])
            total = 0.0
            for qt in query_tokens:
                tf = counts.get(qt, 0)
                if tf == 0:
                    continue
                df = self.df(qt)
                idf = math.log(1.0 + (self.n - df + 0.5) / (df + 0.5))
                norm = tf + self.k1 * (1.0 - self.b + self.b * (dl / self.avgdl))
                total += idf * (tf * (self.k1 + 1.0)) / norm
            if total > 0.0:
                out.append((doc_id, total))
        out.sort(key=lambda kv: (-kv[1], kv[0]))
        return out[:k]


def pure_cosine(u, v):
    dot = sum(x * y for x, y in zip(u, v))
    return dot / (math.sqrt(sum(x * x for x in u)) * math.sqrt(sum(y * y for y in v)))


# ----------------------------------------------------------------- criteria


class TestAcceptance:
    def test_bm25_oracle_equivalence(self):
        """25 random corpora x 100 random queries: search() matches the
        exhaustive scorer; scores within 1e-9, order exact."""
        rng = random.Random(20240601)
        for corpus_no in range(25):
            vocab_size = rng.randint(5, 200)
            vocab = [f"w{i}" for i in range(vocab_size)]
            n_docs = rng.randint(1, 50)
            docs = [
                Document(
                    f"doc{i:03d}", f"D{i}",
                    " ".join(rng.choices(vocab, k=rng.randint(1, 60))),
                    ("Cat",),
                )
                for i in range(n_docs)
            ]
            index = build_index(docs)
            oracle = ExhaustiveScorer(docs)
            for _ in range(100):
                query = " ".join(rng.choices(vocab, k=rng.randint(1, 6)))
                k = rng.randint(1, n_docs + 5)
                got = search(index, query, k)
                want = oracle.rank(query, k)
                assert [h.doc_id for h in got] == [d for d, _ in want], (
                    corpus_no, query,
                )
                for hit, (_, score) in zip(got, want):
                    assert abs(hit.score - score) <= 1e-9
        print("ACCEPTANCE PASS: BM25 oracle equivalence (25 corpora x 100 queries, 1e-9)")

    def test_weighted_scoring_oracle_equivalence(self):
        """500 random instances: classify_static matches a direct
        transcription of the weighted scoring loop within 1e-9; winner
        exact, forced ties resolved by label order."""
        rng = random.Random(777)
        instances = 0
        tie_instances = 0
        while instances < 500:
            dim = rng.randint(2, 8)
            n_keywords = rng.randint(1, 10)
            n_labels = rng.randint(2, 6)

            def rand_vec():
                v = [rng.uniform(-1.0, 1.0) for _ in range(dim)]
                norm = math.sqrt(sum(x * x for x in v))
                if norm < 1e-3:
                    return rand_vec()
                target = rng.uniform(0.5, 2.0)
                return [x * target / norm for x in v]

            keywords = [f"k{i}" for i in range(n_keywords)]
            labels = [f"y{i}" for i in range(n_labels)]
            word_table = {k: rand_vec() for k in keywords}
            if rng.random() < 0.3:
                word_table.pop(keywords[0])  # exercise the OOV = 0 rule
                if n_keywords == 1:
                    continue
            label_vecs = {y: rand_vec() for y in labels}
            force_tie = instances % 10 == 0
            if force_tie:
                # duplicate geometry: labels 0 and 1 score identically
                label_vecs[labels[1]] = list(label_vecs[labels[0]])
                tie_instances += 1
            entries = tuple((k, rng.randint(1, 9)) for k in keywords)

            store = StaticVectorStore(
                dim,
                {w: np.array(v, float) for w, v in {**word_table, **label_vecs}.items()},
            )
            result = classify_static(
                WeightedKeywordQuery(entries=entries), LabelSet(labels), store
            )

            class_scores = {}
            for y in labels:
                y_score = 0.0
                for kw, w in entries:
                    if kw not in word_table:
                        continue
                    sim = pure_cosine(word_table[kw], label_vecs[y])
                    y_score += sim * w
                class_scores[y] = y_score
            best = labels[0]
            for y in labels[1:]:
                if class_scores[y] > class_scores[best]:
                    best = y

            for y in labels:
                assert abs(result.table.scores[y] - class_scores[y]) <= 1e-9
            assert result.predicted == best
            if force_tie:
                assert result.table.scores[labels[0]] == pytest.approx(
                    result.table.scores[labels[1]], abs=1e-9
                )
            instances += 1
        assert tie_instances >= 50
        print(
            "ACCEPTANCE PASS: weighted-scoring oracle equivalence "
            f"(500 instances, {tie_instances} forced ties, 1e-9)"
        )

    def test_reformulation_contract(self, bpe_tokenizer):
        """1000 random article lists: rank-order grouping, duplicate
        retention, 512-token budget with exact-boundary truncation, and
        brute-force keyword weights. Zero failures allowed."""
        rng = random.Random(31337)
        words = [
            "Sports", "teams", "American", "television", "talk", "shows",
            "Health", "clinics", "Films", "about", "Indians", "history",
            "of", "science", "2014", "ancient", "buildings",
        ]
        budget = 512
        truncated_cases = 0
        for case in range(1000):
            n_articles = rng.randint(0, 8)
            articles = []
            for rank in range(1, n_articles + 1):
                n_cats = rng.randint(1, 30 if case % 3 == 0 else 5)
                cats = tuple(
                    " ".join(rng.choices(words, k=rng.randint(1, 6)))
                    for _ in range(n_cats)
                )
                articles.append(
                    RankedArticle(f"d{rank}", float(100 - rank), rank, cats)
                )

            # (a)+(b): grouping in rank order with duplicates retained
            sq = make_sentence_query(articles, bpe_tokenizer, budget)
            expected_cats = [
                c for a in articles for c in a.categories if c.strip()
            ]
            full_text = " ".join(expected_cats)
            full_ids = bpe_tokenizer.encode(full_text)

            # (c): budget and exact-boundary truncation
            assert sq.token_count <= budget
            assert sq.token_count == min(budget, len(full_ids))
            kept = full_ids[:budget]
            assert sq.text == bpe_tokenizer.decode(kept)
            assert bpe_tokenizer.encode(sq.text) == kept
            if len(full_ids) > budget:
                truncated_cases += 1

            # (d): weights equal brute-force occurrence counts
            config = ExtractorConfig(strategy="nounlite", stopword_list=frozenset())
            try:
                kq = make_keyword_query(articles, config)
            except NoKeywordsError:
                continue
            brute = Counter()
            for cat in expected_cats:
                for token in _TOKEN_RE.findall(cat.lower()):
                    if len(token) >= 2:
                        brute[token] += 1
            assert dict(kq.entries) == dict(brute)
        assert truncated_cases >= 100  # the budget rule was actually exercised
        print(
            "ACCEPTANCE PASS: reformulation contract "
            f"(1000 cases, {truncated_cases} crossed the 512 budget)"
        )

    def test_directional_benefit_on_bundled_benchmark(self, benchmark_dir):
        """Retrieval-augmented static classification beats the raw-input
        baseline on the bundled implicit-query benchmark: baseline <= 50%,
        reformulated >= 80%, strictly greater."""
        store = load_static_vectors(benchmark_dir.vectors)
        labels = LabelSet.from_file(benchmark_dir.labels)
        examples = load_dataset(benchmark_dir.dataset, labels)
        with open(benchmark_dir.corpus, encoding="utf-8") as f:
            from qzero.corpus import ingest

            docs, _ = ingest(f)
            index = build_index(list(docs))
        retriever = BM25Retriever(index)

        baseline = evaluate(
            examples, labels,
            lambda text: classify_static_baseline_avg(text, labels, store),
            runs=1, dataset_name="benchmark", mode="baseline-static",
        )
        qzero = evaluate(
            examples, labels,
            lambda text: run_pipeline(
                RawQuery(text), labels, "keywords", retriever,
                store=store, extractor=ExtractorConfig(strategy="nounlite"),
            ),
            runs=1, dataset_name="benchmark", mode="static",
        )
        assert baseline.accuracy <= 0.50, baseline.accuracy
        assert qzero.accuracy >= 0.80, qzero.accuracy
        assert qzero.accuracy > baseline.accuracy
        print(
            "ACCEPTANCE PASS: directional benefit "
            f"(baseline {baseline.accuracy:.2f} -> reformulated {qzero.accuracy:.2f})"
        )

    def test_sweep_mechanics(self, benchmark_dir):
        """k sweep over {5,10,25,50,100} emits exactly 5 points and is
        deterministic across re-runs; no monotonicity asserted."""
        store = load_static_vectors(benchmark_dir.vectors)
        labels = LabelSet.from_file(benchmark_dir.labels)
        examples = load_dataset(benchmark_dir.dataset, labels)
        with open(benchmark_dir.corpus, encoding="utf-8") as f:
            from qzero.corpus import ingest

            docs, _ = ingest(f)
            index = build_index(list(docs))
        retriever = BM25Retriever(index)

        def factory(k):
            def classify(text):
                return run_pipeline(
                    RawQuery(text), labels, "keywords", retriever,
                    store=store, extractor=ExtractorConfig(strategy="nounlite"), k=k,
                )

            return classify

        ks = [5, 10, 25, 50, 100]
        first = sweep_k(examples, labels, factory, ks)
        second = sweep_k(examples, labels, factory, ks)
        assert len(first.points) == 5
        assert [k for k, _ in first.points] == ks
        assert first.points == second.points
        assert not first.failures
        print(f"ACCEPTANCE PASS: sweep mechanics (points {first.points})")

    def test_cli_determinism(self, benchmark_dir, tmp_path, capsys):
        """Indexing twice is byte-identical; a 3-run evaluation with the
        static provider reports three equal accuracies."""
        for name in ("run1", "run2"):
            rc = cli_main([
                "index", "--corpus", str(benchmark_dir.corpus),
                "--index", str(tmp_path / name),
            ])
            assert rc == 0
        capsys.readouterr()
        for fname in ("manifest.json", "postings.jsonl", "documents.jsonl"):
            a = (tmp_path / "run1" / fname).read_bytes()
            b = (tmp_path / "run2" / fname).read_bytes()
            assert a == b, fname

        rc = cli_main([
            "eval", "--index", str(tmp_path / "run1"),
            "--mode", "keywords",
            "--provider", f"static:{benchmark_dir.vectors}",
            "--labels", str(benchmark_dir.labels),
            "--dataset", str(benchmark_dir.dataset),
            "--runs", "3",
        ])
        out = capsys.readouterr().out
        assert rc == 0
        report = json.loads(out.strip())
        assert report["runs"] == 3
        assert len(set(report["run_accuracies"])) == 1
        print(
            "ACCEPTANCE PASS: determinism "
            f"(byte-identical index, 3 runs all at {report['run_accuracies'][0]:.2f})"
        )

    def test_explain_shape(self, benchmark_dir, tmp_path, capsys):
        """Explain output: categories in rank order, top-10 keyword counts
        matching an independent recount."""
        rc = cli_main([
            "index", "--corpus", str(benchmark_dir.corpus),
            "--index", str(tmp_path / "idx"),
        ])
        assert rc == 0
        capsys.readouterr()
        query = "Quenton Fever cases climb in Mirovia"
        rc = cli_main([
            "explain", "--index", str(tmp_path / "idx"),
            "--mode", "keywords",
            "--provider", f"static:{benchmark_dir.vectors}",
            "--labels", str(benchmark_dir.labels),
            "--query", query,
        ])
        out = capsys.readouterr().out
        assert rc == 0
        rec = json.loads(out.strip())

        # independent recount: rerun retrieval, count lowercase tokens
        with open(benchmark_dir.corpus, encoding="utf-8") as f:
            from qzero.corpus import ingest

            docs, _ = ingest(f)
            index = build_index(list(docs))
        hits = search(index, query, 50)
        expected_cats = [c for h in hits for c in h.categories]
        assert rec["categories"] == expected_cats[:50]

        recount = Counter()
        for cat in expected_cats:
            for token in _TOKEN_RE.findall(cat.lower()):
                if len(token) >= 2 and token not in ENGLISH_STOPWORDS:
                    recount[token] += 1
        assert len(rec["keywords"]) <= 10
        for kw, n in rec["keywords"]:
            assert recount[kw] == n, kw
        top_counts = sorted(recount.values(), reverse=True)[: len(rec["keywords"])]
        assert sorted((n for _, n in rec["keywords"]), reverse=True) == top_counts
        print(f"ACCEPTANCE PASS: explain shape (top keywords {rec['keywords'][:3]}...)")

    def test_remote_client_conformance(self, mock_embedding_server, mock_server_url):
        """Against the scripted server (canned vectors, shuffled index
        fields): order restored, dim uniform, cosine(self,self)=1 within
        1e-12."""
        assert mock_embedding_server.script["shuffle"] is True
        config = RemoteEmbedderConfig(base_url=mock_server_url, model_name="mock")
        texts = ["first text", "second text", "third text", "fourth text"]
        vecs = embed_texts_remote(config, texts)
        assert len(vecs) == len(texts)
        assert {v.shape for v in vecs} == {(6,)}
        again = embed_texts_remote(config, texts)
        for v1, v2 in zip(vecs, again):
            assert abs(cosine(v1, v2) - 1.0) <= 1e-12
        from tests.conftest import deterministic_vector

        for text, vec in zip(texts, vecs):
            assert np.allclose(vec, deterministic_vector(text))
        print("ACCEPTANCE PASS: remote-client conformance (order, dim, cosine self=1)")
