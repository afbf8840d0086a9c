"""Round-trip tests: a live server instance driven by plain HTTP and by
the qzero remote-embedding client."""

import threading
import time

import numpy as np
import pytest
import requests
import uvicorn

from embedserver.app import ServerConfig, create_app
from embedserver.models import HashedBagOfWordsModel, ModelLoadError, load_model


@pytest.fixture(scope="module")
def live_server():
    config = ServerConfig(model="hash:32", max_batch_size=4, port=0)
    app = create_app(config)
    uv_config = uvicorn.Config(app, host="127.0.0.1", port=0, log_level="warning")
    server = uvicorn.Server(uv_config)
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    deadline = time.time() + 10
    while not server.started:
        if time.time() > deadline:
            raise RuntimeError("server did not start")
        time.sleep(0.02)
    port = server.servers[0].sockets[0].getsockname()[1]
    try:
        yield f"http://127.0.0.1:{port}"
    finally:
        server.should_exit = True
        thread.join(timeout=5)


def post(url, payload):
    return requests.post(f"{url}/v1/embeddings", json=payload, timeout=10)


class TestProtocol:
    def test_shape_and_indexes(self, live_server):
        resp = post(live_server, {"model": "hash:32", "input": ["hello", "world"]})
        assert resp.status_code == 200
        data = resp.json()["data"]
        assert [item["index"] for item in data] == [0, 1]
        assert all(len(item["embedding"]) == 32 for item in data)

    def test_identical_requests_identical_vectors(self, live_server):
        payload = {"model": "hash:32", "input": ["the same text", "another text"]}
        first = post(live_server, payload).json()["data"]
        second = post(live_server, payload).json()["data"]
        for a, b in zip(first, second):
            assert np.allclose(a["embedding"], b["embedding"], atol=1e-6)

    def test_empty_string_input_400(self, live_server):
        resp = post(live_server, {"model": "hash:32", "input": [""]})
        assert 400 <= resp.status_code < 500
        assert "error" in resp.json()

    def test_malformed_body_400(self, live_server):
        resp = requests.post(
            f"{live_server}/v1/embeddings",
            data="{not json",
            headers={"Content-Type": "application/json"},
            timeout=10,
        )
        assert 400 <= resp.status_code < 500

    def test_missing_input_400(self, live_server):
        resp = post(live_server, {"model": "hash:32"})
        assert 400 <= resp.status_code < 500

    def test_oversize_batch_split_not_rejected(self, live_server):
        texts = [f"text number {i}" for i in range(11)]  # max_batch_size is 4
        resp = post(live_server, {"model": "hash:32", "input": texts})
        assert resp.status_code == 200
        data = resp.json()["data"]
        assert [item["index"] for item in data] == list(range(11))

    def test_single_string_input_accepted(self, live_server):
        resp = post(live_server, {"model": "hash:32", "input": "just one"})
        assert resp.status_code == 200
        assert len(resp.json()["data"]) == 1

    def test_truncation_warning(self, live_server):
        long_text = " ".join(["word"] * 500)  # hash model max is 256 tokens
        resp = post(live_server, {"model": "hash:32", "input": [long_text]})
        assert resp.status_code == 200
        body = resp.json()
        assert any("truncated" in w for w in body.get("warnings", []))

    def test_unknown_fields_ignored_by_server(self, live_server):
        resp = post(
            live_server,
            {"model": "hash:32", "input": ["x"], "user": "someone", "extra": 1},
        )
        assert resp.status_code == 200


class TestPrimaryClientRoundTrip:
    """The acceptance round-trip: the qzero client against this server."""

    def test_round_trip_determinism_and_self_cosine(self, live_server):
        qzero_embeddings = pytest.importorskip("qzero.embeddings")
        config = qzero_embeddings.RemoteEmbedderConfig(
            base_url=live_server, model_name="hash:32", timeout=10.0
        )
        texts = ["Basketball players Sports champions", "Health clinics", "markets"]
        first = qzero_embeddings.embed_texts_remote(config, texts)
        second = qzero_embeddings.embed_texts_remote(config, texts)
        assert len(first) == len(texts)
        for v1, v2 in zip(first, second):
            assert np.allclose(v1, v2, atol=1e-6)
            assert abs(qzero_embeddings.cosine(v1, v2) - 1.0) <= 1e-6
        print("SECONDARY ACCEPTANCE PASS: server round-trip via primary client")

    def test_client_rejects_empty_before_request(self, live_server):
        qzero_embeddings = pytest.importorskip("qzero.embeddings")
        config = qzero_embeddings.RemoteEmbedderConfig(
            base_url=live_server, model_name="hash:32"
        )
        with pytest.raises(ValueError):
            qzero_embeddings.embed_texts_remote(config, ["ok", ""])

    def test_client_usable_for_contextual_classification(self, live_server):
        qzero_embeddings = pytest.importorskip("qzero.embeddings")
        from qzero.classify import LabelSet, classify_contextual

        config = qzero_embeddings.RemoteEmbedderConfig(
            base_url=live_server, model_name="hash:32"
        )

        def embedder(texts):
            return qzero_embeddings.embed_texts_remote(config, texts)

        labels = LabelSet(["alpha topic", "beta topic"])
        result = classify_contextual("alpha topic", labels, embedder)
        # identical text and label embed identically: cosine exactly 1
        assert result.predicted == "alpha topic"
        assert result.table.scores["alpha topic"] == pytest.approx(1.0, abs=1e-6)


class TestModelLoadFailure:
    def test_unloadable_model_returns_500(self, monkeypatch):
        from fastapi.testclient import TestClient

        monkeypatch.setenv("HF_HUB_OFFLINE", "1")  # fail fast, no network retries
        config = ServerConfig(model="no-such-model-anywhere", port=0)
        client = TestClient(create_app(config))
        resp = client.post("/v1/embeddings", json={"model": "x", "input": ["hi"]})
        assert resp.status_code == 500
        assert "error" in resp.json()


class TestModels:
    def test_hash_model_deterministic(self):
        m1 = HashedBagOfWordsModel(16)
        m2 = HashedBagOfWordsModel(16)
        v1, _ = m1.encode(["hello world"])
        v2, _ = m2.encode(["hello world"])
        assert np.array_equal(v1, v2)

    def test_hash_model_unit_norm(self):
        model = HashedBagOfWordsModel(16)
        vecs, _ = model.encode(["a b c", "single"])
        for v in vecs:
            assert np.linalg.norm(v) == pytest.approx(1.0, abs=1e-9)

    def test_hash_model_truncation_reported(self):
        model = HashedBagOfWordsModel(8, max_tokens=3)
        _, truncated = model.encode(["one two three four"])
        assert truncated == [0]

    def test_bad_hash_spec(self):
        with pytest.raises(ModelLoadError):
            load_model("hash:xyz")

    def test_config_validates_batch_size(self):
        with pytest.raises(ValueError):
            ServerConfig(max_batch_size=0)
