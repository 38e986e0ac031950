import math

import pytest
from fastapi.testclient import TestClient

from src import server
from src.errors import ProviderError
from src.server import create_app, load_provider
from src.textmetrics import TrigramProvider
from src.textmetrics.surprisal import LogprobProvider


class FailingProvider(LogprobProvider):
    name = "failing"

    def nll(self, tokens):
        raise ProviderError("model unavailable")


class TestLogprobServer:
    def test_health_and_scores(self):
        app = create_app(TrigramProvider([["a", "b"]]))
        with TestClient(app) as client:
            health = client.get("/health").json()
            assert health == {"status": "healthy", "provider": "trigram", "vocabulary": 2}
            response = client.post("/nll", json={"tokens": ["a", "b"]})
            assert response.status_code == 200
            body = response.json()
            assert body["model"] == "trigram"
            assert body["nll"] == [pytest.approx(math.log(2))]

    def test_root_lists_endpoints(self):
        with TestClient(create_app(TrigramProvider())) as client:
            assert "nll" in client.get("/").json()["endpoints"]

    def test_provider_failure_is_a_bad_gateway(self):
        with TestClient(create_app(FailingProvider())) as client:
            response = client.post("/nll", json={"tokens": ["a", "b"]})
            assert response.status_code == 502
            assert "model unavailable" in response.json()["detail"]

    def test_malformed_request(self):
        with TestClient(create_app(TrigramProvider())) as client:
            assert client.post("/nll", json={"words": ["a"]}).status_code == 422

    def test_startup_failure_leaves_the_server_unhealthy(self, monkeypatch):
        def broken():
            raise OSError("corpus unreadable")

        monkeypatch.setattr(server, "load_provider", broken)
        with TestClient(create_app()) as client:
            assert client.get("/health").status_code == 503
            assert client.post("/nll", json={"tokens": ["a"]}).status_code == 404


class TestLoadProvider:
    def test_trains_on_corpus_folder(self, tmp_path, monkeypatch):
        (tmp_path / "one.txt").write_text("Food here", encoding="utf-8")
        monkeypatch.setenv("TL_LOGPROB_CORPUS", str(tmp_path))
        assert load_provider().vocab == {"food", "here"}

    def test_untrained_without_corpus(self, monkeypatch):
        monkeypatch.delenv("TL_LOGPROB_CORPUS", raising=False)
        assert load_provider().vocab == set()
